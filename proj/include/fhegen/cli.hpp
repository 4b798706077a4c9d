// SPDX-License-Identifier: Apache-2.0
#ifndef FHEGEN_CLI_HPP
#define FHEGEN_CLI_HPP

#include <ostream>

namespace fhegen {

// Entry point behind the fhegen binary. Subcommands: bench, app, advise,
// report. Exit codes: 0 all scenarios pass, 1 oracle or depth failure,
// 2 usage/config errors.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace fhegen

#endif  // FHEGEN_CLI_HPP
