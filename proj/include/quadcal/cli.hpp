#ifndef QUADCAL_CLI_HPP
#define QUADCAL_CLI_HPP

namespace quadcal::cli {

// Exit codes: 0 success / all verified, 1 congruence counterexample,
// 2 usage or I/O error.
int run(int argc, char** argv);

}  // namespace quadcal::cli

#endif
