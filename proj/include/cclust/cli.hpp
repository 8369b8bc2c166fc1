#ifndef CCLUST_CLI_HPP
#define CCLUST_CLI_HPP

#include <iosfwd>

namespace cclust {

/// Parse arguments, run one subcommand and return the process exit status:
/// 0 success, 1 usage or configuration error, 2 data error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}

#endif
