#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end (analyze / batch / metrics).
 *
 * Exit codes: 0 completed with no Reached verdict, 1 operational error,
 * 2 at least one Reached verdict, 3 completed but every verdict NoData.
 */

#include <iosfwd>
#include <string>
#include <vector>

namespace vulnreach {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vulnreach
