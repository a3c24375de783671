#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace projnorm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kNumerical = 3,
  kReproductionFailed = 4,
};

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a..b" inclusive ranges and comma-separated items, freely mixed: "1..3,7".
std::vector<int> parse_int_list(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

}  // namespace projnorm::cli
