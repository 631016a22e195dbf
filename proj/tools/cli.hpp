#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlnet::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 2;
inline constexpr int kSizeCapError = 3;

// Runs one command line (program name excluded) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "a..b" (integers, step 1), "a..b:step" or "v1,v2,...".
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

// 17 significant digits.
std::string format_real(double v);

}  // namespace mlnet::cli
