#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sl2lab::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kFailed = 2;

// Runs one invocation. args excludes the program name. Results go to `out` unless an
// output path is given (--out, or SL2LAB_OUT_DIR); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "1.5", "sqrt2", "sqrt(2)", "√2", "phi". Throws InvalidParameter.
long double parse_real(const std::string& s);

}  // namespace sl2lab::cli
