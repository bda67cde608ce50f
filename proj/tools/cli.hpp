#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace torfac::cli {

enum Exit : int { kOk = 0, kInvalidInput = 2, kNotFiltrable = 3, kInternal = 4 };

/// Runs one command line (args[0] is the program name). stdin/stdout are
/// the streams used for "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace torfac::cli
