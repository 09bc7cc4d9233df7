#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace i2l::cli {

/// Runs one command (validate, classify, convert, gen, morphism) against
/// the given argument list (without the program name).
///
/// Exit codes: 0 pass/success; 1 failed validation, classification or
/// conversion; 2 invalid input where the command distinguishes it
/// (classify, morphism); 64 usage errors; 66 I/O errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace i2l::cli
