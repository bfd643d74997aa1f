#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splitcurve::cli {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInputError = 2;

/// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

/// "4", "4..8" or "4-8" -> inclusive range.
std::pair<int, int> parse_genus_range(const std::string& s);
/// "1,4,2" -> {1,4,2}; empty items are skipped.
std::vector<int> parse_int_list(const std::string& s);

}  // namespace splitcurve::cli
