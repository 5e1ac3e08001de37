#pragma once

// Command-line front end of lrsdec.
//
// Exit codes: decide returns 0 for answer 1, 1 for answer 0 and 2 when the
// budget runs out; check-cert returns 0 for a valid certificate and 1
// otherwise; trichotomy returns 0 when it decides and 2 when exhausted.
// Malformed input gives 3 and a missing or failing solver gives 4.

#include <lrs/numeric.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace lrs::cli {

inline constexpr int kExitMalformed = 3;
inline constexpr int kExitSolver = 4;

// "[a,b]x[c,d]x..." or "[a,b]^n".
std::vector<RealInterval> parseBox(const std::string& text);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace lrs::cli
