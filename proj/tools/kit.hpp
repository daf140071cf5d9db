#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kit {

inline constexpr const char* kVersion = "0.1.0";

/// Runs one eternal-kit invocation. args excludes the program name.
/// Exit status: 0 success, 1 domain error, 2 numerical failure, 64 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// As above, with the tolerance override that ETERNAL_KIT_TOL would provide.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             std::optional<double> tolerance_override);

}  // namespace kit
