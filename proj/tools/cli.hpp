#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isokin::cli {

/// Runs one CLI invocation. args excludes the program name. Returns the
/// process exit code: 0 success, 1 I/O error, 2 validation error, 3 numeric
/// or domain error. Errors are written to err as a single JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "45deg", "0.5rad" or a bare number of radians.
double parse_angle(const std::string& text);

}  // namespace isokin::cli
