// Command-line front end. dispatch() parses argv (without the program name),
// writes exactly one JSON document to `out` and diagnostics to `err`, and
// returns the process exit code: 0 success, 1 usage or parse error,
// 2 geometric degeneracy where finiteness was required, 3 negative
// verification verdict.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xr {

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace xr
