#pragma once

#include <iosfwd>

namespace swarmtrack {

/// Command-line front end. Returns 0 on success, 1 on usage errors and 2 on
/// data errors; diagnostics go to `err`.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swarmtrack
