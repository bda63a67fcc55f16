#pragma once

#include <iosfwd>

namespace thermsynth {

// Exit codes: 0 success, 1 some runs failed (or a validation case missed its
// range), 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace thermsynth
