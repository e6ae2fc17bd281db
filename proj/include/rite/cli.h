#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rite {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

/// Entry point behind the `rite` binary. `args[0]` is the program name.
/// Reports go to `out` (or --out), messages to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rite
