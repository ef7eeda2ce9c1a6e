#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cmif {

// Runs one tool invocation; args excludes the program name. Prints a run
// report as JSON on `out` (or help / error text where appropriate) and
// returns the process exit code: 0 when the computation succeeds and the
// checked property holds, 1 when it computes but the property fails or a
// search comes up empty, 2 for usage errors and unreadable or malformed
// input. Identical inputs produce identical bytes.
int cli_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cmif
