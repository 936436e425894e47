#pragma once

// The `sla` command line, callable in-process.
//
// Exit codes: 0 yes or success, 1 no, 2 unknown within the search bounds,
// 3 bad input (unreadable file, syntax error, invalid automaton, bad flags).

#include <iosfwd>
#include <string>
#include <vector>

namespace sla::cli {

enum ExitCode : int { kYes = 0, kNo = 1, kUnknown = 2, kInputError = 3 };

/// `args` excludes the program name. `in` backs the file name `-`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace sla::cli
