#pragma once

// packlab command-line frontend. run() parses argv, executes one
// subcommand and returns the process exit code:
//   0 success, 2 invalid input, 3 overflow, 4 degenerate data,
//   5 insufficient data.

#include <iosfwd>
#include <string>
#include <vector>

namespace packlab::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

/// FNV-1a 64-bit, hex encoded. Used for manifest input hashes.
std::string content_hash(const std::string& bytes);

}  // namespace packlab::cli
