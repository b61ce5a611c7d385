#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace llmstate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTaskFailed = 1;  // only with --strict
inline constexpr int kExitConfig = 2;

// Entry point of the llmstate tool; args excludes the program name.
//
//   run     --task PATH [--backend live|replay|record] [--cassette PATH]
//   suite   --suite PATH [--parallel N] [--cassette DIR]
//   record  --task PATH [--cassette PATH]       (run with --backend record)
//   replay  --task PATH [--cassette PATH]       (run with --backend replay)
//   inspect TRACE
//
// Common flags: --mode, --out, --strict, --format text|structured.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace llmstate::cli
