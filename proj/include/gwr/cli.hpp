#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace gwr::cli {

enum class Format { json, dot, text };

struct RunConfig {
  std::uint64_t degree_cap = std::uint64_t{1} << 20;
  std::uint64_t oracle_cap = 10'000;
  std::uint64_t memory_budget = std::uint64_t{2} << 30;
  Format format = Format::json;
  unsigned threads = 1;
  bool deterministic = true;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kExitUsage = 64;

/// args excludes the program name. Reports go to out, one-line JSON
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gwr::cli
