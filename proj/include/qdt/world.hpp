#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qdt {

/// Hard cap on model size: the engine enumerates all 2^n worlds.
inline constexpr int kMaxVariables = 24;

struct Variable {
  std::string name;
  int index = 0;
  std::int64_t persistence = 1;  // surprise charged for an unexplained value change
};

/// A total truth assignment, one bit per variable index.
struct World {
  std::uint32_t bits = 0;

  bool value(int var) const { return (bits >> var) & 1u; }

  World with(int var, bool v) const {
    std::uint32_t mask = 1u << var;
    return World{v ? (bits | mask) : (bits & ~mask)};
  }

  friend bool operator==(World, World) = default;
};

inline std::uint32_t world_count(int n_vars) { return std::uint32_t{1} << n_vars; }

/// Canonical bitstring, bit 0 leftmost: world 2 over 3 variables -> "010".
inline std::string world_bitstring(World w, int n_vars) {
  std::string s(static_cast<std::size_t>(n_vars), '0');
  for (int i = 0; i < n_vars; ++i)
    if (w.value(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

/// "u=T n=F l=T" in variable-index order.
inline std::string world_assignment(World w, std::span<const Variable> vars) {
  std::string s;
  for (const Variable& v : vars) {
    if (!s.empty()) s += ' ';
    s += v.name + "=" + (w.value(v.index) ? "T" : "F");
  }
  return s;
}

}  // namespace qdt
