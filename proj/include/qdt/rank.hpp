#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "qdt/errors.hpp"

namespace qdt {

/// A degree of surprise: a non-negative integer or the distinguished value
/// infinity. Addition absorbs infinity; subtraction of a finite value from
/// infinity stays infinite; subtracting infinity is an error and never happens
/// silently. Finite overflow is detected.
class Rank {
 public:
  constexpr Rank() : value_(0) {}

  static constexpr Rank infinity() { return Rank(kInfinity, Tag{}); }

  static Rank finite(std::int64_t v) {
    if (v < 0) throw RankArithmeticError("rank must be non-negative, got " + std::to_string(v));
    if (v >= kInfinity) throw RankArithmeticError("rank overflow");
    return Rank(v, Tag{});
  }

  constexpr bool is_infinite() const { return value_ == kInfinity; }
  constexpr bool is_finite() const { return value_ != kInfinity; }

  std::int64_t finite_value() const {
    if (is_infinite()) throw RankArithmeticError("infinite rank has no finite value");
    return value_;
  }

  Rank operator+(Rank other) const {
    if (is_infinite() || other.is_infinite()) return infinity();
    if (value_ > kInfinity - 1 - other.value_) throw RankArithmeticError("rank overflow in +");
    return Rank(value_ + other.value_, Tag{});
  }

  Rank& operator+=(Rank other) { return *this = *this + other; }

  /// infinity - finite = infinity; x - infinity is an error; finite results
  /// must be non-negative.
  Rank operator-(Rank other) const {
    if (other.is_infinite()) throw RankArithmeticError("cannot subtract an infinite rank");
    if (is_infinite()) return infinity();
    if (value_ < other.value_)
      throw RankArithmeticError("negative rank from subtraction");
    return Rank(value_ - other.value_, Tag{});
  }

  friend constexpr bool operator==(Rank a, Rank b) { return a.value_ == b.value_; }
  friend constexpr auto operator<=>(Rank a, Rank b) { return a.value_ <=> b.value_; }

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

 private:
  struct Tag {};
  constexpr Rank(std::int64_t v, Tag) : value_(v) {}

  static constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max();
  std::int64_t value_;
};

inline Rank min(Rank a, Rank b) { return a < b ? a : b; }

}  // namespace qdt
