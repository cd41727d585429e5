#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace subdiv {

using BigCount = boost::multiprecision::cpp_int;

/// Sum of nonnegative terms. Stays in a 64-bit register until an addition
/// overflows, then spills into a big integer.
class CountAccumulator {
 public:
  void add(std::uint64_t x) {
    std::uint64_t r;
    if (__builtin_add_overflow(fast_, x, &r)) {
      spill_ += fast_;
      fast_ = x;
    } else {
      fast_ = r;
    }
  }

  void add_product(std::uint64_t x, std::uint64_t y) {
    std::uint64_t r;
    if (__builtin_mul_overflow(x, y, &r)) {
      spill_ += BigCount(x) * y;
    } else {
      add(r);
    }
  }

  void add(const BigCount& x) { spill_ += x; }

  void merge(const CountAccumulator& other) {
    add(other.fast_);
    spill_ += other.spill_;
  }

  BigCount value() const { return spill_ + fast_; }

 private:
  std::uint64_t fast_ = 0;
  BigCount spill_ = 0;
};

inline std::string to_decimal(const BigCount& x) { return x.str(); }

/// Exact binomial coefficient C(n, k); zero when k > n.
BigCount binomial(std::uint64_t n, std::uint64_t k);

/// Exact falling factorial n (n-1) ... (n-k+1).
BigCount falling_factorial(std::uint64_t n, std::uint64_t k);

/// Natural log of a positive big integer, accurate to double precision.
double log_count(const BigCount& x);

}  // namespace subdiv
