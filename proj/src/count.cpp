#include "subdiv/count.hpp"

#include <cmath>
#include <thread>

#include "subdiv/parallel.hpp"

namespace subdiv {

BigCount binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigCount r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigCount falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigCount r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r *= n - i;
  return r;
}

double log_count(const BigCount& x) {
  if (x <= 0) return -HUGE_VAL;
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
  if (bits <= 1000) return std::log(x.convert_to<double>());
  const unsigned shift = bits - 64;
  const BigCount top = x >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

unsigned default_thread_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace subdiv
