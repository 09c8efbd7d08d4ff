#include "coverseq/bigint.hpp"

#include <cmath>

#include "coverseq/errors.hpp"

namespace coverseq {

CountResult pow_int(std::uint64_t base, std::uint64_t exponent) {
  CountResult result = 1;
  CountResult b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

CountResult factorial(std::uint64_t n) {
  CountResult result = 1;
  for (std::uint64_t i = 2; i <= n; ++i) result *= i;
  return result;
}

CountResult binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  CountResult result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

double log_base(const CountResult& value, unsigned q) {
  if (value <= 0) throw ValidationError("logarithm of a nonpositive count");
  // Keep the top 64 bits as a double mantissa, shift the rest into the exponent.
  const std::size_t bits = boost::multiprecision::msb(value) + 1;
  const std::size_t shift = bits > 64 ? bits - 64 : 0;
  const CountResult top = value >> shift;
  const double mantissa = top.convert_to<double>();
  return (std::log2(mantissa) + static_cast<double>(shift)) / std::log2(static_cast<double>(q));
}

}  // namespace coverseq
