#ifndef COVERSEQ_BIGINT_HPP
#define COVERSEQ_BIGINT_HPP

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace coverseq {

/// Exact nonnegative cardinality.
using CountResult = boost::multiprecision::cpp_int;

CountResult pow_int(std::uint64_t base, std::uint64_t exponent);
CountResult factorial(std::uint64_t n);
CountResult binomial(std::uint64_t n, std::uint64_t k);

/// log_q(value) for value > 0, accurate for values far beyond double range.
double log_base(const CountResult& value, unsigned q);

}  // namespace coverseq

#endif  // COVERSEQ_BIGINT_HPP
