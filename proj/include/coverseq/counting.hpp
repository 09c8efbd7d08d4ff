#ifndef COVERSEQ_COUNTING_HPP
#define COVERSEQ_COUNTING_HPP

#include <cstddef>
#include <vector>

#include "coverseq/bigint.hpp"
#include "coverseq/seqcore.hpp"

namespace coverseq {

/// Pattern-matching automaton of a tuple v. States 0..|v|-1 are the lengths of
/// the longest suffix of the text read so far that is a prefix of v; reaching
/// state |v| means v occurred and is forbidden for avoiding sequences.
class MatchAutomaton {
 public:
  explicit MatchAutomaton(const SymbolSeq& v);

  [[nodiscard]] std::size_t live_states() const noexcept { return length_; }
  [[nodiscard]] std::size_t accepting() const noexcept { return length_; }
  [[nodiscard]] unsigned alphabet() const noexcept { return q_; }
  [[nodiscard]] std::size_t next(std::size_t state, Symbol symbol) const {
    return delta_[state * q_ + symbol];
  }

 private:
  std::size_t length_;
  unsigned q_;
  std::vector<std::size_t> delta_;
};

/// Exact |A_q(n, v)|: sequences of length n with no window equal to v.
CountResult avoid_count(std::size_t n, const SymbolSeq& v);
/// avoid_count for every length 0..max_n in one sweep.
std::vector<CountResult> avoid_count_prefix_table(std::size_t max_n, const SymbolSeq& v);

/// Sequences of length 2|v| containing v at least once.
CountResult beta_count(const SymbolSeq& v);
/// (ell+1)(q-1)^2 q^(ell-2) / 2.
double beta_lower_bound(std::size_t ell, unsigned q);

enum class BoundKind { lower, upper };

/// A bound held as its base-q logarithm.
struct BoundValue {
  double logq_value = 0.0;
  BoundKind kind = BoundKind::upper;
  bool exact = false;
};

/// (q-1)^2 log_q(e) / (4 q^2).
double avoid_bound_constant(unsigned q);

/// a_q(n, v) <= q^(n - c1 (n - 2 ell) / q^ell) for every v of length ell.
BoundValue avoid_upper_bound(std::size_t n, std::size_t ell, unsigned q);

struct CoveringBudget {
  std::size_t max_states = std::size_t{1} << 22;
};

/// Exact r_q(n, ell) by dynamic programming over (last ell-1 symbols, covered set).
CountResult covering_count(std::size_t n, std::size_t ell, unsigned q,
                           CoveringBudget budget = {});
/// Exact r_q(n, ell) by enumerating all q^n sequences (q^n <= 2^26).
CountResult covering_count_bruteforce(std::size_t n, std::size_t ell, unsigned q);

/// (q!)^(q^(ell-1)) q^k with k = n - q^ell - ell + 1; zero below the de Bruijn length.
CountResult covering_lower_bound(std::size_t n, std::size_t ell, unsigned q);
/// Binary upper bound 2^(2^(ell-1) + t) C(2^ell + t - 1, t), t = n - 2^ell - ell + 1.
CountResult covering_upper_bound(std::size_t n, std::size_t ell);

/// Binary entropy in bits; H(0) = H(1) = 0.
double binary_entropy(double p);

/// Rate window for n = 2^ell + ell - 1 + alpha 2^ell + o(2^ell).
struct RateBounds {
  double alpha = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};
RateBounds rate_bounds(double alpha);

/// log_q(q!)/q, the de Bruijn rate.
double debruijn_rate(unsigned q);
/// q-ary rate lower bound when the excess length is alpha q^ell.
double rate_lower_bound(double alpha, unsigned q);
/// q-ary rate lower bound when ell = log_q n - c:  1 + q^-(c+1) log_q(q!) - q^-c.
double rate_lower_bound_log_gap(double c, unsigned q);

struct UnionBoundGap {
  CountResult exact_gap;  // q^n - r_q(n, ell)
  CountResult bound;      // sum over v of a_q(n, v)
};
UnionBoundGap union_bound_gap(std::size_t n, std::size_t ell, unsigned q,
                              CoveringBudget budget = {});

}  // namespace coverseq

#endif  // COVERSEQ_COUNTING_HPP
