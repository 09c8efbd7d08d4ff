#include "coverseq/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "coverseq/debruijn.hpp"
#include "coverseq/errors.hpp"

namespace coverseq {

MatchAutomaton::MatchAutomaton(const SymbolSeq& v)
    : length_(v.size()), q_(v.alphabet()), delta_(v.size() * v.alphabet(), 0) {
  if (v.empty()) throw ValidationError("pattern v must be nonempty");
  const auto border = border_table(v.view());
  for (std::size_t state = 0; state < length_; ++state) {
    for (unsigned b = 0; b < q_; ++b) {
      std::size_t k = state;
      while (k > 0 && v[k] != b) k = border[k - 1];
      delta_[state * q_ + b] = (v[k] == b) ? k + 1 : 0;
    }
  }
}

std::vector<CountResult> avoid_count_prefix_table(std::size_t max_n, const SymbolSeq& v) {
  const MatchAutomaton automaton(v);
  const std::size_t states = automaton.live_states();
  std::vector<CountResult> totals;
  totals.reserve(max_n + 1);
  std::vector<CountResult> current(states, 0), next(states, 0);
  current[0] = 1;
  totals.emplace_back(1);
  for (std::size_t len = 1; len <= max_n; ++len) {
    std::fill(next.begin(), next.end(), CountResult(0));
    for (std::size_t s = 0; s < states; ++s) {
      if (current[s] == 0) continue;
      for (unsigned b = 0; b < automaton.alphabet(); ++b) {
        const std::size_t t = automaton.next(s, static_cast<Symbol>(b));
        if (t != automaton.accepting()) next[t] += current[s];
      }
    }
    current.swap(next);
    CountResult total = 0;
    for (const auto& c : current) total += c;
    totals.push_back(std::move(total));
  }
  return totals;
}

CountResult avoid_count(std::size_t n, const SymbolSeq& v) {
  return avoid_count_prefix_table(n, v).back();
}

CountResult beta_count(const SymbolSeq& v) {
  const std::size_t len = 2 * v.size();
  return pow_int(v.alphabet(), len) - avoid_count(len, v);
}

double beta_lower_bound(std::size_t ell, unsigned q) {
  const double qd = q;
  return 0.5 * (static_cast<double>(ell) + 1.0) * (qd - 1.0) * (qd - 1.0) *
         std::pow(qd, static_cast<double>(ell) - 2.0);
}

double avoid_bound_constant(unsigned q) {
  const double qd = q;
  const double log_q_e = std::numbers::log2e / std::log2(qd);
  return (qd - 1.0) * (qd - 1.0) * log_q_e / (4.0 * qd * qd);
}

BoundValue avoid_upper_bound(std::size_t n, std::size_t ell, unsigned q) {
  Params::checked(n, ell, q);
  const double correction = avoid_bound_constant(q) *
                            (static_cast<double>(n) - 2.0 * static_cast<double>(ell)) /
                            std::pow(static_cast<double>(q), static_cast<double>(ell));
  return BoundValue{static_cast<double>(n) - correction, BoundKind::upper, false};
}

namespace {

struct CoverState {
  std::uint64_t mask;
  std::uint64_t suffix;
  bool operator==(const CoverState&) const = default;
};

struct CoverStateHash {
  std::size_t operator()(const CoverState& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.mask * 0x9E3779B97F4A7C15ULL ^ s.suffix);
  }
};

}  // namespace

CountResult covering_count(std::size_t n, std::size_t ell, unsigned q, CoveringBudget budget) {
  if (ell < 1) throw ValidationError("tuple length ell must be at least 1");
  if (q < 2) throw ValidationError("alphabet size q must be at least 2");
  if (static_cast<double>(ell) * std::log2(static_cast<double>(q)) > 6.0) {
    throw ValidationError("covering_count supports at most 64 tuples (q^ell <= 64)");
  }
  const auto tuples = static_cast<std::uint64_t>(pow_int(q, ell));
  const auto suffixes = tuples / q;  // q^(ell-1)
  if (n < tuples + ell - 1) return 0;

  const std::uint64_t full = tuples == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << tuples) - 1;
  std::unordered_map<CoverState, CountResult, CoverStateHash> layer, next;
  for (std::uint64_t s = 0; s < suffixes; ++s) layer.emplace(CoverState{0, s}, 1);
  CountResult complete = 0;

  for (std::size_t pos = ell - 1; pos < n; ++pos) {
    next.clear();
    CountResult next_complete = complete * q;
    for (const auto& [state, count] : layer) {
      for (unsigned b = 0; b < q; ++b) {
        const std::uint64_t tuple = state.suffix * q + b;
        const std::uint64_t mask = state.mask | (std::uint64_t{1} << tuple);
        if (mask == full) {
          next_complete += count;
        } else {
          next[CoverState{mask, tuple % suffixes}] += count;
        }
      }
    }
    if (next.size() > budget.max_states) {
      throw ValidationError("covering_count state table exceeds budget of " +
                            std::to_string(budget.max_states) + " states");
    }
    layer.swap(next);
    complete = std::move(next_complete);
  }
  return complete;
}

CountResult covering_count_bruteforce(std::size_t n, std::size_t ell, unsigned q) {
  if (ell < 1) throw ValidationError("tuple length ell must be at least 1");
  if (q < 2) throw ValidationError("alphabet size q must be at least 2");
  if (static_cast<double>(n) * std::log2(static_cast<double>(q)) > 26.0) {
    throw ValidationError("brute-force enumeration requires q^n <= 2^26");
  }
  std::vector<Symbol> x(n, 0);
  std::uint64_t hits = 0;
  while (true) {
    if (coverage(std::span<const Symbol>(x), ell, q).is_covering()) ++hits;
    std::size_t i = n;
    while (i > 0 && x[i - 1] == q - 1) x[--i] = 0;
    if (i == 0) break;
    ++x[i - 1];
  }
  return CountResult(hits);
}

CountResult covering_lower_bound(std::size_t n, std::size_t ell, unsigned q) {
  if (ell < 1) throw ValidationError("tuple length ell must be at least 1");
  const CountResult tuples = pow_int(q, ell);
  const CountResult threshold = tuples + ell - 1;
  if (CountResult(n) < threshold) return 0;
  const auto k = static_cast<std::uint64_t>(CountResult(n) - threshold);
  return debruijn_count(ell, q) * pow_int(q, k);
}

CountResult covering_upper_bound(std::size_t n, std::size_t ell) {
  if (ell < 1 || ell > 62) throw ValidationError("tuple length ell must be in [1, 62]");
  const std::uint64_t tuples = std::uint64_t{1} << ell;
  if (n < tuples + ell - 1) {
    throw ValidationError("covering_upper_bound requires n >= 2^ell + ell - 1");
  }
  const std::uint64_t t = n - tuples - ell + 1;
  return pow_int(2, tuples / 2 + t) * binomial(tuples + t - 1, t);
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

RateBounds rate_bounds(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha must be a finite nonnegative real");
  }
  if (alpha == 0.0) return RateBounds{0.0, 0.5, 0.5};
  const double lower = (2.0 * alpha + 1.0) / (2.0 * alpha + 2.0);
  const double upper = std::min(binary_entropy(alpha / (alpha + 1.0)) + lower, 1.0);
  return RateBounds{alpha, lower, upper};
}

double debruijn_rate(unsigned q) {
  return log_base(factorial(q), q) / static_cast<double>(q);
}

double rate_lower_bound(double alpha, unsigned q) {
  if (!(alpha >= 0.0)) throw ValidationError("alpha must be nonnegative");
  return (debruijn_rate(q) + alpha) / (1.0 + alpha);
}

double rate_lower_bound_log_gap(double c, unsigned q) {
  if (!(c > 0.0)) throw ValidationError("gap constant c must be positive");
  const double qd = q;
  return 1.0 + std::pow(qd, -(c + 1.0)) * log_base(factorial(q), q) - std::pow(qd, -c);
}

UnionBoundGap union_bound_gap(std::size_t n, std::size_t ell, unsigned q, CoveringBudget budget) {
  UnionBoundGap out;
  out.exact_gap = pow_int(q, n) - covering_count(n, ell, q, budget);
  const CoverageMap empty(ell, q);
  out.bound = 0;
  for (std::uint64_t t = 0; t < empty.tuple_count(); ++t) {
    out.bound += avoid_count(n, empty.tuple(t));
  }
  return out;
}

}  // namespace coverseq
