#include "coverseq/debruijn.hpp"

#include <cmath>
#include <functional>

#include "coverseq/errors.hpp"

namespace coverseq {

SymbolSeq gen_debruijn(std::size_t ell) {
  if (ell < 1 || ell > kMaxDebruijnOrder) {
    throw ValidationError("de Bruijn order ell must be in [1, " +
                          std::to_string(kMaxDebruijnOrder) + "], got " + std::to_string(ell));
  }
  constexpr Symbol kAlphabet = 2;
  std::vector<Symbol> out;
  out.reserve((std::size_t{1} << ell) + ell - 1);
  std::vector<Symbol> a(ell + 1, 0);

  // Fredricksen-Kessler-Maiorana: emit each Lyndon word of length dividing ell.
  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t t, std::size_t p) {
    if (t > ell) {
      if (ell % p == 0) out.insert(out.end(), a.begin() + 1, a.begin() + 1 + static_cast<std::ptrdiff_t>(p));
      return;
    }
    a[t] = a[t - p];
    visit(t + 1, p);
    for (Symbol j = static_cast<Symbol>(a[t - p] + 1); j < kAlphabet; ++j) {
      a[t] = j;
      visit(t + 1, t);
    }
  };
  visit(1, 1);

  out.insert(out.end(), out.begin(), out.begin() + static_cast<std::ptrdiff_t>(ell - 1));
  return SymbolSeq(std::move(out), 2);
}

CoverageMap::CoverageMap(std::size_t ell, unsigned q) : ell_(ell), q_(q) {
  if (ell < 1) throw ValidationError("tuple length ell must be at least 1");
  if (q < 2) throw ValidationError("alphabet size q must be at least 2");
  const double log2_tuples = static_cast<double>(ell) * std::log2(static_cast<double>(q));
  if (log2_tuples > 32.0) {
    throw ValidationError("coverage bitmap over q^ell tuples exceeds 2^32 entries");
  }
  const std::uint64_t tuples = static_cast<std::uint64_t>(pow_int(q, ell));
  present_.assign(tuples, false);
  missing_ = tuples;
}

void CoverageMap::mark(std::uint64_t tuple) {
  if (!present_.at(tuple)) {
    present_[tuple] = true;
    --missing_;
  }
}

std::vector<std::uint64_t> CoverageMap::missing_tuples() const {
  std::vector<std::uint64_t> missing;
  missing.reserve(missing_);
  for (std::uint64_t t = 0; t < present_.size(); ++t) {
    if (!present_[t]) missing.push_back(t);
  }
  return missing;
}

SymbolSeq CoverageMap::tuple(std::uint64_t index) const {
  if (index >= present_.size()) throw ValidationError("tuple index out of range");
  std::vector<Symbol> symbols(ell_);
  for (std::size_t k = ell_; k-- > 0;) {
    symbols[k] = static_cast<Symbol>(index % q_);
    index /= q_;
  }
  return SymbolSeq(std::move(symbols), q_);
}

CoverageMap coverage(std::span<const Symbol> x, std::size_t ell, unsigned q) {
  CoverageMap map(ell, q);
  if (ell > x.size()) return map;
  const std::uint64_t modulus = map.tuple_count();
  std::uint64_t rolling = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] >= q) throw ValidationError("symbol outside alphabet in coverage input");
    rolling = (rolling * q + x[i]) % modulus;
    if (i + 1 >= ell) map.mark(rolling);
  }
  return map;
}

CoverageMap coverage(const SymbolSeq& x, std::size_t ell) {
  return coverage(x.view(), ell, x.alphabet());
}

CountResult debruijn_count(std::size_t ell, unsigned q, std::size_t max_digits) {
  if (ell < 1) throw ValidationError("tuple length ell must be at least 1");
  if (q < 2) throw ValidationError("alphabet size q must be at least 2");
  const double exponent = std::pow(static_cast<double>(q), static_cast<double>(ell - 1));
  const double digits = exponent * std::log10(std::tgamma(static_cast<double>(q) + 1.0));
  if (digits > static_cast<double>(max_digits)) {
    throw ValidationError("de Bruijn count (q!)^(q^(ell-1)) exceeds the " +
                          std::to_string(max_digits) + "-digit limit");
  }
  return pow_int(static_cast<std::uint64_t>(factorial(q)),
                 static_cast<std::uint64_t>(pow_int(q, ell - 1)));
}

}  // namespace coverseq
