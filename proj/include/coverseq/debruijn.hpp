#ifndef COVERSEQ_DEBRUIJN_HPP
#define COVERSEQ_DEBRUIJN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coverseq/bigint.hpp"
#include "coverseq/seqcore.hpp"

namespace coverseq {

inline constexpr std::size_t kMaxDebruijnOrder = 24;

/// Binary de Bruijn sequence of order ell, length 2^ell + ell - 1.
///
/// The cyclic part is the lexicographically least cycle (concatenation of the
/// Lyndon words whose length divides ell); the linear form appends its
/// (ell-1)-prefix so every tuple appears exactly once as a window.
SymbolSeq gen_debruijn(std::size_t ell);

/// Presence bitmap over all q^ell tuples, indexed by the big-endian base-q
/// value of the tuple.
class CoverageMap {
 public:
  CoverageMap(std::size_t ell, unsigned q);

  [[nodiscard]] std::size_t ell() const noexcept { return ell_; }
  [[nodiscard]] unsigned alphabet() const noexcept { return q_; }
  [[nodiscard]] std::uint64_t tuple_count() const noexcept { return present_.size(); }
  [[nodiscard]] std::uint64_t missing_count() const noexcept { return missing_; }
  [[nodiscard]] bool is_covering() const noexcept { return missing_ == 0; }
  [[nodiscard]] bool present(std::uint64_t tuple) const { return present_.at(tuple); }

  void mark(std::uint64_t tuple);

  /// Missing tuple indices in increasing (= lexicographic) order.
  [[nodiscard]] std::vector<std::uint64_t> missing_tuples() const;
  [[nodiscard]] SymbolSeq tuple(std::uint64_t index) const;

 private:
  std::size_t ell_;
  unsigned q_;
  std::vector<bool> present_;
  std::uint64_t missing_;
};

/// One pass over x marking every length-ell window. ell > |x| leaves every tuple missing.
CoverageMap coverage(std::span<const Symbol> x, std::size_t ell, unsigned q);
CoverageMap coverage(const SymbolSeq& x, std::size_t ell);

/// Number of acyclic de Bruijn sequences, (q!)^(q^(ell-1)).
CountResult debruijn_count(std::size_t ell, unsigned q, std::size_t max_digits = 100000);

}  // namespace coverseq

#endif  // COVERSEQ_DEBRUIJN_HPP
