#ifndef COVERSEQ_AVOID_HPP
#define COVERSEQ_AVOID_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "coverseq/bigint.hpp"
#include "coverseq/counting.hpp"
#include "coverseq/seqcore.hpp"

namespace coverseq {

inline constexpr std::size_t kMinAvoidEll = 6;
inline constexpr std::size_t kMaxAvoidEll = 16;
inline constexpr std::size_t kGuardBits = 3;

/// v followed by the complement of v[|v| mod p(v)]; forces a long period.
SymbolSeq f1(const SymbolSeq& v);

/// Pref_{floor(|v|/2)+3}(v) followed by f1 of the remaining suffix, so that
/// the tail of the result also has a long period. Requires |v| >= 7.
SymbolSeq f2(const SymbolSeq& v);

/// Everything the block compressor derives from the forbidden tuple v.
struct AvoiderContext {
  SymbolSeq v;
  SymbolSeq u;                // f2(f1(v)), length ell + 2
  std::size_t pv = 0;         // period(v)
  std::size_t pu = 0;         // period(u)
  std::size_t block_len = 0;  // 2^(ell + 6)

  [[nodiscard]] std::size_t ell() const noexcept { return v.size(); }
  /// Bits holding the insertion index: ell + 5.
  [[nodiscard]] std::size_t index_width() const noexcept { return v.size() + 5; }
};

/// Requires a binary v of certified length (see certify_ell).
AvoiderContext build_context(const SymbolSeq& v);

/// Right-pads a shorter tuple with zeros. Avoiding the padded tuple is the
/// caller's responsibility; avoiding the original does not imply it.
SymbolSeq pad_tuple(const SymbolSeq& v, std::size_t ell);

/// Where u is inserted and how the guard bits were chosen.
struct InsertionRecord {
  std::size_t index = 0;
  std::vector<std::size_t> matches;   // A, decreasing
  std::array<Symbol, kGuardBits> guard{};
};

/// Computes A and the guard bits for inserting u into w at position i.
InsertionRecord plan_insertion(const AvoiderContext& ctx, const SymbolSeq& w, std::size_t i);

/// Block of exactly block_len symbols avoiding v -> block_len - 1 symbols.
SymbolSeq compress_block(const AvoiderContext& ctx, const SymbolSeq& s);
SymbolSeq decompress_block(const AvoiderContext& ctx, const SymbolSeq& x);

/// floor((L - 1) / block_len): blocks compressed in a stream of length L.
std::size_t stream_block_count(std::size_t length, std::size_t block_len);
/// Every B with B = floor((M + B - 1) / block_len), increasing. One or two entries.
std::vector<std::size_t> stream_block_count_candidates(std::size_t compressed_length,
                                                       std::size_t block_len);

/// Compresses the leading floor((L-1)/block_len) blocks and keeps the rest raw.
SymbolSeq compress_stream(const AvoiderContext& ctx, const SymbolSeq& x);
/// Blind inverse; uses the smallest consistent block count. Exact for every
/// original length except L = k * block_len + 1 (k >= 1), whose compressed
/// length coincides with that of L - 1.
SymbolSeq decompress_stream(const AvoiderContext& ctx, const SymbolSeq& y);
/// Exact inverse when the original length is known.
SymbolSeq decompress_stream(const AvoiderContext& ctx, const SymbolSeq& y,
                            std::size_t original_length);

/// Structural bound on |A| for every tuple of length ell.
struct EllCertificate {
  std::size_t ell = 0;
  std::size_t max_matches = 0;    // largest pairwise-consistent subset of [pu-3, |u|-1]
  bool guard_indices_valid = true;  // ell-1-m+k stays inside u for every consistent subset
  bool long_periods = true;         // p(f1(v)) and the tail of u have long periods

  [[nodiscard]] bool certified() const noexcept {
    return max_matches <= kGuardBits && guard_indices_valid && long_periods;
  }
};

EllCertificate certify_ell(std::size_t ell);
/// Cached certify_ell(ell).certified() for ell in [kMinAvoidEll, kMaxAvoidEll].
bool is_supported_ell(std::size_t ell);
std::vector<std::size_t> supported_ells();

/// Sampler over A(n, v). Each step picks a symbol with probability equal to
/// the share of avoiding completions it keeps, computed from per-length rows
/// of completion counts normalized in double precision. The total-variation
/// distance to uniform is below n * 2^-50.
class AvoidingSampler {
 public:
  AvoidingSampler(const SymbolSeq& v, std::size_t n);

  [[nodiscard]] SymbolSeq sample(std::mt19937_64& rng) const;
  [[nodiscard]] const CountResult& population() const { return population_; }

 private:
  SymbolSeq v_;
  MatchAutomaton automaton_;
  std::size_t n_;
  CountResult population_;
  // weights_[r * states + s]: avoiding continuations of length r from s, each row scaled to max 1.
  std::vector<double> weights_;
};

SymbolSeq sample_avoiding(const SymbolSeq& v, std::size_t n, std::uint64_t seed);

}  // namespace coverseq

#endif  // COVERSEQ_AVOID_HPP
