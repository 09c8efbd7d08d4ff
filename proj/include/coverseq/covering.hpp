#ifndef COVERSEQ_COVERING_HPP
#define COVERSEQ_COVERING_HPP

#include <cstddef>
#include <vector>

#include "coverseq/seqcore.hpp"

namespace coverseq {

/// Lengths taken by the working sequence when every encoder iteration runs:
/// L_0 = n and L_{j+1} = ell + 1 + L_j - floor((L_j - 1) / n_E), stopping at
/// the first L_j <= n - (2^ell + ell - 1).
struct LengthSchedule {
  std::size_t n = 0;
  std::size_t ell = 0;
  std::size_t block_len = 0;
  std::size_t debruijn_len = 0;
  std::vector<std::size_t> lengths;

  /// Most loop iterations the encoder can perform.
  [[nodiscard]] std::size_t max_iterations() const noexcept { return lengths.size() - 1; }
};

/// Largest ell the encoder accepts for length n (0 when none).
std::size_t max_encoder_ell(std::size_t n);
/// Throws ValidationError unless (n, ell) satisfies the encoder's constraints.
void check_encoder_params(std::size_t n, std::size_t ell);

LengthSchedule length_schedule(std::size_t n, std::size_t ell);

struct EncodeTrace {
  SymbolSeq codeword;
  std::vector<SymbolSeq> removed_tuples;  // v chosen at each iteration
  std::vector<std::size_t> lengths;       // |x| before each iteration and at exit
};

/// Maps n-1 arbitrary bits to an ell-tuples covering sequence of length n.
SymbolSeq encode(const SymbolSeq& data, std::size_t ell);
EncodeTrace encode_with_trace(const SymbolSeq& data, std::size_t ell);

struct DecodeReport {
  SymbolSeq data;
  bool greedy = true;      // false when the schedule fallback produced the result
  std::size_t layers = 0;  // encoder iterations undone
};

/// Inverse of encode. Throws MalformedInputError for sequences encode never outputs.
SymbolSeq decode(const SymbolSeq& codeword, std::size_t ell);
DecodeReport decode_with_report(const SymbolSeq& codeword, std::size_t ell);

/// Largest ell >= 1 with c1 (n - 2 ell) / q^ell - ell >= log_q(q / (q - 1)); 0 if none.
std::size_t max_ell_single_bit(std::size_t n, unsigned q);

}  // namespace coverseq

#endif  // COVERSEQ_COVERING_HPP
