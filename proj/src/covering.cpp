#include "coverseq/covering.hpp"

#include <cmath>

#include "coverseq/avoid.hpp"
#include "coverseq/counting.hpp"
#include "coverseq/debruijn.hpp"
#include "coverseq/errors.hpp"

namespace coverseq {

namespace {

constexpr double kSlack = 1e-9;

std::size_t debruijn_length(std::size_t ell) { return (std::size_t{1} << ell) + ell - 1; }

SymbolSeq peel(const SymbolSeq& x, std::size_t ell) {
  const AvoiderContext ctx = build_context(x.window(1, ell));
  return decompress_stream(ctx, x.drop(ell + 1));
}

SymbolSeq peel_to(const SymbolSeq& x, std::size_t ell, std::size_t original_length) {
  const AvoiderContext ctx = build_context(x.window(1, ell));
  return decompress_stream(ctx, x.drop(ell + 1), original_length);
}

}  // namespace

std::size_t max_encoder_ell(std::size_t n) {
  if (n < 4) return 0;
  const double log_n = std::log2(static_cast<double>(n));
  const double bound = log_n - std::log2(log_n) - 6.0;
  return bound < 0.0 ? 0 : static_cast<std::size_t>(std::floor(bound + kSlack));
}

void check_encoder_params(std::size_t n, std::size_t ell) {
  if (ell < kMinAvoidEll) {
    throw ValidationError("tuple length ell=" + std::to_string(ell) +
                          " is below the minimum supported ell=" + std::to_string(kMinAvoidEll));
  }
  if (ell > max_encoder_ell(n)) {
    throw ValidationError("tuple length ell=" + std::to_string(ell) +
                          " violates ell <= log2(n) - log2(log2(n)) - 6 for n=" +
                          std::to_string(n));
  }
  if (!is_supported_ell(ell)) {
    throw ValidationError("tuple length ell=" + std::to_string(ell) +
                          " is not in the certified set");
  }
}

LengthSchedule length_schedule(std::size_t n, std::size_t ell) {
  check_encoder_params(n, ell);
  LengthSchedule schedule;
  schedule.n = n;
  schedule.ell = ell;
  schedule.block_len = std::size_t{1} << (ell + 6);
  schedule.debruijn_len = debruijn_length(ell);
  schedule.lengths.push_back(n);
  while (schedule.lengths.back() + schedule.debruijn_len > n) {
    const std::size_t len = schedule.lengths.back();
    const std::size_t next = ell + 1 + len - stream_block_count(len, schedule.block_len);
    if (next >= len) throw InvariantError("encoder length schedule does not decrease");
    schedule.lengths.push_back(next);
  }
  return schedule;
}

EncodeTrace encode_with_trace(const SymbolSeq& data, std::size_t ell) {
  if (data.alphabet() != 2) throw ValidationError("encoder input must be binary");
  const std::size_t n = data.size() + 1;
  check_encoder_params(n, ell);
  const SymbolSeq debruijn = gen_debruijn(ell);
  const std::size_t max_iterations = length_schedule(n, ell).max_iterations();

  EncodeTrace trace;
  SymbolSeq x = SymbolSeq::constant(0, 1) + data;
  trace.lengths.push_back(x.size());
  while (x.size() + debruijn.size() > n) {
    const CoverageMap map = coverage(x, ell);
    if (map.is_covering()) break;
    if (trace.removed_tuples.size() == max_iterations) {
      throw InvariantError("encoder exceeded the length-schedule iteration bound");
    }
    // Lexicographically smallest absent tuple.
    const SymbolSeq v = map.tuple(map.missing_tuples().front());
    const AvoiderContext ctx = build_context(v);
    x = SymbolSeq::constant(1, 1) + v + compress_stream(ctx, x);
    trace.removed_tuples.push_back(v);
    trace.lengths.push_back(x.size());
  }
  trace.codeword = (x + debruijn + SymbolSeq::constant(1, n)).prefix(n);
  return trace;
}

SymbolSeq encode(const SymbolSeq& data, std::size_t ell) {
  return encode_with_trace(data, ell).codeword;
}

DecodeReport decode_with_report(const SymbolSeq& codeword, std::size_t ell) {
  if (codeword.alphabet() != 2) throw ValidationError("codeword must be binary");
  const std::size_t n = codeword.size();
  if (n < 2) throw ValidationError("codeword length must be at least 2");
  const LengthSchedule schedule = length_schedule(n, ell);
  const std::size_t max_layers = schedule.max_iterations();

  auto verified = [&](const SymbolSeq& candidate) {
    return encode(candidate, ell) == codeword;
  };

  // Greedy peel: undo layers while the marker bit says one was added.
  try {
    SymbolSeq x = codeword;
    std::size_t layers = 0;
    while (x[0] == 1 && layers < max_layers && x.size() > ell + 1) {
      x = peel(x, ell);
      ++layers;
    }
    if (x[0] == 0 && x.size() >= n) {
      SymbolSeq candidate = x.window(1, n - 1);
      if (verified(candidate)) return DecodeReport{std::move(candidate), true, layers};
    }
  } catch (const ValidationError&) {
    // trailing padding produced an undecodable segment; use the schedule
  }

  // Schedule fallback: assume exactly T layers with the encoder's exact lengths.
  for (std::size_t layers = 0; layers <= max_layers; ++layers) {
    try {
      SymbolSeq x = codeword.prefix(schedule.lengths[layers]);
      bool consistent = true;
      for (std::size_t j = layers; j > 0; --j) {
        if (x[0] != 1) {
          consistent = false;
          break;
        }
        x = peel_to(x, ell, schedule.lengths[j - 1]);
      }
      if (!consistent || x[0] != 0 || x.size() != n) continue;
      SymbolSeq candidate = x.drop(1);
      if (verified(candidate)) return DecodeReport{std::move(candidate), false, layers};
    } catch (const ValidationError&) {
      continue;
    }
  }
  throw MalformedInputError("sequence is not an output of the covering encoder");
}

SymbolSeq decode(const SymbolSeq& codeword, std::size_t ell) {
  return decode_with_report(codeword, ell).data;
}

std::size_t max_ell_single_bit(std::size_t n, unsigned q) {
  if (n < 4) throw ValidationError("max_ell_single_bit requires n >= 4");
  if (q < 2) throw ValidationError("alphabet size q must be at least 2");
  const double qd = q;
  const double c1 = avoid_bound_constant(q);
  const double target = std::log2(qd / (qd - 1.0)) / std::log2(qd);
  std::size_t best = 0;
  for (std::size_t ell = 1; 2 * ell <= n; ++ell) {
    const double q_ell = std::pow(qd, static_cast<double>(ell));
    if (q_ell > static_cast<double>(n)) break;
    const double lhs = c1 * (static_cast<double>(n) - 2.0 * static_cast<double>(ell)) / q_ell -
                       static_cast<double>(ell);
    if (lhs >= target) best = ell;
  }
  return best;
}

}  // namespace coverseq
