#include "coverseq/avoid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "coverseq/errors.hpp"

namespace coverseq {

namespace {

void require_binary(const SymbolSeq& s, const char* what) {
  if (s.alphabet() != 2) throw ValidationError(std::string(what) + " must be binary");
}

std::size_t ceil_half(std::size_t x) { return (x + 1) / 2; }

SymbolSeq bit(Symbol b) { return SymbolSeq({b}, 2); }

void check_block_ell(std::size_t ell) {
  if (ell < kMinAvoidEll) {
    throw ValidationError("tuple length ell=" + std::to_string(ell) +
                          " is below the minimum supported ell=" + std::to_string(kMinAvoidEll));
  }
  if (ell > kMaxAvoidEll) {
    throw ValidationError("tuple length ell=" + std::to_string(ell) +
                          " exceeds the maximum certified ell=" + std::to_string(kMaxAvoidEll));
  }
  if (!is_supported_ell(ell)) {
    throw ValidationError("tuple length ell=" + std::to_string(ell) +
                          " failed the guard-bit certification");
  }
}

// Suff_m(u) is a prefix of Suff_mp(u), m < mp.
bool consistent_suffixes(std::span<const Symbol> u, std::size_t m, std::size_t mp) {
  const std::size_t a = u.size() - mp;
  const std::size_t b = u.size() - m;
  for (std::size_t t = 0; t < m; ++t) {
    if (u[a + t] != u[b + t]) return false;
  }
  return true;
}

SymbolSeq compress_block_unchecked(const AvoiderContext& ctx, const SymbolSeq& s) {
  if (s[0] == 0) return s.drop(1);
  const std::size_t width = ctx.index_width();
  const auto i = static_cast<std::size_t>(decode_index(s.view().subspan(1, width)));
  const SymbolSeq w = s.drop(width + 1);
  const InsertionRecord record = plan_insertion(ctx, w, i);
  const SymbolSeq guard(std::vector<Symbol>(record.guard.begin(), record.guard.end()), 2);
  return w.prefix(i) + ctx.u + guard + w.drop(i);
}

}  // namespace

SymbolSeq f1(const SymbolSeq& v) {
  require_binary(v, "f1 input");
  if (v.empty()) throw ValidationError("f1 requires a nonempty tuple");
  const Symbol anchor = v[v.size() % period(v)];
  return v + bit(static_cast<Symbol>(1 - anchor));
}

SymbolSeq f2(const SymbolSeq& v) {
  require_binary(v, "f2 input");
  if (v.size() < 7) {
    throw ValidationError("f2 requires |v| >= 7, got |v|=" + std::to_string(v.size()));
  }
  const std::size_t tail = ceil_half(v.size()) - 3;
  return v.prefix(v.size() / 2 + 3) + f1(v.suffix(tail));
}

AvoiderContext build_context(const SymbolSeq& v) {
  require_binary(v, "tuple v");
  check_block_ell(v.size());
  AvoiderContext ctx;
  ctx.v = v;
  ctx.u = f2(f1(v));
  ctx.pv = period(v);
  ctx.pu = period(ctx.u);
  ctx.block_len = std::size_t{1} << (v.size() + 6);
  return ctx;
}

SymbolSeq pad_tuple(const SymbolSeq& v, std::size_t ell) {
  if (v.size() > ell) throw ValidationError("tuple is longer than the target length");
  return v + SymbolSeq::constant(0, ell - v.size(), v.alphabet());
}

InsertionRecord plan_insertion(const AvoiderContext& ctx, const SymbolSeq& w, std::size_t i) {
  if (i > w.size()) throw ValidationError("insertion index exceeds the data length");
  const std::span<const Symbol> u = ctx.u.view();
  InsertionRecord record;
  record.index = i;
  for (std::size_t m = u.size() - 1; m + 3 >= ctx.pu; --m) {
    if (i + m > w.size()) continue;  // runs past the end of w
    if (std::equal(u.end() - static_cast<std::ptrdiff_t>(m), u.end(),
                   w.begin() + static_cast<std::ptrdiff_t>(i))) {
      record.matches.push_back(m);
    }
    if (m == 0) break;
  }
  if (record.matches.size() > kGuardBits) {
    throw InvariantError("guard set A has " + std::to_string(record.matches.size()) +
                         " elements, at most 3 are supported");
  }
  // Largest match takes guard bit 2, the next bit 1, the next bit 0.
  for (std::size_t j = 0; j < record.matches.size(); ++j) {
    const std::size_t k = kGuardBits - 1 - j;
    const std::size_t m = record.matches[j];
    if (ctx.ell() + k < m + 1) {
      throw InvariantError("guard position for match length " + std::to_string(m) +
                           " falls before the start of u");
    }
    record.guard[k] = static_cast<Symbol>(1 - u[ctx.ell() - 1 - m + k]);
  }
  return record;
}

SymbolSeq compress_block(const AvoiderContext& ctx, const SymbolSeq& s) {
  if (s.size() != ctx.block_len) {
    throw ValidationError("block must have length " + std::to_string(ctx.block_len) + ", got " +
                          std::to_string(s.size()));
  }
  require_binary(s, "block");
  if (contains_window(s.view(), ctx.v.view())) {
    throw ValidationError("block contains the forbidden tuple v");
  }
  return compress_block_unchecked(ctx, s);
}

SymbolSeq decompress_block(const AvoiderContext& ctx, const SymbolSeq& x) {
  if (x.size() + 1 != ctx.block_len) {
    throw ValidationError("compressed block must have length " +
                          std::to_string(ctx.block_len - 1) + ", got " + std::to_string(x.size()));
  }
  const auto found = rightmost_occurrence(x.view(), ctx.u.view());
  if (!found) return bit(0) + x;
  const std::size_t i = *found;
  const std::size_t width = ctx.index_width();
  if (i + width > x.size()) {
    throw MalformedInputError("marker occurrence at " + std::to_string(i) +
                              " leaves no room for the guard bits");
  }
  if (i >= (std::size_t{1} << width)) {
    throw MalformedInputError("marker position " + std::to_string(i) +
                              " does not fit the index field");
  }
  return bit(1) + encode_index(i, width) + x.prefix(i) + x.drop(i + width);
}

std::size_t stream_block_count(std::size_t length, std::size_t block_len) {
  return length == 0 ? 0 : (length - 1) / block_len;
}

std::vector<std::size_t> stream_block_count_candidates(std::size_t compressed_length,
                                                       std::size_t block_len) {
  std::vector<std::size_t> out;
  if (compressed_length == 0 || block_len < 2) return out;
  const std::size_t max_blocks = (compressed_length - 1) / (block_len - 1);
  for (std::size_t b = 0; b <= max_blocks; ++b) {
    if ((compressed_length + b - 1) / block_len == b) out.push_back(b);
  }
  return out;
}

SymbolSeq compress_stream(const AvoiderContext& ctx, const SymbolSeq& x) {
  if (x.empty()) throw ValidationError("stream to compress must be nonempty");
  require_binary(x, "stream");
  if (contains_window(x.view(), ctx.v.view())) {
    throw ValidationError("stream contains the forbidden tuple v");
  }
  const std::size_t n_e = ctx.block_len;
  const std::size_t blocks = stream_block_count(x.size(), n_e);
  std::vector<Symbol> out;
  out.reserve(x.size() - blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const SymbolSeq packed = compress_block_unchecked(ctx, x.window(b * n_e, n_e));
    out.insert(out.end(), packed.begin(), packed.end());
  }
  out.insert(out.end(), x.begin() + static_cast<std::ptrdiff_t>(blocks * n_e), x.end());
  return SymbolSeq(std::move(out), 2);
}

namespace {

SymbolSeq decompress_blocks(const AvoiderContext& ctx, const SymbolSeq& y, std::size_t blocks) {
  const std::size_t seg = ctx.block_len - 1;
  std::vector<Symbol> out;
  out.reserve(y.size() + blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const SymbolSeq block = decompress_block(ctx, y.window(b * seg, seg));
    out.insert(out.end(), block.begin(), block.end());
  }
  out.insert(out.end(), y.begin() + static_cast<std::ptrdiff_t>(blocks * seg), y.end());
  return SymbolSeq(std::move(out), 2);
}

}  // namespace

SymbolSeq decompress_stream(const AvoiderContext& ctx, const SymbolSeq& y) {
  if (y.empty()) throw ValidationError("stream to decompress must be nonempty");
  require_binary(y, "stream");
  const auto candidates = stream_block_count_candidates(y.size(), ctx.block_len);
  if (candidates.empty()) throw MalformedInputError("no consistent block count");
  return decompress_blocks(ctx, y, candidates.front());
}

SymbolSeq decompress_stream(const AvoiderContext& ctx, const SymbolSeq& y,
                            std::size_t original_length) {
  require_binary(y, "stream");
  const std::size_t blocks = stream_block_count(original_length, ctx.block_len);
  if (original_length == 0 || y.size() + blocks != original_length) {
    throw MalformedInputError("compressed length " + std::to_string(y.size()) +
                              " is inconsistent with original length " +
                              std::to_string(original_length));
  }
  return decompress_blocks(ctx, y, blocks);
}

EllCertificate certify_ell(std::size_t ell) {
  if (ell < kMinAvoidEll) {
    throw ValidationError("certification requires ell >= " + std::to_string(kMinAvoidEll));
  }
  if (ell > 24) throw ValidationError("certification is limited to ell <= 24");
  EllCertificate cert;
  cert.ell = ell;
  const std::size_t min_period = ceil_half(ell + 1);
  const std::size_t tail_len = min_period - 2;
  std::vector<Symbol> bits(ell);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << ell); ++code) {
    for (std::size_t k = 0; k < ell; ++k) bits[k] = static_cast<Symbol>((code >> (ell - 1 - k)) & 1U);
    const SymbolSeq v(bits, 2);
    const SymbolSeq extended = f1(v);
    const SymbolSeq u = f2(extended);
    const std::size_t pu = period(u);
    if (period(extended) < min_period || pu < min_period ||
        period(u.suffix(tail_len)) < ceil_half(tail_len) || u.prefix(ell) != v) {
      cert.long_periods = false;
    }

    const std::span<const Symbol> uv = u.view();
    for (std::size_t top = pu - 3; top < u.size(); ++top) {
      std::vector<std::size_t> below;
      for (std::size_t m = pu - 3; m < top; ++m) {
        if (consistent_suffixes(uv, m, top)) below.push_back(m);
      }
      cert.max_matches = std::max(cert.max_matches, below.size() + 1);
      if (below.size() + 1 > kGuardBits) continue;
      // Every subset containing top is itself consistent; check guard indices.
      auto valid = [&](std::size_t m, std::size_t k) { return ell + k >= m + 1; };
      if (!valid(top, 2)) cert.guard_indices_valid = false;
      for (std::size_t a = 0; a < below.size(); ++a) {
        if (!valid(below[a], 1)) cert.guard_indices_valid = false;
        for (std::size_t b = 0; b < a; ++b) {
          if (!valid(below[a], 1) || !valid(below[b], 0)) cert.guard_indices_valid = false;
        }
      }
    }
  }
  return cert;
}

bool is_supported_ell(std::size_t ell) {
  if (ell < kMinAvoidEll || ell > kMaxAvoidEll) return false;
  static std::mutex mutex;
  static std::map<std::size_t, bool> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(ell);
  if (it == cache.end()) it = cache.emplace(ell, certify_ell(ell).certified()).first;
  return it->second;
}

std::vector<std::size_t> supported_ells() {
  std::vector<std::size_t> out;
  for (std::size_t ell = kMinAvoidEll; ell <= kMaxAvoidEll; ++ell) {
    if (is_supported_ell(ell)) out.push_back(ell);
  }
  return out;
}

AvoidingSampler::AvoidingSampler(const SymbolSeq& v, std::size_t n)
    : v_(v), automaton_(v), n_(n), population_(avoid_count(n, v)) {
  if (n < 1) throw ValidationError("sample length n must be at least 1");
  const std::size_t states = automaton_.live_states();
  const unsigned q = automaton_.alphabet();
  weights_.assign((n + 1) * states, 0.0);
  std::fill_n(weights_.begin(), states, 1.0);
  for (std::size_t r = 1; r <= n; ++r) {
    const double* prev = &weights_[(r - 1) * states];
    double* row = &weights_[r * states];
    double top = 0.0;
    for (std::size_t s = 0; s < states; ++s) {
      double total = 0.0;
      for (unsigned b = 0; b < q; ++b) {
        const std::size_t t = automaton_.next(s, static_cast<Symbol>(b));
        if (t != automaton_.accepting()) total += prev[t];
      }
      row[s] = total;
      top = std::max(top, total);
    }
    if (top > 0.0) {
      for (std::size_t s = 0; s < states; ++s) row[s] /= top;
    }
  }
}

SymbolSeq AvoidingSampler::sample(std::mt19937_64& rng) const {
  if (population_ == 0) throw ValidationError("no sequence of this length avoids v");
  const std::size_t states = automaton_.live_states();
  const unsigned q = automaton_.alphabet();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Symbol> out(n_);
  std::size_t state = 0;
  for (std::size_t pos = 0; pos < n_; ++pos) {
    const double* row = &weights_[(n_ - pos - 1) * states];
    double total = 0.0;
    for (unsigned b = 0; b < q; ++b) {
      const std::size_t t = automaton_.next(state, static_cast<Symbol>(b));
      if (t != automaton_.accepting()) total += row[t];
    }
    if (!(total > 0.0)) throw InvariantError("sampler reached a state with no completion");
    double draw = unit(rng) * total;
    std::size_t chosen = automaton_.accepting();
    for (unsigned b = 0; b < q; ++b) {
      const std::size_t t = automaton_.next(state, static_cast<Symbol>(b));
      if (t == automaton_.accepting() || row[t] == 0.0) continue;
      out[pos] = static_cast<Symbol>(b);
      chosen = t;
      if (draw < row[t]) break;
      draw -= row[t];
    }
    state = chosen;
  }
  return SymbolSeq(std::move(out), v_.alphabet());
}

SymbolSeq sample_avoiding(const SymbolSeq& v, std::size_t n, std::uint64_t seed) {
  const AvoidingSampler sampler(v, n);
  std::mt19937_64 rng(seed);
  return sampler.sample(rng);
}

}  // namespace coverseq
