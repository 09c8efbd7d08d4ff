#include "coverseq/seqcore.hpp"

#include <algorithm>
#include <limits>

#include "coverseq/errors.hpp"

namespace coverseq {

namespace {

void check_range(std::size_t start, std::size_t length, std::size_t size) {
  if (start > size || length > size - start) {
    throw ValidationError("range [" + std::to_string(start) + ", " +
                          std::to_string(start + length) + ") exceeds sequence length " +
                          std::to_string(size));
  }
}

}  // namespace

SymbolSeq::SymbolSeq(std::vector<Symbol> symbols, unsigned q) : symbols_(std::move(symbols)), q_(q) {
  if (q < 2 || q > 10) {
    throw ValidationError("alphabet size q must be in [2, 10], got " + std::to_string(q));
  }
  for (Symbol s : symbols_) {
    if (s >= q) {
      throw ValidationError("symbol " + std::to_string(s) + " outside alphabet of size " +
                            std::to_string(q));
    }
  }
}

SymbolSeq SymbolSeq::parse(std::string_view text, unsigned q) {
  std::vector<Symbol> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw ValidationError(std::string("invalid sequence character '") + c + "'");
    }
    symbols.push_back(static_cast<Symbol>(c - '0'));
  }
  return SymbolSeq(std::move(symbols), q);
}

SymbolSeq SymbolSeq::constant(Symbol symbol, std::size_t length, unsigned q) {
  return SymbolSeq(std::vector<Symbol>(length, symbol), q);
}

Symbol SymbolSeq::at(std::size_t i) const {
  check_range(i, 1, size());
  return symbols_[i];
}

SymbolSeq SymbolSeq::prefix(std::size_t k) const { return window(0, k); }

SymbolSeq SymbolSeq::suffix(std::size_t k) const {
  check_range(0, k, size());
  return window(size() - k, k);
}

SymbolSeq SymbolSeq::window(std::size_t i, std::size_t k) const {
  check_range(i, k, size());
  SymbolSeq out;
  out.q_ = q_;
  out.symbols_.assign(symbols_.begin() + static_cast<std::ptrdiff_t>(i),
                      symbols_.begin() + static_cast<std::ptrdiff_t>(i + k));
  return out;
}

SymbolSeq SymbolSeq::drop(std::size_t i) const {
  check_range(i, 0, size());
  return window(i, size() - i);
}

SymbolSeq SymbolSeq::repeated(std::size_t times) const {
  SymbolSeq out;
  out.q_ = q_;
  out.symbols_.reserve(size() * times);
  for (std::size_t t = 0; t < times; ++t) {
    out.symbols_.insert(out.symbols_.end(), symbols_.begin(), symbols_.end());
  }
  return out;
}

std::string SymbolSeq::to_string() const {
  std::string text(size(), '0');
  std::transform(symbols_.begin(), symbols_.end(), text.begin(),
                 [](Symbol s) { return static_cast<char>('0' + s); });
  return text;
}

SymbolSeq operator+(const SymbolSeq& lhs, const SymbolSeq& rhs) {
  if (lhs.q_ != rhs.q_) {
    throw ValidationError("cannot concatenate sequences over alphabets of size " +
                          std::to_string(lhs.q_) + " and " + std::to_string(rhs.q_));
  }
  SymbolSeq out;
  out.q_ = lhs.q_;
  out.symbols_.reserve(lhs.size() + rhs.size());
  out.symbols_.insert(out.symbols_.end(), lhs.symbols_.begin(), lhs.symbols_.end());
  out.symbols_.insert(out.symbols_.end(), rhs.symbols_.begin(), rhs.symbols_.end());
  return out;
}

Params Params::checked(std::size_t n, std::size_t ell, unsigned q) {
  if (q < 2) throw ValidationError("alphabet size q must be at least 2");
  if (ell < 1) throw ValidationError("tuple length ell must be at least 1");
  if (ell > n) {
    throw ValidationError("tuple length ell=" + std::to_string(ell) +
                          " exceeds sequence length n=" + std::to_string(n));
  }
  return Params{n, ell, q};
}

std::vector<std::size_t> border_table(std::span<const Symbol> s) {
  std::vector<std::size_t> border(s.size(), 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    while (k > 0 && s[i] != s[k]) k = border[k - 1];
    if (s[i] == s[k]) ++k;
    border[i] = k;
  }
  return border;
}

std::size_t period(std::span<const Symbol> s) {
  if (s.empty()) throw ValidationError("period of an empty sequence is undefined");
  // p(s) = |s| - (longest proper border of s)
  return s.size() - border_table(s).back();
}

std::size_t period(const SymbolSeq& s) { return period(s.view()); }

SymbolSeq encode_index(std::uint64_t i, std::size_t width) {
  if (width == 0 || width > 63) {
    throw ValidationError("index width must be in [1, 63], got " + std::to_string(width));
  }
  if (i >= (std::uint64_t{1} << width)) {
    throw ValidationError("index " + std::to_string(i) + " does not fit in " +
                          std::to_string(width) + " bits");
  }
  std::vector<Symbol> bits(width);
  for (std::size_t b = 0; b < width; ++b) {
    bits[width - 1 - b] = static_cast<Symbol>((i >> b) & 1U);
  }
  return SymbolSeq(std::move(bits), 2);
}

std::uint64_t decode_index(std::span<const Symbol> bits) {
  if (bits.size() > 63) throw ValidationError("index width exceeds 63 bits");
  std::uint64_t value = 0;
  for (Symbol b : bits) {
    if (b > 1) throw ValidationError("index bits must be binary");
    value = (value << 1) | b;
  }
  return value;
}

std::uint64_t decode_index(const SymbolSeq& bits) { return decode_index(bits.view()); }

std::optional<std::size_t> rightmost_occurrence(std::span<const Symbol> text,
                                                std::span<const Symbol> pattern) {
  if (pattern.empty()) return text.size();
  if (pattern.size() > text.size()) return std::nullopt;
  const auto border = border_table(pattern);
  std::optional<std::size_t> last;
  std::size_t k = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    while (k > 0 && text[i] != pattern[k]) k = border[k - 1];
    if (text[i] == pattern[k]) ++k;
    if (k == pattern.size()) {
      last = i + 1 - pattern.size();
      k = border[k - 1];
    }
  }
  return last;
}

bool contains_window(std::span<const Symbol> text, std::span<const Symbol> pattern) {
  if (pattern.size() > text.size()) return false;
  return std::search(text.begin(), text.end(), pattern.begin(), pattern.end()) != text.end();
}

}  // namespace coverseq
