#ifndef COVERSEQ_SEQCORE_HPP
#define COVERSEQ_SEQCORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coverseq {

using Symbol = std::uint8_t;

/// Immutable finite sequence over the alphabet {0, ..., q-1}.
///
/// Every slicing accessor returns a fresh sequence and throws ValidationError
/// when the requested range does not lie inside the sequence.
class SymbolSeq {
 public:
  SymbolSeq() = default;
  explicit SymbolSeq(std::vector<Symbol> symbols, unsigned q = 2);

  /// Parses the digit text form ('0'..'9', one symbol per character).
  static SymbolSeq parse(std::string_view text, unsigned q = 2);
  static SymbolSeq constant(Symbol symbol, std::size_t length, unsigned q = 2);

  [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
  [[nodiscard]] bool empty() const noexcept { return symbols_.empty(); }
  [[nodiscard]] unsigned alphabet() const noexcept { return q_; }
  [[nodiscard]] Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }
  [[nodiscard]] Symbol at(std::size_t i) const;
  [[nodiscard]] std::span<const Symbol> view() const noexcept { return symbols_; }
  [[nodiscard]] auto begin() const noexcept { return symbols_.cbegin(); }
  [[nodiscard]] auto end() const noexcept { return symbols_.cend(); }

  [[nodiscard]] SymbolSeq prefix(std::size_t k) const;
  [[nodiscard]] SymbolSeq suffix(std::size_t k) const;
  /// The k symbols starting at position i.
  [[nodiscard]] SymbolSeq window(std::size_t i, std::size_t k) const;
  /// Everything from position i to the end.
  [[nodiscard]] SymbolSeq drop(std::size_t i) const;
  [[nodiscard]] SymbolSeq repeated(std::size_t times) const;

  [[nodiscard]] std::string to_string() const;

  friend SymbolSeq operator+(const SymbolSeq& lhs, const SymbolSeq& rhs);
  friend bool operator==(const SymbolSeq&, const SymbolSeq&) = default;

 private:
  std::vector<Symbol> symbols_;
  unsigned q_ = 2;
};

/// Sequence-length, tuple-length and alphabet triple with 1 <= ell <= n, q >= 2.
struct Params {
  std::size_t n = 0;
  std::size_t ell = 0;
  unsigned q = 2;

  static Params checked(std::size_t n, std::size_t ell, unsigned q);
};

/// Failure table: entry j is the length of the longest proper border of the
/// first j+1 symbols.
std::vector<std::size_t> border_table(std::span<const Symbol> s);

/// Smallest p >= 1 with s[i] == s[i+p] for every valid i. Linear time.
std::size_t period(std::span<const Symbol> s);
std::size_t period(const SymbolSeq& s);

/// Fixed-width big-endian binary encoding of i.
SymbolSeq encode_index(std::uint64_t i, std::size_t width);
std::uint64_t decode_index(std::span<const Symbol> bits);
std::uint64_t decode_index(const SymbolSeq& bits);

/// Start position of the last occurrence of pattern in text (KMP scan).
std::optional<std::size_t> rightmost_occurrence(std::span<const Symbol> text,
                                                std::span<const Symbol> pattern);
bool contains_window(std::span<const Symbol> text, std::span<const Symbol> pattern);

}  // namespace coverseq

#endif  // COVERSEQ_SEQCORE_HPP
