#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "coverseq/avoid.hpp"
#include "coverseq/errors.hpp"

using namespace coverseq;

namespace {

SymbolSeq bits_of(std::uint64_t code, std::size_t len) {
  std::vector<Symbol> out(len);
  for (std::size_t k = 0; k < len; ++k) out[k] = static_cast<Symbol>((code >> (len - 1 - k)) & 1U);
  return SymbolSeq(std::move(out), 2);
}

// Random binary sequence avoiding v: any bit that would complete v is flipped.
SymbolSeq markov_avoider(const SymbolSeq& v, std::size_t len, std::mt19937_64& rng,
                         double p_one = 0.5) {
  std::bernoulli_distribution coin(p_one);
  std::vector<Symbol> out;
  out.reserve(len);
  const std::size_t ell = v.size();
  for (std::size_t i = 0; i < len; ++i) {
    Symbol b = coin(rng) ? 1 : 0;
    if (out.size() + 1 >= ell &&
        std::equal(out.end() - static_cast<std::ptrdiff_t>(ell - 1), out.end(), v.begin()) &&
        b == v[ell - 1]) {
      b ^= 1U;
    }
    out.push_back(b);
  }
  return SymbolSeq(std::move(out), 2);
}

SymbolSeq random_tuple(std::size_t ell, std::mt19937_64& rng) {
  return bits_of(rng() & ((std::uint64_t{1} << ell) - 1), ell);
}

}  // namespace

TEST_CASE("f1 and f2 examples") {
  CHECK(f1(SymbolSeq::parse("010101010")).to_string() == "0101010100");
  CHECK(f1(SymbolSeq::parse("00")).to_string() == "001");
  CHECK(f1(SymbolSeq::parse("0")).to_string() == "01");
  CHECK(f2(SymbolSeq::parse("0101010100")).to_string() == "01010101001");
  CHECK_THROWS_AS(f1(SymbolSeq{}), ValidationError);
  CHECK_THROWS_AS(f2(SymbolSeq::parse("010101")), ValidationError);
}

TEST_CASE("context for the alternating tuple of length 9") {
  const AvoiderContext ctx = build_context(SymbolSeq::parse("010101010"));
  CHECK(ctx.u.to_string() == "01010101001");
  CHECK(ctx.pv == 2);
  CHECK(ctx.pu == 9);
  CHECK(ctx.block_len == 32768);
  CHECK(ctx.index_width() == 14);
}

TEST_CASE("build_context rejects unsupported tuples") {
  CHECK_THROWS_WITH_AS(build_context(SymbolSeq::parse("01010")), doctest::Contains("minimum"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(build_context(SymbolSeq::constant(0, 17)), doctest::Contains("maximum"),
                       ValidationError);
  CHECK_THROWS_AS(build_context(SymbolSeq::parse("0120120", 3)), ValidationError);
}

TEST_CASE("marker structure holds for every tuple of length 6 through 14") {
  for (std::size_t ell = 6; ell <= 14; ++ell) {
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << ell); ++code) {
      const SymbolSeq v = bits_of(code, ell);
      const SymbolSeq g = f1(v);
      const SymbolSeq u = f2(g);
      REQUIRE(g.size() == ell + 1);
      REQUIRE(u.size() == ell + 2);
      REQUIRE(u.prefix(ell) == v);
      REQUIRE(g.prefix(ell) == v);
      // both stages keep the period at least half the length
      REQUIRE(2 * period(g) >= g.size());
      REQUIRE(2 * period(u) >= u.size());
    }
  }
  for (std::uint64_t code = 0; code < 64; ++code) {
    const AvoiderContext ctx = build_context(bits_of(code, 6));
    CHECK(ctx.u.size() == 8);
    CHECK(ctx.u.prefix(6) == ctx.v);
  }
}

TEST_CASE("every length from 6 to 16 certifies") {
  for (std::size_t ell = kMinAvoidEll; ell <= kMaxAvoidEll; ++ell) {
    const EllCertificate cert = certify_ell(ell);
    CAPTURE(ell);
    CHECK(cert.certified());
    CHECK(cert.max_matches <= kGuardBits);
  }
  CHECK(supported_ells().size() == kMaxAvoidEll - kMinAvoidEll + 1);
  CHECK_FALSE(is_supported_ell(5));
  CHECK_FALSE(is_supported_ell(17));
}

TEST_CASE("worked example: all-zero block") {
  const AvoiderContext ctx = build_context(SymbolSeq::parse("010101010"));
  const SymbolSeq s = SymbolSeq::constant(0, ctx.block_len);
  const SymbolSeq x = compress_block(ctx, s);
  CHECK(x == SymbolSeq::constant(0, ctx.block_len - 1));
  CHECK(decompress_block(ctx, x) == s);
}

TEST_CASE("worked example: periodic block with a leading one") {
  const AvoiderContext ctx = build_context(SymbolSeq::parse("010101010"));
  const SymbolSeq s = SymbolSeq::parse("10101001").repeated(ctx.block_len / 8);
  REQUIRE_FALSE(contains_window(s.view(), ctx.v.view()));
  CHECK(decode_index(s.window(1, 14)) == 5332);
  const SymbolSeq x = compress_block(ctx, s);
  CHECK(x.size() == ctx.block_len - 1);
  CHECK(rightmost_occurrence(x.view(), ctx.u.view()) == std::optional<std::size_t>(5332));
  CHECK(decompress_block(ctx, x) == s);
}

TEST_CASE("compress_block input validation") {
  const AvoiderContext ctx = build_context(SymbolSeq::parse("000000"));
  CHECK_THROWS_AS(compress_block(ctx, SymbolSeq::constant(1, 100)), ValidationError);
  CHECK_THROWS_AS(compress_block(ctx, SymbolSeq::constant(0, ctx.block_len)), ValidationError);
  CHECK_THROWS_AS(decompress_block(ctx, SymbolSeq::constant(1, 10)), ValidationError);
}

TEST_CASE("decompress_block rejects a marker with no room for the guard bits") {
  const AvoiderContext ctx = build_context(SymbolSeq::parse("000000"));
  // u sits at the very end of the block, leaving fewer than ell+5 symbols after it
  const SymbolSeq x = SymbolSeq::constant(1, ctx.block_len - 1 - ctx.u.size()) + ctx.u;
  CHECK_THROWS_AS(decompress_block(ctx, x), MalformedInputError);
}

TEST_CASE("decompress_block rejects a marker beyond the index range") {
  const AvoiderContext ctx = build_context(SymbolSeq::parse("000000"));
  const std::size_t at = std::size_t{1} << ctx.index_width();
  SymbolSeq x = SymbolSeq::constant(1, at) + ctx.u;
  x = x + SymbolSeq::constant(1, ctx.block_len - 1 - x.size());
  CHECK_THROWS_AS(decompress_block(ctx, x), MalformedInputError);
}

TEST_CASE("block roundtrip on random avoiding blocks") {
  std::mt19937_64 rng(2024);
  for (std::size_t ell : {6U, 7U, 8U, 9U}) {
    for (int trial = 0; trial < 40; ++trial) {
      const SymbolSeq v = random_tuple(ell, rng);
      const AvoiderContext ctx = build_context(v);
      const SymbolSeq s = markov_avoider(v, ctx.block_len, rng, trial % 2 ? 0.5 : 0.8);
      REQUIRE_FALSE(contains_window(s.view(), v.view()));
      const SymbolSeq x = compress_block(ctx, s);
      REQUIRE(x.size() == ctx.block_len - 1);
      REQUIRE(decompress_block(ctx, x) == s);
    }
  }
}

TEST_CASE("block roundtrip when the data already matches suffixes of the marker") {
  std::mt19937_64 rng(99);
  std::map<std::size_t, std::size_t> match_sizes;
  for (std::size_t ell : {6U, 7U, 8U}) {
    for (int trial = 0; trial < 3000; ++trial) {
      const SymbolSeq v = random_tuple(ell, rng);
      const AvoiderContext ctx = build_context(v);
      const SymbolSeq base = markov_avoider(v, ctx.block_len, rng);
      std::vector<Symbol> s(base.begin(), base.end());
      s[0] = 1;
      const std::size_t head = ctx.index_width() + 1;
      const std::size_t i = static_cast<std::size_t>(
          decode_index(std::span<const Symbol>(s).subspan(1, ctx.index_width())));
      const std::size_t m = ctx.pu - 3 + rng() % (ctx.u.size() - ctx.pu + 3);
      const SymbolSeq tail = ctx.u.suffix(m);
      if (head + i + m > s.size()) continue;
      std::copy(tail.begin(), tail.end(), s.begin() + static_cast<std::ptrdiff_t>(head + i));
      const SymbolSeq block(s, 2);
      if (contains_window(block.view(), v.view())) continue;
      const InsertionRecord plan = plan_insertion(ctx, block.drop(head), i);
      REQUIRE_FALSE(plan.matches.empty());
      CHECK(std::is_sorted(plan.matches.rbegin(), plan.matches.rend()));
      ++match_sizes[plan.matches.size()];
      const SymbolSeq x = compress_block(ctx, block);
      REQUIRE(rightmost_occurrence(x.view(), ctx.u.view()) == std::optional<std::size_t>(i));
      REQUIRE(decompress_block(ctx, x) == block);
    }
  }
  CHECK(match_sizes.size() >= 2);
  CHECK(match_sizes.rbegin()->first <= kGuardBits);
}

TEST_CASE("stream lengths") {
  std::mt19937_64 rng(5);
  const SymbolSeq v = SymbolSeq::parse("011011");
  const AvoiderContext ctx = build_context(v);
  const std::size_t nE = ctx.block_len;
  CHECK(compress_stream(ctx, markov_avoider(v, 3 * nE, rng)).size() == 3 * nE - 2);
  CHECK(compress_stream(ctx, markov_avoider(v, 3 * nE + 5, rng)).size() == 3 * nE + 2);
  CHECK(compress_stream(ctx, markov_avoider(v, nE - 1, rng)).size() == nE - 1);
  CHECK(compress_stream(ctx, markov_avoider(v, 17, rng)).size() == 17);
  CHECK_THROWS_AS(compress_stream(ctx, SymbolSeq{}), ValidationError);
}

TEST_CASE("stream roundtrip") {
  std::mt19937_64 rng(6);
  for (std::size_t ell : {6U, 7U}) {
    for (int trial = 0; trial < 3; ++trial) {
      const SymbolSeq v = random_tuple(ell, rng);
      const AvoiderContext ctx = build_context(v);
      const std::size_t nE = ctx.block_len;
      for (std::size_t len : {nE - 1, nE, 2 * nE, 2 * nE + 7, std::size_t{1}}) {
        const SymbolSeq x = markov_avoider(v, len, rng);
        const SymbolSeq y = compress_stream(ctx, x);
        CHECK(decompress_stream(ctx, y) == x);
        CHECK(decompress_stream(ctx, y, len) == x);
      }
    }
  }
}

TEST_CASE("blind stream decoding is ambiguous exactly after a block boundary") {
  const std::size_t nE = 4096;
  for (std::size_t len = 1; len <= 10 * nE; ++len) {
    const std::size_t blocks = stream_block_count(len, nE);
    const auto candidates = stream_block_count_candidates(len - blocks, nE);
    REQUIRE_FALSE(candidates.empty());
    REQUIRE(std::find(candidates.begin(), candidates.end(), blocks) != candidates.end());
    if (len > 1 && len % nE == 1) {
      REQUIRE(candidates.size() == 2);
      REQUIRE(candidates.back() == blocks);
    } else {
      REQUIRE(candidates.front() == blocks);
    }
  }

  std::mt19937_64 rng(8);
  const SymbolSeq v = SymbolSeq::parse("110100");
  const AvoiderContext ctx = build_context(v);
  const SymbolSeq x = markov_avoider(v, 2 * nE + 1, rng);
  const SymbolSeq y = compress_stream(ctx, x);
  CHECK(decompress_stream(ctx, y).size() == 2 * nE);
  CHECK(decompress_stream(ctx, y, x.size()) == x);
  CHECK_THROWS_AS(decompress_stream(ctx, y, x.size() + 5), MalformedInputError);
}

TEST_CASE("pad_tuple") {
  CHECK(pad_tuple(SymbolSeq::parse("11"), 6).to_string() == "110000");
  CHECK_THROWS_AS(pad_tuple(SymbolSeq::parse("1111111"), 6), ValidationError);
}

TEST_CASE("sampler draws every avoiding sequence uniformly") {
  const SymbolSeq v = SymbolSeq::parse("00");
  AvoidingSampler sampler(v, 4);
  CHECK(sampler.population() == 8);
  const std::set<std::string> members{"0101", "0110", "0111", "1010",
                                      "1011", "1101", "1110", "1111"};
  std::map<std::string, int> hist;
  std::mt19937_64 rng(12345);
  const int draws = 100000;
  for (int k = 0; k < draws; ++k) {
    const std::string s = sampler.sample(rng).to_string();
    REQUIRE(members.count(s) == 1);
    ++hist[s];
  }
  CHECK(hist.size() == 8);
  double chi2 = 0;
  const double expected = draws / 8.0;
  for (const auto& [key, count] : hist) chi2 += (count - expected) * (count - expected) / expected;
  // 7 degrees of freedom, p = 0.001
  CHECK(chi2 < 24.32);
}

TEST_CASE("sampler output avoids v and is seed-deterministic") {
  for (std::size_t ell : {6U, 7U, 8U}) {
    const SymbolSeq v = SymbolSeq::constant(0, ell);
    const SymbolSeq a = sample_avoiding(v, 2000, 77);
    CHECK(a.size() == 2000);
    CHECK_FALSE(contains_window(a.view(), v.view()));
    CHECK(a == sample_avoiding(v, 2000, 77));
    CHECK_FALSE(a == sample_avoiding(v, 2000, 78));
  }
  CHECK(sample_avoiding(SymbolSeq::parse("0"), 5, 1).to_string() == "11111");
  CHECK_THROWS_AS(sample_avoiding(SymbolSeq::parse("0"), 0, 1), ValidationError);
}

TEST_CASE("sampler histogram over a larger population") {
  const SymbolSeq v = SymbolSeq::parse("0110");
  const std::size_t n = 9;
  AvoidingSampler sampler(v, n);
  const auto population = sampler.population().convert_to<std::size_t>();
  std::map<std::string, int> hist;
  std::mt19937_64 rng(4321);
  const int draws = 200000;
  for (int k = 0; k < draws; ++k) ++hist[sampler.sample(rng).to_string()];
  CHECK(hist.size() == population);
  const double expected = static_cast<double>(draws) / static_cast<double>(population);
  double chi2 = 0;
  for (const auto& [key, count] : hist) chi2 += (count - expected) * (count - expected) / expected;
  const double df = static_cast<double>(population - 1);
  // about five standard deviations above the mean of the chi-square law
  CHECK(chi2 < df + 5.0 * std::sqrt(2.0 * df));
}
