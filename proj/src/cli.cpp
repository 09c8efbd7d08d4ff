#include "coverseq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "coverseq/avoid.hpp"
#include "coverseq/counting.hpp"
#include "coverseq/covering.hpp"
#include "coverseq/debruijn.hpp"
#include "coverseq/errors.hpp"

namespace coverseq::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::size_t kMaxListedMissing = 1024;

struct CliConfig {
  std::size_t n = 0;
  std::size_t ell = 0;
  unsigned q = 2;
  std::string v;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  std::optional<std::size_t> length;
  bool brute_force = false;
  std::string input;
  std::string output;
};

SymbolSeq read_sequence(const CliConfig& cfg, std::istream& in, unsigned q) {
  std::ifstream file;
  std::istream* source = &in;
  if (!cfg.input.empty()) {
    file.open(cfg.input);
    if (!file) throw ValidationError("cannot open input file '" + cfg.input + "'");
    source = &file;
  }
  std::string line;
  std::getline(*source, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::string rest;
  while (std::getline(*source, rest)) {
    if (!rest.empty() && rest != "\r") {
      throw ValidationError("input must hold exactly one sequence line");
    }
  }
  return SymbolSeq::parse(line, q);
}

// The whole payload is produced before anything is written, and files are
// replaced atomically, so a failed command never leaves partial output.
void emit(const CliConfig& cfg, std::ostream& out, const std::string& payload) {
  if (cfg.output.empty()) {
    out << payload;
    out.flush();
    return;
  }
  const std::filesystem::path target(cfg.output);
  std::filesystem::path staging = target;
  staging += ".partial";
  {
    std::ofstream file(staging, std::ios::binary | std::ios::trunc);
    if (!file) throw ValidationError("cannot open output file '" + cfg.output + "'");
    file << payload;
    if (!file.flush()) throw ValidationError("failed writing output file '" + cfg.output + "'");
  }
  std::filesystem::rename(staging, target);
}

SymbolSeq tuple_arg(const CliConfig& cfg, unsigned q = 2) {
  if (cfg.v.empty()) throw ValidationError("--v must be a nonempty digit string");
  return SymbolSeq::parse(cfg.v, q);
}

Json count_or_null(const CountResult& value) { return Json(value.str()); }

Json log_or_null(const CountResult& value, unsigned q) {
  if (value <= 0) return nullptr;
  return log_base(value, q);
}

Json covering_object(const CliConfig& cfg, const std::optional<CountResult>& exact) {
  Json obj;
  obj["n"] = cfg.n;
  obj["ell"] = cfg.ell;
  obj["q"] = cfg.q;
  if (exact) obj["exact"] = count_or_null(*exact);
  const CountResult lower = covering_lower_bound(cfg.n, cfg.ell, cfg.q);
  std::optional<CountResult> upper;
  if (cfg.q == 2 && cfg.ell <= 62 && cfg.n + 1 >= (std::size_t{1} << cfg.ell) + cfg.ell) {
    upper = covering_upper_bound(cfg.n, cfg.ell);
  }
  obj["lower"] = count_or_null(lower);
  obj["upper"] = upper ? count_or_null(*upper) : Json(nullptr);
  Json logs;
  if (exact) logs["exact"] = log_or_null(*exact, cfg.q);
  logs["lower"] = log_or_null(lower, cfg.q);
  logs["upper"] = upper ? log_or_null(*upper, cfg.q) : Json(nullptr);
  obj["logDomain"] = std::move(logs);
  return obj;
}

std::string cmd_count_covering(const CliConfig& cfg) {
  Params::checked(cfg.n, cfg.ell, cfg.q);
  const CountResult exact = cfg.brute_force ? covering_count_bruteforce(cfg.n, cfg.ell, cfg.q)
                                            : covering_count(cfg.n, cfg.ell, cfg.q);
  return covering_object(cfg, exact).dump(2) + "\n";
}

std::string cmd_count_avoiding(CliConfig cfg) {
  const SymbolSeq v = tuple_arg(cfg, cfg.q);
  cfg.ell = v.size();
  const CountResult exact = avoid_count(cfg.n, v);
  Json obj;
  obj["n"] = cfg.n;
  obj["ell"] = cfg.ell;
  obj["q"] = cfg.q;
  obj["exact"] = count_or_null(exact);
  obj["lower"] = nullptr;
  obj["upper"] = nullptr;
  Json logs;
  logs["exact"] = log_or_null(exact, cfg.q);
  logs["lower"] = nullptr;
  logs["upper"] = cfg.ell <= cfg.n ? Json(avoid_upper_bound(cfg.n, cfg.ell, cfg.q).logq_value)
                                   : Json(nullptr);
  obj["logDomain"] = std::move(logs);
  return obj.dump(2) + "\n";
}

std::string cmd_bounds(const CliConfig& cfg) {
  Params::checked(cfg.n, cfg.ell, cfg.q);
  Json obj = covering_object(cfg, std::nullopt);
  const double avoid_exp = avoid_upper_bound(cfg.n, cfg.ell, cfg.q).logq_value;
  obj["logDomain"]["avoidUpper"] = avoid_exp;
  obj["logDomain"]["unionUpper"] = avoid_exp + static_cast<double>(cfg.ell);
  obj["logDomain"]["maxEllSingleBit"] = cfg.n >= 4 ? Json(max_ell_single_bit(cfg.n, cfg.q))
                                                   : Json(nullptr);
  return obj.dump(2) + "\n";
}

std::string cmd_rate(const CliConfig& cfg) {
  const RateBounds r = rate_bounds(cfg.alpha);
  Json obj;
  obj["alpha"] = r.alpha;
  obj["lower"] = r.lower;
  obj["upper"] = r.upper;
  return obj.dump(2) + "\n";
}

struct CoverReport {
  std::string text;
  bool covering;
};

CoverReport cmd_check_cover(const CliConfig& cfg, std::istream& in) {
  const SymbolSeq x = read_sequence(cfg, in, cfg.q);
  const CoverageMap map = coverage(x, cfg.ell);
  if (map.is_covering()) return {"covering\n", true};
  std::ostringstream text;
  text << "missing " << map.missing_count() << " of " << map.tuple_count() << ":";
  const auto missing = map.missing_tuples();
  const std::size_t shown = std::min(missing.size(), kMaxListedMissing);
  for (std::size_t k = 0; k < shown; ++k) text << ' ' << map.tuple(missing[k]).to_string();
  if (shown < missing.size()) text << " ...";
  text << '\n';
  return {text.str(), false};
}

std::string cmd_certify(const CliConfig& cfg) {
  Json list = Json::array();
  std::vector<std::size_t> ells;
  if (cfg.ell != 0) {
    ells.push_back(cfg.ell);
  } else {
    for (std::size_t ell = kMinAvoidEll; ell <= kMaxAvoidEll; ++ell) ells.push_back(ell);
  }
  for (std::size_t ell : ells) {
    const EllCertificate cert = certify_ell(ell);
    Json row;
    row["ell"] = cert.ell;
    row["maxMatches"] = cert.max_matches;
    row["guardIndicesValid"] = cert.guard_indices_valid;
    row["longPeriods"] = cert.long_periods;
    row["certified"] = cert.certified();
    list.push_back(std::move(row));
  }
  return list.dump(2) + "\n";
}

void add_io(CLI::App* sub, CliConfig& cfg) {
  sub->add_option("-i,--input", cfg.input, "read the sequence from this file instead of stdin");
  sub->add_option("-o,--output", cfg.output, "write the result to this file instead of stdout");
}

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out) {
  CLI::App app{"Constrained coding for l-tuples covering sequences", "coverseq"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* encode_cmd = app.add_subcommand("encode", "n-1 data bits -> covering sequence of length n");
  encode_cmd->add_option("--n", cfg.n, "codeword length")->required();
  encode_cmd->add_option("--ell", cfg.ell, "tuple length")->required();
  add_io(encode_cmd, cfg);

  auto* decode_cmd = app.add_subcommand("decode", "covering sequence of length n -> n-1 data bits");
  decode_cmd->add_option("--n", cfg.n, "codeword length")->required();
  decode_cmd->add_option("--ell", cfg.ell, "tuple length")->required();
  add_io(decode_cmd, cfg);

  auto* compress_cmd = app.add_subcommand("compress", "blockwise v-avoiding compression");
  compress_cmd->add_option("--v", cfg.v, "forbidden binary tuple")->required();
  add_io(compress_cmd, cfg);

  auto* decompress_cmd = app.add_subcommand("decompress", "inverse of compress");
  decompress_cmd->add_option("--v", cfg.v, "forbidden binary tuple")->required();
  decompress_cmd->add_option("--length", cfg.length, "original length, when known");
  add_io(decompress_cmd, cfg);

  auto* debruijn_cmd = app.add_subcommand("gen-debruijn", "binary de Bruijn sequence");
  debruijn_cmd->add_option("--ell", cfg.ell, "order")->required();
  add_io(debruijn_cmd, cfg);

  auto* cover_cmd = app.add_subcommand("check-cover", "report missing ell-tuples");
  cover_cmd->add_option("--ell", cfg.ell, "tuple length")->required();
  cover_cmd->add_option("--q", cfg.q, "alphabet size");
  add_io(cover_cmd, cfg);

  auto* count_cmd = app.add_subcommand("count", "exact cardinalities");
  count_cmd->require_subcommand(1);
  auto* count_cover = count_cmd->add_subcommand("covering", "r_q(n, ell)");
  count_cover->add_option("--n", cfg.n, "sequence length")->required();
  count_cover->add_option("--ell", cfg.ell, "tuple length")->required();
  count_cover->add_option("--q", cfg.q, "alphabet size");
  count_cover->add_flag("--brute-force", cfg.brute_force, "enumerate all q^n sequences");
  add_io(count_cover, cfg);
  auto* count_avoid = count_cmd->add_subcommand("avoiding", "a_q(n, v)");
  count_avoid->add_option("--n", cfg.n, "sequence length")->required();
  count_avoid->add_option("--v", cfg.v, "forbidden tuple")->required();
  count_avoid->add_option("--q", cfg.q, "alphabet size");
  add_io(count_avoid, cfg);

  auto* bounds_cmd = app.add_subcommand("bounds", "cardinality bounds for covering sequences");
  bounds_cmd->add_option("--n", cfg.n, "sequence length")->required();
  bounds_cmd->add_option("--ell", cfg.ell, "tuple length")->required();
  bounds_cmd->add_option("--q", cfg.q, "alphabet size");
  add_io(bounds_cmd, cfg);

  auto* rate_cmd = app.add_subcommand("rate", "asymptotic rate window");
  rate_cmd->add_option("--alpha", cfg.alpha, "excess length / 2^ell")->required();
  add_io(rate_cmd, cfg);

  auto* sample_cmd = app.add_subcommand("sample-avoiding", "uniform member of A(n, v)");
  sample_cmd->add_option("--v", cfg.v, "forbidden tuple")->required();
  sample_cmd->add_option("--n", cfg.n, "length")->required();
  sample_cmd->add_option("--seed", cfg.seed, "random seed")->required();
  add_io(sample_cmd, cfg);

  auto* certify_cmd = app.add_subcommand("certify", "guard-bit certification per ell");
  certify_cmd->add_option("--ell", cfg.ell, "single ell to certify");
  add_io(certify_cmd, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }

  if (*encode_cmd) {
    const SymbolSeq data = read_sequence(cfg, in, 2);
    if (data.size() + 1 != cfg.n) {
      throw ValidationError("encode input must have n-1=" + std::to_string(cfg.n - 1) +
                            " symbols, got " + std::to_string(data.size()));
    }
    emit(cfg, out, encode(data, cfg.ell).to_string() + "\n");
  } else if (*decode_cmd) {
    const SymbolSeq codeword = read_sequence(cfg, in, 2);
    if (codeword.size() != cfg.n) {
      throw ValidationError("decode input must have n=" + std::to_string(cfg.n) +
                            " symbols, got " + std::to_string(codeword.size()));
    }
    emit(cfg, out, decode(codeword, cfg.ell).to_string() + "\n");
  } else if (*compress_cmd) {
    const AvoiderContext ctx = build_context(tuple_arg(cfg));
    emit(cfg, out, compress_stream(ctx, read_sequence(cfg, in, 2)).to_string() + "\n");
  } else if (*decompress_cmd) {
    const AvoiderContext ctx = build_context(tuple_arg(cfg));
    const SymbolSeq y = read_sequence(cfg, in, 2);
    const SymbolSeq x = cfg.length ? decompress_stream(ctx, y, *cfg.length) : decompress_stream(ctx, y);
    emit(cfg, out, x.to_string() + "\n");
  } else if (*debruijn_cmd) {
    emit(cfg, out, gen_debruijn(cfg.ell).to_string() + "\n");
  } else if (*cover_cmd) {
    const CoverReport report = cmd_check_cover(cfg, in);
    emit(cfg, out, report.text);
    return report.covering ? kExitOk : kExitValidation;
  } else if (*count_cover) {
    emit(cfg, out, cmd_count_covering(cfg));
  } else if (*count_avoid) {
    emit(cfg, out, cmd_count_avoiding(cfg));
  } else if (*bounds_cmd) {
    emit(cfg, out, cmd_bounds(cfg));
  } else if (*rate_cmd) {
    emit(cfg, out, cmd_rate(cfg));
  } else if (*sample_cmd) {
    emit(cfg, out, sample_avoiding(tuple_arg(cfg), cfg.n, cfg.seed).to_string() + "\n");
  } else if (*certify_cmd) {
    emit(cfg, out, cmd_certify(cfg));
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  try {
    return dispatch(args, in, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace coverseq::cli
