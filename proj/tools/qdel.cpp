// qdel: command-line front end for the q-ary two-deletion code.
//
// Exit codes: 0 ok, 1 usage or parameter error, 2 uncorrectable input,
// 3 ambiguous decode, failed verification or internal error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "qdel/qdel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUncorrectable = 2;
constexpr int kExitInternal = 3;

struct Common {
  std::string input = "-";
  std::string output;
  std::string params;
  std::uint32_t q = 0;
  std::size_t n = 0;
  std::uint32_t d = 0;
  std::string base = "identity";
  std::string inner_base = "identity";
  std::string cache_dir;
  CLI::Option* q_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* d_opt = nullptr;
  CLI::Option* base_opt = nullptr;
  CLI::Option* inner_opt = nullptr;
  CLI::Option* cache_opt = nullptr;
};

// Fills settings not given on the command line from --params.
void apply_params_file(Common& c) {
  if (c.params.empty()) return;
  const auto f = qdel::load_params(c.params);
  if (c.q_opt && c.q_opt->count() == 0 && f.q) c.q = *f.q;
  if (c.n_opt && c.n_opt->count() == 0 && f.n) c.n = *f.n;
  if (c.d_opt && c.d_opt->count() == 0 && f.d && f.regular_mode.value_or(true)) c.d = *f.d;
  if (c.d_opt && c.d_opt->count() == 0 && f.regular_mode && !*f.regular_mode) c.d = 0;
  if (c.base_opt && c.base_opt->count() == 0 && f.base) c.base = *f.base;
  if (c.inner_opt && c.inner_opt->count() == 0 && f.inner_base) c.inner_base = *f.inner_base;
  if (c.cache_opt && c.cache_opt->count() == 0 && f.cache_dir) c.cache_dir = *f.cache_dir;
}

std::vector<qdel::QaryString> read_input(const Common& c) {
  std::vector<qdel::QaryString> out;
  if (c.input == "-") {
    out = qdel::read_strings(std::cin, c.q);
  } else {
    std::ifstream in(c.input);
    if (!in) throw qdel::ParameterError("cannot open input file " + c.input);
    out = qdel::read_strings(in, c.q);
  }
  if (out.empty()) throw qdel::ParameterError("input holds no strings");
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw qdel::ParameterError("cannot write output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void add_common(CLI::App* cmd, Common& c, bool with_n, bool with_d) {
  cmd->add_option("input", c.input, "input file, one string per line ('-' for stdin)");
  cmd->add_option("--output", c.output, "output file (default stdout)");
  cmd->add_option("--params", c.params, "key=value params file; command-line flags take precedence");
  c.q_opt = cmd->add_option("--q", c.q, "alphabet size (odd prime)");
  c.base_opt = cmd->add_option("--base", c.base, "base binary sketcher: identity, greedy, optionally +list");
  c.cache_opt = cmd->add_option("--cache-dir", c.cache_dir, "directory for color and U_m tables");
  if (with_n) c.n_opt = cmd->add_option("--n", c.n, "message length");
  if (with_d) {
    c.d_opt = cmd->add_option("--d", c.d, "regularity parameter; enables regular mode");
    c.inner_opt = cmd->add_option("--inner-base", c.inner_base, "binary sketcher for the sketch region");
  }
}

void require_q(const Common& c) {
  if (c.q == 0) throw qdel::ParameterError("--q is required");
  qdel::require_odd_prime(c.q);
}

qdel::CodeParams code_params(const Common& c) {
  require_q(c);
  if (c.n == 0) throw qdel::ParameterError("--n is required");
  std::optional<std::uint32_t> d;
  if (c.d != 0) d = c.d;
  return qdel::make_code_params(c.n, c.q, c.base, c.inner_base, d, c.cache_dir);
}

// ---- commands ----------------------------------------------------------------

int run_sketch(Common& c) {
  apply_params_file(c);
  require_q(c);
  const auto strings = read_input(c);
  Output out(c.output);
  for (const auto& s : strings) {
    if (c.n != 0 && s.size() != c.n) {
      throw qdel::ParameterError("string of length " + std::to_string(s.size()) + " but --n " + std::to_string(c.n));
    }
    const auto base = qdel::make_base_sketcher(c.base, s.size(), c.cache_dir);
    const auto sk = qdel::full_sketch(s, *base);
    const auto bits = qdel::serialize_sketch(sk);
    std::string base_bits;
    for (auto b : sk.base_bits) base_bits += static_cast<char>('0' + b);
    out.stream() << qdel::bits_to_hex(bits) << "\tbits=" << bits.size() << "\ts1=" << sk.s1 << "\ts2=" << sk.s2
                 << "\ts3=" << sk.s3 << "\tbase=" << sk.base_id << "\tbase_bits=" << base_bits << '\n';
  }
  return kExitOk;
}

int run_encode(Common& c) {
  apply_params_file(c);
  const auto p = code_params(c);
  const auto messages = read_input(c);
  Output out(c.output);
  for (const auto& m : messages) out.stream() << qdel::format_string(qdel::encode(m, p)) << '\n';
  return kExitOk;
}

int run_decode(Common& c) {
  apply_params_file(c);
  const auto p = code_params(c);
  const auto words = read_input(c);
  Output out(c.output);
  for (std::size_t i = 0; i < words.size(); ++i) {
    try {
      out.stream() << qdel::format_string(qdel::decode(words[i], p)) << '\n';
    } catch (const qdel::DecodeError& e) {
      std::cerr << "line " << i + 1 << ": " << e.what() << '\n';
      return e.kind() == qdel::DecodeFailure::kInconsistent ? kExitUncorrectable : kExitInternal;
    }
  }
  return kExitOk;
}

struct CorruptArgs {
  std::vector<std::size_t> positions;
  std::optional<std::size_t> count;
  std::uint64_t seed = 0;
};

int run_corrupt(Common& c, const CorruptArgs& a) {
  apply_params_file(c);
  require_q(c);
  if (!a.positions.empty() && a.count) throw qdel::ParameterError("--positions and --count are exclusive");
  const auto words = read_input(c);
  Output out(c.output);
  std::mt19937_64 gen(a.seed);
  for (const auto& w : words) {
    const auto pos = a.count ? qdel::draw_positions(w.size(), *a.count, gen)
                             : qdel::channel_positions(qdel::ChannelSpec::adversarial(a.positions), w.size());
    out.stream() << qdel::format_string(qdel::delete_at(w, pos)) << '\n';
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string suite;
  std::vector<std::uint32_t> qs;
  std::string n_range;
  std::size_t n = 64;
  std::uint32_t d = 3;
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  std::string base = "identity";
  std::string cache_dir;
};

std::pair<std::size_t, std::size_t> parse_range(const std::string& s, std::pair<std::size_t, std::size_t> fallback) {
  if (s.empty()) return fallback;
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const auto v = std::stoul(s);
      return {v, v};
    }
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw qdel::ParameterError("bad range '" + s + "' (expected a..b)");
  }
}

int run_verify(const VerifyArgs& a) {
  qdel::SuiteResults results;
  if (a.suite == "phi") {
    const auto [lo, hi] = parse_range(a.n_range, {1, 8});
    results = qdel::phi_suite(a.qs.empty() ? std::vector<std::uint32_t>{3, 4, 5} : a.qs, lo, hi);
  } else if (a.suite == "solver") {
    results = qdel::solver_suite(a.qs.empty() ? 31 : a.qs.front());
  } else if (a.suite == "decoder") {
    qdel::DecoderSuiteOptions o;
    if (!a.qs.empty()) o.qs = a.qs;
    std::tie(o.n_lo, o.n_hi) = parse_range(a.n_range, {5, 7});
    o.base = a.base;
    o.random_trials = a.trials;
    o.seed = a.seed;
    o.cache_dir = a.cache_dir;
    for (auto q : o.qs) qdel::require_odd_prime(q);
    results = qdel::decoder_suite(o);
  } else if (a.suite == "code") {
    const auto [lo, hi] = parse_range(a.n_range, {5, 5});
    for (auto q : a.qs.empty() ? std::vector<std::uint32_t>{3} : a.qs) {
      for (std::size_t n = lo; n <= hi; ++n) {
        qdel::CodeSuiteOptions o;
        o.q = q;
        o.n = n;
        o.base = a.base;
        o.seed = a.seed;
        o.cache_dir = a.cache_dir;
        if (n == hi && q == (a.qs.empty() ? 3U : a.qs.back())) {
          o.random_trials = a.trials;
          o.sampled_pairs = a.trials;
        }
        auto r = qdel::code_suite(o);
        results.insert(results.end(), r.begin(), r.end());
      }
    }
  } else if (a.suite == "counts") {
    const auto [lo, hi] = parse_range(a.n_range, {3, 9});
    (void)lo;
    results = qdel::counts_suite(a.qs.empty() ? std::vector<std::uint32_t>{3, 5, 7} : a.qs, hi);
  } else if (a.suite == "regular") {
    qdel::RegularSuiteOptions o;
    o.n = a.n;
    o.q = a.qs.empty() ? 3 : a.qs.front();
    o.d = a.d;
    if (a.trials) o.trials = a.trials;
    o.seed = a.seed;
    o.cache_dir = a.cache_dir;
    results = qdel::regular_suite(o);
  } else {
    throw qdel::ParameterError("unknown suite '" + a.suite + "'");
  }
  std::sort(results.begin(), results.end(),
            [](const auto& x, const auto& y) { return std::tie(x.suite, x.name) < std::tie(y.suite, y.name); });
  for (const auto& r : results) std::cout << qdel::format_result(r) << '\n';
  return qdel::all_pass(results) ? kExitOk : kExitInternal;
}

struct ReportArgs {
  std::string grid = "all";
  std::vector<std::size_t> ns;
  std::vector<std::uint32_t> qs;
  std::vector<std::uint32_t> ds;
  std::string base = "greedy";
  std::string cache_dir;
};

void report_redundancy(const ReportArgs& a) {
  const auto ns = a.ns.empty() ? std::vector<std::size_t>{8, 12, 16} : a.ns;
  const auto qs = a.qs.empty() ? std::vector<std::uint32_t>{3, 5, 7} : a.qs;
  std::cout << "table\tn\tq\tbase\tbase_bits\ts1_bits\ts2_bits\ts3_bits\tsketch_bits\treference_bits\theadline_bits"
               "\tN\tcode_overhead_bits\tnote\n";
  std::cout << std::fixed << std::setprecision(2);
  for (auto n : ns) {
    for (auto q : qs) {
      std::cout << "redundancy\t" << n << '\t' << q << '\t' << a.base << '\t';
      try {
        const auto r = qdel::redundancy_report(qdel::make_code_params(n, q, a.base, "identity", std::nullopt, a.cache_dir));
        std::cout << r.base_bits << '\t' << r.residue_bits << '\t' << r.residue_bits << '\t' << r.s3_bits << '\t'
                  << r.sketch_bits << '\t' << r.reference_sketch_bits << '\t' << r.headline_bits << '\t'
                  << r.codeword_length << '\t' << r.code_overhead_bits << '\t' << r.note << '\n';
      } catch (const qdel::ParameterError& e) {
        std::cout << "-\t-\t-\t-\t-\t-\t-\t-\t-\t" << e.what() << '\n';
      }
    }
  }
}

void report_capacity(const ReportArgs& a) {
  const auto ns = a.ns.empty() ? std::vector<std::size_t>{64, 256, 1024} : a.ns;
  const auto qs = a.qs.empty() ? std::vector<std::uint32_t>{3, 5} : a.qs;
  const auto ds = a.ds.empty() ? std::vector<std::uint32_t>{2, 3} : a.ds;
  std::cout << "table\tn\tq\td\tm\tblocks\ttail\tG\tlog2_capacity\tdigits\texceeds_q^(n-1)\tnote\n";
  for (auto n : ns) {
    for (auto q : qs) {
      for (auto d : ds) {
        std::cout << "capacity\t" << n << '\t' << q << '\t' << d << '\t';
        try {
          const auto r = qdel::capacity_report(n, q, d, a.cache_dir);
          const double log2cap = r.capacity == 0 ? 0.0 : static_cast<double>(boost::multiprecision::msb(r.capacity));
          std::cout << r.m << '\t' << r.block_count << '\t' << r.tail << '\t' << r.g << '\t' << std::fixed
                    << std::setprecision(0) << log2cap << '\t'
                    << (r.capacity_digits ? std::to_string(*r.capacity_digits) : std::string("-")) << '\t'
                    << (r.exceeds_q_pow_n_minus_1 ? "yes" : "no") << "\t-\n";
        } catch (const qdel::ParameterError& e) {
          std::cout << "-\t-\t-\t-\t-\t-\t-\t" << e.what() << '\n';
        }
      }
    }
  }
}

int run_report(const ReportArgs& a) {
  if (a.grid != "redundancy" && a.grid != "capacity" && a.grid != "all") {
    throw qdel::ParameterError("--grid must be redundancy, capacity or all");
  }
  if (a.grid != "capacity") report_redundancy(a);
  if (a.grid != "redundancy") report_capacity(a);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-ary two-deletion sketches and codes"};
  app.require_subcommand(1);

  Common sk, enc, dec, cor;
  auto* c_sketch = app.add_subcommand("sketch", "print the serialized sketch of each string");
  add_common(c_sketch, sk, true, false);
  auto* c_encode = app.add_subcommand("encode", "encode messages into codewords");
  add_common(c_encode, enc, true, true);
  auto* c_decode = app.add_subcommand("decode", "decode received words back to messages");
  add_common(c_decode, dec, true, true);
  auto* c_corrupt = app.add_subcommand("corrupt", "delete up to two symbols from each string");
  add_common(c_corrupt, cor, false, false);
  CorruptArgs ca;
  c_corrupt->add_option("--positions", ca.positions, "1-based positions to delete")->delimiter(',');
  c_corrupt->add_option("--count", ca.count, "number of random deletions (0-2)");
  c_corrupt->add_option("--seed", ca.seed, "seed for std::mt19937_64");

  VerifyArgs va;
  auto* c_verify = app.add_subcommand("verify", "run a verification suite");
  c_verify->add_option("--suite", va.suite, "phi, solver, decoder, code, counts or regular")->required();
  c_verify->add_option("--q", va.qs, "alphabet sizes (comma separated); for solver the largest prime")->delimiter(',');
  c_verify->add_option("--n-range", va.n_range, "lengths a..b (block lengths for counts)");
  c_verify->add_option("--n", va.n, "length for the regular suite");
  c_verify->add_option("--d", va.d, "regularity parameter for the regular suite");
  c_verify->add_option("--trials", va.trials, "random trials");
  c_verify->add_option("--seed", va.seed, "random seed");
  c_verify->add_option("--base", va.base, "base sketcher for exhaustive suites");
  c_verify->add_option("--cache-dir", va.cache_dir, "table cache directory");

  ReportArgs ra;
  auto* c_report = app.add_subcommand("report", "print redundancy and capacity tables");
  c_report->add_option("--grid", ra.grid, "redundancy, capacity or all");
  c_report->add_option("--n", ra.ns, "lengths")->delimiter(',');
  c_report->add_option("--q", ra.qs, "alphabet sizes")->delimiter(',');
  c_report->add_option("--d", ra.ds, "regularity parameters")->delimiter(',');
  c_report->add_option("--base", ra.base, "base sketcher for the redundancy table");
  c_report->add_option("--cache-dir", ra.cache_dir, "table cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_sketch->parsed()) return run_sketch(sk);
    if (c_encode->parsed()) return run_encode(enc);
    if (c_decode->parsed()) return run_decode(dec);
    if (c_corrupt->parsed()) return run_corrupt(cor, ca);
    if (c_verify->parsed()) return run_verify(va);
    if (c_report->parsed()) return run_report(ra);
  } catch (const qdel::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qdel::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qdel::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const qdel::DecodeError& e) {
    std::cerr << e.what() << '\n';
    return e.kind() == qdel::DecodeFailure::kInconsistent ? kExitUncorrectable : kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
