// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any line fails.

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include "qdel/qdel.hpp"

namespace {

struct Line {
  explicit Line(std::string n) : name(std::move(n)) {}
  std::string name;
  bool pass = true;
  std::string detail;
  double seconds = 0;
  double limit = 0;
};

void absorb(Line& line, const qdel::SuiteResults& results) {
  for (const auto& r : results) {
    line.pass = line.pass && r.pass;
    if (!line.detail.empty()) line.detail += "; ";
    line.detail += (r.pass ? "" : "FAILED ") + r.name + " [" + r.detail + "]";
  }
}

bool report(Line& line) {
  if (line.seconds >= line.limit) {
    line.pass = false;
    line.detail += "; over time limit " + std::to_string(line.limit) + "s";
  }
  std::printf("%s\t%s\t%.2fs\t%s\n", line.pass ? "PASS" : "FAIL", line.name.c_str(), line.seconds,
              line.detail.c_str());
  std::fflush(stdout);
  return line.pass;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdel acceptance checks"};
  std::string cache_dir;
  std::size_t decoder_trials = 100000, code_trials = 100000;
  app.add_option("--cache-dir", cache_dir, "directory for color and U_m tables");
  app.add_option("--decoder-trials", decoder_trials, "random decoder trials");
  app.add_option("--code-trials", code_trials, "random code trials");
  CLI11_PARSE(app, argc, argv);
  if (!cache_dir.empty()) std::filesystem::create_directories(cache_dir);

  bool all = true;
  using clock = std::chrono::steady_clock;

  {
    Line l("phi_preservation");
    l.limit = 120;
    const auto t0 = clock::now();
    absorb(l, qdel::phi_suite({3, 4, 5}, 1, 8));
    l.seconds = since(t0);
    all = report(l) && all;
  }
  {
    Line l("quadratic_inversion");
    l.limit = 10;
    const auto t0 = clock::now();
    absorb(l, qdel::solver_suite(31));
    l.seconds = since(t0);
    all = report(l) && all;
  }

  qdel::SuiteResults unique_part, list_part;
  double decoder_seconds = 0;
  {
    qdel::DecoderSuiteOptions o;
    o.qs = {3, 5};
    o.n_lo = 5;
    o.n_hi = 8;
    o.random_trials = decoder_trials;
    o.random_ns = {10, 11, 12, 13, 14};
    o.random_qs = {3, 5, 7};
    o.random_base = "greedy";
    o.oracle_every = 10;
    o.cache_dir = cache_dir;
    const auto t0 = clock::now();
    for (auto& r : qdel::decoder_suite(o)) {
      (r.name.find("list") != std::string::npos ? list_part : unique_part).push_back(std::move(r));
    }
    decoder_seconds = since(t0);
  }
  {
    Line l("unique_decoding");
    l.limit = 1800;
    l.seconds = decoder_seconds;
    absorb(l, unique_part);
    all = report(l) && all;
  }
  {
    Line l("list_decoding");
    l.limit = 1800;
    l.seconds = decoder_seconds;
    absorb(l, list_part);
    all = report(l) && all;
  }
  {
    Line l("counting_formulas");
    l.limit = 300;
    const auto t0 = clock::now();
    absorb(l, qdel::counts_suite({3, 5, 7}, 9));
    l.seconds = since(t0);
    all = report(l) && all;
  }
  {
    Line l("regular_encoder");
    l.limit = 300;
    qdel::RegularSuiteOptions o;
    o.n = 64;
    o.q = 3;
    o.d = 3;
    o.trials = 10000;
    o.cache_dir = cache_dir;
    const auto t0 = clock::now();
    absorb(l, qdel::regular_suite(o));
    l.seconds = since(t0);
    all = report(l) && all;
  }
  {
    Line l("systematic_code");
    l.limit = 1800;
    qdel::CodeSuiteOptions o;
    o.q = 3;
    o.n = 5;
    o.random_trials = code_trials;
    o.random_ns = {10, 11, 12, 13, 14};
    o.random_qs = {3, 5, 7};
    o.random_base = "greedy";
    o.cache_dir = cache_dir;
    const auto t0 = clock::now();
    absorb(l, qdel::code_suite(o));
    l.seconds = since(t0);
    all = report(l) && all;
  }
  {
    Line l("complexity_smoke");
    l.limit = 2;
    const std::size_t n = 1'000'000;
    std::mt19937_64 gen(7);
    const auto alpha = qdel::detail::random_string(n, 101, gen);
    const auto base = qdel::identity_sketcher(n);
    auto t0 = clock::now();
    const auto sketch = qdel::full_sketch(alpha, *base);
    const double t_sketch = since(t0);
    const auto y = qdel::delete_at(alpha, {314'159, 777'777});
    t0 = clock::now();
    bool ok = false;
    try {
      ok = qdel::decode_unique(y, sketch, *base) == alpha;
    } catch (const std::exception& e) {
      l.detail = e.what();
    }
    const double t_decode = since(t0);
    l.pass = ok && t_sketch < 1.0 && t_decode < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "n=1000000 q=101 sketch=%.3fs decode=%.3fs recovered=%d", t_sketch, t_decode,
                  ok ? 1 : 0);
    l.detail = buf + (l.detail.empty() ? "" : " " + l.detail);
    l.seconds = t_sketch + t_decode;
    all = report(l) && all;
  }
  return all ? 0 : 1;
}
