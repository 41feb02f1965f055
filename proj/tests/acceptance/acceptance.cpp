// Copyright 2026 The rrcstego Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Usage: rrcstego_acceptance [DATA_DIR] [FIXTURE_DIR]

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rrcstego/rrcstego.hpp"

namespace {

using namespace rrcstego;

std::string g_data = RRCSTEGO_DATA_DIR;
std::string g_fixtures = RRCSTEGO_FIXTURE_DIR;

struct Outcome {
  bool pass;
  std::string detail;
};

int g_failed = 0;

void report(const char* name, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++g_failed;
  std::printf("%s  %-28s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), s);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

ExactNumber q(long n, long d = 1) { return make_exact(Integer(n), Integer(d)); }

const NgramProvider& corpus_provider() {
  static const NgramProvider p(NgramModel::train_file(g_data + "/corpus.txt", 2, "0.5"));
  return p;
}

std::vector<TokenId> corpus_prompt() { return corpus_provider().tokenize("the "); }

// Shared by the round-trip, measure and n-gram utilization criteria.
std::vector<BenchRow>& ngram_rows() {
  static std::vector<BenchRow> rows = [] {
    BenchOptions o;
    o.lengths = {8, 32, 128, 1024};
    o.trials = 1000;
    o.seed = 20260101;
    o.check_measure = true;
    o.prompt = corpus_prompt();
    o.threads = std::max(1U, std::thread::hardware_concurrency());
    return bench(corpus_provider(), o);
  }();
  return rows;
}

double g_roundtrip_seconds = 0;

Outcome round_trip() {
  auto start = std::chrono::steady_clock::now();
  auto& rows = ngram_rows();
  g_roundtrip_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::string detail;
  bool ok = g_roundtrip_seconds < 300;
  for (const auto& r : rows) {
    ok = ok && r.failures == 0 && r.trials == 1000;
    detail += "l=" + std::to_string(r.bits) + ":" + std::to_string(r.trials - r.failures) + "/" +
              std::to_string(r.trials) + " ";
  }
  return {ok, detail + fmt("total %.1fs (limit 300s)", g_roundtrip_seconds)};
}

Outcome exhaustive() {
  TableProvider p = TableProvider::load(g_fixtures + "/four_token.json");
  StegoKey key = StegoKey::from_hex("000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f");
  int ok = 0;
  for (unsigned v = 0; v < 256; ++v) {
    BitString m = decimal_to_bits(Integer(v), 8);
    auto r = embed_rrc(p, Context(), key, m);
    if (extract_rrc(p, Context(), key, 8, r.tokens) == m) ++ok;
  }
  return {ok == 256, std::to_string(ok) + "/256 messages recovered"};
}

Outcome zero_kl() {
  std::size_t nonzero = 0;
  for (const auto& r : ngram_rows()) nonzero += r.kl_nonzero_steps;
  // Independent check on the uniform provider with per-step counting.
  std::size_t steps = 0;
  TableProvider u = TableProvider::uniform_binary();
  RrcOptions opts;
  opts.observer = [&](const StepEvent& e) {
    ++steps;
    if (!rrc_step_kl(e.step).identical) ++nonzero;
  };
  for (std::size_t i = 0; i < 200; ++i) {
    auto [key, m] = bench_trial_inputs(7, 128, i);
    embed_rrc(u, Context(), key, m, opts);
  }
  return {nonzero == 0, std::to_string(nonzero) + " steps with nonzero divergence (4000 n-gram sessions + " +
                            std::to_string(steps) + " uniform steps)"};
}

Outcome distortion() {
  TableProvider p = TableProvider::load(g_fixtures + "/four_token.json");
  auto rows = analyze_vanilla_distortion(p.next_distribution(Context()), 16);
  bool ok = rows[0].induced == q(42599, 65536) && rows[0].model == q(13, 20);
  return {ok, "induced " + to_fraction_string(rows[0].induced) + " vs model " + to_fraction_string(rows[0].model)};
}

Outcome termination_sufficiency() {
  std::mt19937_64 rng(77);
  std::size_t sessions = 0, checked = 0, counterexamples = 0;
  while (sessions < 10000) {
    std::size_t n = 2 + rng() % 6;
    std::vector<TableProvider::Row> rows;
    std::size_t depth = 1 + rng() % 4;
    for (std::size_t r = 0; r < depth; ++r) {
      TableProvider::Row row;
      for (std::size_t i = 0; i < n; ++i) {
        row.tokens.push_back(static_cast<TokenId>(i));
        row.probs.push_back(std::to_string(1 + rng() % 999) + "e-3");
      }
      rows.push_back(std::move(row));
    }
    TableProvider p(std::move(rows), TableProvider::Mode::kCycle);
    std::size_t l = 4 + rng() % 61;
    std::vector<std::uint8_t> kb(32);
    for (auto& b : kb) b = static_cast<std::uint8_t>(rng());
    std::string bits(l, '0');
    for (auto& c : bits) c = (rng() & 1) ? '1' : '0';
    RrcOptions opts;
    opts.verify_on_stop = (sessions % 2) == 0;
    auto r = embed_rrc(p, Context(), StegoKey(kb), BitString(bits), opts);
    for (const auto& s : r.trace.steps) {
      if (s.after.width() <= 1) {
        ++checked;
        if (!termination_predicate(s.after, *s.point)) ++counterexamples;
      }
    }
    ++sessions;
  }
  return {counterexamples == 0 && checked > 0,
          std::to_string(counterexamples) + " counterexamples in " + std::to_string(checked) +
              " steps with width <= 1 over " + std::to_string(sessions) + " sessions"};
}

Outcome utilization() {
  TableProvider u = TableProvider::uniform_binary();
  BenchOptions o;
  o.lengths = {128};
  o.trials = 1000;
  o.seed = 5150;
  auto uni = bench(u, o).front();
  double ng = 0;
  for (const auto& r : ngram_rows()) {
    if (r.bits == 128) ng = r.utilization_mean;
  }
  bool ok = uni.failures == 0 && uni.utilization_mean >= 97 && uni.utilization_mean <= 103 && ng >= 95 && ng <= 105;
  return {ok, fmt("uniform l=128 mean %.2f%% [97,103]; n-gram l=128 mean %.2f%% [95,105]", uni.utilization_mean, ng)};
}

Outcome rotation_uniformity() {
  // Rotated point at step 0 of a fixed session, over 10^4 keys.
  constexpr int kBins = 32;
  const std::size_t l = 16;
  const Interval iv = Interval::message_space(l);
  const ExactNumber d(Integer(20219));
  std::vector<double> counts(kBins, 0);
  std::mt19937_64 rng(424242);
  const int keys = 10000;
  for (int k = 0; k < keys; ++k) {
    std::vector<std::uint8_t> kb(32);
    for (auto& b : kb) b = static_cast<std::uint8_t>(rng());
    OffsetStream s{StegoKey(kb)};
    ExactNumber r = rotate(d, iv, s.offset(0));
    Integer bin = floor_of((r - iv.lo()) * kBins / iv.width());
    counts[bin.get_ui()] += 1;
  }
  double expect = static_cast<double>(keys) / kBins, stat = 0;
  for (double c : counts) stat += (c - expect) * (c - expect) / expect;
  boost::math::chi_squared dist(kBins - 1);
  double pvalue = boost::math::cdf(boost::math::complement(dist, stat));
  return {pvalue > 0.01, fmt("chi2 = %.2f, df = 31, p = %.4f (> 0.01)", stat, pvalue)};
}

Outcome inverse_rotation() {
  std::mt19937_64 rng(31337);
  int bad = 0;
  auto big = [&](int words) {
    Integer x = 0;
    for (int i = 0; i < words; ++i) x = x * Integer("18446744073709551616") + Integer(std::to_string(rng()));
    return x;
  };
  for (int i = 0; i < 10000; ++i) {
    ExactNumber lo = make_exact(big(2) - big(2), big(1) + 1);
    ExactNumber width = make_exact(big(3) + 1, big(2) + 1);
    Interval iv(lo, lo + width);
    ExactNumber d = lo + width * make_exact(big(1), Integer("18446744073709551616"));
    ExactNumber o = make_exact(big(2), pow2(128));
    ExactNumber r = rotate(d, iv, o);
    if (!iv.contains(r) || rotate_inverse(r, iv, o) != d) ++bad;
  }
  return {bad == 0, std::to_string(bad) + " mismatches in 10000 triples"};
}

Outcome shrinkage_law() {
  const auto& p = corpus_provider();
  std::size_t steps = 0, bad = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    std::size_t l = i % 2 ? 128 : 32;
    auto [key, m] = bench_trial_inputs(99, l, i);
    Context ctx(corpus_prompt());
    auto r = embed_rrc(p, ctx, key, m);
    ExactNumber product = 1;
    for (const auto& s : r.trace.steps) {
      product *= p.next_distribution(ctx).probs()[s.index];
      ++steps;
      if (s.after.width() != ExactNumber(pow2(l)) * product) ++bad;
      ctx.append(s.token);
    }
  }
  return {bad == 0 && steps > 0, std::to_string(bad) + " violations over " + std::to_string(steps) + " traced steps"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_data = argv[1];
  if (argc > 2) g_fixtures = argv[2];
  std::printf("rrcstego acceptance suite\n");
  report("round-trip-ngram", round_trip);
  report("exhaustive-8bit", exhaustive);
  report("zero-kl", zero_kl);
  report("vanilla-distortion", distortion);
  report("termination-sufficiency", termination_sufficiency);
  report("utilization", utilization);
  report("rotation-uniformity", rotation_uniformity);
  report("inverse-rotation", inverse_rotation);
  report("shrinkage-law", shrinkage_law);
  std::printf("%d criteria failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
