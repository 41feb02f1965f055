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

// Session and benchmark measurements. Entropy, capacity, utilization and
// speed are descriptive and use doubles; the divergence and distortion
// checks are claims about exact measures and stay rational.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "rrcstego/codec.hpp"

namespace rrcstego {

// Shannon entropy in bits.
inline double step_entropy(const DistributionStep& step) {
  double h = 0.0;
  for (const auto& p : step.probs()) {
    double x = p.get_d();
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

// Comparison of the model distribution with the measure a codec actually
// samples from (sub-interval width / interval width).
struct MeasureCheck {
  bool identical = true;   // exact equality of every probability
  ExactNumber l1_gap = 0;  // sum |p_i - q_i|, exact
  double kl_bits = 0.0;    // KL(p || q); +inf when q_i = 0 < p_i
};

inline MeasureCheck rrc_step_kl(std::span<const ExactNumber> probs, std::span<const ExactNumber> widths,
                                const ExactNumber& delta) {
  if (probs.size() != widths.size()) {
    throw Error(ErrorCode::kInvalidArgument, "probability and width counts differ");
  }
  if (sgn(delta) <= 0) throw Error(ErrorCode::kInvalidArgument, "interval width must be positive");
  MeasureCheck out;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    ExactNumber q = widths[i] / delta;
    if (q == probs[i]) continue;
    out.identical = false;
    out.l1_gap += abs(probs[i] - q);
    double p = probs[i].get_d();
    double qd = q.get_d();
    if (p > 0) out.kl_bits += qd > 0 ? p * std::log2(p / qd) : INFINITY;
  }
  return out;
}

// For a rescaled step: compares width_i / (R - L) with probs[i] by
// cross-multiplication on the stored endpoint numerators.
inline MeasureCheck rrc_step_kl(const DistributionStep& step) {
  const ExactNumber delta = step.scaled_range().width();
  const auto& num = step.scaled_numerators();
  const Integer& den = step.scaled_denominator();
  bool all_equal = true;
  for (std::size_t i = 0; i < step.size() && all_equal; ++i) {
    const ExactNumber& p = step.probs()[i];
    Integer lhs = (num[i + 1] - num[i]) * delta.get_den() * p.get_den();
    Integer rhs = p.get_num() * den * delta.get_num();
    all_equal = lhs == rhs;
  }
  if (all_equal) return {};
  std::vector<ExactNumber> widths;
  for (std::size_t i = 0; i < step.size(); ++i) widths.push_back(step.scaled_at(i + 1) - step.scaled_at(i));
  return rrc_step_kl(step.probs(), widths, delta);
}

struct DistortionRow {
  TokenId token = 0;
  Integer integers_inside;  // message integers falling in the sub-interval
  ExactNumber model;
  ExactNumber induced;
  ExactNumber diff;  // induced - model
};

// With the message integer uniform on {0, ..., 2^bits - 1}, the fixed-point
// codec picks token i exactly when the integer lies in its sub-interval of
// [0, 2^bits); its induced probability is the share of integers inside.
inline std::vector<DistortionRow> analyze_vanilla_distortion(const DistributionStep& step,
                                                             std::size_t bits) {
  if (bits == 0) throw Error(ErrorCode::kInvalidArgument, "message length must be positive");
  const Interval iv = Interval::message_space(bits);
  const DistributionStep scaled = rescale(step, iv);
  const Integer space = pow2(bits);
  std::vector<DistortionRow> rows;
  rows.reserve(step.size());
  Integer prev = ceil_of(scaled.scaled_at(0));
  for (std::size_t i = 0; i < step.size(); ++i) {
    Integer next = ceil_of(scaled.scaled_at(i + 1));
    DistortionRow row;
    row.token = step.tokens()[i];
    row.integers_inside = next - prev;
    row.model = step.probs()[i];
    row.induced = make_exact(row.integers_inside, space);
    row.diff = row.induced - row.model;
    rows.push_back(std::move(row));
    prev = std::move(next);
  }
  return rows;
}

struct SessionReport {
  std::size_t tokens_emitted = 0;
  std::size_t message_bits = 0;
  std::vector<double> per_step_entropy;
  std::vector<MeasureCheck> kl_per_step;
  double capacity = 0.0;     // bits per token
  double utilization = 0.0;  // percent
  double elapsed = 0.0;      // seconds

  double mean_entropy() const {
    if (per_step_entropy.empty()) return 0.0;
    return std::accumulate(per_step_entropy.begin(), per_step_entropy.end(), 0.0) /
           static_cast<double>(per_step_entropy.size());
  }

  std::size_t nonzero_kl_steps() const {
    return static_cast<std::size_t>(std::count_if(kl_per_step.begin(), kl_per_step.end(),
                                                  [](const MeasureCheck& c) { return !c.identical; }));
  }

  nlohmann::json to_json() const {
    double kl_max = 0.0;
    for (const auto& c : kl_per_step) kl_max = std::max(kl_max, c.kl_bits);
    return {{"record", "session"},
            {"tokens", tokens_emitted},
            {"bits", message_bits},
            {"capacity_bits_per_token", capacity},
            {"mean_entropy_bits", mean_entropy()},
            {"utilization_percent", utilization},
            {"elapsed_s", elapsed},
            {"kl_nonzero_steps", nonzero_kl_steps()},
            {"kl_max_bits", kl_max}};
  }
};

// Collects per-step entropy and measure checks; pass observer() to a codec.
class SessionRecorder {
 public:
  explicit SessionRecorder(bool check_measure = true) : check_measure_(check_measure) {}

  StepObserver observer() {
    return [this](const StepEvent& e) {
      entropies_.push_back(step_entropy(e.step));
      if (check_measure_) checks_.push_back(rrc_step_kl(e.step));
    };
  }

  SessionReport report(std::size_t message_bits, std::size_t tokens, double elapsed) const {
    SessionReport r;
    r.tokens_emitted = tokens;
    r.message_bits = message_bits;
    r.per_step_entropy = entropies_;
    r.kl_per_step = checks_;
    r.elapsed = elapsed;
    if (tokens > 0) {
      r.capacity = static_cast<double>(message_bits) / static_cast<double>(tokens);
      double h = r.mean_entropy();
      r.utilization = h > 0 ? r.capacity / h * 100.0 : 0.0;
    }
    return r;
  }

 private:
  bool check_measure_;
  std::vector<double> entropies_;
  std::vector<MeasureCheck> checks_;
};

struct BenchOptions {
  CodecKind codec = CodecKind::kRrc;
  std::vector<std::size_t> lengths;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  unsigned offset_resolution = OffsetStream::kDefaultResolution;
  bool check_measure = false;
  std::vector<TokenId> prompt;
};

struct BenchRow {
  std::size_t bits = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;      // codec errors plus round-trip mismatches
  std::size_t mismatches = 0;
  std::map<std::string, std::size_t> errors;
  double tokens_mean = 0.0;
  double capacity_mean = 0.0;
  double capacity_median = 0.0;
  double utilization_mean = 0.0;
  double utilization_median = 0.0;
  double speed_bits_per_s = 0.0;  // total bits / total embed time
  double runtime_mean_s = 0.0;
  double runtime_median_s = 0.0;
  std::size_t kl_nonzero_steps = 0;

  nlohmann::json to_json(CodecKind codec) const {
    return {{"record", "bench"},
            {"codec", codec_name(codec)},
            {"bits", bits},
            {"trials", trials},
            {"failures", failures},
            {"mismatches", mismatches},
            {"errors", errors},
            {"tokens_mean", tokens_mean},
            {"capacity_mean", capacity_mean},
            {"capacity_median", capacity_median},
            {"utilization_mean", utilization_mean},
            {"utilization_median", utilization_median},
            {"speed_bits_per_s", speed_bits_per_s},
            {"runtime_mean_s", runtime_mean_s},
            {"runtime_median_s", runtime_median_s},
            {"kl_nonzero_steps", kl_nonzero_steps}};
  }
};

// Key and message for trial `trial` at length `bits`; a pure function of the
// arguments so bench runs are reproducible.
inline std::pair<StegoKey, BitString> bench_trial_inputs(std::uint64_t seed, std::size_t bits,
                                                         std::size_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(bits), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<std::uint8_t> key(StegoKey::kDefaultLength);
  for (auto& b : key) b = static_cast<std::uint8_t>(rng());
  std::string msg(bits, '0');
  for (auto& c : msg) c = (rng() & 1U) ? '1' : '0';
  return {StegoKey(std::move(key)), BitString(msg)};
}

namespace detail {

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace detail

inline std::vector<BenchRow> bench(const Provider& provider, const BenchOptions& options) {
  if (options.trials == 0) throw Error(ErrorCode::kInvalidArgument, "bench needs at least one trial");
  if (options.lengths.empty()) throw Error(ErrorCode::kInvalidArgument, "bench needs a message length");

  struct Trial {
    bool ok = false;
    bool mismatch = false;
    std::string error;
    std::size_t tokens = 0;
    double capacity = 0, utilization = 0, seconds = 0;
    std::size_t kl_nonzero = 0;
  };

  std::vector<BenchRow> rows;
  for (std::size_t bits : options.lengths) {
    std::vector<Trial> trials(options.trials);
    auto run = [&](std::size_t i) {
      Trial& tr = trials[i];
      auto [key, message] = bench_trial_inputs(options.seed, bits, i);
      CodecConfig config;
      config.kind = options.codec;
      config.offset_resolution = options.offset_resolution;
      if (options.codec == CodecKind::kRrc) config.key = key;
      const Context ctx(options.prompt);
      SessionRecorder recorder(options.check_measure);
      try {
        auto start = std::chrono::steady_clock::now();
        EmbedResult r = embed(provider, ctx, config, message, recorder.observer());
        auto stop = std::chrono::steady_clock::now();
        double seconds = std::chrono::duration<double>(stop - start).count();
        SessionReport report = recorder.report(bits, r.tokens.size(), seconds);
        BitString back = extract(provider, ctx, config, bits, r.tokens);
        tr.tokens = r.tokens.size();
        tr.capacity = report.capacity;
        tr.utilization = report.utilization;
        tr.seconds = seconds;
        tr.kl_nonzero = report.nonzero_kl_steps();
        tr.mismatch = !(back == message);
        tr.ok = !tr.mismatch;
      } catch (const Error& e) {
        tr.error = std::string(error_name(e.code()));
      }
    };

    unsigned threads = std::max(1U, options.threads);
    if (threads == 1) {
      for (std::size_t i = 0; i < trials.size(); ++i) run(i);
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t i = w; i < trials.size(); i += threads) run(i);
        });
      }
      for (auto& th : pool) th.join();
    }

    BenchRow row;
    row.bits = bits;
    row.trials = trials.size();
    std::vector<double> caps, utils, secs, toks;
    double total_seconds = 0;
    for (const auto& tr : trials) {
      if (!tr.error.empty()) {
        ++row.failures;
        ++row.errors[tr.error];
        continue;
      }
      if (tr.mismatch) {
        ++row.failures;
        ++row.mismatches;
      }
      caps.push_back(tr.capacity);
      utils.push_back(tr.utilization);
      secs.push_back(tr.seconds);
      toks.push_back(static_cast<double>(tr.tokens));
      total_seconds += tr.seconds;
      row.kl_nonzero_steps += tr.kl_nonzero;
    }
    row.tokens_mean = detail::mean(toks);
    row.capacity_mean = detail::mean(caps);
    row.capacity_median = detail::median(caps);
    row.utilization_mean = detail::mean(utils);
    row.utilization_median = detail::median(utils);
    row.runtime_mean_s = detail::mean(secs);
    row.runtime_median_s = detail::median(secs);
    if (total_seconds > 0) {
      row.speed_bits_per_s = static_cast<double>(bits) * static_cast<double>(secs.size()) / total_seconds;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rrcstego
