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

// Exact rational arithmetic, half-open intervals and the cumulative
// distribution scale shared by both codecs. Nothing in this header rounds:
// every value is an mpq_class kept in canonical (reduced) form, so equality
// and ordering are exact.

#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rrcstego/error.hpp"

namespace rrcstego {

using ExactNumber = mpq_class;
using Integer = mpz_class;
using TokenId = std::uint32_t;

inline Integer pow2(unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exponent);
  return r;
}

inline Integer pow10(unsigned long exponent) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, exponent);
  return r;
}

inline ExactNumber make_exact(const Integer& num, const Integer& den) {
  ExactNumber q(num, den);
  q.canonicalize();
  return q;
}

// Parses a nonnegative decimal literal ("0.65", ".5", "3", "1.25e-3") into
// the exact rational it denotes.
inline ExactNumber parse_decimal(std::string_view text) {
  auto fail = [&]() -> ExactNumber {
    throw Error(ErrorCode::kFormat,
                "not a nonnegative decimal: '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  if (pos < text.size() && text[pos] == '+') ++pos;
  std::string digits;
  std::size_t fraction_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++fraction_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) return fail();
  long exponent = 0;
  if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size()) return fail();
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c < '0' || c > '9') return fail();
      exponent = exponent * 10 + (c - '0');
      if (exponent > 100000) return fail();
    }
    if (negative) exponent = -exponent;
  }
  if (pos != text.size()) return fail();

  Integer num(digits, 10);
  long scale = exponent - static_cast<long>(fraction_digits);
  if (scale >= 0) return ExactNumber(num * pow10(static_cast<unsigned long>(scale)));
  return make_exact(num, pow10(static_cast<unsigned long>(-scale)));
}

inline Integer floor_of(const ExactNumber& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const ExactNumber& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

// x mod m for m > 0, always in [0, m).
inline ExactNumber exact_mod(const ExactNumber& x, const ExactNumber& m) {
  if (sgn(m) <= 0) throw Error(ErrorCode::kInvalidArgument, "modulus must be positive");
  ExactNumber quotient = x / m;
  return x - ExactNumber(floor_of(quotient)) * m;
}

// Nearest integer; a fractional part of exactly 1/2 goes to the smaller one.
inline Integer round_half_down(const ExactNumber& x) {
  return ceil_of(x - ExactNumber(1, 2));
}

inline double to_double(const ExactNumber& x) { return x.get_d(); }

// Decimal rendering truncated toward zero after `digits` fractional digits.
inline std::string to_decimal_string(const ExactNumber& x, unsigned digits = 30) {
  Integer scaled = x.get_num() * pow10(digits);
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den_mpz_t());
  bool negative = sgn(q) < 0;
  if (negative) q = -q;
  std::string s = q.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = s.substr(0, s.size() - digits);
  std::string frac = s.substr(s.size() - digits);
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  return (negative ? "-" : "") + out;
}

// "p/q" or "n" for integers.
inline std::string to_fraction_string(const ExactNumber& x) { return x.get_str(); }

class Interval {
 public:
  Interval(ExactNumber lo, ExactNumber hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!(lo_ < hi_)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "interval requires lo < hi, got [" + lo_.get_str() + ", " + hi_.get_str() + ")");
    }
  }

  // [0, 2^bits): the starting range for an l-bit message.
  static Interval message_space(unsigned long bits) {
    return Interval(ExactNumber(0), ExactNumber(pow2(bits)));
  }

  const ExactNumber& lo() const { return lo_; }
  const ExactNumber& hi() const { return hi_; }
  ExactNumber width() const { return hi_ - lo_; }
  ExactNumber midpoint() const { return (lo_ + hi_) / 2; }
  bool contains(const ExactNumber& x) const { return lo_ <= x && x < hi_; }

  bool operator==(const Interval&) const = default;

 private:
  ExactNumber lo_;
  ExactNumber hi_;
};

// One generative step: the support (after pruning zeros), its exact
// probabilities, their running sum, and optionally that running sum mapped
// onto an interval.
//
// Internally the running sum is kept as integers C[0..n] over a common
// denominator S (cum[i] = C[i] / S), and a rescaled step keeps its endpoints
// as integer numerators over one shared denominator. Endpoints are only
// reduced to canonical rationals when asked for, which keeps rescaling free
// of gcd computations.
class DistributionStep {
 public:
  const std::vector<TokenId>& tokens() const { return tokens_; }
  const std::vector<ExactNumber>& probs() const { return probs_; }
  // size() + 1 entries, cum.front() == 0, cum.back() == 1.
  const std::vector<ExactNumber>& cum() const { return cum_; }
  std::size_t size() const { return tokens_.size(); }

  // cum[i] == cum_numerators()[i] / cum_denominator().
  const std::vector<Integer>& cum_numerators() const { return cum_int_; }
  const Integer& cum_denominator() const { return total_; }

  bool rescaled() const { return scale_.has_value(); }

  // scaled[i] = lo + width * cum[i] for the interval passed to rescale().
  ExactNumber scaled_at(std::size_t i) const {
    const Scale& s = scale();
    return make_exact(s.numer.at(i), s.denom);
  }

  std::optional<std::vector<ExactNumber>> scaled() const {
    if (!scale_) return std::nullopt;
    std::vector<ExactNumber> out;
    out.reserve(scale_->numer.size());
    for (const auto& n : scale_->numer) out.push_back(make_exact(n, scale_->denom));
    return out;
  }

  // Sign of scaled[i] - x, by cross-multiplication.
  int compare_scaled(std::size_t i, const ExactNumber& x) const {
    const Scale& s = scale();
    Integer lhs = s.numer.at(i) * x.get_den();
    Integer rhs = x.get_num() * s.denom;
    return cmp(lhs, rhs);
  }

  // scaled[i] == scaled_numerators()[i] / scaled_denominator() (not reduced).
  const std::vector<Integer>& scaled_numerators() const { return scale().numer; }
  const Integer& scaled_denominator() const { return scale().denom; }

  // The interval this step was rescaled onto.
  const Interval& scaled_range() const { return *scale().range; }

  std::optional<std::size_t> find(TokenId token) const {
    auto it = std::find(tokens_.begin(), tokens_.end(), token);
    if (it == tokens_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - tokens_.begin());
  }

  std::size_t index_of(TokenId token) const {
    auto idx = find(token);
    if (!idx) {
      throw Error(ErrorCode::kTokenNotInSupport,
                  "token " + std::to_string(token) + " has no probability mass at this step");
    }
    return *idx;
  }

  // [scaled[i], scaled[i + 1]); requires a rescaled step.
  Interval sub_interval(std::size_t i) const {
    if (i + 1 >= scale().numer.size()) throw Error(ErrorCode::kOutOfRange, "token index out of range");
    return Interval(scaled_at(i), scaled_at(i + 1));
  }

  // Same support and probabilities, ignoring any rescaling.
  bool same_distribution(const DistributionStep& other) const {
    return tokens_ == other.tokens_ && probs_ == other.probs_;
  }

 private:
  friend DistributionStep normalize_weights(std::vector<TokenId>, std::vector<ExactNumber>);
  friend DistributionStep rescale(DistributionStep, const Interval&);

  struct Scale {
    std::vector<Integer> numer;
    Integer denom;
    std::optional<Interval> range;
  };

  const Scale& scale() const {
    if (!scale_) throw Error(ErrorCode::kInvalidArgument, "step has not been rescaled");
    return *scale_;
  }

  std::vector<TokenId> tokens_;
  std::vector<ExactNumber> probs_;
  std::vector<ExactNumber> cum_;
  std::vector<Integer> cum_int_;
  Integer total_;
  std::optional<Scale> scale_;
};

// Prunes zero weights, divides the rest by their exact sum.
inline DistributionStep normalize_weights(std::vector<TokenId> tokens,
                                          std::vector<ExactNumber> weights) {
  if (tokens.size() != weights.size()) {
    throw Error(ErrorCode::kInvalidArgument, "token and probability counts differ");
  }
  std::unordered_set<TokenId> seen;
  DistributionStep step;
  std::vector<ExactNumber> kept;
  Integer common = 1;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!seen.insert(tokens[i]).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate token id " + std::to_string(tokens[i]));
    }
    if (sgn(weights[i]) < 0) throw Error(ErrorCode::kInvalidArgument, "negative probability");
    if (sgn(weights[i]) == 0) continue;
    if (weights[i].get_den() != common) {
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), weights[i].get_den_mpz_t());
    }
    step.tokens_.push_back(tokens[i]);
    kept.push_back(std::move(weights[i]));
  }
  if (step.tokens_.empty()) throw Error(ErrorCode::kAllZero, "every probability is zero");

  // Integer weights over the common denominator; their sum is S.
  step.cum_int_.reserve(kept.size() + 1);
  step.cum_int_.emplace_back(0);
  Integer running = 0;
  std::vector<Integer> scaled_weights;
  scaled_weights.reserve(kept.size());
  for (const auto& w : kept) {
    Integer a = w.get_num() * (common / w.get_den());
    running += a;
    step.cum_int_.push_back(running);
    scaled_weights.push_back(std::move(a));
  }
  step.total_ = running;
  step.probs_.reserve(kept.size());
  step.cum_.reserve(kept.size() + 1);
  for (const auto& a : scaled_weights) step.probs_.push_back(make_exact(a, step.total_));
  for (const auto& c : step.cum_int_) step.cum_.push_back(make_exact(c, step.total_));
  return step;
}

inline DistributionStep normalize(std::vector<TokenId> tokens,
                                  std::span<const std::string> raw_probs) {
  std::vector<ExactNumber> weights;
  weights.reserve(raw_probs.size());
  for (const auto& s : raw_probs) weights.push_back(parse_decimal(s));
  return normalize_weights(std::move(tokens), std::move(weights));
}

// Token ids default to 0..n-1.
inline DistributionStep normalize(std::span<const std::string> raw_probs) {
  std::vector<TokenId> tokens(raw_probs.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i] = static_cast<TokenId>(i);
  return normalize(std::move(tokens), raw_probs);
}

// scaled[i] = lo + width * cum[i]. With lo = A/D and width = W/D over a
// common D, scaled[i] = (A*S + W*C[i]) / (D*S), so scaled[0] = lo and
// scaled[n] = hi exactly.
inline DistributionStep rescale(DistributionStep step, const Interval& iv) {
  const ExactNumber width = iv.width();
  Integer common;
  mpz_lcm(common.get_mpz_t(), iv.lo().get_den_mpz_t(), width.get_den_mpz_t());
  const Integer a = iv.lo().get_num() * (common / iv.lo().get_den());
  const Integer w = width.get_num() * (common / width.get_den());
  const Integer base = a * step.total_;

  DistributionStep::Scale scale;
  scale.numer.reserve(step.cum_int_.size());
  for (const auto& c : step.cum_int_) scale.numer.push_back(base + w * c);
  scale.denom = common * step.total_;
  scale.range = iv;
  step.scale_ = std::move(scale);
  return step;
}

// Index i with scaled[i] <= d < scaled[i + 1], by binary search.
inline std::size_t locate(const DistributionStep& step, const ExactNumber& d) {
  if (!step.rescaled()) throw Error(ErrorCode::kInvalidArgument, "step has not been rescaled");
  const std::size_t n = step.size();
  if (step.compare_scaled(0, d) > 0 || step.compare_scaled(n, d) <= 0) {
    throw Error(ErrorCode::kOutOfRange, "point lies outside the active interval");
  }
  // Invariant: scaled[lo] <= d < scaled[hi].
  std::size_t lo = 0, hi = n;
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (step.compare_scaled(mid, d) <= 0) lo = mid;
    else hi = mid;
  }
  return lo;
}

}  // namespace rrcstego
