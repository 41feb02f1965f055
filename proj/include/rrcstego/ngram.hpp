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

// Byte-level n-gram language model with add-k smoothing.
//
// Tokens are the distinct bytes of the training corpus, numbered in
// increasing byte order. For a history h of up to `order` preceding tokens
//
//   P(w | h) = (count(h, w) + k) / (count(h) + k * |V|)
//
// and a history never seen in training is shortened from the left until one
// is found (the empty history always is).

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rrcstego/provider.hpp"

namespace rrcstego {

class NgramModel {
 public:
  static constexpr std::string_view kMagic = "rrcstego-ngram v1";

  using History = std::vector<TokenId>;
  using Counts = std::map<TokenId, std::uint64_t>;

  static NgramModel train(std::string_view corpus, std::size_t order, std::string_view smoothing) {
    if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "training corpus is empty");
    if (order < 1) throw Error(ErrorCode::kInvalidArgument, "order must be at least 1");
    NgramModel m;
    m.order_ = order;
    m.set_smoothing(smoothing);

    bool present[256] = {};
    for (unsigned char c : corpus) present[c] = true;
    TokenId ids[256] = {};
    for (int b = 0; b < 256; ++b) {
      if (!present[b]) continue;
      ids[b] = static_cast<TokenId>(m.vocab_.size());
      m.vocab_.push_back(static_cast<std::uint8_t>(b));
    }
    std::vector<TokenId> seq;
    seq.reserve(corpus.size());
    for (unsigned char c : corpus) seq.push_back(ids[c]);

    for (std::size_t h = 0; h <= order; ++h) {
      for (std::size_t i = h; i < seq.size(); ++i) {
        History hist(seq.begin() + static_cast<std::ptrdiff_t>(i - h),
                     seq.begin() + static_cast<std::ptrdiff_t>(i));
        ++m.counts_[hist][seq[i]];
      }
    }
    return m;
  }

  static NgramModel train_file(const std::string& path, std::size_t order, std::string_view smoothing) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open corpus " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return train(ss.str(), order, smoothing);
  }

  // Line-oriented text; byte-identical for identical models.
  std::string serialize() const {
    std::ostringstream out;
    out << kMagic << '\n';
    out << "order " << order_ << '\n';
    out << "smoothing " << smoothing_text_ << '\n';
    out << "vocab " << vocab_.size() << '\n';
    static constexpr char kHex[] = "0123456789abcdef";
    for (auto b : vocab_) out << kHex[b >> 4] << kHex[b & 15] << '\n';
    std::size_t lines = 0;
    for (const auto& [hist, next] : counts_) lines += next.size();
    out << "counts " << lines << '\n';
    for (const auto& [hist, next] : counts_) {
      std::string h;
      if (hist.empty()) h = "-";
      for (std::size_t i = 0; i < hist.size(); ++i) {
        if (i) h += ',';
        h += std::to_string(hist[i]);
      }
      for (const auto& [tok, n] : next) out << h << ' ' << tok << ' ' << n << '\n';
    }
    out << "end\n";
    return out.str();
  }

  static NgramModel parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    auto bad = [](const std::string& why) { return Error(ErrorCode::kFormat, "n-gram model: " + why); };
    std::string line;
    if (!std::getline(in, line) || line != kMagic) throw bad("missing header");

    NgramModel m;
    std::string key;
    std::size_t n = 0;
    if (!(in >> key >> m.order_) || key != "order" || m.order_ < 1) throw bad("bad order line");
    std::string smoothing;
    if (!(in >> key >> smoothing) || key != "smoothing") throw bad("bad smoothing line");
    m.set_smoothing(smoothing);
    if (!(in >> key >> n) || key != "vocab" || n == 0 || n > 256) throw bad("bad vocab line");
    for (std::size_t i = 0; i < n; ++i) {
      std::string hex;
      if (!(in >> hex) || hex.size() != 2) throw bad("bad vocab entry");
      m.vocab_.push_back(static_cast<std::uint8_t>(std::stoul(hex, nullptr, 16)));
    }
    std::size_t lines = 0;
    if (!(in >> key >> lines) || key != "counts") throw bad("bad counts line");
    for (std::size_t i = 0; i < lines; ++i) {
      std::string h;
      TokenId tok;
      std::uint64_t c;
      if (!(in >> h >> tok >> c)) throw bad("truncated counts");
      if (tok >= n) throw bad("token id out of range");
      History hist;
      if (h != "-") {
        std::istringstream hs(h);
        std::string part;
        while (std::getline(hs, part, ',')) {
          TokenId id = static_cast<TokenId>(std::stoul(part));
          if (id >= n) throw bad("history id out of range");
          hist.push_back(id);
        }
      }
      if (hist.size() > m.order_) throw bad("history longer than order");
      m.counts_[hist][tok] = c;
    }
    if (!(in >> key) || key != "end") throw bad("missing end marker");
    if (!m.counts_.contains(History{})) throw bad("missing unigram counts");
    return m;
  }

  static NgramModel load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open n-gram model " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
    out << serialize();
  }

  std::size_t order() const { return order_; }
  const std::string& smoothing_text() const { return smoothing_text_; }
  const ExactNumber& smoothing() const { return smoothing_; }
  std::size_t vocab_size() const { return vocab_.size(); }
  const std::vector<std::uint8_t>& vocab() const { return vocab_; }

  // Longest suffix of `ctx` (at most `order` tokens) seen in training.
  History backoff_history(std::span<const TokenId> ctx) const {
    std::size_t h = std::min(order_, ctx.size());
    for (;; --h) {
      History hist(ctx.end() - static_cast<std::ptrdiff_t>(h), ctx.end());
      if (counts_.contains(hist) || h == 0) return hist;
    }
  }

  const Counts* counts_for(const History& hist) const {
    auto it = counts_.find(hist);
    return it == counts_.end() ? nullptr : &it->second;
  }

  // Unnormalized weights count(h, w) + k over the whole vocabulary.
  std::vector<ExactNumber> weights(const History& hist) const {
    std::vector<ExactNumber> w(vocab_.size(), smoothing_);
    if (const Counts* c = counts_for(hist)) {
      for (const auto& [tok, n] : *c) w[tok] += ExactNumber(static_cast<unsigned long>(n));
    }
    return w;
  }

  TokenId token_for_byte(std::uint8_t b) const {
    for (std::size_t i = 0; i < vocab_.size(); ++i) {
      if (vocab_[i] == b) return static_cast<TokenId>(i);
    }
    throw Error(ErrorCode::kInvalidArgument,
                "byte " + std::to_string(b) + " is not in the model vocabulary");
  }

 private:
  void set_smoothing(std::string_view text) {
    smoothing_ = parse_decimal(text);
    smoothing_text_ = std::string(text);
  }

  std::size_t order_ = 1;
  std::string smoothing_text_ = "0";
  ExactNumber smoothing_ = 0;
  std::vector<std::uint8_t> vocab_;
  std::map<History, Counts> counts_;
};

class NgramProvider final : public Provider {
 public:
  explicit NgramProvider(NgramModel model) : model_(std::move(model)) {}
  NgramProvider(NgramProvider&& other) noexcept : model_(std::move(other.model_)) {}

  DistributionStep next_distribution(const Context& ctx) const override {
    NgramModel::History hist = model_.backoff_history(ctx.tokens());
    {
      std::lock_guard lock(mu_);
      auto it = cache_.find(hist);
      if (it != cache_.end()) return it->second;
    }
    std::vector<TokenId> ids(model_.vocab_size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<TokenId>(i);
    DistributionStep step = normalize_weights(std::move(ids), model_.weights(hist));
    std::lock_guard lock(mu_);
    return cache_.emplace(std::move(hist), std::move(step)).first->second;
  }

  std::string describe() const override {
    return "ngram(order " + std::to_string(model_.order()) + ", k " + model_.smoothing_text() +
           ", |V| " + std::to_string(model_.vocab_size()) + ")";
  }

  std::optional<std::string> detokenize(std::span<const TokenId> tokens) const override {
    std::string out;
    out.reserve(tokens.size());
    for (auto t : tokens) {
      if (t >= model_.vocab_size()) return std::nullopt;
      out.push_back(static_cast<char>(model_.vocab()[t]));
    }
    return out;
  }

  std::vector<TokenId> tokenize(std::string_view text) const override {
    std::vector<TokenId> out;
    out.reserve(text.size());
    for (unsigned char c : text) out.push_back(model_.token_for_byte(c));
    return out;
  }

  const NgramModel& model() const { return model_; }

 private:
  struct HistoryHash {
    std::size_t operator()(const NgramModel::History& h) const noexcept {
      std::size_t seed = h.size();
      for (auto t : h) seed ^= t + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
      return seed;
    }
  };

  NgramModel model_;
  mutable std::mutex mu_;
  mutable std::unordered_map<NgramModel::History, DistributionStep, HistoryHash> cache_;
};

}  // namespace rrcstego
