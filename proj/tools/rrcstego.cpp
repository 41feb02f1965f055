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

// rrcstego command-line tool.
//
// Exit codes: 0 success, 1 usage, 2 codec error, 3 provider error.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rrcstego/rrcstego.hpp"

namespace {

using namespace rrcstego;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitCodec = 2;
constexpr int kExitProvider = 3;

constexpr const char* kKeyFileEnv = "RRCSTEGO_KEY_FILE";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << data;
}

std::string trim(std::string s) {
  const char* ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

// Options shared by every codec-driving subcommand.
struct Common {
  std::string provider;
  std::string codec = "rrc";
  std::string key_hex;
  std::string key_file;
  std::size_t bits = 0;
  std::string prompt;
  std::string context_ids;
  unsigned offset_resolution = OffsetStream::kDefaultResolution;
  std::size_t max_steps_per_bit = 64;
  bool probe_determinism = false;
  std::string session = "rrcstego";

  void add_provider(CLI::App* cmd) {
    cmd->add_option("-p,--provider", provider, "table:PATH, ngram:PATH, remote:tcp:HOST:PORT or remote:exec:CMD")
        ->required();
    cmd->add_option("--session", session, "session label sent to remote providers");
    cmd->add_flag("--probe-determinism", probe_determinism,
                  "send every remote request twice and require identical replies");
  }

  void add_codec(CLI::App* cmd, bool need_bits = true) {
    add_provider(cmd);
    cmd->add_option("-c,--codec", codec, "rrc or vanilla")->check(CLI::IsMember({"rrc", "vanilla"}));
    cmd->add_option("-k,--key", key_hex, "key as hex");
    cmd->add_option("--key-file", key_file, std::string("file holding the key as hex (default $") + kKeyFileEnv + ")");
    auto* l = cmd->add_option("-l,--bits", bits, "message length in bits")->check(CLI::PositiveNumber);
    if (need_bits) l->required();
    cmd->add_option("--prompt", prompt, "prompt text, tokenized by the provider");
    cmd->add_option("--context-ids", context_ids, "prompt as comma-separated token ids");
    cmd->add_option("--offset-resolution", offset_resolution, "offset resolution in bits")
        ->check(CLI::Range(1U, OffsetStream::kMaxResolution));
    cmd->add_option("--max-steps-per-bit", max_steps_per_bit, "token cap per message bit")
        ->check(CLI::PositiveNumber);
  }

  std::unique_ptr<Provider> open() const {
    RemoteOptions ro;
    ro.session = session;
    ro.probe_determinism = probe_determinism;
    return open_provider(ProviderDescriptor::parse(provider), ro);
  }

  // Bench-style commands draw a key per trial, so need_key is false there.
  CodecConfig config(bool need_key = true) const {
    CodecConfig c;
    c.kind = parse_codec_kind(codec);
    c.offset_resolution = offset_resolution;
    c.max_steps_per_bit = max_steps_per_bit;
    std::string hex;
    if (!key_hex.empty() && !key_file.empty()) throw UsageError("give --key or --key-file, not both");
    if (!key_hex.empty()) {
      hex = key_hex;
    } else if (!key_file.empty()) {
      hex = trim(read_file(key_file));
    } else if (need_key && c.kind == CodecKind::kRrc) {
      if (const char* env = std::getenv(kKeyFileEnv); env && *env) hex = trim(read_file(env));
    }
    if (!hex.empty()) {
      try {
        c.key = StegoKey::from_hex(hex);
      } catch (const Error& e) {
        throw UsageError(std::string("bad key: ") + e.what());
      }
    }
    if (need_key && c.kind == CodecKind::kRrc && !c.key) {
      throw UsageError(std::string("codec rrc needs --key, --key-file or $") + kKeyFileEnv);
    }
    if (c.kind == CodecKind::kVanilla && c.key) throw UsageError("codec vanilla takes no key");
    return c;
  }

  std::vector<TokenId> prompt_ids(const Provider& p) const {
    if (!prompt.empty() && !context_ids.empty()) throw UsageError("give --prompt or --context-ids, not both");
    if (!prompt.empty()) return p.tokenize(prompt);
    std::vector<TokenId> ids;
    if (context_ids.empty()) return ids;
    std::stringstream ss(context_ids);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        ids.push_back(static_cast<TokenId>(v));
      } catch (const std::exception&) {
        throw UsageError("bad token id '" + item + "' in --context-ids");
      }
    }
    return ids;
  }
};

struct MessageSource {
  std::string hex;
  std::string bits;
  std::string file;
  bool random = false;
  std::optional<std::uint64_t> seed;

  void add(CLI::App* cmd, const std::string& prefix, const std::string& what) {
    auto* h = cmd->add_option("--" + prefix + "-hex", hex, what + " as hex");
    auto* b = cmd->add_option("--" + prefix + "-bits", bits, what + " as a 0/1 string");
    auto* f = cmd->add_option("--" + prefix + "-file", file, what + " as raw bytes, MSB first");
    h->excludes(b)->excludes(f);
    b->excludes(f);
  }

  void add_random(CLI::App* cmd) {
    cmd->add_flag("--random-message", random, "draw the message from --seed");
    cmd->add_option("--seed", seed, "seed for --random-message");
  }

  bool given() const { return !hex.empty() || !bits.empty() || !file.empty() || random; }

  BitString load(std::size_t l) const {
    int sources = !hex.empty() + !bits.empty() + !file.empty() + random;
    if (sources != 1) throw UsageError("give exactly one message source");
    try {
      if (!hex.empty()) return BitString::from_hex(hex, l);
      if (!bits.empty()) {
        if (bits.size() != l) {
          throw UsageError("message has " + std::to_string(bits.size()) + " bits but --bits is " +
                           std::to_string(l));
        }
        return BitString(bits);
      }
      if (!file.empty()) {
        std::string data = read_file(file);
        std::vector<std::uint8_t> bytes(data.begin(), data.end());
        return BitString::from_bytes(bytes, l);
      }
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (!seed) throw UsageError("--random-message needs --seed");
    std::mt19937_64 rng(*seed);
    std::string s(l, '0');
    for (auto& c : s) c = (rng() & 1U) ? '1' : '0';
    return BitString(s);
  }
};

void emit_json(const nlohmann::json& j, const std::string& path, bool append = false) {
  if (path.empty() || path == "-") {
    std::cout << j.dump() << '\n';
    return;
  }
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump() << '\n';
}

std::vector<std::size_t> parse_lengths(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size() || v <= 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError("bad message length '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("no message lengths given");
  return out;
}

int run_embed(const Common& common, const MessageSource& msg, const std::string& out_path,
              const std::string& report_path, const std::string& text_path) {
  CodecConfig config = common.config();
  BitString message = msg.load(common.bits);
  auto provider = common.open();
  Context ctx(common.prompt_ids(*provider));
  SessionRecorder recorder(config.kind == CodecKind::kRrc);
  auto start = std::chrono::steady_clock::now();
  EmbedResult r = embed(*provider, ctx, config, message, recorder.observer());
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_stegotext(out_path, r.tokens);
  if (!text_path.empty()) {
    auto text = provider->detokenize(r.tokens);
    if (!text) throw UsageError(provider->describe() + " cannot produce surface text");
    write_file(text_path, *text);
  }
  nlohmann::json report = recorder.report(message.size(), r.tokens.size(), elapsed).to_json();
  report["codec"] = codec_name(config.kind);
  report["provider"] = provider->describe();
  if (r.trace.first_predicate_step) report["first_predicate_step"] = *r.trace.first_predicate_step;
  report["deferred_terminations"] = r.trace.deferred_terminations;
  emit_json(report, report_path);
  return kExitOk;
}

int run_extract(const Common& common, const std::string& in_path, const std::string& out_path,
                const MessageSource& expect, const std::string& report_path) {
  CodecConfig config = common.config();
  std::optional<BitString> expected;
  if (expect.given()) expected = expect.load(common.bits);
  auto provider = common.open();
  Context ctx(common.prompt_ids(*provider));
  std::vector<TokenId> tokens = read_stegotext(in_path);
  BitString bits = extract(*provider, ctx, config, common.bits, tokens);
  if (!out_path.empty()) write_file(out_path, bits.str() + "\n");
  nlohmann::json report = {{"record", "extract"},
                           {"codec", codec_name(config.kind)},
                           {"bits", bits.size()},
                           {"tokens", tokens.size()},
                           {"message_hex", bits.to_hex()}};
  if (expected) report["verified"] = (*expected == bits);
  emit_json(report, report_path);
  return kExitOk;
}

int run_bench(const Common& common, const std::vector<std::size_t>& lengths, std::size_t trials,
              std::uint64_t seed, unsigned threads, bool check_measure, const std::string& out_path,
              const char* record) {
  CodecConfig config = common.config(false);
  if (config.key) throw UsageError("bench commands derive a key per trial from --seed; drop --key");
  if (config.kind == CodecKind::kVanilla && check_measure) {
    throw UsageError("--check-measure applies to the rrc codec only");
  }
  auto provider = common.open();
  BenchOptions opts;
  opts.codec = config.kind;
  opts.lengths = lengths;
  opts.trials = trials;
  opts.seed = seed;
  opts.threads = threads;
  opts.offset_resolution = config.offset_resolution;
  opts.check_measure = check_measure;
  opts.prompt = common.prompt_ids(*provider);
  if (!out_path.empty() && out_path != "-") write_file(out_path, "");
  bool all_ok = true;
  for (const BenchRow& row : bench(*provider, opts)) {
    nlohmann::json j = row.to_json(config.kind);
    j["record"] = record;
    j["success_percent"] = 100.0 * static_cast<double>(row.trials - row.failures) / static_cast<double>(row.trials);
    emit_json(j, out_path, true);
    all_ok = all_ok && row.failures == 0 && (!check_measure || row.kl_nonzero_steps == 0);
  }
  return all_ok ? kExitOk : kExitCodec;
}

int run_analyze(const Common& common, const std::string& report_path) {
  if (common.bits == 0) throw UsageError("--bits is required");
  auto provider = common.open();
  Context ctx(common.prompt_ids(*provider));
  DistributionStep step = provider->next_distribution(ctx);
  nlohmann::json rows = nlohmann::json::array();
  for (const DistortionRow& r : analyze_vanilla_distortion(step, common.bits)) {
    rows.push_back({{"token", r.token},
                    {"integers_inside", r.integers_inside.get_str()},
                    {"model", to_fraction_string(r.model)},
                    {"induced", to_fraction_string(r.induced)},
                    {"diff", to_fraction_string(r.diff)},
                    {"induced_decimal", to_decimal_string(r.induced, 12)}});
  }
  emit_json({{"record", "distortion"}, {"bits", common.bits}, {"rows", rows}}, report_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-coding steganography toolkit"};
  app.set_config("--config", "", "TOML/INI config file; command-line flags take precedence");
  app.require_subcommand(1);

  Common common;
  MessageSource message, expect;
  std::string out_path, report_path, text_path, in_path;

  auto* embed_cmd = app.add_subcommand("embed", "hide a message in a token sequence");
  common.add_codec(embed_cmd);
  message.add(embed_cmd, "message", "message");
  message.add_random(embed_cmd);
  embed_cmd->add_option("-o,--out", out_path, "stegotext output")->required();
  embed_cmd->add_option("--report", report_path, "JSON report output (default stdout)");
  embed_cmd->add_option("--text", text_path, "surface text output");

  auto* extract_cmd = app.add_subcommand("extract", "recover a message from a stegotext");
  common.add_codec(extract_cmd);
  extract_cmd->add_option("-i,--in", in_path, "stegotext input")->required();
  extract_cmd->add_option("-o,--out", out_path, "bits output (0/1 text)");
  extract_cmd->add_option("--report", report_path, "JSON report output (default stdout)");
  expect.add(extract_cmd, "expect", "expected message");

  std::string lengths_text;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool check_measure = false;
  auto add_bench_opts = [&](CLI::App* cmd, bool many_lengths) {
    common.add_codec(cmd, !many_lengths);
    if (many_lengths) cmd->add_option("--lengths", lengths_text, "comma-separated message lengths")->required();
    cmd->add_option("-n,--trials", trials, "trials per length")->check(CLI::NonNegativeNumber);
    cmd->add_option("--seed", seed, "seed for keys and messages")->required();
    cmd->add_option("-j,--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_flag("--check-measure", check_measure, "check every step for exact measure preservation");
    cmd->add_option("--report", report_path, "JSON lines output (default stdout)");
  };
  auto* roundtrip_cmd = app.add_subcommand("roundtrip", "embed and extract random messages");
  add_bench_opts(roundtrip_cmd, false);
  auto* bench_cmd = app.add_subcommand("bench", "capacity, utilization and speed across lengths");
  add_bench_opts(bench_cmd, true);

  auto* analyze_cmd = app.add_subcommand("analyze-distortion",
                                         "distribution induced by the fixed-point codec at one step");
  common.add_provider(analyze_cmd);
  analyze_cmd->add_option("-l,--bits", common.bits, "message length")->required()->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--prompt", common.prompt, "prompt text");
  analyze_cmd->add_option("--context-ids", common.context_ids, "prompt as comma-separated token ids");
  analyze_cmd->add_option("--report", report_path, "JSON output (default stdout)");

  std::string corpus, smoothing = "1";
  std::size_t order = 2;
  auto* train_cmd = app.add_subcommand("train-ngram", "train a byte-level n-gram model");
  train_cmd->add_option("--corpus", corpus, "training text")->required();
  train_cmd->add_option("--order", order, "history length")->check(CLI::Range(1, 16));
  train_cmd->add_option("--smoothing", smoothing, "additive smoothing constant (decimal)");
  train_cmd->add_option("-o,--out", out_path, "model output")->required();

  std::size_t prompt_size = 0;
  std::string model_name = "rrcstego";
  auto* serve_cmd = app.add_subcommand("serve", "answer wire-protocol requests on stdin/stdout");
  common.add_provider(serve_cmd);
  serve_cmd->add_option("--prompt-size", prompt_size, "leading context ids treated as prompt");
  serve_cmd->add_option("--model-name", model_name, "name reported by health checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*embed_cmd) return run_embed(common, message, out_path, report_path, text_path);
    if (*extract_cmd) return run_extract(common, in_path, out_path, expect, report_path);
    if (*roundtrip_cmd) {
      return run_bench(common, {common.bits}, trials, seed, threads, check_measure, report_path, "roundtrip");
    }
    if (*bench_cmd) {
      return run_bench(common, parse_lengths(lengths_text), trials, seed, threads, check_measure, report_path,
                       "bench");
    }
    if (*analyze_cmd) return run_analyze(common, report_path);
    if (*train_cmd) {
      NgramModel::train_file(corpus, order, smoothing).save(out_path);
      return kExitOk;
    }
    if (*serve_cmd) {
      auto provider = common.open();
      std::ios::sync_with_stdio(false);
      wire::serve(*provider, std::cin, std::cout, model_name, prompt_size);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "rrcstego: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "rrcstego: " << e.what() << '\n';
    if (is_provider_error(e.code())) return kExitProvider;
    if (e.code() == ErrorCode::kInvalidArgument) return kExitUsage;
    return kExitCodec;
  } catch (const std::exception& e) {
    std::cerr << "rrcstego: " << e.what() << '\n';
    return kExitCodec;
  }
  return kExitUsage;
}
