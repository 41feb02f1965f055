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

// Client side of the wire protocol (see wire.hpp) over a TCP connection or
// the stdin/stdout of a child process.

#pragma once

#include <netdb.h>
#include <signal.h>
#include <sodium.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "rrcstego/wire.hpp"

namespace rrcstego {

// Bidirectional line stream over a pair of file descriptors.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void send_line(const std::string& line) = 0;
  // Next line without its '\n'; throws RemoteUnavailable on EOF.
  virtual std::string recv_line() = 0;
};

class FdChannel : public LineChannel {
 public:
  FdChannel(int read_fd, int write_fd, pid_t child = -1)
      : read_fd_(read_fd), write_fd_(write_fd), child_(child) {}
  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;

  ~FdChannel() override {
    if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
    if (read_fd_ >= 0) ::close(read_fd_);
    if (child_ > 0) {
      int status = 0;
      ::waitpid(child_, &status, 0);
    }
  }

  // Connects to host:port.
  static std::unique_ptr<FdChannel> connect_tcp(const std::string& host, const std::string& port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (int rc = ::getaddrinfo(host.c_str(), port.c_str(), &hints, &res); rc != 0) {
      throw Error(ErrorCode::kRemoteUnavailable, "resolve " + host + ": " + ::gai_strerror(rc));
    }
    int fd = -1;
    for (addrinfo* p = res; p; p = p->ai_next) {
      fd = ::socket(p->ai_family, p->ai_socktype, p->ai_protocol);
      if (fd < 0) continue;
      if (::connect(fd, p->ai_addr, p->ai_addrlen) == 0) break;
      ::close(fd);
      fd = -1;
    }
    ::freeaddrinfo(res);
    if (fd < 0) throw Error(ErrorCode::kRemoteUnavailable, "cannot connect to " + host + ":" + port);
    return std::make_unique<FdChannel>(fd, fd);
  }

  // Runs `command` under /bin/sh and talks to its stdin/stdout.
  static std::unique_ptr<FdChannel> spawn(const std::string& command) {
    int to_child[2], from_child[2];
    if (::pipe(to_child) != 0) throw Error(ErrorCode::kRemoteUnavailable, "pipe failed");
    if (::pipe(from_child) != 0) {
      ::close(to_child[0]);
      ::close(to_child[1]);
      throw Error(ErrorCode::kRemoteUnavailable, "pipe failed");
    }
    pid_t pid = ::fork();
    if (pid < 0) throw Error(ErrorCode::kRemoteUnavailable, "fork failed");
    if (pid == 0) {
      ::dup2(to_child[0], STDIN_FILENO);
      ::dup2(from_child[1], STDOUT_FILENO);
      ::close(to_child[0]);
      ::close(to_child[1]);
      ::close(from_child[0]);
      ::close(from_child[1]);
      ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::close(to_child[0]);
    ::close(from_child[1]);
    return std::make_unique<FdChannel>(from_child[0], to_child[1], pid);
  }

  void send_line(const std::string& line) override {
    std::string data = line;
    if (data.empty() || data.back() != '\n') data.push_back('\n');
    std::size_t off = 0;
    while (off < data.size()) {
      ssize_t n = ::write(write_fd_, data.data() + off, data.size() - off);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw Error(ErrorCode::kRemoteUnavailable, "write to provider failed");
      off += static_cast<std::size_t>(n);
    }
  }

  std::string recv_line() override {
    for (;;) {
      auto pos = buffer_.find('\n');
      if (pos != std::string::npos) {
        std::string line = buffer_.substr(0, pos);
        buffer_.erase(0, pos + 1);
        return line;
      }
      std::array<char, 65536> chunk;
      ssize_t n = ::read(read_fd_, chunk.data(), chunk.size());
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw Error(ErrorCode::kRemoteUnavailable, "provider closed the connection");
      buffer_.append(chunk.data(), static_cast<std::size_t>(n));
    }
  }

 private:
  int read_fd_;
  int write_fd_;
  pid_t child_;
  std::string buffer_;
};

struct RemoteOptions {
  std::string session = "rrcstego";
  // Send every request twice and require byte-identical replies.
  bool probe_determinism = false;
};

class RemoteProvider final : public Provider {
 public:
  using Options = RemoteOptions;

  RemoteProvider(std::unique_ptr<LineChannel> channel, Options options)
      : channel_(std::move(channel)), options_(std::move(options)) {
    ::signal(SIGPIPE, SIG_IGN);
    if (sodium_init() < 0) throw Error(ErrorCode::kRemoteUnavailable, "libsodium failed to initialize");
  }

  explicit RemoteProvider(std::unique_ptr<LineChannel> channel)
      : RemoteProvider(std::move(channel), Options{}) {}

  // "tcp:HOST:PORT" or "exec:COMMAND".
  static std::unique_ptr<RemoteProvider> open(const std::string& endpoint, Options options = {}) {
    if (endpoint.starts_with("tcp:")) {
      std::string rest = endpoint.substr(4);
      auto colon = rest.rfind(':');
      if (colon == std::string::npos) throw Error(ErrorCode::kInvalidArgument, "expected tcp:HOST:PORT");
      return std::make_unique<RemoteProvider>(
          FdChannel::connect_tcp(rest.substr(0, colon), rest.substr(colon + 1)), std::move(options));
    }
    if (endpoint.starts_with("exec:")) {
      return std::make_unique<RemoteProvider>(FdChannel::spawn(endpoint.substr(5)), std::move(options));
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown remote endpoint '" + endpoint + "'");
  }

  DistributionStep next_distribution(const Context& ctx) const override {
    const std::string request = wire::encode(wire::next_request(options_.session, ctx.tokens()));
    std::lock_guard lock(mu_);
    std::string reply = exchange(request);
    if (options_.probe_determinism && exchange(request) != reply) {
      throw Error(ErrorCode::kNonDeterministicResponse, "repeated request returned different bytes");
    }
    auto digest = hash(reply);
    auto [it, inserted] = seen_.emplace(hash(request), digest);
    if (!inserted && it->second != digest) {
      throw Error(ErrorCode::kNonDeterministicResponse, "context answered differently than before");
    }
    return wire::parse_dist(wire::decode(reply));
  }

  std::string health() const {
    std::lock_guard lock(mu_);
    auto j = wire::decode(exchange(wire::encode(wire::health_request())));
    if (j.at("type") != "ok") throw Error(ErrorCode::kRemoteUnavailable, "health check failed");
    return j.value("model", std::string());
  }

  std::optional<std::string> detokenize(std::span<const TokenId> tokens) const override {
    std::lock_guard lock(mu_);
    auto j = wire::decode(exchange(wire::encode(
        wire::detokenize_request(std::vector<TokenId>(tokens.begin(), tokens.end())))));
    if (j.at("type") != "text") return std::nullopt;
    return j.at("text").get<std::string>();
  }

  std::string describe() const override { return "remote(session " + options_.session + ")"; }

 private:
  using Digest = std::array<unsigned char, crypto_generichash_BYTES>;

  static Digest hash(const std::string& s) {
    Digest d;
    crypto_generichash(d.data(), d.size(), reinterpret_cast<const unsigned char*>(s.data()), s.size(),
                       nullptr, 0);
    return d;
  }

  std::string exchange(const std::string& request) const {
    channel_->send_line(request);
    return channel_->recv_line();
  }

  std::unique_ptr<LineChannel> channel_;
  Options options_;
  mutable std::mutex mu_;
  mutable std::map<Digest, Digest> seen_;
};

}  // namespace rrcstego
