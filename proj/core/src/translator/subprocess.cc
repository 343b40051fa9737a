// Copyright 2026 The sparqlbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>
#include <optional>

#include "sparqlbench/translator/translator.h"

extern char** environ;

namespace sparqlbench::translator {
namespace {

using Clock = std::chrono::steady_clock;
using K = TranslatorError::Kind;

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

}  // namespace

class SubprocessTranslator::Impl {
 public:
  explicit Impl(SubprocessOptions options) : options_(std::move(options)) {
    if (options_.argv.empty() || options_.argv[0].empty()) {
      throw std::invalid_argument("subprocess translator needs a command");
    }
    ignore_sigpipe_once();
    spawn();
  }

  ~Impl() { shutdown(); }

  std::string translate(const Request& request) {
    std::lock_guard<std::mutex> lock(mu_);
    if (failure_) throw TranslatorError(failure_->first, failure_->second);
    std::string line = encode_request(request) + "\n";
    try {
      write_all(line);
      std::string reply = read_line(Clock::now() + options_.timeout);
      return decode_response(reply, request.id);
    } catch (const TranslatorError& e) {
      if (e.kind() != K::kReported) {
        failure_ = {e.kind(), std::string(e.what())};
        shutdown();
      }
      throw;
    }
  }

 private:
  void spawn() {
    int in_pipe[2], out_pipe[2];
    if (::pipe2(in_pipe, O_CLOEXEC) != 0 || ::pipe2(out_pipe, O_CLOEXEC) != 0) {
      throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    }
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, in_pipe[0], STDIN_FILENO);
    posix_spawn_file_actions_adddup2(&actions, out_pipe[1], STDOUT_FILENO);

    std::vector<std::string> env_strings;
    for (char** e = environ; *e; ++e) {
      std::string_view kv(*e);
      std::string key(kv.substr(0, kv.find('=')));
      if (!options_.env.count(key)) env_strings.emplace_back(kv);
    }
    for (const auto& [k, v] : options_.env) env_strings.push_back(k + "=" + v);
    std::vector<char*> envp, argv;
    for (auto& s : env_strings) envp.push_back(s.data());
    envp.push_back(nullptr);
    for (auto& a : options_.argv) argv.push_back(a.data());
    argv.push_back(nullptr);

    int rc = ::posix_spawnp(&pid_, argv[0], &actions, nullptr, argv.data(), envp.data());
    posix_spawn_file_actions_destroy(&actions);
    ::close(in_pipe[0]);
    ::close(out_pipe[1]);
    if (rc != 0) {
      ::close(in_pipe[1]);
      ::close(out_pipe[0]);
      pid_ = -1;
      throw std::runtime_error("cannot start translator '" + options_.argv[0] + "': " + std::strerror(rc));
    }
    to_child_ = in_pipe[1];
    from_child_ = out_pipe[0];
  }

  void write_all(const std::string& data) {
    std::size_t off = 0;
    while (off < data.size()) {
      ssize_t n = ::write(to_child_, data.data() + off, data.size() - off);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw TranslatorError(K::kProcessExited, "translator closed its input: " + exit_description());
      off += static_cast<std::size_t>(n);
    }
  }

  std::string read_line(Clock::time_point deadline) {
    for (;;) {
      if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
      }
      auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
      if (remaining <= 0) {
        throw TranslatorError(K::kTimeout, "translator did not answer within " +
                                               std::to_string(options_.timeout.count()) + " ms");
      }
      pollfd pfd{from_child_, POLLIN, 0};
      int rc = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(remaining, 1 << 30)));
      if (rc < 0 && errno == EINTR) continue;
      if (rc == 0) continue;
      char chunk[4096];
      ssize_t n = ::read(from_child_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) throw TranslatorError(K::kProcessExited, "translator exited: " + exit_description());
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  std::string exit_description() {
    if (pid_ <= 0) return "not running";
    int status = 0;
    pid_t r = ::waitpid(pid_, &status, 0);
    if (r != pid_) return "unknown status";
    pid_ = -1;
    if (WIFEXITED(status)) return "exit code " + std::to_string(WEXITSTATUS(status));
    if (WIFSIGNALED(status)) return "signal " + std::to_string(WTERMSIG(status));
    return "unknown status";
  }

  void shutdown() {
    if (to_child_ >= 0) ::close(to_child_);
    to_child_ = -1;
    if (pid_ > 0) {
      // Closing stdin asks the child to finish; give it a moment before killing.
      for (int i = 0; i < 50; ++i) {
        int status;
        if (::waitpid(pid_, &status, WNOHANG) == pid_) {
          pid_ = -1;
          break;
        }
        ::usleep(10000);
      }
      if (pid_ > 0) {
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, nullptr, 0);
        pid_ = -1;
      }
    }
    if (from_child_ >= 0) ::close(from_child_);
    from_child_ = -1;
  }

  SubprocessOptions options_;
  std::mutex mu_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::optional<std::pair<K, std::string>> failure_;
};

SubprocessTranslator::SubprocessTranslator(std::string name, SubprocessOptions options)
    : Translator(std::move(name)), impl_(std::make_unique<Impl>(std::move(options))) {}

SubprocessTranslator::~SubprocessTranslator() = default;

std::string SubprocessTranslator::translate(const Request& request) { return impl_->translate(request); }

}  // namespace sparqlbench::translator
