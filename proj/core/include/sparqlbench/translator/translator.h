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

#ifndef SPARQLBENCH_TRANSLATOR_TRANSLATOR_H_
#define SPARQLBENCH_TRANSLATOR_TRANSLATOR_H_

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sparqlbench/dataset/dataset.h"

namespace sparqlbench::translator {

struct Request {
  std::string id;
  std::string question;
  std::string dataset;
  std::optional<int> epoch;
};

class TranslatorError : public std::runtime_error {
 public:
  enum class Kind { kTimeout, kProcessExited, kProtocolViolation, kTransport, kReported, kNoAnswer };
  TranslatorError(Kind kind, const std::string& message);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(TranslatorError::Kind kind);

// Wire forms shared by the subprocess and HTTP transports.
std::string encode_request(const Request& request);
// Returns the query, or throws TranslatorError (kReported for {id, error},
// kProtocolViolation for anything malformed or an id mismatch).
std::string decode_response(std::string_view line, const std::string& expected_id);

class Translator {
 public:
  virtual ~Translator() = default;
  const std::string& name() const { return name_; }
  // Query text with surrounding whitespace removed. Throws TranslatorError.
  virtual std::string translate(const Request& request) = 0;

 protected:
  explicit Translator(std::string name);

 private:
  std::string name_;
};

// Returns each record's gold query. Paraphrase items ("<id>#p") map to their record.
class GoldOracle : public Translator {
 public:
  GoldOracle(std::string name, const dataset::Dataset& dataset);
  std::string translate(const Request& request) override;

 private:
  std::map<std::string, std::string> gold_;
};

// Echoes the question.
class NullTranslator : public Translator {
 public:
  explicit NullTranslator(std::string name);
  std::string translate(const Request& request) override;
};

// Lowercased alphanumeric runs.
std::vector<std::string> tokenize(std::string_view text);
double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Gold query of the most similar training question; ties go to the smallest id.
std::string retrieval_baseline(const std::vector<dataset::Record>& train, std::string_view question);

class RetrievalTranslator : public Translator {
 public:
  RetrievalTranslator(std::string name, std::vector<dataset::Record> train);
  std::string translate(const Request& request) override;

 private:
  std::vector<dataset::Record> train_;
};

// Replays an NDJSON transcript of {id, epoch?, query} or {id, epoch?, error}.
// An entry with a matching epoch wins over one without an epoch.
class TranscriptTranslator : public Translator {
 public:
  TranscriptTranslator(std::string name, const std::filesystem::path& path);
  static std::unique_ptr<TranscriptTranslator> from_text(std::string name, std::string_view ndjson);
  std::string translate(const Request& request) override;
  std::size_t size() const { return entries_.size(); }

 private:
  struct Entry {
    std::optional<std::string> query;
    std::string error;
  };
  TranscriptTranslator(std::string name, std::string_view ndjson, const std::string& source);
  std::map<std::pair<std::string, int>, Entry> entries_;  // epoch -1 = any
};

struct SubprocessOptions {
  std::vector<std::string> argv;
  std::map<std::string, std::string> env;  // added to the inherited environment
  std::chrono::milliseconds timeout{60000};
};

// Speaks NDJSON over the child's stdin/stdout; stderr is inherited. After a
// timeout, protocol violation or exit the child is killed and every later
// request fails with the recorded cause.
class SubprocessTranslator : public Translator {
 public:
  SubprocessTranslator(std::string name, SubprocessOptions options);
  ~SubprocessTranslator() override;
  SubprocessTranslator(const SubprocessTranslator&) = delete;
  SubprocessTranslator& operator=(const SubprocessTranslator&) = delete;

  std::string translate(const Request& request) override;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

// POSTs the request JSON to <url>/translate.
class HttpTranslator : public Translator {
 public:
  HttpTranslator(std::string name, std::string url, std::chrono::milliseconds timeout);
  std::string translate(const Request& request) override;

 private:
  std::string url_;
  std::chrono::milliseconds timeout_;
};

struct TranslatorSpec {
  enum class Type { kGold, kNull, kRetrieval, kTranscript, kSubprocess, kHttp };
  std::string name;
  Type type = Type::kGold;
  std::filesystem::path transcript;
  SubprocessOptions subprocess;
  std::string url;
  std::chrono::milliseconds timeout{60000};
};

// Short forms accepted on the command line, optionally prefixed with "NAME=":
//   gold | null | retrieval | transcript:PATH | cmd:PROGRAM [ARGS...] | http(s)://HOST[:PORT]
TranslatorSpec parse_translator_spec(std::string_view text);

// Training-side data comes from the dataset's train split sorted by id.
std::unique_ptr<Translator> make_translator(const TranslatorSpec& spec, const dataset::Dataset& dataset);

}  // namespace sparqlbench::translator

#endif  // SPARQLBENCH_TRANSLATOR_TRANSLATOR_H_
