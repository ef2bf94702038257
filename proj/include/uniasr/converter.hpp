// include/uniasr/converter.hpp
//
// Copyright 2026 The uniasr Authors
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

#ifndef UNIASR_CONVERTER_HPP_
#define UNIASR_CONVERTER_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uniasr/prompts.hpp"

namespace uniasr {

enum class ConversionStatus { kOk, kFormatError, kBackendError };

// "ok", "format_error", "backend_error".
std::string_view status_name(ConversionStatus status);
ConversionStatus parse_status(std::string_view name);

struct ConversionOutcome {
  std::string record_id;
  ConversionStatus status = ConversionStatus::kBackendError;
  // Last response body, or a failure description when no body arrived.
  std::string raw_response;
  // Present iff status == kOk.
  std::optional<std::string> extracted;
  // Turns issued (prompt chaining stops early on failure).
  int turns_used = 0;
  // Requests sent including transport retries.
  int attempts = 0;
};

enum class BackendKind { kHttp, kMockIdentity, kMockTable };

// "http", "mock_identity", "mock_table".
std::string_view backend_kind_name(BackendKind kind);
BackendKind parse_backend_kind(std::string_view name);

struct ConverterConfig {
  BackendKind backend = BackendKind::kMockIdentity;
  // http backend only.
  std::string endpoint;
  std::string model_name;
  // Dot path into the response JSON where the completion text lives;
  // integer segments index arrays.
  std::string response_text_path = "choices.0.message.content";
  // Request cap forwarded to the backend; a plumbing default, not tied
  // to any reference system.
  int max_output_tokens = 512;
  int max_inflight = 4;
  // Extra attempts after the first, transport errors only.
  int retries = 2;
  std::chrono::milliseconds backoff_base{100};
  // mock_table backend only; empty means an empty table.
  std::string table_path;

  // Decoding is deterministic by contract; there is no way to set this.
  static constexpr double temperature() { return 0.0; }

  // Strict parse: unknown keys are errors, and a "temperature" key is
  // rejected outright with an explanation.
  static ConverterConfig from_json_file(const std::string& path);
  static ConverterConfig from_json_text(std::string_view text);

  void validate() const;
};

// Content of the first complete triple-backtick block, surrounding ASCII
// whitespace trimmed; nullopt when no complete block exists.
std::optional<std::string> extract_fenced(std::string_view response);

struct BackendReply {
  enum class Status {
    kOk,
    // Transport-level failure; eligible for retry.
    kTransient,
    // Terminal backend failure (bad request, malformed response).
    kPermanent,
  };
  Status status = Status::kPermanent;
  // Response text on kOk, failure description otherwise.
  std::string text;
};

// One self-contained request per call; chained turns embed their context
// so no conversation state is kept here.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual BackendReply complete(const std::string& prompt) = 0;
};

// Both mocks answer from the prompt text itself: the payload is what
// follows the final ": " up to an optional trailing ".", matching how
// every shipped template embeds its subject.
std::string mock_extract_payload(std::string_view prompt);

// Answers with the payload unchanged, wrapped in a fence.
class MockIdentityBackend : public ChatBackend {
 public:
  BackendReply complete(const std::string& prompt) override;
};

// Maps the payload through a fixed table (identity on misses), wrapped
// in a fence. The table file is a JSON object of string pairs.
class MockTableBackend : public ChatBackend {
 public:
  explicit MockTableBackend(std::map<std::string, std::string> table);
  static MockTableBackend from_json_file(const std::string& path);

  BackendReply complete(const std::string& prompt) override;

 private:
  std::map<std::string, std::string> table_;
};

// Minimal chat-completion client; request and response shapes are
// documented in docs/wire_format.md. Reads CONVERTER_API_KEY once at
// construction for bearer auth.
class HttpBackend : public ChatBackend {
 public:
  explicit HttpBackend(const ConverterConfig& cfg);
  ~HttpBackend() override;

  BackendReply complete(const std::string& prompt) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::unique_ptr<ChatBackend> make_backend(const ConverterConfig& cfg);

// Runs every turn of the prompt through the backend: response ->
// extract_fenced -> {pred} of the next turn. Transport errors retry with
// exponential backoff (cfg.retries extra attempts); a format_error never
// retries and short-circuits remaining turns. Always returns an outcome,
// never throws.
ConversionOutcome convert(std::string record_id, const RenderedPrompt& prompt,
                          ChatBackend& backend, const ConverterConfig& cfg);

struct ConversionRequest {
  std::string record_id;
  RenderedPrompt prompt;
};

using BackendFactory = std::function<std::unique_ptr<ChatBackend>()>;

// Converts requests with at most cfg.max_inflight concurrent workers,
// each holding its own backend instance. Outcomes are keyed by
// record_id, so the result is independent of completion order. Throws
// ConfigError on duplicate record ids.
std::map<std::string, ConversionOutcome> convert_batch(
    const std::vector<ConversionRequest>& requests, const ConverterConfig& cfg,
    const BackendFactory& backend_factory);

// As above with backends built by make_backend(cfg).
std::map<std::string, ConversionOutcome> convert_batch(
    const std::vector<ConversionRequest>& requests,
    const ConverterConfig& cfg);

}  // namespace uniasr

#endif  // UNIASR_CONVERTER_HPP_
