// src/converter.cpp
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

#include "uniasr/converter.hpp"

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <thread>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "uniasr/error.hpp"
#include "uniasr/util.hpp"

namespace uniasr {

namespace {

using json = nlohmann::json;

std::string_view trim_ascii(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_ascii_space(text[begin])) ++begin;
  while (end > begin && is_ascii_space(text[end - 1])) --end;
  return text.substr(begin, end - begin);
}

BackendReply fenced_reply(std::string_view payload) {
  BackendReply reply;
  reply.status = BackendReply::Status::kOk;
  reply.text = "```";
  reply.text += payload;
  reply.text += "```";
  return reply;
}

// Positive integer parse for response-path array segments.
bool parse_index(std::string_view segment, std::size_t* index) {
  if (segment.empty()) return false;
  std::size_t value = 0;
  for (char c : segment) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  *index = value;
  return true;
}

}  // namespace

std::string_view status_name(ConversionStatus status) {
  switch (status) {
    case ConversionStatus::kOk:
      return "ok";
    case ConversionStatus::kFormatError:
      return "format_error";
    case ConversionStatus::kBackendError:
      return "backend_error";
  }
  throw ConfigError("invalid conversion status value");
}

ConversionStatus parse_status(std::string_view name) {
  if (name == "ok") return ConversionStatus::kOk;
  if (name == "format_error") return ConversionStatus::kFormatError;
  if (name == "backend_error") return ConversionStatus::kBackendError;
  throw ConfigError("unknown conversion status: " + std::string(name));
}

std::string_view backend_kind_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::kHttp:
      return "http";
    case BackendKind::kMockIdentity:
      return "mock_identity";
    case BackendKind::kMockTable:
      return "mock_table";
  }
  throw ConfigError("invalid backend kind value");
}

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "http") return BackendKind::kHttp;
  if (name == "mock_identity") return BackendKind::kMockIdentity;
  if (name == "mock_table") return BackendKind::kMockTable;
  throw ConfigError("unknown backend kind: " + std::string(name));
}

ConverterConfig ConverterConfig::from_json_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("converter config is not valid JSON: ") +
                      e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("converter config must be a JSON object");
  }

  ConverterConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    try {
      if (key == "temperature") {
        throw ConfigError(
            "temperature is fixed at 0.0 and cannot be configured");
      } else if (key == "backend") {
        cfg.backend = parse_backend_kind(value.get<std::string>());
      } else if (key == "endpoint") {
        cfg.endpoint = value.get<std::string>();
      } else if (key == "model_name") {
        cfg.model_name = value.get<std::string>();
      } else if (key == "response_text_path") {
        cfg.response_text_path = value.get<std::string>();
      } else if (key == "max_output_tokens") {
        cfg.max_output_tokens = value.get<int>();
      } else if (key == "max_inflight") {
        cfg.max_inflight = value.get<int>();
      } else if (key == "retries") {
        cfg.retries = value.get<int>();
      } else if (key == "backoff_base_ms") {
        cfg.backoff_base = std::chrono::milliseconds(value.get<int>());
      } else if (key == "table_path") {
        cfg.table_path = value.get<std::string>();
      } else {
        throw ConfigError("unknown converter config key: " + key);
      }
    } catch (const json::exception& e) {
      throw ConfigError("converter config key \"" + key +
                        "\": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ConverterConfig ConverterConfig::from_json_file(const std::string& path) {
  return from_json_text(read_file(path));
}

void ConverterConfig::validate() const {
  if (max_inflight < 1) {
    throw ConfigError("max_inflight must be at least 1");
  }
  if (retries < 0) throw ConfigError("retries must be non-negative");
  if (backoff_base.count() < 0) {
    throw ConfigError("backoff_base_ms must be non-negative");
  }
  if (max_output_tokens < 1) {
    throw ConfigError("max_output_tokens must be positive");
  }
  if (backend == BackendKind::kHttp) {
    if (endpoint.empty()) {
      throw ConfigError("http backend requires an endpoint");
    }
    if (model_name.empty()) {
      throw ConfigError("http backend requires a model_name");
    }
    if (response_text_path.empty()) {
      throw ConfigError("http backend requires a response_text_path");
    }
  }
}

std::optional<std::string> extract_fenced(std::string_view response) {
  static constexpr std::string_view kFence = "```";
  const std::size_t open = response.find(kFence);
  if (open == std::string_view::npos) return std::nullopt;
  const std::size_t body = open + kFence.size();
  const std::size_t close = response.find(kFence, body);
  if (close == std::string_view::npos) return std::nullopt;
  return std::string(trim_ascii(response.substr(body, close - body)));
}

std::string mock_extract_payload(std::string_view prompt) {
  const std::size_t colon = prompt.rfind(": ");
  std::string_view payload =
      colon == std::string_view::npos ? prompt : prompt.substr(colon + 2);
  if (!payload.empty() && payload.back() == '.') {
    payload.remove_suffix(1);
  }
  return std::string(payload);
}

BackendReply MockIdentityBackend::complete(const std::string& prompt) {
  return fenced_reply(mock_extract_payload(prompt));
}

MockTableBackend::MockTableBackend(std::map<std::string, std::string> table)
    : table_(std::move(table)) {}

MockTableBackend MockTableBackend::from_json_file(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError("mock table \"" + path + "\" is not valid JSON: " +
                      e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("mock table \"" + path + "\" must be a JSON object");
  }
  std::map<std::string, std::string> table;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_string()) {
      throw ConfigError("mock table \"" + path + "\" entry \"" + key +
                        "\" must map to a string");
    }
    table.emplace(key, value.get<std::string>());
  }
  return MockTableBackend(std::move(table));
}

BackendReply MockTableBackend::complete(const std::string& prompt) {
  const std::string payload = mock_extract_payload(prompt);
  const auto it = table_.find(payload);
  return fenced_reply(it == table_.end() ? payload : it->second);
}

struct HttpBackend::Impl {
  std::string base;
  std::string path;
  std::string model_name;
  std::string response_text_path;
  int max_output_tokens = 0;
  std::string api_key;
};

HttpBackend::HttpBackend(const ConverterConfig& cfg)
    : impl_(std::make_unique<Impl>()) {
  const std::size_t scheme = cfg.endpoint.find("://");
  if (scheme == std::string::npos) {
    throw ConfigError("endpoint must carry a scheme: " + cfg.endpoint);
  }
  const std::size_t slash = cfg.endpoint.find('/', scheme + 3);
  if (slash == std::string::npos) {
    impl_->base = cfg.endpoint;
    impl_->path = "/";
  } else {
    impl_->base = cfg.endpoint.substr(0, slash);
    impl_->path = cfg.endpoint.substr(slash);
  }
  impl_->model_name = cfg.model_name;
  impl_->response_text_path = cfg.response_text_path;
  impl_->max_output_tokens = cfg.max_output_tokens;
  if (const char* key = std::getenv("CONVERTER_API_KEY")) {
    impl_->api_key = key;
  }
}

HttpBackend::~HttpBackend() = default;

BackendReply HttpBackend::complete(const std::string& prompt) {
  json body;
  body["model"] = impl_->model_name;
  body["messages"] = json::array({
      json{{"role", "user"}, {"content", prompt}},
  });
  body["temperature"] = ConverterConfig::temperature();
  body["max_tokens"] = impl_->max_output_tokens;

  httplib::Client client(impl_->base);
  httplib::Headers headers;
  if (!impl_->api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + impl_->api_key);
  }
  const httplib::Result res =
      client.Post(impl_->path, headers, body.dump(), "application/json");

  BackendReply reply;
  if (!res) {
    reply.status = BackendReply::Status::kTransient;
    reply.text = "connection failed: " + httplib::to_string(res.error());
    return reply;
  }
  if (res->status < 200 || res->status >= 300) {
    // Timeouts, throttling and server faults are worth retrying; other
    // client errors are not.
    const bool transient =
        res->status == 408 || res->status == 429 || res->status >= 500;
    reply.status = transient ? BackendReply::Status::kTransient
                             : BackendReply::Status::kPermanent;
    reply.text = "http status " + std::to_string(res->status) + ": " +
                 res->body.substr(0, 512);
    return reply;
  }

  json doc;
  try {
    doc = json::parse(res->body);
  } catch (const json::exception& e) {
    reply.status = BackendReply::Status::kPermanent;
    reply.text = std::string("response is not valid JSON: ") + e.what();
    return reply;
  }
  // Walk the configured dot path; integer segments index arrays.
  const json* node = &doc;
  std::string_view remaining = impl_->response_text_path;
  while (!remaining.empty()) {
    const std::size_t dot = remaining.find('.');
    const std::string_view segment = remaining.substr(0, dot);
    remaining = dot == std::string_view::npos ? std::string_view{}
                                              : remaining.substr(dot + 1);
    std::size_t index = 0;
    if (node->is_array() && parse_index(segment, &index) &&
        index < node->size()) {
      node = &(*node)[index];
    } else if (node->is_object() &&
               node->contains(std::string(segment))) {
      node = &(*node)[std::string(segment)];
    } else {
      reply.status = BackendReply::Status::kPermanent;
      reply.text = "response has no text at path \"" +
                   impl_->response_text_path + "\"";
      return reply;
    }
  }
  if (!node->is_string()) {
    reply.status = BackendReply::Status::kPermanent;
    reply.text = "response text at path \"" + impl_->response_text_path +
                 "\" is not a string";
    return reply;
  }
  reply.status = BackendReply::Status::kOk;
  reply.text = node->get<std::string>();
  return reply;
}

std::unique_ptr<ChatBackend> make_backend(const ConverterConfig& cfg) {
  switch (cfg.backend) {
    case BackendKind::kHttp:
      return std::make_unique<HttpBackend>(cfg);
    case BackendKind::kMockIdentity:
      return std::make_unique<MockIdentityBackend>();
    case BackendKind::kMockTable:
      if (cfg.table_path.empty()) {
        return std::make_unique<MockTableBackend>(
            std::map<std::string, std::string>{});
      }
      return std::make_unique<MockTableBackend>(
          MockTableBackend::from_json_file(cfg.table_path));
  }
  throw ConfigError("invalid backend kind value");
}

namespace {

// Retries transport failures only; a well-formed response that merely
// lacks a fence is a model property, not a transport fault.
BackendReply complete_with_retries(ChatBackend& backend,
                                   const std::string& prompt,
                                   const ConverterConfig& cfg,
                                   int* attempts) {
  BackendReply reply;
  for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
    if (attempt > 0 && cfg.backoff_base.count() > 0) {
      std::this_thread::sleep_for(cfg.backoff_base * (1 << (attempt - 1)));
    }
    ++*attempts;
    reply = backend.complete(prompt);
    if (reply.status != BackendReply::Status::kTransient) return reply;
  }
  return reply;
}

}  // namespace

ConversionOutcome convert(std::string record_id, const RenderedPrompt& prompt,
                          ChatBackend& backend, const ConverterConfig& cfg) {
  ConversionOutcome outcome;
  outcome.record_id = std::move(record_id);
  try {
    std::string pred;
    for (std::size_t i = 0; i < prompt.turns.size(); ++i) {
      const std::string text =
          i == 0 ? prompt.turns[i] : fill_pred(prompt.turns[i], pred);
      ++outcome.turns_used;
      const BackendReply reply =
          complete_with_retries(backend, text, cfg, &outcome.attempts);
      outcome.raw_response = reply.text;
      if (reply.status != BackendReply::Status::kOk) {
        outcome.status = ConversionStatus::kBackendError;
        return outcome;
      }
      const std::optional<std::string> extracted = extract_fenced(reply.text);
      if (!extracted) {
        outcome.status = ConversionStatus::kFormatError;
        return outcome;
      }
      pred = *extracted;
    }
    outcome.status = ConversionStatus::kOk;
    outcome.extracted = std::move(pred);
  } catch (const std::exception& e) {
    outcome.status = ConversionStatus::kBackendError;
    outcome.raw_response = std::string("conversion failed: ") + e.what();
    outcome.extracted.reset();
  }
  return outcome;
}

std::map<std::string, ConversionOutcome> convert_batch(
    const std::vector<ConversionRequest>& requests, const ConverterConfig& cfg,
    const BackendFactory& backend_factory) {
  std::map<std::string, ConversionOutcome> outcomes;
  for (const ConversionRequest& request : requests) {
    if (!outcomes.emplace(request.record_id, ConversionOutcome{}).second) {
      throw ConfigError("duplicate record id in batch: " + request.record_id);
    }
  }
  outcomes.clear();

  std::vector<ConversionOutcome> results(requests.size());
  std::atomic<std::size_t> next{0};
  const std::size_t worker_count = std::min<std::size_t>(
      static_cast<std::size_t>(cfg.max_inflight), requests.size());

  auto work = [&] {
    // Each worker owns a backend, so clients never share connections.
    const std::unique_ptr<ChatBackend> backend = backend_factory();
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= requests.size()) return;
      results[i] =
          convert(requests[i].record_id, requests[i].prompt, *backend, cfg);
    }
  };

  if (worker_count <= 1) {
    work();
  } else {
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t i = 0; i < worker_count; ++i) {
      workers.emplace_back(work);
    }
    for (std::thread& worker : workers) worker.join();
  }

  for (ConversionOutcome& outcome : results) {
    outcomes.emplace(outcome.record_id, std::move(outcome));
  }
  return outcomes;
}

std::map<std::string, ConversionOutcome> convert_batch(
    const std::vector<ConversionRequest>& requests,
    const ConverterConfig& cfg) {
  return convert_batch(requests, cfg, [&cfg] { return make_backend(cfg); });
}

}  // namespace uniasr
