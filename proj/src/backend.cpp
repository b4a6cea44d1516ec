#include "finsum/backend.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "finsum/errors.hpp"
#include "finsum/text.hpp"

namespace finsum {
namespace {

std::string join(const std::vector<Sentence>& sentences, char sep) {
  std::string out;
  for (const Sentence& s : sentences) {
    if (!out.empty()) out.push_back(sep);
    out += s.text;
  }
  return out;
}

std::string resolve_token(const BackendParams& params) {
  if (!params.auth_token.empty()) return params.auth_token;
  if (const char* env = std::getenv("FINSUM_AUTH_TOKEN")) return env;
  return {};
}

std::string remote_summarize(const BackendParams& params,
                             const SummarizeRequest& req) {
  nlohmann::ordered_json body;
  body["id"] = req.id;
  body["text"] = req.text;
  body["max_output_tokens"] = req.max_output_tokens;
  const std::string payload = body.dump();
  const std::string token = resolve_token(params);

  std::string last_error = "no attempts made";
  for (int attempt = 0; attempt <= params.retries; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(params.backoff_ms << (attempt - 1)));
    httplib::Client cli(params.url);
    cli.set_connection_timeout(
        std::chrono::duration<double>(params.timeout_seconds));
    cli.set_read_timeout(std::chrono::duration<double>(params.timeout_seconds));
    httplib::Headers headers;
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
    auto res = cli.Post("/v1/summarize", headers, payload, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "http status " + std::to_string(res->status);
      continue;
    }
    auto j = nlohmann::json::parse(res->body, nullptr, false);
    if (!j.is_object() || !j.contains("summary") || !j["summary"].is_string()) {
      last_error = "malformed summarize response";
      continue;
    }
    return j["summary"].get<std::string>();
  }
  throw TransportError("backend '" + req.backend_id + "': " + last_error,
                       req.id);
}

}  // namespace

std::string truncate_to_cap(std::string_view text, int max_output_tokens) {
  std::vector<std::string> chunks = whitespace_chunks(text);
  if (static_cast<int>(chunks.size()) < max_output_tokens)
    return std::string(text);
  std::string out;
  for (int i = 0; i + 1 < max_output_tokens; ++i) {
    if (i) out.push_back(' ');
    out += chunks[i];
  }
  return out;
}

void BackendRegistry::register_backend(const std::string& id, BackendKind kind,
                                       BackendParams params) {
  if (backends_.count(id))
    throw ConfigError("backend id already registered: " + id);
  if (kind == BackendKind::remote) {
    if (params.url.empty())
      throw ConfigError("remote backend '" + id + "' needs a url");
    httplib::Client cli(params.url);
    cli.set_connection_timeout(
        std::chrono::duration<double>(params.timeout_seconds));
    cli.set_read_timeout(std::chrono::duration<double>(params.timeout_seconds));
    auto res = cli.Get("/v1/health");
    if (!res || res->status != 200)
      throw ConfigError("remote backend '" + id + "' failed health check at " +
                        params.url);
  }
  backends_.emplace(id, Backend{kind, std::move(params)});
}

SummarizeResult BackendRegistry::summarize(const SummarizeRequest& req) const {
  auto it = backends_.find(req.backend_id);
  if (it == backends_.end())
    throw ConfigError("unknown backend: " + req.backend_id);
  const Backend& b = it->second;

  SummarizeResult out;
  out.id = req.id;
  out.backend_id = req.backend_id;

  std::string summary;
  switch (b.kind) {
    case BackendKind::identity:
      summary = req.text;
      break;
    case BackendKind::lead_k: {
      auto sentences = segment_sentences(clean_text(req.text));
      if (static_cast<int>(sentences.size()) > b.params.lead_k)
        sentences.resize(b.params.lead_k);
      summary = join(sentences, ' ');
      break;
    }
    case BackendKind::extractive_passthrough: {
      auto sentences = segment_sentences(clean_text(req.text));
      if (!sentences.empty())
        summary = join(extract_sentences(sentences, b.params.budget), '\n');
      break;
    }
    case BackendKind::remote: {
      auto t0 = std::chrono::steady_clock::now();
      summary = remote_summarize(b.params, req);
      out.latency_ms = static_cast<int>(
          std::chrono::duration_cast<std::chrono::milliseconds>(
              std::chrono::steady_clock::now() - t0)
              .count());
      break;
    }
  }
  out.summary = truncate_to_cap(summary, req.max_output_tokens);
  return out;
}

BackendRegistry BackendRegistry::with_builtin_stubs() {
  BackendRegistry r;
  r.register_backend("identity", BackendKind::identity);
  BackendParams lead2;
  lead2.lead_k = 2;
  r.register_backend("lead-2", BackendKind::lead_k, lead2);
  BackendParams lead3;
  lead3.lead_k = 3;
  r.register_backend("lead-3", BackendKind::lead_k, lead3);
  r.register_backend("extractive", BackendKind::extractive_passthrough);
  return r;
}

}  // namespace finsum
