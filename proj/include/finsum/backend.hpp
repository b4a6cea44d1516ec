#pragma once

#include <map>
#include <memory>
#include <string>

#include "finsum/lexrank.hpp"

namespace finsum {

struct SummarizeRequest {
  std::string id;
  std::string text;  // extractive output or (truncated) document
  int max_output_tokens = 512;
  std::string backend_id;
};

struct SummarizeResult {
  std::string id;
  std::string summary;  // strictly fewer whitespace tokens than the cap
  int latency_ms = 0;
  std::string backend_id;
};

enum class BackendKind { identity, lead_k, extractive_passthrough, remote };

struct BackendParams {
  int lead_k = 2;
  SelectionBudget budget;  // extractive_passthrough only
  std::string url;         // remote only, e.g. "http://host:8080"
  double timeout_seconds = 120.0;
  int retries = 3;
  int backoff_ms = 500;  // doubles per retry
  std::string auth_token;  // falls back to $FINSUM_AUTH_TOKEN
};

// Keep the summary under the requested cap: at most max_output_tokens - 1
// whitespace tokens survive.
std::string truncate_to_cap(std::string_view text, int max_output_tokens);

// Immutable after pipeline start; registration is not thread-safe, summarize
// is. Registering a remote backend issues a GET /v1/health probe and fails
// fast (ConfigError) when the endpoint does not answer 200.
class BackendRegistry {
 public:
  void register_backend(const std::string& id, BackendKind kind,
                        BackendParams params = {});
  bool has(const std::string& id) const { return backends_.count(id) > 0; }

  // Dispatches on req.backend_id. Unknown id -> ConfigError; remote failure
  // after retries -> TransportError carrying req.id. All results are
  // truncated to the cap on receipt.
  SummarizeResult summarize(const SummarizeRequest& req) const;

  // "identity", "lead-2", "lead-3", "extractive" (default budget).
  static BackendRegistry with_builtin_stubs();

 private:
  struct Backend {
    BackendKind kind;
    BackendParams params;
  };
  std::map<std::string, Backend> backends_;
};

}  // namespace finsum
