#include "finsum/embedding.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "finsum/errors.hpp"

namespace finsum {

FixtureEmbeddingProvider::FixtureEmbeddingProvider(
    std::unordered_map<std::string, Eigen::VectorXd> table, std::string id)
    : table_(std::move(table)), id_(std::move(id)) {
  if (!table_.empty())
    dimension_ = static_cast<int>(table_.begin()->second.size());
  for (const auto& [token, vec] : table_)
    if (vec.size() != dimension_)
      throw ConfigError("embedding fixture: inconsistent dimension for '" +
                        token + "'");
}

FixtureEmbeddingProvider FixtureEmbeddingProvider::from_file(
    const std::string& path, std::string id) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read embedding fixture: " + path);
  std::unordered_map<std::string, Eigen::VectorXd> table;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::size_t nz = line.find_first_not_of(" \t\r");
    if (nz == std::string::npos || line[nz] == '#') continue;
    std::istringstream ls(line);
    std::string token;
    ls >> token;
    std::vector<double> vals;
    double v;
    while (ls >> v) vals.push_back(v);
    if (token.empty() || vals.empty())
      throw ConfigError("embedding fixture " + path + ": bad line " +
                        std::to_string(lineno));
    Eigen::VectorXd vec(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) vec(i) = vals[i];
    table[token] = std::move(vec);
  }
  return FixtureEmbeddingProvider(std::move(table), std::move(id));
}

Eigen::MatrixXd FixtureEmbeddingProvider::embed(
    const std::vector<std::string>& tokens) {
  Eigen::MatrixXd out(tokens.size(), dimension_);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    auto it = table_.find(tokens[i]);
    if (it == table_.end())
      throw ProviderError("provider '" + id_ + "' has no vector for token '" +
                          tokens[i] + "'");
    out.row(i) = it->second.transpose();
  }
  return out;
}

RemoteEmbeddingProvider::RemoteEmbeddingProvider(std::string base_url,
                                                 std::string id,
                                                 double timeout_seconds,
                                                 int retries, int backoff_ms,
                                                 std::string auth_token)
    : base_url_(std::move(base_url)),
      id_(std::move(id)),
      timeout_seconds_(timeout_seconds),
      retries_(retries),
      backoff_ms_(backoff_ms),
      auth_token_(std::move(auth_token)) {}

Eigen::MatrixXd RemoteEmbeddingProvider::embed(
    const std::vector<std::string>& tokens) {
  nlohmann::ordered_json body;
  body["tokens"] = tokens;
  const std::string payload = body.dump();

  std::string token = auth_token_;
  if (token.empty())
    if (const char* env = std::getenv("FINSUM_AUTH_TOKEN")) token = env;

  std::string last_error = "no attempts made";
  for (int attempt = 0; attempt <= retries_; ++attempt) {
    if (attempt > 0)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(backoff_ms_ << (attempt - 1)));
    httplib::Client cli(base_url_);
    cli.set_connection_timeout(std::chrono::duration<double>(timeout_seconds_));
    cli.set_read_timeout(std::chrono::duration<double>(timeout_seconds_));
    httplib::Headers headers;
    if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
    auto res = cli.Post("/v1/embed", headers, payload, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last_error = "http status " + std::to_string(res->status);
      continue;
    }
    auto j = nlohmann::json::parse(res->body, nullptr, false);
    if (!j.is_object() || !j.contains("vectors") || !j["vectors"].is_array() ||
        j["vectors"].size() != tokens.size()) {
      last_error = "malformed embed response";
      continue;
    }
    const auto& vectors = j["vectors"];
    int dim = dimension_;
    if (dim == 0 && !vectors.empty())
      dim = static_cast<int>(vectors[0].size());
    Eigen::MatrixXd out(tokens.size(), dim);
    bool ok = true;
    for (std::size_t i = 0; i < tokens.size() && ok; ++i) {
      if (!vectors[i].is_array() ||
          static_cast<int>(vectors[i].size()) != dim) {
        ok = false;
        break;
      }
      for (int k = 0; k < dim; ++k) {
        if (!vectors[i][k].is_number()) {
          ok = false;
          break;
        }
        out(i, k) = vectors[i][k].get<double>();
      }
    }
    if (!ok) {
      last_error = "malformed embed response";
      continue;
    }
    dimension_ = dim;
    return out;
  }
  throw ProviderError("provider '" + id_ + "': " + last_error);
}

}  // namespace finsum
