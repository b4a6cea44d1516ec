#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace finsum {

// Token-embedding source for the embedding-similarity metric. Implementations
// must be deterministic for a given (provider_id, token sequence) and throw
// ProviderError when a sequence cannot be resolved — the metric is then
// reported as absent, never as 0.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual const std::string& provider_id() const = 0;
  virtual int dimension() const = 0;
  // One row per token, dimension() columns.
  virtual Eigen::MatrixXd embed(const std::vector<std::string>& tokens) = 0;
};

// Table-backed provider. File format: one record per line — the token, then
// `dimension` reals, space-separated; '#' comments and blank lines ignored.
// The dimension is inferred from the first record. Unknown tokens throw
// ProviderError.
class FixtureEmbeddingProvider : public EmbeddingProvider {
 public:
  FixtureEmbeddingProvider(std::unordered_map<std::string, Eigen::VectorXd> table,
                           std::string id = "fixture");
  static FixtureEmbeddingProvider from_file(const std::string& path,
                                            std::string id = "fixture");

  const std::string& provider_id() const override { return id_; }
  int dimension() const override { return dimension_; }
  Eigen::MatrixXd embed(const std::vector<std::string>& tokens) override;

 private:
  std::unordered_map<std::string, Eigen::VectorXd> table_;
  std::string id_;
  int dimension_ = 0;
};

// POST {base_url}/v1/embed with {"tokens": [...]}, expecting
// {"vectors": [[...], ...]}. Shares transport conventions with the
// summarization client (timeout, retries, bearer auth).
class RemoteEmbeddingProvider : public EmbeddingProvider {
 public:
  RemoteEmbeddingProvider(std::string base_url, std::string id = "remote",
                          double timeout_seconds = 120.0, int retries = 3,
                          int backoff_ms = 500, std::string auth_token = "");

  const std::string& provider_id() const override { return id_; }
  int dimension() const override { return dimension_; }
  Eigen::MatrixXd embed(const std::vector<std::string>& tokens) override;

 private:
  std::string base_url_;
  std::string id_;
  double timeout_seconds_;
  int retries_;
  int backoff_ms_;
  std::string auth_token_;
  int dimension_ = 0;  // learned from the first response
};

}  // namespace finsum
