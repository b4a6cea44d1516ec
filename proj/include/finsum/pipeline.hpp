#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "finsum/backend.hpp"
#include "finsum/corpus.hpp"

namespace finsum {

struct ProviderSpec {
  std::string name;      // report column prefix ("bert", "finbert", ...)
  std::string kind;      // "fixture" | "remote"
  std::string location;  // fixture file path or service base URL
};

struct RunConfig {
  std::string corpus_path;
  CorpusFormat corpus_format = CorpusFormat::jsonl;
  int min_doc_tokens = 20;
  int min_ref_tokens = 3;
  bool extract = true;  // LexRank selection feeds the backend; off = raw text
  SelectionBudget budget;
  std::string backend_id = "extractive";
  std::string remote_url;  // used when backend_id names a remote backend
  int max_output_tokens = 512;
  bool rouge = true;
  bool meteor = true;
  bool factuality = true;
  bool factuality_micro = false;  // also report micro-averaged factuality
  bool stem_matching = true;      // surface-form ROUGE matching when false
  std::vector<ProviderSpec> embed_providers;
  std::string output_dir = "out";
  unsigned seed = 0;  // fixture generation only
  int workers = 4;
  double timeout_seconds = 120.0;
};

// Simple key = value file, '#' comments. Unknown keys -> ConfigError.
RunConfig load_run_config(const std::string& path);

// 16-hex FNV-1a digest over the semantically meaningful fields (corpus,
// filters, budget, backend, caps, metric toggles, providers). Output paths,
// seed, worker count and timeouts do not participate.
std::string config_hash(const RunConfig& cfg);

// Report schema is a pure function of the config.
std::vector<std::string> report_columns(const RunConfig& cfg);

struct SampleRow {
  std::string id;
  std::string hypothesis;
  // column -> value; a column missing here is absent (failed provider or
  // backend), which aggregation skips rather than counting as 0
  std::map<std::string, double> metrics;
  std::string error;  // provider/transport failure note, empty when clean
};

struct EvalReport {
  std::vector<std::string> columns;
  std::vector<SampleRow> rows;  // id order
  std::map<std::string, double> aggregate;  // macro mean of present values
  std::map<std::string, double> aggregate_micro;  // factuality counts ratio
  std::string config_digest;
  std::string backend_id;
  int loaded_records = 0;     // parseable records before filtering
  int skipped_records = 0;    // malformed records at load
  int evaluated_records = 0;  // after the length filter
};

// Metric evaluation of given predictions (id -> hypothesis text) against a
// corpus. Samples without a prediction are recorded with an error and no
// metric values.
EvalReport evaluate_predictions(
    const RunConfig& cfg, const Corpus& corpus,
    const std::map<std::string, std::string>& predictions);

// Full chain: load -> clean/filter -> (extract) -> summarize -> evaluate.
// Transport failures mark single samples absent; only corpus or config
// problems abort the run.
EvalReport run_pipeline(const RunConfig& cfg, const BackendRegistry& registry);
EvalReport run_pipeline(const RunConfig& cfg);  // built-in stub backends

// Writes predictions.jsonl, per_sample.jsonl, aggregate.csv, report.txt
// (all byte-deterministic for a given report) plus run_meta.json (carries
// the timestamp, hence excluded from determinism comparisons).
void write_report(const EvalReport& r, const std::string& out_dir);

// Rebuilds a report from a written per_sample.jsonl (or the directory
// containing it) for comparisons.
EvalReport load_report(const std::string& path);

// Side-by-side aggregate table with per-column deltas; the better value per
// row is marked. Reports must cover the same sample ids.
std::string compare_runs(const EvalReport& a, const EvalReport& b);

// Per-entity match decisions for one sample: each hypothesis entity is
// labelled ok / unsupported-by-source / not-in-reference, each reference
// entity found or missed — the case-study view, as text.
std::string explain_sample(std::string_view source_text,
                           std::string_view ref_text,
                           std::string_view hyp_text);

// The aligned text table written to report.txt.
std::string render_table(const EvalReport& r);

}  // namespace finsum
