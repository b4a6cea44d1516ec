#include "finsum/pipeline.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "finsum/embedding.hpp"
#include "finsum/errors.hpp"
#include "finsum/factuality.hpp"
#include "finsum/lexrank.hpp"
#include "finsum/overlap.hpp"
#include "finsum/text.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace finsum {
namespace {

std::string two_decimals(double value_times_100) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", value_times_100);
  return buf;
}

struct Fnv1a {
  std::uint64_t h = 1469598103934665603ull;
  void feed(std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0x1f;  // field separator
    h *= 1099511628211ull;
  }
  // exact match for literals; otherwise const char* would convert to bool
  void feed(const char* s) { feed(std::string_view(s)); }
  void feed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    feed(std::string_view(buf));
  }
  void feed(long long v) { feed(std::string_view(std::to_string(v))); }
  void feed(bool v) { feed(std::string_view(v ? "1" : "0")); }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
  }
};

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: bad boolean for " + key + ": " + v);
}

void run_parallel(int workers, std::size_t n,
                  const std::function<void(std::size_t)>& body) {
  workers = std::max(1, workers);
  if (workers == 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(loop);
  loop();
  for (auto& t : pool) t.join();
}

const std::array<std::string, 8> kFactualityColumns = {
    "prec_s_nu", "prec_s_u",   "prec_t_nu", "recall_t_nu",
    "f1_t_nu",   "prec_t_u",   "recall_t_u", "f1_t_u"};

std::string iso_utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file: " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::size_t nz = line.find_first_not_of(" \t\r");
    if (nz == std::string::npos || line[nz] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config " + path + ": bad line " +
                        std::to_string(lineno));
    auto trim = [](std::string s) {
      std::size_t b = s.find_first_not_of(" \t\r");
      std::size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "corpus") cfg.corpus_path = value;
      else if (key == "format") {
        if (value == "jsonl") cfg.corpus_format = CorpusFormat::jsonl;
        else if (value == "dir" || value == "directory_tree")
          cfg.corpus_format = CorpusFormat::directory_tree;
        else throw ConfigError("config: unknown format " + value);
      }
      else if (key == "min_doc_tokens") cfg.min_doc_tokens = std::stoi(value);
      else if (key == "min_ref_tokens") cfg.min_ref_tokens = std::stoi(value);
      else if (key == "extract") cfg.extract = parse_bool(value, key);
      else if (key == "max_sentences") cfg.budget.max_sentences = std::stoi(value);
      else if (key == "max_tokens") cfg.budget.max_tokens = std::stoi(value);
      else if (key == "damping") cfg.budget.damping = std::stod(value);
      else if (key == "epsilon") cfg.budget.epsilon = std::stod(value);
      else if (key == "max_iterations") cfg.budget.max_iterations = std::stoi(value);
      else if (key == "threshold") cfg.budget.threshold = std::stod(value);
      else if (key == "backend") cfg.backend_id = value;
      else if (key == "remote_url") cfg.remote_url = value;
      else if (key == "max_output_tokens") cfg.max_output_tokens = std::stoi(value);
      else if (key == "rouge") cfg.rouge = parse_bool(value, key);
      else if (key == "meteor") cfg.meteor = parse_bool(value, key);
      else if (key == "factuality") cfg.factuality = parse_bool(value, key);
      else if (key == "factuality_micro") cfg.factuality_micro = parse_bool(value, key);
      else if (key == "stem_matching") cfg.stem_matching = parse_bool(value, key);
      else if (key == "embed_provider") {
        auto parts = whitespace_chunks(value);
        if (parts.size() != 3)
          throw ConfigError("config: embed_provider wants 'name kind location'");
        cfg.embed_providers.push_back(
            ProviderSpec{parts[0], parts[1], parts[2]});
      }
      else if (key == "output_dir") cfg.output_dir = value;
      else if (key == "seed") cfg.seed = static_cast<unsigned>(std::stoul(value));
      else if (key == "workers") cfg.workers = std::stoi(value);
      else if (key == "timeout_seconds") cfg.timeout_seconds = std::stod(value);
      else throw ConfigError("config " + path + ": unknown key " + key);
    } catch (const std::invalid_argument&) {
      throw ConfigError("config " + path + ": bad value for " + key);
    } catch (const std::out_of_range&) {
      throw ConfigError("config " + path + ": bad value for " + key);
    }
  }
  return cfg;
}

std::string config_hash(const RunConfig& cfg) {
  Fnv1a h;
  h.feed(cfg.corpus_path);
  h.feed(cfg.corpus_format == CorpusFormat::jsonl ? "jsonl" : "dir");
  h.feed(static_cast<long long>(cfg.min_doc_tokens));
  h.feed(static_cast<long long>(cfg.min_ref_tokens));
  h.feed(cfg.extract);
  h.feed(static_cast<long long>(cfg.budget.max_sentences));
  h.feed(static_cast<long long>(cfg.budget.max_tokens));
  h.feed(cfg.budget.damping);
  h.feed(cfg.budget.epsilon);
  h.feed(static_cast<long long>(cfg.budget.max_iterations));
  if (cfg.budget.threshold) h.feed(*cfg.budget.threshold);
  else h.feed("none");
  h.feed(cfg.backend_id);
  h.feed(cfg.remote_url);
  h.feed(static_cast<long long>(cfg.max_output_tokens));
  h.feed(cfg.rouge);
  h.feed(cfg.meteor);
  h.feed(cfg.factuality);
  h.feed(cfg.factuality_micro);
  h.feed(cfg.stem_matching);
  for (const ProviderSpec& p : cfg.embed_providers) {
    h.feed(p.name);
    h.feed(p.kind);
    h.feed(p.location);
  }
  return h.hex();
}

std::vector<std::string> report_columns(const RunConfig& cfg) {
  std::vector<std::string> cols;
  if (cfg.rouge) {
    cols.push_back("rouge1_f1");
    cols.push_back("rouge2_f1");
    cols.push_back("rougeL_f1");
  }
  if (cfg.meteor) cols.push_back("meteor");
  for (const ProviderSpec& p : cfg.embed_providers)
    cols.push_back("embed_" + p.name + "_f1");
  if (cfg.factuality)
    for (const std::string& c : kFactualityColumns) cols.push_back(c);
  return cols;
}

EvalReport evaluate_predictions(
    const RunConfig& cfg, const Corpus& corpus,
    const std::map<std::string, std::string>& predictions) {
  EvalReport rep;
  rep.columns = report_columns(cfg);
  rep.config_digest = config_hash(cfg);
  rep.backend_id = cfg.backend_id;
  rep.evaluated_records = static_cast<int>(corpus.samples.size());

  struct Prov {
    std::string name;
    std::unique_ptr<EmbeddingProvider> provider;
    std::mutex mu;
  };
  std::vector<std::unique_ptr<Prov>> providers;
  for (const ProviderSpec& spec : cfg.embed_providers) {
    auto prov = std::make_unique<Prov>();
    prov->name = spec.name;
    if (spec.kind == "fixture")
      prov->provider = std::make_unique<FixtureEmbeddingProvider>(
          FixtureEmbeddingProvider::from_file(spec.location, spec.name));
    else if (spec.kind == "remote")
      prov->provider = std::make_unique<RemoteEmbeddingProvider>(
          spec.location, spec.name, cfg.timeout_seconds);
    else
      throw ConfigError("unknown embed provider kind: " + spec.kind);
    providers.push_back(std::move(prov));
  }

  const EntityExtractor extractor;
  const std::size_t n = corpus.samples.size();
  std::vector<SampleRow> rows(n);
  std::vector<FactualityCounts> counts(n);

  run_parallel(cfg.workers, n, [&](std::size_t i) {
    const Sample& s = corpus.samples[i];
    SampleRow row;
    row.id = s.id;
    auto pit = predictions.find(s.id);
    if (pit == predictions.end()) {
      row.error = "no prediction";
      rows[i] = std::move(row);
      return;
    }
    row.hypothesis = pit->second;
    try {
      const std::string hyp = clean_text(pit->second);
      const auto hyp_tokens = tokenize(hyp);
      const auto ref_tokens = tokenize(s.reference);
      if (cfg.rouge) {
        auto put = [&row](const char* name, RougeScore r) {
          row.metrics[std::string(name) + "_f1"] = r.f1;
          row.metrics[std::string(name) + "_p"] = r.precision;
          row.metrics[std::string(name) + "_r"] = r.recall;
        };
        put("rouge1", rouge_n(hyp_tokens, ref_tokens, 1, cfg.stem_matching));
        put("rouge2", rouge_n(hyp_tokens, ref_tokens, 2, cfg.stem_matching));
        put("rougeL", rouge_l(hyp_tokens, ref_tokens, cfg.stem_matching));
      }
      if (cfg.meteor) {
        MeteorDetail md = meteor_detail(hyp_tokens, ref_tokens);
        row.metrics["meteor"] = md.score;
        row.metrics["meteor_matches"] = md.matches;
        row.metrics["meteor_chunks"] = md.chunks;
      }
      if (cfg.factuality) {
        FactualityScores fx =
            score_sample(s.document, s.reference, hyp, extractor);
        row.metrics["prec_s_nu"] = fx.prec_s_nu;
        row.metrics["prec_s_u"] = fx.prec_s_u;
        row.metrics["prec_t_nu"] = fx.prec_t_nu;
        row.metrics["recall_t_nu"] = fx.recall_t_nu;
        row.metrics["f1_t_nu"] = fx.f1_t_nu;
        row.metrics["prec_t_u"] = fx.prec_t_u;
        row.metrics["recall_t_u"] = fx.recall_t_u;
        row.metrics["f1_t_u"] = fx.f1_t_u;
        if (cfg.factuality_micro)
          counts[i] = count_sample(s.document, s.reference, hyp, extractor);
      }
      for (auto& prov : providers) {
        try {
          EmbedScore es;
          {
            std::lock_guard<std::mutex> lock(prov->mu);
            es = embed_score(hyp_tokens, ref_tokens, *prov->provider);
          }
          row.metrics["embed_" + prov->name + "_f1"] = es.f1;
          row.metrics["embed_" + prov->name + "_p"] = es.precision;
          row.metrics["embed_" + prov->name + "_r"] = es.recall;
        } catch (const Error& e) {
          row.error += (row.error.empty() ? "" : "; ");
          row.error += "embed " + prov->name + ": " + e.what();
        }
      }
    } catch (const std::exception& e) {
      row.error += (row.error.empty() ? "" : "; ");
      row.error += e.what();
    }
    rows[i] = std::move(row);
  });

  // id order everywhere downstream: reports, aggregation, files
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows[a].id < rows[b].id;
  });
  rep.rows.reserve(n);
  for (std::size_t i : order) rep.rows.push_back(std::move(rows[i]));

  for (const std::string& col : rep.columns) {
    double sum = 0;
    int cnt = 0;
    for (const SampleRow& row : rep.rows) {
      auto it = row.metrics.find(col);
      if (it != row.metrics.end()) {
        sum += it->second;
        ++cnt;
      }
    }
    if (cnt > 0) rep.aggregate[col] = sum / cnt;
  }

  if (cfg.factuality && cfg.factuality_micro) {
    FactualityCounts t;
    for (std::size_t i : order) {
      const FactualityCounts& c = counts[i];
      t.s_matched_nu += c.s_matched_nu; t.s_total_nu += c.s_total_nu;
      t.s_matched_u += c.s_matched_u;   t.s_total_u += c.s_total_u;
      t.p_matched_nu += c.p_matched_nu; t.p_total_nu += c.p_total_nu;
      t.p_matched_u += c.p_matched_u;   t.p_total_u += c.p_total_u;
      t.r_matched_nu += c.r_matched_nu; t.r_total_nu += c.r_total_nu;
      t.r_matched_u += c.r_matched_u;   t.r_total_u += c.r_total_u;
    }
    auto ratio = [](int matched, int total) {
      return total > 0 ? double(matched) / double(total) : 1.0;
    };
    auto& m = rep.aggregate_micro;
    m["prec_s_nu"] = ratio(t.s_matched_nu, t.s_total_nu);
    m["prec_s_u"] = ratio(t.s_matched_u, t.s_total_u);
    m["prec_t_nu"] = ratio(t.p_matched_nu, t.p_total_nu);
    m["recall_t_nu"] = ratio(t.r_matched_nu, t.r_total_nu);
    m["f1_t_nu"] = f1_of(m["prec_t_nu"], m["recall_t_nu"]);
    m["prec_t_u"] = ratio(t.p_matched_u, t.p_total_u);
    m["recall_t_u"] = ratio(t.r_matched_u, t.r_total_u);
    m["f1_t_u"] = f1_of(m["prec_t_u"], m["recall_t_u"]);
  }
  return rep;
}

EvalReport run_pipeline(const RunConfig& cfg, const BackendRegistry& registry) {
  if (!registry.has(cfg.backend_id))
    throw ConfigError("unknown backend: " + cfg.backend_id);

  Corpus corpus = load_corpus(cfg.corpus_path, cfg.corpus_format);
  const int loaded = static_cast<int>(corpus.samples.size());
  const int skipped = corpus.skipped_records;
  Corpus filtered =
      filter_corpus(corpus, cfg.min_doc_tokens, cfg.min_ref_tokens);

  std::map<std::string, std::string> predictions;
  std::map<std::string, std::string> failures;
  std::mutex mu;
  run_parallel(cfg.workers, filtered.samples.size(), [&](std::size_t i) {
    const Sample& s = filtered.samples[i];
    std::string input = s.document;
    if (cfg.extract) {
      auto sentences = segment_sentences(s.document);
      if (!sentences.empty()) {
        std::string joined;
        for (const Sentence& sel : extract_sentences(sentences, cfg.budget)) {
          if (!joined.empty()) joined.push_back('\n');
          joined += sel.text;
        }
        input = std::move(joined);
      }
    }
    SummarizeRequest req{s.id, std::move(input), cfg.max_output_tokens,
                         cfg.backend_id};
    try {
      SummarizeResult res = registry.summarize(req);
      std::lock_guard<std::mutex> lock(mu);
      predictions[s.id] = std::move(res.summary);
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(mu);
      failures[s.id] = e.what();
    }
  });

  EvalReport rep = evaluate_predictions(cfg, filtered, predictions);
  for (SampleRow& row : rep.rows) {
    auto it = failures.find(row.id);
    if (it != failures.end()) row.error = it->second;
  }
  rep.loaded_records = loaded;
  rep.skipped_records = skipped;
  rep.evaluated_records = static_cast<int>(filtered.samples.size());
  return rep;
}

EvalReport run_pipeline(const RunConfig& cfg) {
  BackendRegistry reg;
  reg.register_backend("identity", BackendKind::identity);
  BackendParams lead2;
  lead2.lead_k = 2;
  reg.register_backend("lead-2", BackendKind::lead_k, lead2);
  BackendParams lead3;
  lead3.lead_k = 3;
  reg.register_backend("lead-3", BackendKind::lead_k, lead3);
  BackendParams ep;
  ep.budget = cfg.budget;
  reg.register_backend("extractive", BackendKind::extractive_passthrough, ep);
  if (!cfg.remote_url.empty() && !reg.has(cfg.backend_id)) {
    BackendParams rp;
    rp.url = cfg.remote_url;
    rp.timeout_seconds = cfg.timeout_seconds;
    reg.register_backend(cfg.backend_id, BackendKind::remote, rp);
  }
  return run_pipeline(cfg, reg);
}

void write_report(const EvalReport& r, const std::string& out_dir) {
  fs::create_directories(out_dir);
  auto open = [&](const char* name) {
    std::ofstream f(fs::path(out_dir) / name, std::ios::binary);
    if (!f) throw IoError(std::string("cannot write ") + name + " in " +
                          out_dir);
    return f;
  };

  {
    auto f = open("predictions.jsonl");
    for (const SampleRow& row : r.rows) {
      ordered_json j;
      j["id"] = row.id;
      j["summary"] = row.hypothesis;
      f << j.dump() << "\n";
    }
  }
  {
    auto f = open("per_sample.jsonl");
    for (const SampleRow& row : r.rows) {
      ordered_json j;
      j["id"] = row.id;
      ordered_json metrics = ordered_json::object();
      for (const auto& [k, v] : row.metrics) metrics[k] = v;
      j["metrics"] = std::move(metrics);
      ordered_json absent = ordered_json::array();
      for (const std::string& col : r.columns)
        if (!row.metrics.count(col)) absent.push_back(col);
      j["absent"] = std::move(absent);
      j["error"] = row.error;
      f << j.dump() << "\n";
    }
  }
  {
    auto f = open("aggregate.csv");
    f << "metric,value\n";
    for (const std::string& col : r.columns) {
      auto it = r.aggregate.find(col);
      f << col << ","
        << (it != r.aggregate.end() ? two_decimals(it->second * 100.0) : "NA")
        << "\n";
    }
    for (const auto& [col, v] : r.aggregate_micro)
      f << "micro_" << col << "," << two_decimals(v * 100.0) << "\n";
  }
  {
    auto f = open("report.txt");
    f << render_table(r);
  }
  {
    auto f = open("run_meta.json");
    ordered_json j;
    j["version"] = std::string(kVersion);
    j["config"] = r.config_digest;
    j["backend"] = r.backend_id;
    j["generated_at"] = iso_utc_now();
    j["loaded_records"] = r.loaded_records;
    j["skipped_records"] = r.skipped_records;
    j["evaluated_records"] = r.evaluated_records;
    f << j.dump(2) << "\n";
  }
}

std::string render_table(const EvalReport& r) {
  std::ostringstream out;
  out << "evaluation report\n";
  out << "version " << kVersion << "   config " << r.config_digest
      << "   backend " << r.backend_id << "\n";
  out << "samples: loaded " << r.loaded_records << " (skipped "
      << r.skipped_records << "), evaluated " << r.evaluated_records << "\n\n";

  std::size_t name_w = 6;
  for (const std::string& col : r.columns) name_w = std::max(name_w, col.size());
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  out << pad("metric", name_w) << "  " << pad("value", 8) << "  n\n";
  for (const std::string& col : r.columns) {
    auto it = r.aggregate.find(col);
    int n = 0;
    for (const SampleRow& row : r.rows) n += row.metrics.count(col) ? 1 : 0;
    out << pad(col, name_w) << "  "
        << pad(it != r.aggregate.end() ? two_decimals(it->second * 100.0)
                                       : "absent",
               8)
        << "  " << n << "\n";
  }
  if (!r.aggregate_micro.empty()) {
    out << "\nmicro-averaged factuality (global entity counts):\n";
    for (const auto& [col, v] : r.aggregate_micro)
      out << pad(col, name_w) << "  " << two_decimals(v * 100.0) << "\n";
  }
  out << "\nvalues are x100, macro means over samples where the metric is "
         "present.\n";
  out << "conventions: empty entity collections score vacuous 1.0 precision/"
         "recall; an f1 of 0/0 is 0; rouge/meteor match on "
         "stems; multi-word entities count as present when any non-stopword "
         "constituent appears in the target.\n";
  return out.str();
}

EvalReport load_report(const std::string& path) {
  fs::path p(path);
  if (fs::is_directory(p)) p /= "per_sample.jsonl";
  std::ifstream f(p);
  if (!f) throw IoError("cannot read report: " + p.string());

  EvalReport rep;
  std::set<std::string> cols;
  std::string line;
  while (std::getline(f, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (!j.is_object() || !j.contains("id") || !j.contains("metrics")) continue;
    SampleRow row;
    row.id = j["id"].get<std::string>();
    for (const auto& [k, v] : j["metrics"].items())
      if (v.is_number()) {
        row.metrics[k] = v.get<double>();
        cols.insert(k);
      }
    if (j.contains("error") && j["error"].is_string())
      row.error = j["error"].get<std::string>();
    rep.rows.push_back(std::move(row));
  }
  if (rep.rows.empty())
    throw IoError("no usable rows in report: " + p.string());
  std::sort(rep.rows.begin(), rep.rows.end(),
            [](const SampleRow& a, const SampleRow& b) { return a.id < b.id; });
  rep.columns.assign(cols.begin(), cols.end());
  rep.evaluated_records = static_cast<int>(rep.rows.size());
  for (const std::string& col : rep.columns) {
    double sum = 0;
    int cnt = 0;
    for (const SampleRow& row : rep.rows) {
      auto it = row.metrics.find(col);
      if (it != row.metrics.end()) {
        sum += it->second;
        ++cnt;
      }
    }
    if (cnt > 0) rep.aggregate[col] = sum / cnt;
  }

  fs::path meta = p.parent_path() / "run_meta.json";
  if (fs::is_regular_file(meta)) {
    std::ifstream mf(meta);
    std::ostringstream ss;
    ss << mf.rdbuf();
    auto j = nlohmann::json::parse(ss.str(), nullptr, false);
    if (j.is_object()) {
      if (j.contains("backend") && j["backend"].is_string())
        rep.backend_id = j["backend"].get<std::string>();
      if (j.contains("config") && j["config"].is_string())
        rep.config_digest = j["config"].get<std::string>();
    }
  }
  if (rep.backend_id.empty()) rep.backend_id = "-";
  return rep;
}

std::string compare_runs(const EvalReport& a, const EvalReport& b) {
  auto ids = [](const EvalReport& r) {
    std::vector<std::string> v;
    for (const SampleRow& row : r.rows) v.push_back(row.id);
    return v;
  };
  if (ids(a) != ids(b))
    throw std::invalid_argument("compare: reports cover different sample ids");

  std::vector<std::string> cols = a.columns;
  for (const std::string& c : b.columns)
    if (std::find(cols.begin(), cols.end(), c) == cols.end())
      cols.push_back(c);

  std::ostringstream out;
  out << "comparison: A=" << a.backend_id << "  B=" << b.backend_id << "  ("
      << a.rows.size() << " samples)\n\n";
  std::size_t name_w = 6;
  for (const std::string& c : cols) name_w = std::max(name_w, c.size());
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  out << pad("metric", name_w) << "  " << pad("A", 9) << "  " << pad("B", 9)
      << "  delta\n";
  for (const std::string& c : cols) {
    auto ia = a.aggregate.find(c);
    auto ib = b.aggregate.find(c);
    const bool ha = ia != a.aggregate.end(), hb = ib != b.aggregate.end();
    std::string va = ha ? two_decimals(ia->second * 100.0) : "absent";
    std::string vb = hb ? two_decimals(ib->second * 100.0) : "absent";
    // the better value per row gets the marker, as in a results table;
    // raw counters (match/chunk diagnostics) have no better direction
    const bool directional = c.find("_chunks") == std::string::npos &&
                             c.find("_matches") == std::string::npos;
    if (ha && hb && directional) {
      if (ia->second > ib->second) va += "*";
      else if (ib->second > ia->second) vb += "*";
    }
    out << pad(c, name_w) << "  " << pad(va, 9) << "  " << pad(vb, 9) << "  ";
    if (ha && hb)
      out << two_decimals((ib->second - ia->second) * 100.0);
    else
      out << "-";
    out << "\n";
  }
  return out.str();
}

std::string explain_sample(std::string_view source_text,
                           std::string_view ref_text,
                           std::string_view hyp_text) {
  const EntityExtractor extractor;
  EntityList source = extractor.extract(source_text);
  EntityList ref = extractor.extract(ref_text);
  EntityList hyp = extractor.extract(hyp_text);
  MatchContext src_ctx(source_text), ref_ctx(ref_text), hyp_ctx(hyp_text);

  std::ostringstream out;
  out << "hypothesis entities (" << hyp.entities.size() << "):\n";
  if (hyp.entities.empty()) out << "  (none)\n";
  for (const Entity& e : hyp.entities) {
    const bool in_src = entity_match(e, src_ctx, source);
    const bool in_ref = entity_match(e, ref_ctx, ref);
    out << "  [" << to_string(e.kind) << "] " << e.surface << " -> ";
    if (!in_src)
      out << "unsupported by source (possible hallucination)";
    else if (in_ref)
      out << "ok";
    else
      out << "supported by source, not in reference";
    out << "\n";
  }
  out << "reference entities (" << ref.entities.size() << "):\n";
  if (ref.entities.empty()) out << "  (none)\n";
  for (const Entity& e : ref.entities) {
    const bool covered = entity_match(e, hyp_ctx, hyp);
    out << "  [" << to_string(e.kind) << "] " << e.surface << " -> "
        << (covered ? "covered" : "missed") << "\n";
  }
  return out.str();
}

}  // namespace finsum
