// finsum: corpus ingestion, extractive selection, summarization backends and
// metric reports behind one binary. Each pipeline stage is its own subcommand
// so intermediate artifacts can be inspected.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "finsum/corpus.hpp"
#include "finsum/errors.hpp"
#include "finsum/lexrank.hpp"
#include "finsum/pipeline.hpp"
#include "finsum/text.hpp"

using namespace finsum;
using ordered_json = nlohmann::ordered_json;

namespace {

CorpusFormat parse_format(const std::string& s) {
  if (s == "jsonl") return CorpusFormat::jsonl;
  if (s == "dir" || s == "directory_tree") return CorpusFormat::directory_tree;
  throw ConfigError("unknown corpus format: " + s);
}

ProviderSpec parse_provider(const std::string& s) {
  // name:kind:location — location may itself contain ':' (URLs)
  auto c1 = s.find(':');
  auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw ConfigError("--embed-provider wants name:kind:location, got " + s);
  ProviderSpec spec{s.substr(0, c1), s.substr(c1 + 1, c2 - c1 - 1),
                    s.substr(c2 + 1)};
  if (spec.kind != "fixture" && spec.kind != "remote")
    throw ConfigError("embed provider kind must be fixture or remote: " + s);
  return spec;
}

// Every flag is optional on the command line; whatever the user sets wins
// over the config file, which wins over the defaults.
struct RunFlags {
  std::string config_path;
  std::string corpus, format, backend, remote_url, output_dir;
  int min_doc_tokens = 0, min_ref_tokens = 0, max_sentences = 0,
      max_tokens = 0, max_iterations = 0, max_output_tokens = 0, workers = 0;
  double damping = 0, epsilon = 0, threshold = 0, timeout = 0;
  bool no_extract = false, no_rouge = false, no_meteor = false,
       no_factuality = false, micro = false, surface = false;
  std::vector<std::string> providers;

  CLI::App* cmd = nullptr;

  void add_to(CLI::App* c, bool with_outputs) {
    cmd = c;
    c->add_option("--config", config_path, "key=value config file");
    c->add_option("--corpus", corpus, "corpus path");
    c->add_option("--format", format, "jsonl | dir")
        ->check(CLI::IsMember({"jsonl", "dir", "directory_tree"}));
    c->add_option("--min-doc-tokens", min_doc_tokens,
                  "document length floor (whitespace tokens)");
    c->add_option("--min-ref-tokens", min_ref_tokens,
                  "reference length floor");
    c->add_flag("--no-extract", no_extract,
                "feed the backend raw documents, skip sentence selection");
    c->add_option("--max-sentences", max_sentences, "selection sentence cap");
    c->add_option("--max-tokens", max_tokens, "selection token cap");
    c->add_option("--damping", damping, "centrality damping factor");
    c->add_option("--epsilon", epsilon, "power iteration tolerance");
    c->add_option("--max-iterations", max_iterations,
                  "power iteration cap");
    c->add_option("--threshold", threshold,
                  "binary similarity-graph cutoff (default: continuous)");
    c->add_option("--backend", backend,
                  "identity | lead-2 | lead-3 | extractive | <remote id>");
    c->add_option("--remote-url", remote_url,
                  "base URL when --backend names a remote service");
    c->add_option("--max-output-tokens", max_output_tokens,
                  "summary token cap");
    if (with_outputs) {
      c->add_flag("--no-rouge", no_rouge, "skip rouge columns");
      c->add_flag("--no-meteor", no_meteor, "skip the meteor column");
      c->add_flag("--no-factuality", no_factuality,
                  "skip entity factuality columns");
      c->add_flag("--micro", micro,
                  "also micro-average factuality over global entity counts");
      c->add_flag("--surface", surface,
                  "rouge on surface forms instead of stems");
      c->add_option("--embed-provider", providers,
                    "name:kind:location (kind fixture|remote), repeatable");
      c->add_option("--out-dir", output_dir, "report directory");
    }
    c->add_option("--workers", workers, "worker threads");
    c->add_option("--timeout", timeout, "remote timeout, seconds");
  }

  bool set(const char* name) const {
    const CLI::Option* o = cmd->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  }

  RunConfig resolve() const {
    RunConfig cfg =
        config_path.empty() ? RunConfig{} : load_run_config(config_path);
    if (set("--corpus")) cfg.corpus_path = corpus;
    if (set("--format")) cfg.corpus_format = parse_format(format);
    if (set("--min-doc-tokens")) cfg.min_doc_tokens = min_doc_tokens;
    if (set("--min-ref-tokens")) cfg.min_ref_tokens = min_ref_tokens;
    if (no_extract) cfg.extract = false;
    if (set("--max-sentences")) cfg.budget.max_sentences = max_sentences;
    if (set("--max-tokens")) cfg.budget.max_tokens = max_tokens;
    if (set("--damping")) cfg.budget.damping = damping;
    if (set("--epsilon")) cfg.budget.epsilon = epsilon;
    if (set("--max-iterations")) cfg.budget.max_iterations = max_iterations;
    if (set("--threshold")) cfg.budget.threshold = threshold;
    if (set("--backend")) cfg.backend_id = backend;
    if (set("--remote-url")) cfg.remote_url = remote_url;
    if (set("--max-output-tokens")) cfg.max_output_tokens = max_output_tokens;
    if (no_rouge) cfg.rouge = false;
    if (no_meteor) cfg.meteor = false;
    if (no_factuality) cfg.factuality = false;
    if (micro) cfg.factuality_micro = true;
    if (surface) cfg.stem_matching = false;
    for (const std::string& p : providers)
      cfg.embed_providers.push_back(parse_provider(p));
    if (set("--out-dir")) cfg.output_dir = output_dir;
    if (set("--workers")) cfg.workers = workers;
    if (set("--timeout")) cfg.timeout_seconds = timeout;
    if (cfg.corpus_path.empty())
      throw ConfigError("no corpus given (--corpus or config file)");
    return cfg;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::map<std::string, std::string> load_predictions(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read predictions: " + path);
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(f, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (!j.is_object() || !j.contains("id") || !j.contains("summary"))
      throw ConfigError("predictions line without id/summary in " + path);
    out[j["id"].get<std::string>()] = j["summary"].get<std::string>();
  }
  return out;
}

void print_stats(const Corpus& pre, const Corpus& post) {
  CorpusStats stats = corpus_stats(post);
  std::printf("loaded %zu samples (%d malformed records skipped), retained %zu after length filter\n\n",
              pre.samples.size(), pre.skipped_records, post.samples.size());
  std::printf("%-12s  %8s  %16s  %16s\n", "split", "samples", "mean doc tokens",
              "mean ref tokens");
  for (Split s : {Split::train, Split::validation, Split::test}) {
    const SplitStats& st = stats.for_split(s);
    char docs[32] = "-", refs[32] = "-";
    if (st.mean_document_tokens)
      std::snprintf(docs, sizeof(docs), "%.1f", *st.mean_document_tokens);
    if (st.mean_reference_tokens)
      std::snprintf(refs, sizeof(refs), "%.1f", *st.mean_reference_tokens);
    std::printf("%-12s  %8d  %16s  %16s\n",
                std::string(to_string(s)).c_str(), st.sample_count, docs,
                refs);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"financial summarization pipeline: extractive selection, "
               "pluggable backends, overlap + entity-factuality reports"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  // --- ingest ---------------------------------------------------------
  auto* ingest = app.add_subcommand(
      "ingest", "load, clean and filter a corpus; write normalized jsonl");
  RunFlags ingest_f;
  ingest_f.add_to(ingest, false);
  std::string ingest_out = "-";
  ingest->add_option("--out", ingest_out, "output jsonl path, - for stdout");
  ingest->callback([&] {
    RunConfig cfg = ingest_f.resolve();
    Corpus pre = load_corpus(cfg.corpus_path, cfg.corpus_format);
    Corpus post = filter_corpus(pre, cfg.min_doc_tokens, cfg.min_ref_tokens);
    std::ofstream file;
    if (ingest_out != "-") {
      file.open(ingest_out, std::ios::binary);
      if (!file) throw IoError("cannot write " + ingest_out);
    }
    std::ostream& out = ingest_out == "-" ? std::cout : file;
    for (const Sample& s : post.samples) {
      ordered_json j;
      j["id"] = s.id;
      j["document"] = s.document;
      j["summary"] = s.reference;
      j["split"] = std::string(to_string(s.split));
      out << j.dump() << "\n";
    }
    std::cerr << "wrote " << post.samples.size() << " samples ("
              << pre.samples.size() << " loaded, " << pre.skipped_records
              << " skipped)\n";
  });

  // --- stats ----------------------------------------------------------
  auto* stats = app.add_subcommand(
      "stats", "per-split sample counts and mean token lengths");
  RunFlags stats_f;
  stats_f.add_to(stats, false);
  stats->callback([&] {
    RunConfig cfg = stats_f.resolve();
    Corpus pre = load_corpus(cfg.corpus_path, cfg.corpus_format);
    Corpus post = filter_corpus(pre, cfg.min_doc_tokens, cfg.min_ref_tokens);
    print_stats(pre, post);
  });

  // --- extract --------------------------------------------------------
  auto* extract = app.add_subcommand(
      "extract", "rank one document's sentences and print the selection");
  RunFlags extract_f;
  extract_f.add_to(extract, false);
  std::string extract_input, extract_id;
  bool extract_scores = false;
  extract->add_option("--input", extract_input,
                      "plain-text document (- for stdin)");
  extract->add_option("--id", extract_id,
                      "pick this sample from --corpus instead of --input");
  extract->add_flag("--scores", extract_scores,
                    "print centrality scores for all sentences first");
  extract->callback([&] {
    std::string text;
    if (!extract_id.empty()) {
      RunConfig cfg = extract_f.resolve();
      Corpus c = load_corpus(cfg.corpus_path, cfg.corpus_format);
      for (const Sample& s : c.samples)
        if (s.id == extract_id) text = s.document;
      if (text.empty())
        throw ConfigError("sample not found: " + extract_id);
    } else if (extract_input == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      text = ss.str();
    } else if (!extract_input.empty()) {
      text = read_file(extract_input);
    } else {
      throw ConfigError("extract wants --input or --corpus + --id");
    }
    SelectionBudget budget;
    {
      // budget flags only; corpus may be absent in --input mode
      if (extract_f.set("--max-sentences"))
        budget.max_sentences = extract_f.max_sentences;
      if (extract_f.set("--max-tokens"))
        budget.max_tokens = extract_f.max_tokens;
      if (extract_f.set("--damping")) budget.damping = extract_f.damping;
      if (extract_f.set("--epsilon")) budget.epsilon = extract_f.epsilon;
      if (extract_f.set("--max-iterations"))
        budget.max_iterations = extract_f.max_iterations;
      if (extract_f.set("--threshold"))
        budget.threshold = extract_f.threshold;
    }
    auto sentences = segment_sentences(clean_text(text));
    if (sentences.empty()) return;
    if (extract_scores) {
      SentenceGraph g = build_graph(sentences);
      const Eigen::VectorXd& scores = centrality(g, budget);
      for (const Sentence& s : sentences)
        std::printf("%3d  %.6f  %s\n", s.index, scores[s.index],
                    s.text.c_str());
      std::printf("--- selection ---\n");
      for (const Sentence& s : select(g, budget))
        std::printf("%s\n", s.text.c_str());
      return;
    }
    for (const Sentence& s : extract_sentences(sentences, budget))
      std::printf("%s\n", s.text.c_str());
  });

  // --- summarize ------------------------------------------------------
  auto* summarize = app.add_subcommand(
      "summarize", "run the backend over a corpus; write predictions.jsonl");
  RunFlags summarize_f;
  summarize_f.add_to(summarize, false);
  std::string summarize_out = "predictions.jsonl";
  summarize->add_option("--out", summarize_out,
                        "predictions output path, - for stdout");
  summarize->callback([&] {
    RunConfig cfg = summarize_f.resolve();
    cfg.rouge = cfg.meteor = cfg.factuality = false;
    cfg.embed_providers.clear();
    EvalReport rep = run_pipeline(cfg);
    std::ofstream file;
    if (summarize_out != "-") {
      file.open(summarize_out, std::ios::binary);
      if (!file) throw IoError("cannot write " + summarize_out);
    }
    std::ostream& out = summarize_out == "-" ? std::cout : file;
    int failures = 0;
    for (const SampleRow& row : rep.rows) {
      if (!row.error.empty()) {
        ++failures;
        std::cerr << row.id << ": " << row.error << "\n";
        continue;
      }
      ordered_json j;
      j["id"] = row.id;
      j["summary"] = row.hypothesis;
      out << j.dump() << "\n";
    }
    std::cerr << "wrote " << (rep.rows.size() - failures) << "/"
              << rep.rows.size() << " summaries to " << summarize_out << "\n";
  });

  // --- evaluate -------------------------------------------------------
  auto* evaluate = app.add_subcommand(
      "evaluate", "score existing predictions against a corpus");
  RunFlags evaluate_f;
  evaluate_f.add_to(evaluate, true);
  std::string eval_predictions, explain_id;
  evaluate->add_option("--predictions", eval_predictions,
                       "predictions.jsonl from summarize/run")
      ->required();
  evaluate->add_option("--explain", explain_id,
                       "print per-entity match decisions for this sample id");
  evaluate->callback([&] {
    RunConfig cfg = evaluate_f.resolve();
    Corpus corpus = filter_corpus(
        load_corpus(cfg.corpus_path, cfg.corpus_format), cfg.min_doc_tokens,
        cfg.min_ref_tokens);
    auto predictions = load_predictions(eval_predictions);
    if (!explain_id.empty()) {
      const Sample* found = nullptr;
      for (const Sample& s : corpus.samples)
        if (s.id == explain_id) found = &s;
      if (!found) throw ConfigError("sample not found: " + explain_id);
      auto pit = predictions.find(explain_id);
      if (pit == predictions.end())
        throw ConfigError("no prediction for sample: " + explain_id);
      std::cout << "sample " << explain_id << "\n"
                << explain_sample(found->document, found->reference,
                                  pit->second);
      return;
    }
    EvalReport rep = evaluate_predictions(cfg, corpus, predictions);
    write_report(rep, cfg.output_dir);
    std::cout << render_table(rep);
    std::cerr << "report written to " << cfg.output_dir << "\n";
  });

  // --- run --------------------------------------------------------------
  auto* run = app.add_subcommand(
      "run", "full pipeline: ingest, select, summarize, evaluate, report");
  RunFlags run_f;
  run_f.add_to(run, true);
  run->callback([&] {
    RunConfig cfg = run_f.resolve();
    EvalReport rep = run_pipeline(cfg);
    write_report(rep, cfg.output_dir);
    std::cout << render_table(rep);
    std::cerr << "report written to " << cfg.output_dir << "\n";
  });

  // --- compare ----------------------------------------------------------
  auto* compare = app.add_subcommand(
      "compare", "aggregate deltas between two written reports");
  std::string report_a, report_b;
  compare->add_option("a", report_a, "first report dir or per_sample.jsonl")
      ->required();
  compare->add_option("b", report_b, "second report dir or per_sample.jsonl")
      ->required();
  compare->callback([&] {
    std::cout << compare_runs(load_report(report_a), load_report(report_b));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
