#include "finsum/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "finsum/errors.hpp"
#include "finsum/text.hpp"

namespace fs = std::filesystem;

namespace finsum {
namespace {

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  if (!f) throw IoError("cannot read file: " + p.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void load_jsonl(const std::string& path, Corpus& c) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read corpus file: " + path);
  std::unordered_set<std::string> seen;
  std::string line;
  while (std::getline(f, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
        !j.contains("document") || !j["document"].is_string() ||
        !j.contains("summary") || !j["summary"].is_string() ||
        !j.contains("split") || !j["split"].is_string()) {
      ++c.skipped_records;
      continue;
    }
    auto split = parse_split(j["split"].get<std::string>());
    std::string id = j["id"].get<std::string>();
    if (!split || id.empty() || !seen.insert(id).second) {
      ++c.skipped_records;
      continue;
    }
    c.samples.push_back(Sample{std::move(id),
                               clean_text(j["document"].get<std::string>()),
                               clean_text(j["summary"].get<std::string>()),
                               *split});
  }
}

void load_tree(const std::string& root, Corpus& c) {
  if (!fs::is_directory(root)) throw IoError("not a directory: " + root);
  static const std::pair<const char*, Split> kSplitDirs[] = {
      {"train", Split::train},
      {"val", Split::validation},
      {"validation", Split::validation},
      {"test", Split::test},
  };
  std::unordered_set<std::string> seen;
  for (const auto& [dirname, split] : kSplitDirs) {
    fs::path dir = fs::path(root) / dirname;
    if (!fs::is_directory(dir)) continue;
    std::vector<fs::path> docs;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_regular_file() && entry.path().extension() == ".ect")
        docs.push_back(entry.path());
    std::sort(docs.begin(), docs.end());
    for (const auto& doc : docs) {
      fs::path pair = doc;
      pair.replace_extension(".summary");
      std::string id = doc.stem().string();
      if (!fs::is_regular_file(pair) || id.empty() || !seen.insert(id).second) {
        ++c.skipped_records;
        continue;
      }
      c.samples.push_back(Sample{std::move(id), clean_text(read_file(doc)),
                                 clean_text(read_file(pair)), split});
    }
  }
}

}  // namespace

std::string_view to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::validation: return "validation";
    case Split::test: return "test";
  }
  return "?";
}

std::optional<Split> parse_split(std::string_view s) {
  if (s == "train") return Split::train;
  if (s == "validation" || s == "val" || s == "dev") return Split::validation;
  if (s == "test") return Split::test;
  return std::nullopt;
}

const SplitStats& CorpusStats::for_split(Split s) const {
  switch (s) {
    case Split::train: return train;
    case Split::validation: return validation;
    case Split::test: return test;
  }
  return train;
}

SplitStats& CorpusStats::for_split(Split s) {
  return const_cast<SplitStats&>(
      static_cast<const CorpusStats*>(this)->for_split(s));
}

Corpus load_corpus(const std::string& path, CorpusFormat format) {
  Corpus c;
  c.provenance = path;
  if (format == CorpusFormat::jsonl)
    load_jsonl(path, c);
  else
    load_tree(path, c);
  if (c.samples.empty())
    throw EmptyCorpusError("no parseable records in " + path);
  return c;
}

Corpus filter_corpus(const Corpus& c, int min_doc_tokens, int min_ref_tokens) {
  Corpus out;
  out.provenance = c.provenance;
  out.skipped_records = c.skipped_records;
  for (const Sample& s : c.samples) {
    std::string doc = clean_text(s.document);
    std::string ref = clean_text(s.reference);
    if (whitespace_token_count(doc) >= min_doc_tokens &&
        whitespace_token_count(ref) >= min_ref_tokens)
      out.samples.push_back(Sample{s.id, std::move(doc), std::move(ref),
                                   s.split});
  }
  return out;
}

CorpusStats corpus_stats(const Corpus& c) {
  struct Acc {
    long long count = 0;
    long long doc_tokens = 0;
    long long ref_tokens = 0;
  };
  Acc acc[3];
  for (const Sample& s : c.samples) {
    Acc& a = acc[static_cast<int>(s.split)];
    ++a.count;
    a.doc_tokens += whitespace_token_count(s.document);
    a.ref_tokens += whitespace_token_count(s.reference);
  }
  CorpusStats stats;
  for (Split sp : {Split::train, Split::validation, Split::test}) {
    const Acc& a = acc[static_cast<int>(sp)];
    SplitStats& out = stats.for_split(sp);
    out.sample_count = static_cast<int>(a.count);
    if (a.count > 0) {
      out.mean_document_tokens = double(a.doc_tokens) / double(a.count);
      out.mean_reference_tokens = double(a.ref_tokens) / double(a.count);
    }
  }
  return stats;
}

}  // namespace finsum
