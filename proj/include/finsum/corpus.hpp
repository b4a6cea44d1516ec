#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace finsum {

enum class Split { train, validation, test };

std::string_view to_string(Split s);
// Accepts "train", "validation"/"val"/"dev", "test".
std::optional<Split> parse_split(std::string_view s);

struct Sample {
  std::string id;
  std::string document;   // transcript text, cleaned on load
  std::string reference;  // paired summary, cleaned on load
  Split split = Split::train;
};

struct Corpus {
  std::vector<Sample> samples;
  std::string provenance;   // source path
  int skipped_records = 0;  // malformed / incomplete records dropped on load
};

enum class CorpusFormat { jsonl, directory_tree };

struct SplitStats {
  int sample_count = 0;
  // absent (not 0) when the split holds no samples
  std::optional<double> mean_document_tokens;
  std::optional<double> mean_reference_tokens;
};

struct CorpusStats {
  SplitStats train;
  SplitStats validation;
  SplitStats test;

  const SplitStats& for_split(Split s) const;
  SplitStats& for_split(Split s);
};

// jsonl: one {id, document, summary, split} object per line. directory_tree:
// <root>/<split>/<id>.ect paired with <id>.summary, splits train/val/test.
// Records missing a field are skipped and counted, never fatal. Text fields
// are cleaned (whitespace-collapsed) on ingest. Throws IoError on unreadable
// paths and EmptyCorpusError when nothing parses.
Corpus load_corpus(const std::string& path, CorpusFormat format);

// Keeps samples with >= min_doc_tokens whitespace tokens of document and
// >= min_ref_tokens of reference.
Corpus filter_corpus(const Corpus& c, int min_doc_tokens = 20,
                     int min_ref_tokens = 3);

CorpusStats corpus_stats(const Corpus& c);

}  // namespace finsum
