#pragma once

#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctsearch/index/lemma_index.hpp"
#include "ctsearch/termeval/candidate.hpp"
#include "ctsearch/termeval/silver.hpp"

namespace ctsearch::termeval {

struct EvalReport {
  std::string model;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t predicted_count = 0;
  std::size_t gold_count = 0;

  bool operator==(const EvalReport&) const = default;
};

/// Exact set matching.
EvalReport evaluate(const std::set<std::string>& predicted, const std::set<std::string>& gold);
EvalReport evaluate(const std::set<std::string>& predicted, const SilverStandard& gold);

std::set<std::string> lemma_forms(const std::vector<CandidateTerm>& candidates);

/// One term per line, UTF-8; blank lines are skipped. Terms are normalized
/// with search::normalize_term. Throws Error(kMalformedPrediction) naming the
/// offending line, Error(kIo) when the file cannot be read.
std::set<std::string> read_prediction_file(const std::filesystem::path& path, const index::LemmaIndex& index);
std::set<std::string> parse_predictions(std::string_view content, const index::LemmaIndex& index);

nlohmann::json report_to_json(std::span<const EvalReport> rows, const SilverStandard& gold);

/// Aligned columns: Model, Precision, Recall, F1 (two decimals).
std::string report_to_text(std::span<const EvalReport> rows, const SilverStandard& gold);

}  // namespace ctsearch::termeval
