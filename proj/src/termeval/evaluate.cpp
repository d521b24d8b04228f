#include "ctsearch/termeval/evaluate.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ctsearch/error.hpp"
#include "ctsearch/search/lemmatizer.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::termeval {

EvalReport evaluate(const std::set<std::string>& predicted, const std::set<std::string>& gold) {
  EvalReport r;
  r.predicted_count = predicted.size();
  r.gold_count = gold.size();
  for (const auto& p : predicted) r.true_positives += gold.contains(p) ? 1 : 0;
  const auto tp = static_cast<double>(r.true_positives);
  r.precision = r.predicted_count == 0 ? 0.0 : tp / static_cast<double>(r.predicted_count);
  r.recall = r.gold_count == 0 ? 0.0 : tp / static_cast<double>(r.gold_count);
  r.f1 = r.precision + r.recall == 0.0 ? 0.0 : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

EvalReport evaluate(const std::set<std::string>& predicted, const SilverStandard& gold) {
  return evaluate(predicted, gold.terms);
}

std::set<std::string> lemma_forms(const std::vector<CandidateTerm>& candidates) {
  std::set<std::string> out;
  for (const auto& c : candidates) out.insert(c.lemma_form);
  return out;
}

std::set<std::string> parse_predictions(std::string_view content, const index::LemmaIndex& index) {
  std::set<std::string> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    auto nl = content.find('\n', pos);
    std::string_view line = content.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto bad = [&](const std::string& why) {
      return Error(ErrorCode::kMalformedPrediction, "line " + std::to_string(line_no) + ": " + why);
    };
    if (!text::is_valid_utf8(line)) throw bad("not valid UTF-8");
    if (std::any_of(line.begin(), line.end(), [](char c) {
          auto u = static_cast<unsigned char>(c);
          return (u < 0x20 && c != '\t') || u == 0x7f;
        })) {
      throw bad("control character");
    }
    if (text::trim(line).empty()) continue;
    std::string term = search::normalize_term(line, index);
    if (term.empty()) throw bad("no words in '" + std::string(text::trim(line)) + "'");
    out.insert(std::move(term));
  }
  return out;
}

std::set<std::string> read_prediction_file(const std::filesystem::path& path, const index::LemmaIndex& index) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read prediction file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_predictions(ss.str(), index);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kMalformedPrediction) throw;
    throw Error(ErrorCode::kMalformedPrediction, path.string() + ": " + e.what());
  }
}

nlohmann::json report_to_json(std::span<const EvalReport> rows, const SilverStandard& gold) {
  nlohmann::json out;
  out["gold"] = {{"name", gold.name}, {"provenance", to_string(gold.provenance)}, {"size", gold.terms.size()}};
  out["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    out["rows"].push_back({{"model", r.model},
                           {"precision", r.precision},
                           {"recall", r.recall},
                           {"f1", r.f1},
                           {"true_positives", r.true_positives},
                           {"predicted_count", r.predicted_count},
                           {"gold_count", r.gold_count}});
  }
  return out;
}

std::string report_to_text(std::span<const EvalReport> rows, const SilverStandard& gold) {
  std::size_t width = 5;
  for (const auto& r : rows) width = std::max(width, r.model.size());
  auto pad = [&](std::string s) {
    s.resize(width, ' ');
    return s;
  };
  std::ostringstream out;
  out << "Gold: " << gold.name << " (" << gold.terms.size() << " terms)\n";
  out << pad("Model") << "  Precision  Recall  F1\n";
  for (const auto& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "  %9.2f  %6.2f  %4.2f", r.precision, r.recall, r.f1);
    out << pad(r.model) << buf << '\n';
  }
  return out.str();
}

}  // namespace ctsearch::termeval
