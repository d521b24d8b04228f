#include "ctsearch/termeval/mwe.hpp"

#include <map>

namespace ctsearch::termeval {

std::vector<PosPattern> compile_patterns(const std::vector<std::string>& sources) {
  std::vector<PosPattern> out;
  out.reserve(sources.size());
  for (const auto& s : sources) out.push_back(PosPattern::compile(s));
  return out;
}

std::vector<CandidateTerm> extract_mwe(const std::vector<TermSentence>& sentences,
                                       const std::vector<PosPattern>& patterns) {
  std::map<std::string, CandidateTerm> found;
  std::vector<std::string> tags;
  for (const auto& s : sentences) {
    tags.clear();
    for (const auto& t : s) tags.push_back(t.upos);
    for (const auto& span : maximal_pattern_spans(tags, patterns)) {
      CandidateTerm c;
      for (std::size_t i = span.begin; i < span.end; ++i) {
        if (i > span.begin) {
          c.surface += ' ';
          c.lemma_form += ' ';
        }
        c.surface += s[i].form;
        c.lemma_form += s[i].lemma;
      }
      auto [it, inserted] = found.try_emplace(c.lemma_form, std::move(c));
      it->second.score += 1.0;
    }
  }
  std::vector<CandidateTerm> out;
  out.reserve(found.size());
  for (auto& [_, c] : found) out.push_back(std::move(c));
  sort_candidates(out);
  return out;
}

std::vector<CandidateTerm> extract_mwe(const std::vector<TermSentence>& sentences, const MweOptions& options) {
  return extract_mwe(sentences, compile_patterns(options.patterns));
}

}  // namespace ctsearch::termeval
