#include "ctsearch/termeval/candidate.hpp"

#include <algorithm>

namespace ctsearch::termeval {

std::vector<TermSentence> sentences_from_store(const index::SentenceStore& store,
                                               const std::optional<index::CorpusId>& corpus) {
  std::vector<TermSentence> out;
  for (const auto& doc : store.documents()) {
    if (corpus && doc.metadata.corpus != *corpus) continue;
    for (const auto& sentence : doc.sentences) {
      TermSentence s;
      s.reserve(sentence.tokens.size());
      for (const auto& t : sentence.tokens) s.push_back({t.form, t.key, t.upos});
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<TermSentence> sentences_from_documents(const std::vector<index::AnnotatedDocument>& documents) {
  std::vector<TermSentence> out;
  for (const auto& doc : documents) {
    for (const auto& sentence : doc.sentences) {
      TermSentence s;
      s.reserve(sentence.tokens.size());
      for (const auto& t : sentence.tokens) s.push_back({t.form, index::index_key(t), t.upos});
      out.push_back(std::move(s));
    }
  }
  return out;
}

void sort_candidates(std::vector<CandidateTerm>& candidates) {
  std::sort(candidates.begin(), candidates.end(), [](const CandidateTerm& a, const CandidateTerm& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.lemma_form < b.lemma_form;
  });
}

}  // namespace ctsearch::termeval
