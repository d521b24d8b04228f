#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctsearch/index/lemma_index.hpp"

namespace ctsearch::termeval {

struct TermToken {
  std::string form;
  std::string lemma;  // index key: case-folded lemma
  std::string upos;
};

using TermSentence = std::vector<TermToken>;

struct CandidateTerm {
  std::string surface;
  std::string lemma_form;  // space-joined lemma keys
  double score = 0.0;

  bool operator==(const CandidateTerm&) const = default;
};

/// Sentences of the documents of one corpus (all corpora when unset), in
/// store order.
std::vector<TermSentence> sentences_from_store(const index::SentenceStore& store,
                                               const std::optional<index::CorpusId>& corpus = std::nullopt);

std::vector<TermSentence> sentences_from_documents(const std::vector<index::AnnotatedDocument>& documents);

/// Sorts by score (descending), then lemma_form.
void sort_candidates(std::vector<CandidateTerm>& candidates);

}  // namespace ctsearch::termeval
