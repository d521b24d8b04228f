#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ctsearch/search/phrase.hpp"

namespace ctsearch::search {

struct MatchedSentence {
  std::uint32_t sentence = 0;  // ordinal within the document
  std::vector<PhraseMatch> matches;
};

struct DocumentCard {
  std::uint32_t doc = 0;  // SentenceStore document number
  index::DocumentMetadata metadata;
  std::vector<MatchedSentence> sentences;  // in document order
  std::size_t match_count = 0;
};

struct CorpusResults {
  std::size_t total_documents = 0;
  std::size_t total_matches = 0;
  std::vector<DocumentCard> cards;  // one page, see GroupOptions
};

/// Per-corpus results; corpora are never merged.
struct SearchResult {
  std::map<index::CorpusId, CorpusResults> corpora;
};

struct GroupOptions {
  std::size_t limit = 100;  // cards per corpus
  std::size_t offset = 0;
  std::map<index::CorpusId, std::size_t> corpus_limits;  // overrides `limit`
};

/// Groups matches by corpus and document. Cards are ordered by descending
/// match count, then doc_id; each corpus in `corpora` gets an entry even when
/// empty, and matches from other corpora are ignored.
SearchResult group_results(std::span<const PhraseMatch> matches, const index::SentenceStore& store,
                           std::span<const index::CorpusId> corpora, const GroupOptions& options = {});

}  // namespace ctsearch::search
