#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ctsearch/index/lemma_index.hpp"

namespace ctsearch::search {

using index::Posting;
using index::TokenSpan;

struct PhraseMatch {
  Posting posting;             // first matched token
  std::uint32_t length = 0;    // number of matched (non-punctuation) tokens
  std::uint32_t last_token = 0;
  TokenSpan highlight;         // from the first token's start to the last token's end

  auto operator<=>(const PhraseMatch&) const = default;
};

/// Hyphen-like PUNCT tokens ("-", U+2010, U+2011, U+2013) that may sit inside
/// a phrase; any other punctuation ends it.
bool is_phrase_joiner(const index::StoredToken& token);

/// Every occurrence of `lemmas` on consecutive non-punctuation tokens of one
/// sentence, where only phrase joiners may be skipped between words. Results
/// are ordered by posting. When `corpora` is non-empty only those corpora are
/// searched.
std::vector<PhraseMatch> find_phrase_matches(const index::LemmaIndex& index,
                                             const index::SentenceStore& store,
                                             std::span<const std::string> lemmas,
                                             std::span<const index::CorpusId> corpora = {});

}  // namespace ctsearch::search
