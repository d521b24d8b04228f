#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/index/lemma_index.hpp"

namespace ctsearch::search {

/// English plural/irregular rules for words the corpus has never seen:
/// an irregular table, then -ies -> -y, -es -> -e or dropped (dropped after
/// s, x, z, ch, sh), -s -> dropped (not after ss, us, is). When `index` is
/// given, a candidate that exists as an indexed lemma is preferred. Returns
/// nullopt when no rule applies. Input must already be case-folded.
std::optional<std::string> fallback_lemma(std::string_view folded_word,
                                          const index::LemmaIndex* index = nullptr);

/// Lemma key for one query word: the corpus surface table first, then
/// fallback_lemma, else the case-folded word itself.
std::string lemmatize_word(std::string_view word, const index::LemmaIndex& index);

/// Splits on whitespace, trims surrounding ASCII punctuation from each word
/// and lemmatizes it. Throws Error(kEmptyQuery) if nothing is left.
std::vector<std::string> lemmatize_query(std::string_view raw, const index::LemmaIndex& index);

/// Lemma sequence joined by single spaces ("" for empty input); the
/// normalization shared by silver standards, predictions and nLab titles.
std::string normalize_term(std::string_view term, const index::LemmaIndex& index);

}  // namespace ctsearch::search
