#include "ctsearch/search/phrase.hpp"

#include <algorithm>
#include <array>

#include "ctsearch/text/unicode.hpp"

namespace ctsearch::search {

bool is_phrase_joiner(const index::StoredToken& token) {
  static constexpr std::array<std::string_view, 4> kJoiners = {"-", "\xE2\x80\x90", "\xE2\x80\x91",
                                                               "\xE2\x80\x93"};
  if (!token.is_punct()) return false;
  return std::find(kJoiners.begin(), kJoiners.end(), token.form) != kJoiners.end();
}

std::vector<PhraseMatch> find_phrase_matches(const index::LemmaIndex& index,
                                             const index::SentenceStore& store,
                                             std::span<const std::string> lemmas,
                                             std::span<const index::CorpusId> corpora) {
  std::vector<PhraseMatch> out;
  if (lemmas.empty()) return out;
  std::vector<std::string> keys;
  keys.reserve(lemmas.size());
  for (const auto& l : lemmas) keys.push_back(text::casefold(l));

  for (const Posting& p : index.lookup(keys.front())) {
    const auto& doc = store.document(p.doc);
    if (!corpora.empty() &&
        std::find(corpora.begin(), corpora.end(), doc.metadata.corpus) == corpora.end()) {
      continue;
    }
    const auto& tokens = doc.sentences[p.sentence].tokens;
    if (tokens[p.token].is_punct()) continue;

    std::size_t pos = p.token;
    bool matched = true;
    for (std::size_t k = 1; k < keys.size() && matched; ++k) {
      ++pos;
      while (pos < tokens.size() && is_phrase_joiner(tokens[pos])) ++pos;
      matched = pos < tokens.size() && !tokens[pos].is_punct() && tokens[pos].key == keys[k];
    }
    if (!matched) continue;
    PhraseMatch m;
    m.posting = p;
    m.length = static_cast<std::uint32_t>(keys.size());
    m.last_token = static_cast<std::uint32_t>(pos);
    m.highlight = {tokens[p.token].span.begin, tokens[pos].span.end};
    out.push_back(m);
  }
  return out;
}

}  // namespace ctsearch::search
