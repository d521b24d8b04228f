#include "ctsearch/search/group.hpp"

#include <algorithm>

namespace ctsearch::search {

SearchResult group_results(std::span<const PhraseMatch> matches, const index::SentenceStore& store,
                           std::span<const index::CorpusId> corpora, const GroupOptions& options) {
  // doc -> sentence -> matches; std::map keeps both levels ordered.
  std::map<std::uint32_t, std::map<std::uint32_t, std::vector<PhraseMatch>>> by_doc;
  for (const auto& m : matches) {
    const auto& corpus = store.document(m.posting.doc).metadata.corpus;
    if (std::find(corpora.begin(), corpora.end(), corpus) == corpora.end()) continue;
    by_doc[m.posting.doc][m.posting.sentence].push_back(m);
  }

  std::map<index::CorpusId, std::vector<DocumentCard>> cards;
  for (const auto& id : corpora) cards[id];
  for (auto& [doc, sentences] : by_doc) {
    DocumentCard card;
    card.doc = doc;
    card.metadata = store.document(doc).metadata;
    for (auto& [ordinal, list] : sentences) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      card.match_count += list.size();
      card.sentences.push_back({ordinal, std::move(list)});
    }
    cards[card.metadata.corpus].push_back(std::move(card));
  }

  SearchResult result;
  for (auto& [id, list] : cards) {
    std::sort(list.begin(), list.end(), [](const DocumentCard& a, const DocumentCard& b) {
      if (a.match_count != b.match_count) return a.match_count > b.match_count;
      return a.metadata.doc_id < b.metadata.doc_id;
    });
    CorpusResults r;
    r.total_documents = list.size();
    for (const auto& c : list) r.total_matches += c.match_count;
    const std::size_t begin = std::min(options.offset, list.size());
    auto cap = options.corpus_limits.find(id);
    const std::size_t limit = cap == options.corpus_limits.end() ? options.limit : cap->second;
    const std::size_t end = std::min(list.size(), begin + limit);
    r.cards.assign(std::make_move_iterator(list.begin() + static_cast<std::ptrdiff_t>(begin)),
                   std::make_move_iterator(list.begin() + static_cast<std::ptrdiff_t>(end)));
    result.corpora.emplace(id, std::move(r));
  }
  return result;
}

}  // namespace ctsearch::search
