#include "ctsearch/search/search.hpp"

#include <cctype>
#include <cstdio>

namespace ctsearch::search {

Query make_query(std::string raw, const index::IndexedCorpus& indexed,
                 std::vector<index::CorpusId> corpora) {
  Query q;
  q.lemmas = lemmatize_query(raw, indexed.index);
  q.raw = std::move(raw);
  if (corpora.empty()) {
    for (const auto& [id, summary] : indexed.index.manifest().corpora) corpora.emplace_back(id);
  }
  q.corpora = std::move(corpora);
  return q;
}

SearchResult run_search(const index::IndexedCorpus& indexed, const Query& query,
                        const GroupOptions& options) {
  auto matches = find_phrase_matches(indexed.index, indexed.store, query.lemmas, query.corpora);
  return group_results(matches, indexed.store, query.corpora, options);
}

std::string nlab_slug(std::string_view title) {
  std::string out;
  for (char c : title) {
    auto u = static_cast<unsigned char>(c);
    if (c == ' ') {
      out.push_back('+');
    } else if (std::isalnum(u) != 0 || c == '-' || c == '_' || c == '.' || c == '~' || c == '(' ||
               c == ')' || c == '\'') {
      out.push_back(c);
    } else {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", u);
      out.append(buf);
    }
  }
  return out;
}

std::optional<std::string> document_url(const index::DocumentMetadata& metadata) {
  if (metadata.source_url && !metadata.source_url->empty()) return metadata.source_url;
  if (metadata.corpus == index::CorpusId::nlab() && !metadata.title.empty()) {
    return "https://ncatlab.org/nlab/show/" + nlab_slug(metadata.title);
  }
  return std::nullopt;
}

}  // namespace ctsearch::search
