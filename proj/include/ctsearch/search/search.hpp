#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctsearch/search/group.hpp"
#include "ctsearch/search/highlight.hpp"
#include "ctsearch/search/lemmatizer.hpp"
#include "ctsearch/search/phrase.hpp"

namespace ctsearch::search {

struct Query {
  std::string raw;
  std::vector<std::string> lemmas;
  std::vector<index::CorpusId> corpora;
};

/// Lemmatizes `raw` against the index (throws Error(kEmptyQuery)). An empty
/// corpus list selects every corpus present in the index.
Query make_query(std::string raw, const index::IndexedCorpus& indexed,
                 std::vector<index::CorpusId> corpora = {});

SearchResult run_search(const index::IndexedCorpus& indexed, const Query& query,
                        const GroupOptions& options = {});

/// Link to the original document: source_url when present, otherwise the
/// nLab page for NLAB titles.
std::optional<std::string> document_url(const index::DocumentMetadata& metadata);

/// nLab page name for a title ("double category" -> "double+category").
std::string nlab_slug(std::string_view title);

}  // namespace ctsearch::search
