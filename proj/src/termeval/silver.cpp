#include "ctsearch/termeval/silver.hpp"

#include "ctsearch/corpus/meta_filter.hpp"
#include "ctsearch/error.hpp"
#include "ctsearch/search/lemmatizer.hpp"
#include "ctsearch/search/phrase.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::termeval {

std::string_view to_string(SilverProvenance provenance) {
  switch (provenance) {
    case SilverProvenance::kAuthorKeywords:
      return "author_keywords";
    case SilverProvenance::kNlabTitles:
      return "nlab_titles";
    case SilverProvenance::kFile:
      return "file";
  }
  return "file";
}

std::set<std::string> attested_terms(const std::vector<std::string>& terms, const index::IndexedCorpus& indexed,
                                     const index::CorpusId& corpus) {
  std::set<std::string> out;
  const index::CorpusId corpora[] = {corpus};
  for (const auto& term : terms) {
    std::vector<std::string> lemmas;
    try {
      lemmas = search::lemmatize_query(term, indexed.index);
    } catch (const Error&) {
      continue;
    }
    std::string key = text::join(lemmas, " ");
    if (out.contains(key)) continue;
    if (!search::find_phrase_matches(indexed.index, indexed.store, lemmas, corpora).empty()) out.insert(key);
  }
  return out;
}

SilverStandard build_silver_author(const index::IndexedCorpus& indexed, const index::CorpusId& corpus) {
  std::vector<std::string> keywords;
  for (const auto& doc : indexed.store.documents()) {
    if (doc.metadata.corpus != corpus) continue;
    keywords.insert(keywords.end(), doc.metadata.keywords.begin(), doc.metadata.keywords.end());
  }
  return {"author keywords", attested_terms(keywords, indexed, corpus), SilverProvenance::kAuthorKeywords};
}

SilverStandard build_silver_titles(const std::vector<std::string>& titles, const index::IndexedCorpus& indexed,
                                   const index::CorpusId& corpus) {
  return {"nLab titles", attested_terms(titles, indexed, corpus), SilverProvenance::kNlabTitles};
}

std::vector<std::string> nlab_titles(const index::IndexedCorpus& indexed) {
  std::vector<std::string> out;
  for (const auto& doc : indexed.store.documents()) {
    const auto& meta = doc.metadata;
    if (meta.corpus != index::CorpusId::nlab() || meta.title.empty()) continue;
    if (corpus::meta_document_reason(meta)) continue;
    out.push_back(meta.title);
  }
  return out;
}

}  // namespace ctsearch::termeval
