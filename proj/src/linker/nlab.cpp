#include "ctsearch/linker/nlab.hpp"

#include "ctsearch/corpus/meta_filter.hpp"
#include "ctsearch/search/lemmatizer.hpp"
#include "ctsearch/search/search.hpp"

namespace ctsearch::linker {

NlabTitleIndex NlabTitleIndex::build(const index::IndexedCorpus& corpus) {
  NlabTitleIndex titles;
  for (const auto& doc : corpus.store.documents()) {
    const auto& meta = doc.metadata;
    if (meta.corpus != index::CorpusId::nlab() || meta.title.empty()) continue;
    if (corpus::meta_document_reason(meta)) continue;
    std::string key = search::normalize_term(meta.title, corpus.index);
    if (key.empty()) continue;
    NlabPage page;
    page.slug = search::nlab_slug(meta.title);
    page.title = meta.title;
    page.url = search::document_url(meta).value_or(entity_url(KbSource::kNlab, page.slug));
    if (!doc.sentences.empty()) page.summary = doc.sentences.front().text;
    titles.add(key, std::move(page));
  }
  return titles;
}

void NlabTitleIndex::add(const std::string& normalized_title, NlabPage page) {
  auto& bucket = pages_[normalized_title];
  for (const auto& existing : bucket) {
    if (existing.slug == page.slug) return;
  }
  bucket.push_back(std::move(page));
}

const std::vector<NlabPage>* NlabTitleIndex::find(const std::string& normalized_title) const {
  auto it = pages_.find(normalized_title);
  return it == pages_.end() ? nullptr : &it->second;
}

std::vector<KbEntry> link_nlab(std::string_view term, const NlabTitleIndex& titles,
                               const index::LemmaIndex& index) {
  std::vector<KbEntry> out;
  const std::string key = search::normalize_term(term, index);
  if (key.empty()) return out;
  if (const auto* pages = titles.find(key)) {
    for (const auto& page : *pages) {
      out.push_back({KbSource::kNlab, page.slug, page.title, page.summary, page.url});
    }
  }
  return out;
}

}  // namespace ctsearch::linker
