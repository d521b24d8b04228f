#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/index/lemma_index.hpp"
#include "ctsearch/linker/results.hpp"

namespace ctsearch::linker {

struct NlabPage {
  std::string slug;
  std::string title;
  std::string url;
  std::optional<std::string> summary;

  bool operator==(const NlabPage&) const = default;
};

/// nLab pages keyed by normalized title (lemmatized, case-folded).
class NlabTitleIndex {
 public:
  NlabTitleIndex() = default;

  /// Collects the titled NLAB documents of an indexed corpus.
  static NlabTitleIndex build(const index::IndexedCorpus& corpus);

  void add(const std::string& normalized_title, NlabPage page);
  const std::vector<NlabPage>* find(const std::string& normalized_title) const;
  std::size_t size() const { return pages_.size(); }

 private:
  std::map<std::string, std::vector<NlabPage>> pages_;
};

/// nLab pages whose normalized title equals the normalized term.
std::vector<KbEntry> link_nlab(std::string_view term, const NlabTitleIndex& titles,
                               const index::LemmaIndex& index);

}  // namespace ctsearch::linker
