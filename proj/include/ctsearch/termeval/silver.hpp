#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/index/lemma_index.hpp"

namespace ctsearch::termeval {

enum class SilverProvenance { kAuthorKeywords, kNlabTitles, kFile };

std::string_view to_string(SilverProvenance provenance);

struct SilverStandard {
  std::string name;
  std::set<std::string> terms;  // normalized lemma sequences
  SilverProvenance provenance = SilverProvenance::kFile;
};

/// Normalized terms that have at least one phrase match in `corpus`.
std::set<std::string> attested_terms(const std::vector<std::string>& terms, const index::IndexedCorpus& indexed,
                                     const index::CorpusId& corpus);

/// Author keywords of `corpus` documents that occur in `corpus` text.
SilverStandard build_silver_author(const index::IndexedCorpus& indexed,
                                   const index::CorpusId& corpus = index::CorpusId::tac());

/// Titles that occur in the text of `corpus`.
SilverStandard build_silver_titles(const std::vector<std::string>& titles, const index::IndexedCorpus& indexed,
                                   const index::CorpusId& corpus = index::CorpusId::tac());

/// Titles of the non-meta nLab documents in the index.
std::vector<std::string> nlab_titles(const index::IndexedCorpus& indexed);

}  // namespace ctsearch::termeval
