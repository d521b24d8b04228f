#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/error.hpp"
#include "ctsearch/linker/nlab.hpp"
#include "ctsearch/linker/wikidata_client.hpp"

namespace ctsearch::linker {

/// kServer: MINUS clauses in the label query.
/// kLocal: unfiltered label query, then post_filter_entries over fetched
/// class relations.
enum class FilterStrategy { kServer, kLocal };

std::string_view to_string(FilterStrategy strategy);
FilterStrategy parse_filter_strategy(std::string_view text);

struct LinkerConfig {
  ClientConfig client;
  FilterList filters = FilterList::defaults();
  std::optional<FilterStrategy> strategy;  // default: kLocal for replay, kServer for live
  PostFilterOptions post_filter;
};

struct LinkResult {
  std::string term;
  std::vector<KbEntry> wikidata;
  std::vector<KbEntry> nlab;
  std::optional<Error> wikidata_error;  // set when Wikidata could not be reached
  std::string query_text;               // the label query sent to the endpoint
};

class Linker {
 public:
  Linker(LinkerConfig config, std::shared_ptr<const index::IndexedCorpus> corpus,
         std::shared_ptr<SparqlTransport> transport = nullptr);

  /// Throws Error(kEmptyTerm) / Error(kUnescapableTerm) for bad terms.
  /// Endpoint failures are reported in LinkResult::wikidata_error.
  LinkResult link(std::string_view term);

  FilterStrategy strategy() const { return strategy_; }
  WikidataClient& client() { return client_; }
  const NlabTitleIndex& titles() const { return titles_; }

 private:
  LinkerConfig config_;
  FilterStrategy strategy_;
  std::shared_ptr<const index::IndexedCorpus> corpus_;
  WikidataClient client_;
  NlabTitleIndex titles_;
};

}  // namespace ctsearch::linker
