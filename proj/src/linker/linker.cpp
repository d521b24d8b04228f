#include "ctsearch/linker/linker.hpp"

#include "ctsearch/text/unicode.hpp"

namespace ctsearch::linker {

std::string_view to_string(FilterStrategy strategy) {
  return strategy == FilterStrategy::kServer ? "server" : "local";
}

FilterStrategy parse_filter_strategy(std::string_view text) {
  std::string folded = text::casefold(text::trim(text));
  if (folded == "server") return FilterStrategy::kServer;
  if (folded == "local") return FilterStrategy::kLocal;
  throw Error(ErrorCode::kInvalidArgument, "unknown filter strategy '" + std::string(text) + "'");
}

Linker::Linker(LinkerConfig config, std::shared_ptr<const index::IndexedCorpus> corpus,
               std::shared_ptr<SparqlTransport> transport)
    : config_(std::move(config)),
      strategy_(config_.strategy.value_or(config_.client.mode == ClientMode::kReplay ? FilterStrategy::kLocal
                                                                                      : FilterStrategy::kServer)),
      corpus_(std::move(corpus)),
      client_(config_.client, std::move(transport)) {
  if (corpus_) titles_ = NlabTitleIndex::build(*corpus_);
}

LinkResult Linker::link(std::string_view term) {
  LinkResult result;
  const SparqlQuery query =
      build_sparql(term, strategy_ == FilterStrategy::kServer ? config_.filters : FilterList{});
  result.term = query.term;
  result.query_text = query.text;

  try {
    auto entries = client_.query(query);
    if (strategy_ == FilterStrategy::kLocal && !config_.filters.empty() && !entries.empty()) {
      std::vector<std::string> ids;
      for (const auto& e : entries) ids.push_back(e.entity_id);
      entries = post_filter_entries(entries, config_.filters, client_.fetch_classes(ids), config_.post_filter);
    }
    result.wikidata = std::move(entries);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kHttpError && e.code() != ErrorCode::kMissingFixture &&
        e.code() != ErrorCode::kMalformedResponse) {
      throw;
    }
    result.wikidata_error = e;
  }

  if (corpus_) result.nlab = link_nlab(result.term, titles_, corpus_->index);
  return result;
}

}  // namespace ctsearch::linker
