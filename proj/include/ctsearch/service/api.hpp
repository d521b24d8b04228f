#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ctsearch/index/lemma_index.hpp"
#include "ctsearch/linker/linker.hpp"
#include "ctsearch/search/search.hpp"
#include "ctsearch/service/config.hpp"

namespace ctsearch::service {

using QueryParams = std::multimap<std::string, std::string>;

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

/// Loaded index plus linker; read-only after construction.
class ApiContext {
 public:
  ApiContext(ApiConfig config, std::shared_ptr<const index::IndexedCorpus> corpus,
             std::shared_ptr<linker::SparqlTransport> transport = nullptr);

  const ApiConfig& config() const { return config_; }
  const index::IndexedCorpus& corpus() const { return *corpus_; }
  linker::Linker& linker() const { return *linker_; }

 private:
  ApiConfig config_;
  std::shared_ptr<const index::IndexedCorpus> corpus_;
  std::unique_ptr<linker::Linker> linker_;
};

/// GET /api/search?q=&corpora=&limit=&offset=
ApiResponse handle_search(const ApiContext& ctx, const QueryParams& params);

/// GET /api/link?q=
ApiResponse handle_link(const ApiContext& ctx, const QueryParams& params);

/// GET /api/health; `ctx` is null while the index is loading.
ApiResponse handle_health(const ApiContext* ctx, std::string_view mode);

nlohmann::json search_body(const search::Query& query, const search::SearchResult& result,
                           const index::IndexedCorpus& corpus, std::size_t offset);
nlohmann::json link_body(const linker::LinkResult& result);
nlohmann::json error_body(std::string_view code, std::string_view message);

/// HTTP status for an error raised while handling a request.
int status_for(ErrorCode code);

}  // namespace ctsearch::service
