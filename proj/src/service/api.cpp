#include "ctsearch/service/api.hpp"

#include <charconv>

#include "ctsearch/corpus/metadata.hpp"
#include "ctsearch/index/persist.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::service {

using nlohmann::json;

ApiContext::ApiContext(ApiConfig config, std::shared_ptr<const index::IndexedCorpus> corpus,
                       std::shared_ptr<linker::SparqlTransport> transport)
    : config_(std::move(config)), corpus_(std::move(corpus)) {
  linker_ = std::make_unique<linker::Linker>(linker_config(config_), corpus_, std::move(transport));
}

json error_body(std::string_view code, std::string_view message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kEmptyQuery:
    case ErrorCode::kEmptyTerm:
    case ErrorCode::kUnescapableTerm:
      return 400;
    case ErrorCode::kHttpError:
    case ErrorCode::kMalformedResponse:
    case ErrorCode::kMissingFixture:
      return 502;
    default:
      return 500;
  }
}

namespace {

std::optional<std::string> param(const QueryParams& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  return it->second;
}

std::size_t parse_count(const std::string& name, const std::string& value) {
  std::size_t out = 0;
  auto v = text::trim(value);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorCode::kInvalidArgument, name + " must be a non-negative integer");
  }
  return out;
}

std::vector<index::CorpusId> parse_corpora(const std::string& csv, const index::IndexedCorpus& corpus) {
  corpus::CorpusRegistry registry;
  for (const auto& [id, _] : corpus.index.manifest().corpora) {
    index::CorpusId cid(id);
    if (!registry.contains(cid)) registry.add(cid, id);
  }
  std::vector<index::CorpusId> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    auto comma = csv.find(',', pos);
    auto name = text::trim(std::string_view(csv).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (!name.empty()) {
      auto id = registry.resolve(name);
      if (!id) throw Error(ErrorCode::kInvalidArgument, "unknown corpus '" + std::string(name) + "'");
      if (std::find(out.begin(), out.end(), *id) == out.end()) out.push_back(*id);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "corpora lists no corpus");
  return out;
}

std::string display_name(const index::CorpusId& id) {
  static const corpus::CorpusRegistry registry;
  return registry.contains(id) ? registry.display_name(id) : id.str();
}

json optional_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

}  // namespace

json search_body(const search::Query& query, const search::SearchResult& result, const index::IndexedCorpus& corpus,
                 std::size_t offset) {
  json corpora = json::object();
  for (const auto& [id, r] : result.corpora) {
    json cards = json::array();
    for (const auto& card : r.cards) {
      json sentences = json::array();
      for (const auto& ms : card.sentences) {
        const auto& sentence = corpus.store.sentence(card.doc, ms.sentence);
        std::vector<index::TokenSpan> spans;
        for (const auto& m : ms.matches) spans.push_back(m.highlight);
        json highlights = json::array();
        for (const auto& s : search::merge_spans(spans, sentence.text.size())) {
          highlights.push_back({text::codepoint_offset(sentence.text, s.begin),
                                text::codepoint_offset(sentence.text, s.end)});
        }
        sentences.push_back({{"sent_id", sentence.sent_id}, {"text", sentence.text}, {"highlights", highlights}});
      }
      const auto& meta = card.metadata;
      cards.push_back({{"doc_id", meta.doc_id},
                       {"title", meta.title},
                       {"url", optional_string(search::document_url(meta))},
                       {"authors", meta.authors},
                       {"date", meta.date ? json(corpus::format_date(*meta.date)) : json(nullptr)},
                       {"match_count", card.match_count},
                       {"sentences", sentences}});
    }
    corpora[id.str()] = {{"display_name", display_name(id)},
                         {"total_documents", r.total_documents},
                         {"total_matches", r.total_matches},
                         {"offset", offset},
                         {"cards", cards}};
  }
  return {{"query", query.raw}, {"lemmas", query.lemmas}, {"corpora", corpora}};
}

json link_body(const linker::LinkResult& result) {
  json wikidata = json::array();
  for (const auto& e : result.wikidata) {
    wikidata.push_back(
        {{"id", e.entity_id}, {"label", e.label}, {"description", optional_string(e.description)}, {"url", e.url}});
  }
  json nlab = json::array();
  for (const auto& e : result.nlab) nlab.push_back({{"slug", e.entity_id}, {"title", e.label}, {"url", e.url}});
  json body{{"term", result.term}, {"wikidata", wikidata}, {"nlab", nlab}};
  if (result.wikidata_error) {
    body["wikidata_error"] = {{"code", to_string(result.wikidata_error->code())},
                              {"message", result.wikidata_error->what()}};
  }
  return body;
}

ApiResponse handle_search(const ApiContext& ctx, const QueryParams& params) {
  try {
    const auto& corpus = ctx.corpus();
    std::string q = param(params, "q").value_or("");
    if (text::trim(q).empty()) return {400, error_body(to_string(ErrorCode::kEmptyQuery), "q is empty")};
    std::vector<index::CorpusId> corpora;
    if (auto c = param(params, "corpora")) corpora = parse_corpora(*c, corpus);

    search::GroupOptions options;
    options.limit = ctx.config().default_limit;
    options.corpus_limits = ctx.config().corpus_limits;
    if (auto l = param(params, "limit")) {
      options.limit = parse_count("limit", *l);
      options.corpus_limits.clear();
    }
    if (options.limit > ctx.config().max_limit) {
      throw Error(ErrorCode::kInvalidArgument, "limit exceeds " + std::to_string(ctx.config().max_limit));
    }
    if (auto o = param(params, "offset")) options.offset = parse_count("offset", *o);

    search::Query query = search::make_query(std::move(q), corpus, std::move(corpora));
    auto result = search::run_search(corpus, query, options);
    return {200, search_body(query, result, corpus, options.offset)};
  } catch (const Error& e) {
    return {status_for(e.code()), error_body(to_string(e.code()), e.what())};
  }
}

ApiResponse handle_link(const ApiContext& ctx, const QueryParams& params) {
  try {
    std::string q = param(params, "q").value_or("");
    if (text::trim(q).empty()) return {400, error_body(to_string(ErrorCode::kEmptyTerm), "q is empty")};
    auto result = ctx.linker().link(q);
    int status = result.wikidata_error ? 502 : 200;
    return {status, link_body(result)};
  } catch (const Error& e) {
    return {status_for(e.code()), error_body(to_string(e.code()), e.what())};
  }
}

ApiResponse handle_health(const ApiContext* ctx, std::string_view mode) {
  if (ctx == nullptr) return {503, {{"status", "loading"}, {"mode", mode}, {"index_manifest", nullptr}}};
  return {200, {{"status", "ok"}, {"mode", mode}, {"index_manifest", index::manifest_to_json(ctx->corpus().index.manifest())}}};
}

}  // namespace ctsearch::service
