#include "ctsearch/linker/wikidata_client.hpp"

#include <thread>

#include "ctsearch/error.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::linker {

std::string_view to_string(ClientMode mode) { return mode == ClientMode::kLive ? "live" : "replay"; }

ClientMode parse_client_mode(std::string_view text) {
  std::string folded = text::casefold(text::trim(text));
  if (folded == "live") return ClientMode::kLive;
  if (folded == "replay") return ClientMode::kReplay;
  throw Error(ErrorCode::kInvalidArgument, "unknown linker mode '" + std::string(text) + "'");
}

RequestGate::RequestGate(int capacity) : capacity_(capacity < 1 ? 1 : capacity) {}

void RequestGate::acquire() {
  std::unique_lock lock(mutex_);
  cv_.wait(lock, [&] { return in_use_ < capacity_; });
  ++in_use_;
}

void RequestGate::release() {
  {
    std::lock_guard lock(mutex_);
    --in_use_;
  }
  cv_.notify_one();
}

std::shared_ptr<RequestGate> RequestGate::shared(int capacity) {
  static std::mutex registry_mutex;
  static std::map<int, std::shared_ptr<RequestGate>> registry;
  std::lock_guard lock(registry_mutex);
  auto& gate = registry[capacity];
  if (!gate) gate = std::make_shared<RequestGate>(capacity);
  return gate;
}

WikidataClient::WikidataClient(ClientConfig config, std::shared_ptr<SparqlTransport> transport,
                               std::shared_ptr<RequestGate> gate)
    : config_(std::move(config)), transport_(std::move(transport)), gate_(std::move(gate)) {
  if (config_.mode == ClientMode::kReplay) {
    fixtures_ = FixtureStore::load(config_.fixtures_dir);
  } else {
    if (!transport_) transport_ = std::make_shared<HttplibTransport>();
    if (!gate_) gate_ = RequestGate::shared(config_.max_in_flight);
  }
  sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::size_t WikidataClient::cache_size() const {
  std::shared_lock lock(cache_mutex_);
  return cache_.size();
}

std::string WikidataClient::fetch_replay(const std::string& query_text) const {
  const RecordedResponse* r = fixtures_.find(query_text);
  if (r == nullptr) {
    throw Error(ErrorCode::kMissingFixture, "no recorded response for query (expected file " +
                                                (config_.fixtures_dir / fixture_file_name(query_text)).string() +
                                                ")");
  }
  if (r->status != 200) {
    throw Error(ErrorCode::kHttpError, "recorded response has status " + std::to_string(r->status));
  }
  return r->body;
}

std::string WikidataClient::fetch_live(const std::string& query_text) {
  HttpRequest request{config_.endpoint, query_text, config_.user_agent, config_.timeout};
  std::chrono::milliseconds delay = config_.backoff;
  std::string last_problem;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    HttpResponse response;
    gate_->acquire();
    try {
      ++transport_calls_;
      response = transport_->execute(request);
    } catch (...) {
      gate_->release();
      throw;
    }
    gate_->release();

    if (response.status == 200) {
      if (config_.record_dir) {
        FixtureStore::save(*config_.record_dir, {query_text, config_.endpoint, 200, response.body});
      }
      return response.body;
    }
    last_problem = response.status == 0 ? "request failed: " + response.error
                                        : "endpoint returned HTTP " + std::to_string(response.status);
    bool retryable = response.status == 0 || response.status == 429 || response.status >= 500;
    if (!retryable || attempt == config_.max_retries) break;

    std::chrono::milliseconds wait = delay;
    if (response.retry_after) {
      auto capped = std::min<std::chrono::seconds>(*response.retry_after, config_.max_retry_after);
      wait = std::max(wait, std::chrono::duration_cast<std::chrono::milliseconds>(capped));
    }
    sleeper_(wait);
    delay *= 2;
  }
  throw Error(ErrorCode::kHttpError, last_problem);
}

std::string WikidataClient::execute(const std::string& query_text) {
  const std::string key = normalize_query_whitespace(query_text);
  {
    std::shared_lock lock(cache_mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  std::string body = config_.mode == ClientMode::kReplay ? fetch_replay(query_text) : fetch_live(query_text);
  std::unique_lock lock(cache_mutex_);
  cache_.emplace(key, body);
  return body;
}

std::vector<KbEntry> WikidataClient::query(const SparqlQuery& query) {
  return parse_sparql_results(execute(query.text));
}

ClassRelations WikidataClient::fetch_classes(std::span<const std::string> entity_ids) {
  if (entity_ids.empty()) return {};
  ClassRelations relations = parse_class_relations(execute(build_class_query(entity_ids)));
  for (const auto& id : entity_ids) relations.try_emplace(id);
  return relations;
}

std::vector<KbEntry> query_wikidata(const SparqlQuery& query, WikidataClient& client) {
  return client.query(query);
}

}  // namespace ctsearch::linker
