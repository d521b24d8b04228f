#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>

#include "ctsearch/linker/results.hpp"
#include "ctsearch/linker/sparql.hpp"
#include "ctsearch/linker/transport.hpp"

namespace ctsearch::linker {

enum class ClientMode { kLive, kReplay };

std::string_view to_string(ClientMode mode);
ClientMode parse_client_mode(std::string_view text);

inline constexpr std::string_view kDefaultEndpoint = "https://query.wikidata.org/sparql";
inline constexpr std::string_view kDefaultUserAgent =
    "ctsearch/1.0 (concept search over category theory corpora; https://github.com/ctsearch/ctsearch)";

struct ClientConfig {
  std::string endpoint{kDefaultEndpoint};
  ClientMode mode = ClientMode::kReplay;
  std::chrono::milliseconds timeout{30000};
  std::string user_agent{kDefaultUserAgent};
  int max_retries = 2;
  std::chrono::milliseconds backoff{1000};  // doubled after each attempt
  std::chrono::seconds max_retry_after{60};
  std::filesystem::path fixtures_dir;
  std::optional<std::filesystem::path> record_dir;  // live mode: save responses here
  int max_in_flight = 1;
};

/// Counting gate limiting concurrent requests to an endpoint.
class RequestGate {
 public:
  explicit RequestGate(int capacity);
  void acquire();
  void release();
  int capacity() const { return capacity_; }

  /// Process-wide gate used by clients that are not given one.
  static std::shared_ptr<RequestGate> shared(int capacity);

 private:
  std::mutex mutex_;
  std::condition_variable cv_;
  int capacity_;
  int in_use_ = 0;
};

class WikidataClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  /// In live mode `transport` defaults to HttplibTransport. In replay mode
  /// the transport is never used.
  explicit WikidataClient(ClientConfig config, std::shared_ptr<SparqlTransport> transport = nullptr,
                          std::shared_ptr<RequestGate> gate = nullptr);

  /// Response body for a query. Cached by normalized query text.
  /// Throws Error(kHttpError), Error(kMissingFixture).
  std::string execute(const std::string& query_text);

  std::vector<KbEntry> query(const SparqlQuery& query);
  ClassRelations fetch_classes(std::span<const std::string> entity_ids);

  const ClientConfig& config() const { return config_; }
  void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }
  std::size_t cache_size() const;
  std::size_t transport_calls() const { return transport_calls_; }

 private:
  std::string fetch_live(const std::string& query_text);
  std::string fetch_replay(const std::string& query_text) const;

  ClientConfig config_;
  std::shared_ptr<SparqlTransport> transport_;
  std::shared_ptr<RequestGate> gate_;
  FixtureStore fixtures_;
  Sleeper sleeper_;
  mutable std::shared_mutex cache_mutex_;
  std::map<std::string, std::string> cache_;
  std::atomic<std::size_t> transport_calls_{0};
};

/// One-shot helper: runs `query` through `client` and parses the entries.
std::vector<KbEntry> query_wikidata(const SparqlQuery& query, WikidataClient& client);

}  // namespace ctsearch::linker
