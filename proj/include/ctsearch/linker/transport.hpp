#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace ctsearch::linker {

struct HttpRequest {
  std::string endpoint;  // full URL, e.g. https://query.wikidata.org/sparql
  std::string query;
  std::string user_agent;
  std::chrono::milliseconds timeout{30000};
};

struct HttpResponse {
  int status = 0;  // 0 for transport failures (timeout, refused, DNS)
  std::string body;
  std::optional<std::chrono::seconds> retry_after;
  std::string error;  // transport failure description
};

class SparqlTransport {
 public:
  virtual ~SparqlTransport() = default;
  virtual HttpResponse execute(const HttpRequest& request) = 0;
};

/// POSTs the query form-encoded and asks for SPARQL JSON results.
class HttplibTransport final : public SparqlTransport {
 public:
  HttpResponse execute(const HttpRequest& request) override;
};

/// Parses a Retry-After header given in seconds. HTTP dates are ignored.
std::optional<std::chrono::seconds> parse_retry_after(std::string_view value);

struct RecordedResponse {
  std::string query;
  std::string endpoint;
  int status = 200;
  std::string body;
};

/// Recorded responses keyed by whitespace-normalized query text. One JSON
/// file per response: {"query", "endpoint", "status", "body"}.
class FixtureStore {
 public:
  FixtureStore() = default;

  /// Loads every *.json file in `dir`. A missing directory yields an empty
  /// store. Throws Error(kCorruptFile) for unreadable fixture files.
  static FixtureStore load(const std::filesystem::path& dir);

  void add(RecordedResponse response);
  const RecordedResponse* find(std::string_view query) const;
  std::size_t size() const { return by_query_.size(); }

  /// Writes the response as <dir>/<sha256 of normalized query prefix>.json.
  static std::filesystem::path save(const std::filesystem::path& dir, const RecordedResponse& response);

 private:
  std::map<std::string, RecordedResponse> by_query_;
};

std::string fixture_file_name(std::string_view query);

}  // namespace ctsearch::linker
