#include "ctsearch/linker/transport.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "ctsearch/error.hpp"
#include "ctsearch/linker/sparql.hpp"
#include "ctsearch/text/sha256.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::linker {

std::optional<std::chrono::seconds> parse_retry_after(std::string_view value) {
  value = text::trim(value);
  long long seconds = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seconds);
  if (ec != std::errc() || ptr != value.data() + value.size() || seconds < 0) return std::nullopt;
  return std::chrono::seconds(seconds);
}

HttpResponse HttplibTransport::execute(const HttpRequest& request) {
  // Split "scheme://host[:port]/path" into client base and path.
  const std::string& url = request.endpoint;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument, "endpoint is not an absolute URL: " + url);
  }
  auto path_begin = url.find('/', scheme_end + 3);
  std::string base = path_begin == std::string::npos ? url : url.substr(0, path_begin);
  std::string path = path_begin == std::string::npos ? "/" : url.substr(path_begin);

  httplib::Client client(base);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
  auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(request.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  client.set_follow_location(true);

  httplib::Headers headers{{"User-Agent", request.user_agent},
                           {"Accept", "application/sparql-results+json"}};
  httplib::Params params{{"query", request.query}, {"format", "json"}};
  auto result = client.Post(path, headers, params);

  HttpResponse out;
  if (!result) {
    out.error = httplib::to_string(result.error());
    return out;
  }
  out.status = result->status;
  out.body = result->body;
  if (result->has_header("Retry-After")) out.retry_after = parse_retry_after(result->get_header_value("Retry-After"));
  return out;
}

std::string fixture_file_name(std::string_view query) {
  return text::sha256_hex(normalize_query_whitespace(query)).substr(0, 16) + ".json";
}

FixtureStore FixtureStore::load(const std::filesystem::path& dir) {
  FixtureStore store;
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) return store;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::kIo, "cannot read fixture " + path.string());
    try {
      auto doc = nlohmann::json::parse(in);
      RecordedResponse r;
      r.query = doc.at("query").get<std::string>();
      r.endpoint = doc.value("endpoint", "");
      r.status = doc.value("status", 200);
      r.body = doc.at("body").get<std::string>();
      store.add(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kCorruptFile, "bad fixture " + path.string() + ": " + e.what());
    }
  }
  return store;
}

void FixtureStore::add(RecordedResponse response) {
  by_query_[normalize_query_whitespace(response.query)] = std::move(response);
}

const RecordedResponse* FixtureStore::find(std::string_view query) const {
  auto it = by_query_.find(normalize_query_whitespace(query));
  return it == by_query_.end() ? nullptr : &it->second;
}

std::filesystem::path FixtureStore::save(const std::filesystem::path& dir, const RecordedResponse& response) {
  std::filesystem::create_directories(dir);
  nlohmann::json doc{{"query", response.query},
                     {"endpoint", response.endpoint},
                     {"status", response.status},
                     {"body", response.body}};
  auto path = dir / fixture_file_name(response.query);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write fixture " + path.string());
  out << doc.dump(2) << '\n';
  return path;
}

}  // namespace ctsearch::linker
