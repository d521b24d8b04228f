#include "ctsearch/service/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>

#include "ctsearch/error.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::service {

using nlohmann::json;

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

template <typename T>
T parse_number(const std::string& name, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorCode::kInvalidArgument, name + " is not a number: '" + value + "'");
  }
  return out;
}

std::vector<std::string> split_csv(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    auto part = text::trim(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (!part.empty()) out.emplace_back(part);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

index::CorpusId corpus_key(const std::string& name) {
  static const corpus::CorpusRegistry registry;
  return registry.resolve(name).value_or(index::CorpusId(name));
}

}  // namespace

ApiConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  ApiConfig c;
  try {
    if (!j.is_object()) throw Error(ErrorCode::kInvalidArgument, "config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
      static const std::vector<std::string> known{"host", "port", "index", "wikidata", "limits", "cors_origins", "threads"};
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
      }
    }
    c.host = j.value("host", c.host);
    if (j.contains("port")) {
      const auto port = j["port"].get<long long>();
      if (port < 0 || port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range");
      c.port = static_cast<std::uint16_t>(port);
    }
    if (j.contains("index")) c.index_path = resolve(base_dir, j["index"].get<std::string>());
    c.threads = j.value("threads", c.threads);
    if (c.threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be positive");
    if (j.contains("wikidata")) {
      const json& w = j["wikidata"];
      c.wikidata.endpoint = w.value("endpoint", c.wikidata.endpoint);
      if (w.contains("mode")) c.wikidata.mode = linker::parse_client_mode(w["mode"].get<std::string>());
      if (w.contains("fixtures")) c.wikidata.fixtures_dir = resolve(base_dir, w["fixtures"].get<std::string>());
      if (w.contains("timeout_ms")) c.wikidata.timeout = std::chrono::milliseconds(w["timeout_ms"].get<long long>());
      c.wikidata.user_agent = w.value("user_agent", c.wikidata.user_agent);
      if (w.contains("filter_strategy")) {
        c.filter_strategy = linker::parse_filter_strategy(w["filter_strategy"].get<std::string>());
      }
      c.filter_instance_of = w.value("instance_of", c.filter_instance_of);
    }
    if (j.contains("limits")) {
      for (const auto& [key, value] : j["limits"].items()) {
        if (key == "default") {
          c.default_limit = value.get<std::size_t>();
        } else if (key == "max") {
          c.max_limit = value.get<std::size_t>();
        } else {
          c.corpus_limits[corpus_key(key)] = value.get<std::size_t>();
        }
      }
    }
    if (c.default_limit == 0 || c.max_limit == 0 || c.default_limit > c.max_limit) {
      throw Error(ErrorCode::kInvalidArgument, "limits need 0 < default <= max");
    }
    for (const auto& [corpus, limit] : c.corpus_limits) {
      if (limit == 0) throw Error(ErrorCode::kInvalidArgument, "limit for " + corpus.str() + " is 0");
    }
    if (j.contains("cors_origins")) c.cors_origins = j["cors_origins"].get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad config: ") + e.what());
  }
  return c;
}

ApiConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidArgument, "config " + path.string() + " is not JSON: " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

void apply_env_overrides(ApiConfig& c, const EnvLookup& env) {
  if (auto v = env("CTSEARCH_HOST")) c.host = *v;
  if (auto v = env("CTSEARCH_PORT")) c.port = parse_number<std::uint16_t>("CTSEARCH_PORT", *v);
  if (auto v = env("CTSEARCH_INDEX")) c.index_path = *v;
  if (auto v = env("CTSEARCH_WIKIDATA_ENDPOINT")) c.wikidata.endpoint = *v;
  if (auto v = env("CTSEARCH_LINK_MODE")) c.wikidata.mode = linker::parse_client_mode(*v);
  if (auto v = env("CTSEARCH_FIXTURES")) c.wikidata.fixtures_dir = *v;
  if (auto v = env("CTSEARCH_TIMEOUT_MS")) {
    c.wikidata.timeout = std::chrono::milliseconds(parse_number<long long>("CTSEARCH_TIMEOUT_MS", *v));
  }
  if (auto v = env("CTSEARCH_USER_AGENT")) c.wikidata.user_agent = *v;
  if (auto v = env("CTSEARCH_FILTER_STRATEGY")) c.filter_strategy = linker::parse_filter_strategy(*v);
  if (auto v = env("CTSEARCH_CORS_ORIGINS")) c.cors_origins = split_csv(*v);
}

void apply_env_overrides(ApiConfig& c) {
  apply_env_overrides(c, [](const std::string& name) -> std::optional<std::string> {
    const char* v = std::getenv(name.c_str());
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  });
}

linker::LinkerConfig linker_config(const ApiConfig& c) {
  linker::LinkerConfig l;
  l.client = c.wikidata;
  l.strategy = c.filter_strategy;
  l.post_filter.include_instance_of = c.filter_instance_of;
  return l;
}

}  // namespace ctsearch::service
