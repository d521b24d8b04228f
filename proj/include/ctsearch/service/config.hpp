#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ctsearch/index/lemma_index.hpp"
#include "ctsearch/linker/linker.hpp"

namespace ctsearch::service {

struct ApiConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 8080;
  std::filesystem::path index_path;
  linker::ClientConfig wikidata;
  std::optional<linker::FilterStrategy> filter_strategy;
  bool filter_instance_of = false;
  std::size_t default_limit = 20;
  std::size_t max_limit = 1000;
  std::map<index::CorpusId, std::size_t> corpus_limits;
  std::vector<std::string> cors_origins;  // "*" allows any origin
  int threads = 8;
};

/// Reads a JSON config file. Relative paths resolve against the file's
/// directory. Throws Error(kIo) / Error(kInvalidArgument).
///
///   {"host": "0.0.0.0", "port": 8080, "index": "sample.ctsidx",
///    "wikidata": {"endpoint": "...", "mode": "replay", "fixtures": "dir",
///                 "timeout_ms": 30000, "user_agent": "...",
///                 "filter_strategy": "local", "instance_of": false},
///    "limits": {"default": 20, "max": 1000, "NLAB": 50},
///    "cors_origins": ["http://localhost:5173"], "threads": 8}
ApiConfig load_config(const std::filesystem::path& path);
ApiConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Applies CTSEARCH_HOST, CTSEARCH_PORT, CTSEARCH_INDEX,
/// CTSEARCH_WIKIDATA_ENDPOINT, CTSEARCH_LINK_MODE, CTSEARCH_FIXTURES,
/// CTSEARCH_TIMEOUT_MS, CTSEARCH_USER_AGENT, CTSEARCH_FILTER_STRATEGY and
/// CTSEARCH_CORS_ORIGINS (comma separated).
void apply_env_overrides(ApiConfig& config, const EnvLookup& env);
void apply_env_overrides(ApiConfig& config);

linker::LinkerConfig linker_config(const ApiConfig& config);

}  // namespace ctsearch::service
