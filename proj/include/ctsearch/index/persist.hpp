#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "ctsearch/index/lemma_index.hpp"

namespace ctsearch::index {

// On-disk layout (all integers little-endian):
//
//   offset  size  field
//   0       8     magic "CTSINDEX"
//   8       1     format version (kIndexVersion)
//   9       3     reserved, zero
//   12      8     manifest length M
//   20      M     manifest, UTF-8 JSON (see manifest_to_json)
//   20+M    8     payload length P
//   28+M    P     payload: documents, sentences, tokens, posting lists and
//                 the surface table, length-prefixed binary records
//
// The manifest carries the SHA-256 of the payload; load_index refuses a file
// whose payload does not hash to it.

nlohmann::json manifest_to_json(const IndexManifest& manifest);
IndexManifest manifest_from_json(const nlohmann::json& j);

/// Writes the index atomically (temp file + rename) and returns the manifest
/// as persisted, including the payload checksum.
IndexManifest persist_index(const LemmaIndex& index, const SentenceStore& store,
                            const std::filesystem::path& path);

/// Serialized bytes of the file persist_index would write.
std::string serialize_index(const LemmaIndex& index, const SentenceStore& store);

/// Throws Error with kVersionMismatch, kChecksumMismatch or kCorruptFile (and
/// kIo when the file cannot be opened). Never returns a partial index.
IndexedCorpus load_index(const std::filesystem::path& path);
IndexedCorpus deserialize_index(std::string_view bytes);

/// Reads only the manifest header, without validating the payload.
IndexManifest read_manifest(const std::filesystem::path& path);

}  // namespace ctsearch::index
