#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ctsearch/corpus/document.hpp"

namespace ctsearch::corpus {

// Manifest records are JSON objects with keys doc_id, corpus, title, authors,
// date ("YYYY-MM-DD"), keywords, source_url and optionally tags.
nlohmann::json metadata_to_json(const DocumentMetadata& metadata);

// Throws Error(kInvalidArgument) on a missing doc_id / corpus or a bad date.
DocumentMetadata metadata_from_json(const nlohmann::json& record);

// One JSON object per line. Blank lines are skipped; errors carry the line number.
std::vector<DocumentMetadata> parse_manifest(std::string_view jsonl);
std::string serialize_manifest(const std::vector<DocumentMetadata>& records);

std::string format_date(const std::chrono::year_month_day& date);
std::chrono::year_month_day parse_date(std::string_view text);

/// Fills metadata of parsed CONLL-U documents from manifest records with the
/// same doc_id. Documents without a record keep their bare metadata.
void attach_metadata(std::vector<AnnotatedDocument>& documents,
                     const std::vector<DocumentMetadata>& records);

}  // namespace ctsearch::corpus
