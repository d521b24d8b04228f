#include "ctsearch/corpus/metadata.hpp"

#include <charconv>
#include <cstdio>

#include "ctsearch/error.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::corpus {

using nlohmann::json;

std::string format_date(const std::chrono::year_month_day& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

std::chrono::year_month_day parse_date(std::string_view text) {
  auto bad = [&] {
    return Error(ErrorCode::kInvalidArgument, "invalid date '" + std::string(text) + "'");
  };
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') throw bad();
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  auto parse = [&](std::string_view part, auto& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size()) throw bad();
  };
  parse(text.substr(0, 4), y);
  parse(text.substr(5, 2), m);
  parse(text.substr(8, 2), d);
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) throw bad();
  return ymd;
}

json metadata_to_json(const DocumentMetadata& m) {
  json j;
  j["doc_id"] = m.doc_id;
  j["corpus"] = m.corpus.str();
  j["title"] = m.title;
  j["authors"] = m.authors;
  j["date"] = m.date ? json(format_date(*m.date)) : json(nullptr);
  j["keywords"] = m.keywords;
  j["source_url"] = m.source_url ? json(*m.source_url) : json(nullptr);
  if (!m.tags.empty()) j["tags"] = m.tags;
  return j;
}

namespace {

std::vector<std::string> string_list(const json& record, const char* key) {
  std::vector<std::string> out;
  if (!record.contains(key) || record[key].is_null()) return out;
  const json& v = record[key];
  if (!v.is_array()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("'") + key + "' must be an array");
  }
  for (const auto& item : v) {
    if (!item.is_string()) {
      throw Error(ErrorCode::kInvalidArgument, std::string("'") + key + "' must hold strings");
    }
    out.push_back(text::nfc(item.get<std::string>()));
  }
  return out;
}

std::string required_string(const json& record, const char* key) {
  if (!record.contains(key) || !record[key].is_string() ||
      text::trim(record[key].get<std::string>()).empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string("missing or empty '") + key + "'");
  }
  return record[key].get<std::string>();
}

}  // namespace

DocumentMetadata metadata_from_json(const json& record) {
  if (!record.is_object()) throw Error(ErrorCode::kInvalidArgument, "manifest record is not an object");
  DocumentMetadata m;
  m.doc_id = required_string(record, "doc_id");
  m.corpus = CorpusId(required_string(record, "corpus"));
  if (record.contains("title") && record["title"].is_string()) {
    m.title = text::nfc(record["title"].get<std::string>());
  }
  m.authors = string_list(record, "authors");
  if (record.contains("date") && !record["date"].is_null()) {
    if (!record["date"].is_string()) throw Error(ErrorCode::kInvalidArgument, "'date' must be a string");
    m.date = parse_date(record["date"].get<std::string>());
  }
  m.keywords = string_list(record, "keywords");
  if (record.contains("source_url") && record["source_url"].is_string()) {
    m.source_url = record["source_url"].get<std::string>();
  }
  m.tags = string_list(record, "tags");
  return m;
}

std::vector<DocumentMetadata> parse_manifest(std::string_view jsonl) {
  std::vector<DocumentMetadata> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < jsonl.size()) {
    auto nl = jsonl.find('\n', pos);
    std::string_view line =
        jsonl.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? jsonl.size() : nl + 1;
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(metadata_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument,
                  "manifest line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(e.code(), "manifest line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string serialize_manifest(const std::vector<DocumentMetadata>& records) {
  std::string out;
  for (const auto& r : records) {
    out += metadata_to_json(r).dump();
    out += '\n';
  }
  return out;
}

void attach_metadata(std::vector<AnnotatedDocument>& documents,
                     const std::vector<DocumentMetadata>& records) {
  std::map<std::pair<std::string, std::string>, const DocumentMetadata*> by_key;
  std::map<std::string, const DocumentMetadata*> by_id;
  for (const auto& r : records) {
    by_key[{r.corpus.str(), r.doc_id}] = &r;
    by_id.emplace(r.doc_id, &r);
  }
  for (auto& doc : documents) {
    const DocumentMetadata* found = nullptr;
    if (auto it = by_key.find({doc.metadata.corpus.str(), doc.metadata.doc_id}); it != by_key.end()) {
      found = it->second;
    } else if (doc.metadata.corpus.empty()) {
      if (auto it2 = by_id.find(doc.metadata.doc_id); it2 != by_id.end()) found = it2->second;
    }
    if (found != nullptr) doc.metadata = *found;
  }
}

}  // namespace ctsearch::corpus
