#include "ctsearch/linker/results.hpp"

#include <json.hpp>

#include "ctsearch/error.hpp"

namespace ctsearch::linker {

using nlohmann::json;

std::string_view to_string(KbSource source) {
  return source == KbSource::kWikidata ? "wikidata" : "nlab";
}

std::string entity_url(KbSource source, std::string_view entity_id) {
  if (source == KbSource::kNlab) return "https://ncatlab.org/nlab/show/" + std::string(entity_id);
  if (!entity_id.empty() && entity_id.front() == 'P') {
    return "https://www.wikidata.org/wiki/Property:" + std::string(entity_id);
  }
  return "https://www.wikidata.org/wiki/" + std::string(entity_id);
}

std::string entity_id_from_iri(std::string_view iri) {
  auto slash = iri.find_last_of('/');
  std::string_view tail = slash == std::string_view::npos ? iri : iri.substr(slash + 1);
  return std::string(tail);
}

namespace {

const json& bindings_of(const json& doc) {
  if (!doc.is_object() || !doc.contains("results") || !doc["results"].is_object() ||
      !doc["results"].contains("bindings") || !doc["results"]["bindings"].is_array()) {
    throw Error(ErrorCode::kMalformedResponse, "SPARQL response lacks results.bindings");
  }
  return doc["results"]["bindings"];
}

json parse_body(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedResponse, std::string("SPARQL response is not JSON: ") + e.what());
  }
}

std::optional<std::string> binding_value(const json& row, const char* name) {
  if (!row.contains(name)) return std::nullopt;
  const json& cell = row[name];
  if (!cell.is_object() || !cell.contains("value") || !cell["value"].is_string()) {
    throw Error(ErrorCode::kMalformedResponse, std::string("binding '") + name + "' has no string value");
  }
  return cell["value"].get<std::string>();
}

}  // namespace

std::vector<KbEntry> parse_sparql_results(std::string_view body) {
  const json doc = parse_body(body);
  std::vector<KbEntry> out;
  for (const json& row : bindings_of(doc)) {
    if (!row.is_object()) throw Error(ErrorCode::kMalformedResponse, "binding row is not an object");
    auto item = binding_value(row, "item");
    if (!item) throw Error(ErrorCode::kMalformedResponse, "binding row lacks ?item");
    KbEntry e;
    e.source = KbSource::kWikidata;
    e.entity_id = entity_id_from_iri(*item);
    if (e.entity_id.empty()) throw Error(ErrorCode::kMalformedResponse, "cannot read an id from " + *item);
    e.label = binding_value(row, "itemLabel").value_or(e.entity_id);
    e.description = binding_value(row, "itemDescription");
    e.url = entity_url(e.source, e.entity_id);
    out.push_back(std::move(e));
  }
  return out;
}

ClassRelations parse_class_relations(std::string_view body) {
  const json doc = parse_body(body);
  ClassRelations out;
  for (const json& row : bindings_of(doc)) {
    auto item = binding_value(row, "item");
    auto relation = binding_value(row, "relation");
    auto cls = binding_value(row, "class");
    if (!item || !relation || !cls) throw Error(ErrorCode::kMalformedResponse, "class row is incomplete");
    EntityClasses& classes = out[entity_id_from_iri(*item)];
    std::string rel = entity_id_from_iri(*relation);
    std::string target = entity_id_from_iri(*cls);
    if (rel == "P279") {
      classes.subclass_of.push_back(std::move(target));
    } else if (rel == "P31") {
      classes.instance_of.push_back(std::move(target));
    }
  }
  return out;
}

std::vector<KbEntry> post_filter_entries(const std::vector<KbEntry>& entries, const FilterList& filters,
                                         const ClassRelations& relations, PostFilterOptions options) {
  std::vector<KbEntry> out;
  for (const auto& entry : entries) {
    bool drop = false;
    if (auto it = relations.find(entry.entity_id); it != relations.end()) {
      for (const auto& c : it->second.subclass_of) drop = drop || filters.contains(c);
      if (options.include_instance_of) {
        for (const auto& c : it->second.instance_of) drop = drop || filters.contains(c);
      }
    }
    if (!drop) out.push_back(entry);
  }
  return out;
}

}  // namespace ctsearch::linker
