#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/linker/filter_list.hpp"

namespace ctsearch::linker {

enum class KbSource { kWikidata, kNlab };

std::string_view to_string(KbSource source);

struct KbEntry {
  KbSource source = KbSource::kWikidata;
  std::string entity_id;
  std::string label;
  std::optional<std::string> description;
  std::string url;

  bool operator==(const KbEntry&) const = default;
};

/// Canonical link for an entity: wikidata.org/wiki/<id> (Property:<id> for
/// properties) or the nLab article for a page slug.
std::string entity_url(KbSource source, std::string_view entity_id);

/// Parses a SPARQL JSON results body with ?item, ?itemLabel and optional
/// ?itemDescription bindings, preserving result order.
/// Throws Error(kMalformedResponse).
std::vector<KbEntry> parse_sparql_results(std::string_view body);

/// Immediate class relations of one entity.
struct EntityClasses {
  std::vector<std::string> subclass_of;  // P279
  std::vector<std::string> instance_of;  // P31

  bool operator==(const EntityClasses&) const = default;
};

using ClassRelations = std::map<std::string, EntityClasses>;

/// Parses the result of build_class_query(). Throws Error(kMalformedResponse).
ClassRelations parse_class_relations(std::string_view body);

struct PostFilterOptions {
  bool include_instance_of = false;
};

/// Drops entries with an immediate P279 (and, optionally, P31) link to a
/// filter class. Entries without relation data are kept.
std::vector<KbEntry> post_filter_entries(const std::vector<KbEntry>& entries, const FilterList& filters,
                                         const ClassRelations& relations, PostFilterOptions options = {});

/// Last path segment of an entity IRI, e.g. ".../entity/Q42" -> "Q42".
std::string entity_id_from_iri(std::string_view iri);

}  // namespace ctsearch::linker
