#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/linker/filter_list.hpp"

namespace ctsearch::linker {

struct SparqlQuery {
  std::string text;
  std::string term;
  FilterList filters;
};

/// Backslash-escapes '"' and '\' for a double-quoted SPARQL literal.
/// Throws Error(kUnescapableTerm) on control characters or invalid UTF-8.
std::string escape_sparql_literal(std::string_view term);

/// Label/alias lookup for `term` (English), minus immediate subclasses
/// (wdt:P279) of each filter class, with the label service attached:
///
///   SELECT DISTINCT ?item ?itemLabel ?itemDescription
///   WHERE {
///     {?item rdfs:label "<term>"@en.} UNION
///     {?item skos:altLabel "<term>"@en.}
///     MINUS { ?item wdt:P279 wd:<class> }      (one per filter class)
///     SERVICE wikibase:label {
///       bd:serviceParam wikibase:language "en".
///     }
///   }
///
/// Throws Error(kEmptyTerm) for blank terms.
SparqlQuery build_sparql(std::string_view term, const FilterList& filters);

/// The query text for an already escaped literal and an arbitrary class id
/// sequence (duplicates allowed).
std::string render_label_query(std::string_view escaped_term, std::span<const std::string> class_ids);

/// Immediate "subclass of" and "instance of" classes of the given items.
std::string build_class_query(std::span<const std::string> entity_ids);

/// Collapses whitespace runs to one space and trims; the key under which
/// queries are compared, cached and replayed.
std::string normalize_query_whitespace(std::string_view query);

}  // namespace ctsearch::linker
