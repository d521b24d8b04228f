#include "ctsearch/linker/sparql.hpp"

#include "ctsearch/error.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::linker {

std::string escape_sparql_literal(std::string_view term) {
  if (!text::is_valid_utf8(term)) throw Error(ErrorCode::kUnescapableTerm, "term is not valid UTF-8");
  std::string out;
  out.reserve(term.size());
  for (char c : term) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u == 0x7f) {
      throw Error(ErrorCode::kUnescapableTerm, "term contains a control character");
    }
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string render_label_query(std::string_view escaped_term, std::span<const std::string> class_ids) {
  std::string q;
  q += "SELECT DISTINCT ?item ?itemLabel ?itemDescription\n";
  q += "WHERE {\n";
  q += "  {?item rdfs:label \"";
  q += escaped_term;
  q += "\"@en.} UNION\n";
  q += "  {?item skos:altLabel \"";
  q += escaped_term;
  q += "\"@en.}\n";
  for (const auto& id : class_ids) q += "  MINUS { ?item wdt:P279 wd:" + id + " }\n";
  q += "  SERVICE wikibase:label {\n";
  q += "    bd:serviceParam wikibase:language \"en\".\n";
  q += "  }\n";
  q += "}\n";
  return q;
}

SparqlQuery build_sparql(std::string_view term, const FilterList& filters) {
  std::string_view trimmed = text::trim(term);
  if (trimmed.empty()) throw Error(ErrorCode::kEmptyTerm, "link term is empty");
  const std::string escaped = escape_sparql_literal(trimmed);
  const auto ids = filters.ids();
  return {render_label_query(escaped, ids), std::string(trimmed), filters};
}

std::string build_class_query(std::span<const std::string> entity_ids) {
  std::string q;
  q += "SELECT ?item ?relation ?class\n";
  q += "WHERE {\n";
  q += "  VALUES ?item {";
  for (const auto& id : entity_ids) q += " wd:" + id;
  q += " }\n";
  q += "  VALUES ?relation { wdt:P279 wdt:P31 }\n";
  q += "  ?item ?relation ?class .\n";
  q += "}\n";
  return q;
}

std::string normalize_query_whitespace(std::string_view query) { return text::normalize_whitespace(query); }

}  // namespace ctsearch::linker
