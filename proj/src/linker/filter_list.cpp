#include "ctsearch/linker/filter_list.hpp"

#include <algorithm>
#include <cctype>

#include "ctsearch/error.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::linker {

std::string normalize_entity_id(std::string_view id) {
  id = text::trim(id);
  if (id.size() < 2) return {};
  std::string out(id);
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  if (out[0] != 'Q' && out[0] != 'P') return {};
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(out[i])) == 0) return {};
  }
  return out;
}

FilterList::FilterList(std::vector<FilterClass> classes) {
  for (auto& c : classes) {
    std::string id = normalize_entity_id(c.id);
    if (id.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "filter class '" + c.id + "' is not a Wikidata id");
    }
    if (contains(id)) continue;
    classes_.push_back({std::move(id), std::move(c.description)});
  }
}

std::vector<FilterClass> published_filter_rows() {
  return {
      {"Q223557", "Physical object"},   {"Q4167836", "Concrete object"},
      {"Q17334923", "Physical location"}, {"Q4167836", "Wikimedia category"},
      {"Q1914636", "Activity"},         {"Q3769299", "Human Behavior"},
      {"Q63539947", "Artistic Concept"}, {"Q186408", "Point in Time"},
      {"Q186081", "Time Interval"},     {"Q8142", "Currency"},
  };
}

FilterList FilterList::defaults() { return FilterList(published_filter_rows()); }

std::vector<std::string> FilterList::ids() const {
  std::vector<std::string> out;
  out.reserve(classes_.size());
  for (const auto& c : classes_) out.push_back(c.id);
  return out;
}

bool FilterList::contains(std::string_view id) const {
  return std::any_of(classes_.begin(), classes_.end(), [&](const FilterClass& c) { return c.id == id; });
}

}  // namespace ctsearch::linker
