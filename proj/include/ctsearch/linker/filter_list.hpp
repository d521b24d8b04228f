#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctsearch::linker {

struct FilterClass {
  std::string id;  // Wikidata item id, e.g. "Q223557"
  std::string description;

  bool operator==(const FilterClass&) const = default;
};

/// Ordered, duplicate-free list of Wikidata classes whose immediate
/// subclasses are excluded from linking results.
class FilterList {
 public:
  FilterList() = default;

  /// Trims and upper-cases ids, keeps the first occurrence of each id.
  /// Throws Error(kInvalidArgument) for ids that are not Q/P numbers.
  explicit FilterList(std::vector<FilterClass> classes);

  /// Classes that describe physical objects, places, activities, artworks,
  /// time and money, plus Wikimedia category pages.
  static FilterList defaults();

  const std::vector<FilterClass>& entries() const { return classes_; }
  std::vector<std::string> ids() const;
  std::size_t size() const { return classes_.size(); }
  bool empty() const { return classes_.empty(); }
  bool contains(std::string_view id) const;

  bool operator==(const FilterList&) const = default;

 private:
  std::vector<FilterClass> classes_;
};

/// Default class rows in their source order, with Q4167836 appearing twice.
/// FilterList::defaults() is this list deduplicated.
std::vector<FilterClass> published_filter_rows();

/// Normalized id ("q42 " -> "Q42"), or "" when the text is not a Q/P id.
std::string normalize_entity_id(std::string_view id);

}  // namespace ctsearch::linker
