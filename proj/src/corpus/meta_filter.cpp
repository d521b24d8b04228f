#include "ctsearch/corpus/meta_filter.hpp"

#include <array>
#include <string_view>

#include "ctsearch/text/unicode.hpp"

namespace ctsearch::corpus {

std::optional<std::string> meta_document_reason(const DocumentMetadata& metadata) {
  const std::string title = text::casefold(text::trim(metadata.title));
  if (title.rfind("list of", 0) == 0) return "title starts with 'list of'";
  if (title.rfind("category:", 0) == 0) return "title starts with 'category:'";
  if (title == "contents") return "title is 'contents'";

  static constexpr std::array<std::string_view, 3> kMarkers = {"book", "person", "meta"};
  for (const auto& tag : metadata.tags) {
    const std::string folded = text::casefold(text::trim(tag));
    for (auto marker : kMarkers) {
      if (folded == marker) return "source tag '" + std::string(marker) + "'";
    }
  }
  return std::nullopt;
}

FilterOutcome filter_meta_documents(std::vector<AnnotatedDocument> documents) {
  FilterOutcome out;
  for (auto& doc : documents) {
    if (auto reason = meta_document_reason(doc.metadata)) {
      out.dropped.push_back({std::move(doc), std::move(*reason)});
    } else {
      out.kept.push_back(std::move(doc));
    }
  }
  return out;
}

}  // namespace ctsearch::corpus
