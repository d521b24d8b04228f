#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctsearch/corpus/document.hpp"

namespace ctsearch::corpus {

/// Returns the reason a document is a non-conceptual page (list, category
/// page, table of contents, book, person or meta page), or nullopt.
///
/// Matches case-insensitively on the title: prefix "list of", prefix
/// "category:", exact "contents"; or a source tag "book", "person" or "meta".
std::optional<std::string> meta_document_reason(const DocumentMetadata& metadata);

struct DroppedDocument {
  AnnotatedDocument document;
  std::string reason;
};

struct FilterOutcome {
  std::vector<AnnotatedDocument> kept;
  std::vector<DroppedDocument> dropped;
};

/// Partitions documents; relative order is preserved in both outputs.
FilterOutcome filter_meta_documents(std::vector<AnnotatedDocument> documents);

}  // namespace ctsearch::corpus
