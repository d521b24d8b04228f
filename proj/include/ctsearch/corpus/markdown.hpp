#pragma once

#include <string>
#include <string_view>

namespace ctsearch::corpus {

/// Reduces Markdown (including nLab/Instiki wiki links and attribute lists)
/// to plain text. Heading, emphasis and list markers and fenced code blocks
/// are removed, links are replaced by their anchor text, paragraph breaks
/// become single blank lines. Idempotent.
std::string strip_markdown(std::string_view raw);

}  // namespace ctsearch::corpus
