#include "ctsearch/search/highlight.hpp"

#include <algorithm>

namespace ctsearch::search {

std::vector<index::TokenSpan> merge_spans(std::span<const index::TokenSpan> spans,
                                          std::size_t text_size) {
  std::vector<index::TokenSpan> sorted;
  const auto limit = static_cast<std::uint32_t>(text_size);
  for (auto s : spans) {
    s.begin = std::min(s.begin, limit);
    s.end = std::min(s.end, limit);
    if (s.begin < s.end) sorted.push_back(s);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.begin < b.begin || (a.begin == b.begin && a.end < b.end); });
  std::vector<index::TokenSpan> merged;
  for (const auto& s : sorted) {
    if (!merged.empty() && s.begin <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

std::vector<Segment> highlight_sentence(std::string_view text,
                                        std::span<const index::TokenSpan> spans) {
  std::vector<Segment> out;
  std::size_t cursor = 0;
  for (const auto& s : merge_spans(spans, text.size())) {
    if (s.begin > cursor) out.push_back({std::string(text.substr(cursor, s.begin - cursor)), false});
    out.push_back({std::string(text.substr(s.begin, s.end - s.begin)), true});
    cursor = s.end;
  }
  if (cursor < text.size() || out.empty()) out.push_back({std::string(text.substr(cursor)), false});
  return out;
}

}  // namespace ctsearch::search
