#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/index/lemma_index.hpp"

namespace ctsearch::search {

struct Segment {
  std::string text;
  bool highlighted = false;

  bool operator==(const Segment&) const = default;
};

/// Sorts spans, clamps them to [0, text_size], drops empty ones and merges
/// spans that overlap or touch.
std::vector<index::TokenSpan> merge_spans(std::span<const index::TokenSpan> spans,
                                          std::size_t text_size);

/// Splits `text` into alternating plain/highlighted segments. Concatenating
/// the segment texts always gives back `text`.
std::vector<Segment> highlight_sentence(std::string_view text,
                                        std::span<const index::TokenSpan> spans);

}  // namespace ctsearch::search
