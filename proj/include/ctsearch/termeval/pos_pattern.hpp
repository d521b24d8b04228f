#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ctsearch::termeval {

/// Regular expression over UPOS tags:
///   pattern := alt
///   alt     := seq ('|' seq)*
///   seq     := item+
///   item    := atom ('*' | '+' | '?')*
///   atom    := TAG | '.' | '(' alt ')'
/// Tags are upper-case words ("NOUN", "ADJ"); '.' matches any tag.
/// Example: "(ADJ|NOUN)* NOUN".
class PosPattern {
 public:
  /// Throws Error(kPatternSyntaxError).
  static PosPattern compile(std::string_view source);

  const std::string& source() const { return source_; }

  /// Every end index e > begin such that tags[begin, e) matches, ascending.
  std::vector<std::size_t> match_ends(std::span<const std::string> tags, std::size_t begin) const;

  bool full_match(std::span<const std::string> tags) const;

 private:
  struct State {
    enum Kind { kTag, kAny, kSplit, kMatch } kind;
    std::string tag;
    int out = -1;
    int out2 = -1;
  };

  void add_closure(std::vector<int>& set, std::vector<char>& seen, int state) const;

  std::string source_;
  std::vector<State> states_;
  int start_ = -1;

  friend class PosPatternBuilder;
};

struct PatternSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const PatternSpan&) const = default;
  auto operator<=>(const PatternSpan&) const = default;
};

/// Non-empty spans matching any pattern and not strictly contained in
/// another matching span, sorted.
std::vector<PatternSpan> maximal_pattern_spans(std::span<const std::string> tags,
                                               std::span<const PosPattern> patterns);

}  // namespace ctsearch::termeval
