#include "ctsearch/termeval/pos_pattern.hpp"

#include <algorithm>
#include <cctype>

#include "ctsearch/error.hpp"

namespace ctsearch::termeval {

/// Thompson construction over a recursive-descent parse.
class PosPatternBuilder {
 public:
  PosPatternBuilder(std::string_view src, PosPattern& out) : src_(src), out_(out) {}

  void build() {
    skip_space();
    if (pos_ >= src_.size()) fail("empty pattern");
    Frag f = parse_alt();
    skip_space();
    if (pos_ < src_.size()) fail(std::string("unexpected '") + src_[pos_] + "'");
    int match = add({PosPattern::State::kMatch, {}, -1, -1});
    patch(f, match);
    out_.start_ = f.start;
  }

 private:
  // Dangling exits are (state, which) pairs; which = 0 for out, 1 for out2.
  struct Frag {
    int start;
    std::vector<std::pair<int, int>> exits;
  };

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kPatternSyntaxError,
                "pattern '" + std::string(src_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  int add(PosPattern::State s) {
    out_.states_.push_back(std::move(s));
    return static_cast<int>(out_.states_.size()) - 1;
  }

  void patch(const Frag& f, int target) {
    for (auto [state, which] : f.exits) {
      (which == 0 ? out_.states_[state].out : out_.states_[state].out2) = target;
    }
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) ++pos_;
  }

  bool at_atom_start() {
    skip_space();
    if (pos_ >= src_.size()) return false;
    char c = src_[pos_];
    return c == '(' || c == '.' || std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_';
  }

  Frag parse_alt() {
    Frag left = parse_seq();
    skip_space();
    while (pos_ < src_.size() && src_[pos_] == '|') {
      ++pos_;
      Frag right = parse_seq();
      int split = add({PosPattern::State::kSplit, {}, left.start, right.start});
      left.start = split;
      left.exits.insert(left.exits.end(), right.exits.begin(), right.exits.end());
      skip_space();
    }
    return left;
  }

  Frag parse_seq() {
    if (!at_atom_start()) fail("expected a tag or '('");
    Frag f = parse_item();
    while (at_atom_start()) {
      Frag next = parse_item();
      patch(f, next.start);
      f.exits = std::move(next.exits);
    }
    return f;
  }

  Frag parse_item() {
    Frag f = parse_atom();
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) break;
      char c = src_[pos_];
      if (c == '*') {
        int split = add({PosPattern::State::kSplit, {}, f.start, -1});
        patch(f, split);
        f = {split, {{split, 1}}};
      } else if (c == '+') {
        int split = add({PosPattern::State::kSplit, {}, f.start, -1});
        patch(f, split);
        f.exits = {{split, 1}};
      } else if (c == '?') {
        int split = add({PosPattern::State::kSplit, {}, f.start, -1});
        f.exits.emplace_back(split, 1);
        f.start = split;
      } else {
        break;
      }
      ++pos_;
    }
    return f;
  }

  Frag parse_atom() {
    skip_space();
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Frag inner = parse_alt();
      skip_space();
      if (pos_ >= src_.size() || src_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (c == '.') {
      ++pos_;
      int s = add({PosPattern::State::kAny, {}, -1, -1});
      return {s, {{s, 0}}};
    }
    std::size_t begin = pos_;
    while (pos_ < src_.size() &&
           (std::isupper(static_cast<unsigned char>(src_[pos_])) != 0 || src_[pos_] == '_')) {
      ++pos_;
    }
    if (pos_ == begin || (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_])) != 0)) {
      fail("tags must be upper-case words");
    }
    int s = add({PosPattern::State::kTag, std::string(src_.substr(begin, pos_ - begin)), -1, -1});
    return {s, {{s, 0}}};
  }

  std::string_view src_;
  PosPattern& out_;
  std::size_t pos_ = 0;
};

PosPattern PosPattern::compile(std::string_view source) {
  PosPattern p;
  p.source_ = std::string(source);
  PosPatternBuilder(p.source_, p).build();
  return p;
}

void PosPattern::add_closure(std::vector<int>& set, std::vector<char>& seen, int state) const {
  if (state < 0 || seen[state]) return;
  seen[state] = 1;
  const State& s = states_[state];
  if (s.kind == State::kSplit) {
    add_closure(set, seen, s.out);
    add_closure(set, seen, s.out2);
    return;
  }
  set.push_back(state);
}

std::vector<std::size_t> PosPattern::match_ends(std::span<const std::string> tags, std::size_t begin) const {
  std::vector<std::size_t> ends;
  std::vector<int> current;
  std::vector<char> seen(states_.size(), 0);
  add_closure(current, seen, start_);
  for (std::size_t i = begin; i < tags.size() && !current.empty(); ++i) {
    std::vector<int> next;
    std::fill(seen.begin(), seen.end(), 0);
    bool matched = false;
    for (int st : current) {
      const State& s = states_[st];
      if (s.kind == State::kAny || (s.kind == State::kTag && s.tag == tags[i])) add_closure(next, seen, s.out);
    }
    for (int st : next) matched = matched || states_[st].kind == State::kMatch;
    if (matched) ends.push_back(i + 1);
    current = std::move(next);
  }
  return ends;
}

bool PosPattern::full_match(std::span<const std::string> tags) const {
  if (tags.empty()) return false;
  auto ends = match_ends(tags, 0);
  return !ends.empty() && ends.back() == tags.size();
}

std::vector<PatternSpan> maximal_pattern_spans(std::span<const std::string> tags,
                                               std::span<const PosPattern> patterns) {
  std::vector<PatternSpan> all;
  for (std::size_t b = 0; b < tags.size(); ++b) {
    for (const auto& p : patterns) {
      for (auto e : p.match_ends(tags, b)) all.push_back({b, e});
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  // Sorted by (begin, end): a span is contained in another iff some earlier
  // begin reaches its end, or the same begin reaches further.
  std::vector<PatternSpan> out;
  std::size_t max_end_before = 0;
  for (std::size_t i = 0; i < all.size();) {
    std::size_t j = i;
    while (j < all.size() && all[j].begin == all[i].begin) ++j;
    const std::size_t same_begin_max = all[j - 1].end;
    for (std::size_t k = i; k < j; ++k) {
      if (max_end_before < all[k].end && all[k].end == same_begin_max) out.push_back(all[k]);
    }
    max_end_before = std::max(max_end_before, same_begin_max);
    i = j;
  }
  return out;
}

}  // namespace ctsearch::termeval
