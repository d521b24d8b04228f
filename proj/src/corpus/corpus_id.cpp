#include "ctsearch/corpus/document.hpp"

#include "ctsearch/error.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::corpus {

CorpusRegistry::CorpusRegistry() {
  names_.emplace(CorpusId::tac(), "Theory and Applications of Categories");
  names_.emplace(CorpusId::nlab(), "nLab");
}

void CorpusRegistry::add(const CorpusId& id, std::string display_name) {
  if (id.empty()) throw Error(ErrorCode::kInvalidArgument, "corpus id must be non-empty");
  if (text::trim(display_name).empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "corpus '" + id.str() + "' needs a non-empty display name");
  }
  if (resolve(id.str())) {
    throw Error(ErrorCode::kInvalidArgument, "corpus '" + id.str() + "' already registered");
  }
  names_.emplace(id, std::move(display_name));
}

bool CorpusRegistry::contains(const CorpusId& id) const { return names_.count(id) > 0; }

const std::string& CorpusRegistry::display_name(const CorpusId& id) const {
  auto it = names_.find(id);
  if (it == names_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "unknown corpus '" + id.str() + "'");
  }
  return it->second;
}

std::vector<CorpusId> CorpusRegistry::ids() const {
  std::vector<CorpusId> out;
  out.reserve(names_.size());
  for (const auto& [id, name] : names_) out.push_back(id);
  return out;
}

std::optional<CorpusId> CorpusRegistry::resolve(std::string_view name) const {
  const std::string folded = text::casefold(text::trim(name));
  for (const auto& [id, display] : names_) {
    if (text::casefold(id.str()) == folded) return id;
  }
  return std::nullopt;
}

bool Token::space_after() const {
  // MISC is a |-separated attribute list.
  std::string_view rest = misc;
  while (!rest.empty()) {
    auto bar = rest.find('|');
    std::string_view item = rest.substr(0, bar);
    if (item == "SpaceAfter=No") return false;
    if (bar == std::string_view::npos) break;
    rest.remove_prefix(bar + 1);
  }
  return true;
}

std::string reconstruct_text(const std::vector<Token>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out += tokens[i].form;
    if (i + 1 < tokens.size() && tokens[i].space_after()) out += ' ';
  }
  return out;
}

TreeDiagnostics check_tree(const Sentence& sentence) {
  TreeDiagnostics d;
  const int n = static_cast<int>(sentence.tokens.size());
  for (int i = 0; i < n; ++i) {
    const Token& t = sentence.tokens[static_cast<std::size_t>(i)];
    if (t.index != i + 1) d.contiguous_indices = false;
    if (t.head_invalid) d.has_invalid_head = true;
    if (t.head_unspecified) continue;
    if (t.head == 0) ++d.root_count;
    if (t.head < 0 || t.head > n) d.heads_in_range = false;
    if (t.head == t.index) d.has_self_loop = true;
  }
  return d;
}

}  // namespace ctsearch::corpus
