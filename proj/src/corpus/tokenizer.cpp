#include "ctsearch/corpus/tokenizer.hpp"

#include <array>
#include <cctype>
#include <set>

#include "ctsearch/text/unicode.hpp"

namespace ctsearch::corpus {

namespace {

const std::set<std::string, std::less<>>& abbreviations() {
  static const std::set<std::string, std::less<>> words = {
      "e.g", "i.e", "cf", "etc", "resp", "fig", "figs", "thm", "prop", "def", "sec",
      "vs", "al", "dr", "prof", "mr", "ms", "st", "eq", "eqs", "no", "vol", "pp",
      "ch", "ref", "refs", "lem", "cor", "ex", "viz", "approx", "e.g.", "i.e."};
  return words;
}

bool is_upper_start(std::string_view s) {
  if (s.empty()) return false;
  auto c = static_cast<unsigned char>(s.front());
  if (std::isupper(c) != 0 || std::isdigit(c) != 0) return true;
  if (c == '(' || c == '[' || c == '"' || c == '\'') return true;
  // Non-ASCII letters: compare with the case-folded form.
  if (c >= 0x80) {
    std::size_t len = (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 1;
    std::string_view first = s.substr(0, std::min(len, s.size()));
    return text::casefold(first) != first;
  }
  return false;
}

bool ends_sentence(std::string_view word) {
  if (word.empty()) return false;
  char last = word.back();
  if (last != '.' && last != '!' && last != '?') return false;
  if (last != '.') return true;
  std::string_view stem = word.substr(0, word.size() - 1);
  while (!stem.empty() && (stem.front() == '(' || stem.front() == '"' || stem.front() == '\'')) {
    stem.remove_prefix(1);
  }
  if (stem.empty()) return true;
  if (abbreviations().count(text::casefold(stem)) != 0) return false;
  // Initials such as "J." in author names.
  if (stem.size() == 1 && std::isupper(static_cast<unsigned char>(stem.front())) != 0) return false;
  return true;
}

void split_block(std::string_view block, std::vector<std::string>& out) {
  auto words = text::split_whitespace(block);
  std::vector<std::string> current;
  for (std::size_t i = 0; i < words.size(); ++i) {
    current.push_back(words[i]);
    bool boundary = ends_sentence(words[i]) && (i + 1 == words.size() || is_upper_start(words[i + 1]));
    if (boundary) {
      out.push_back(text::join(current, " "));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(text::join(current, " "));
}

constexpr std::string_view kLeading = "([{\"'";
constexpr std::string_view kTrailing = ".,;:!?)]}\"'";

bool is_punct_only(std::string_view s) {
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (u >= 0x80 || std::isalnum(u) != 0) return false;
  }
  return !s.empty();
}

// Splits one whitespace-delimited chunk into token forms.
std::vector<std::string> split_chunk(std::string_view chunk) {
  std::vector<std::string> head;
  std::vector<std::string> tail;
  while (chunk.size() > 1 && kLeading.find(chunk.front()) != std::string_view::npos) {
    head.emplace_back(1, chunk.front());
    chunk.remove_prefix(1);
  }
  while (chunk.size() > 1 && kTrailing.find(chunk.back()) != std::string_view::npos) {
    if (chunk.back() == '.') {
      std::string_view stem = chunk.substr(0, chunk.size() - 1);
      if (abbreviations().count(text::casefold(stem)) != 0 &&
          !is_punct_only(stem)) {
        break;  // keep "e.g." / "cf." together
      }
    }
    tail.emplace_back(1, chunk.back());
    chunk.remove_suffix(1);
  }
  for (std::string_view suffix : {std::string_view("'s"), std::string_view("\xE2\x80\x99s")}) {
    if (chunk.size() > suffix.size() && chunk.substr(chunk.size() - suffix.size()) == suffix) {
      tail.emplace_back(suffix);
      chunk.remove_suffix(suffix.size());
      break;
    }
  }
  std::vector<std::string> out = std::move(head);
  if (!chunk.empty()) out.emplace_back(chunk);
  out.insert(out.end(), tail.rbegin(), tail.rend());
  return out;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text, bool lines_are_blocks) {
  std::vector<std::string> out;
  std::string block;
  auto flush = [&] {
    if (!text::trim(block).empty()) split_block(block, out);
    block.clear();
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (text::trim(line).empty()) {
      flush();
      continue;
    }
    block += ' ';
    block.append(line);
    if (lines_are_blocks) flush();
  }
  flush();
  return out;
}

std::vector<Token> tokenize_sentence(std::string_view sentence) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && text::is_ascii_space(sentence[i])) ++i;
    std::size_t j = i;
    while (j < sentence.size() && !text::is_ascii_space(sentence[j])) ++j;
    if (j == i) break;
    auto forms = split_chunk(sentence.substr(i, j - i));
    for (std::size_t k = 0; k < forms.size(); ++k) {
      Token t;
      t.index = static_cast<int>(tokens.size()) + 1;
      t.form = forms[k];
      t.lemma = "_";
      t.upos = is_punct_only(t.form) ? "PUNCT" : "_";
      t.head_unspecified = true;
      t.deprel = "_";
      const bool glued = k + 1 < forms.size();
      t.misc = glued ? "SpaceAfter=No" : "_";
      tokens.push_back(std::move(t));
    }
    i = j;
  }
  return tokens;
}

}  // namespace ctsearch::corpus
