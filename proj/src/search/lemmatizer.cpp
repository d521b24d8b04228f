#include "ctsearch/search/lemmatizer.hpp"

#include <cctype>
#include <map>

#include "ctsearch/error.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::search {

namespace {

const std::map<std::string, std::string, std::less<>>& irregulars() {
  static const std::map<std::string, std::string, std::less<>> table = {
      {"indices", "index"},       {"vertices", "vertex"},     {"matrices", "matrix"},
      {"simplices", "simplex"},   {"complexes", "complex"},   {"children", "child"},
      {"men", "man"},             {"women", "woman"},         {"sheaves", "sheaf"},
      {"halves", "half"},         {"lemmata", "lemma"},       {"phenomena", "phenomenon"},
      {"criteria", "criterion"},  {"automata", "automaton"},  {"polyhedra", "polyhedron"},
      {"spectra", "spectrum"},    {"topoi", "topos"},         {"analyses", "analysis"},
      {"bases", "basis"},         {"theses", "thesis"},       {"hypotheses", "hypothesis"},
      {"axes", "axis"},           {"mice", "mouse"},          {"feet", "foot"},
      {"is", "be"},               {"are", "be"},              {"was", "be"},
      {"were", "be"},             {"has", "have"},            {"does", "do"},
  };
  return table;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_ascii_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::string_view trim_punct(std::string_view w) {
  while (!w.empty() && is_ascii_punct(w.front())) w.remove_prefix(1);
  while (!w.empty() && is_ascii_punct(w.back())) w.remove_suffix(1);
  return w;
}

}  // namespace

std::optional<std::string> fallback_lemma(std::string_view w, const index::LemmaIndex* index) {
  if (auto it = irregulars().find(w); it != irregulars().end()) return it->second;

  std::vector<std::string> candidates;
  const std::string word(w);
  if (ends_with(w, "ies") && w.size() > 4) {
    candidates.push_back(word.substr(0, w.size() - 3) + "y");
  } else if (ends_with(w, "es") && w.size() > 3) {
    std::string_view stem = w.substr(0, w.size() - 2);
    const bool sibilant = ends_with(stem, "s") || ends_with(stem, "x") || ends_with(stem, "z") ||
                          ends_with(stem, "ch") || ends_with(stem, "sh");
    std::string dropped(stem);
    std::string with_e = word.substr(0, w.size() - 1);
    if (sibilant) {
      candidates = {dropped, with_e};
    } else {
      candidates = {with_e, dropped};
    }
  } else if (ends_with(w, "s") && w.size() > 3 && !ends_with(w, "ss") && !ends_with(w, "us") &&
             !ends_with(w, "is")) {
    candidates.push_back(word.substr(0, w.size() - 1));
  }
  if (candidates.empty()) return std::nullopt;
  if (index != nullptr) {
    for (const auto& c : candidates) {
      if (index->has_lemma(c)) return c;
    }
  }
  return candidates.front();
}

std::string lemmatize_word(std::string_view word, const index::LemmaIndex& index) {
  const std::string folded = text::casefold(text::nfc(word));
  if (auto lemma = index.lemma_for_surface(folded)) return std::string(*lemma);
  if (auto lemma = fallback_lemma(folded, &index)) return *lemma;
  return folded;
}

std::vector<std::string> lemmatize_query(std::string_view raw, const index::LemmaIndex& index) {
  std::vector<std::string> lemmas;
  for (const auto& word : text::split_whitespace(raw)) {
    std::string_view trimmed = trim_punct(word);
    if (trimmed.empty()) continue;
    lemmas.push_back(lemmatize_word(trimmed, index));
  }
  if (lemmas.empty()) throw Error(ErrorCode::kEmptyQuery, "query is empty");
  return lemmas;
}

std::string normalize_term(std::string_view term, const index::LemmaIndex& index) {
  try {
    return text::join(lemmatize_query(term, index), " ");
  } catch (const Error&) {
    return {};
  }
}

}  // namespace ctsearch::search
