#pragma once

#include <string>
#include <vector>

#include "ctsearch/corpus/document.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::testing {

// Sentence from "form|lemma|UPOS" items separated by spaces; an item starting
// with '^' attaches to the previous token without a space. Lemma defaults to
// the lowercased form and UPOS to NOUN.
inline corpus::Sentence make_sentence(const std::string& sent_id, const std::string& spec) {
  corpus::Sentence s;
  s.sent_id = sent_id;
  int index = 0;
  for (std::string item : text::split_whitespace(spec)) {
    bool glue = !item.empty() && item[0] == '^';
    if (glue) item.erase(0, 1);
    if (glue && !s.tokens.empty()) s.tokens.back().misc = "SpaceAfter=No";
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t bar; (bar = item.find('|', start)) != std::string::npos; start = bar + 1) {
      parts.push_back(item.substr(start, bar - start));
    }
    parts.push_back(item.substr(start));
    corpus::Token t;
    t.index = ++index;
    t.form = parts[0];
    t.lemma = parts.size() > 1 ? parts[1] : text::casefold(parts[0]);
    t.upos = parts.size() > 2 ? parts[2] : "NOUN";
    t.head = index == 1 ? 0 : 1;
    t.deprel = index == 1 ? "root" : "dep";
    s.tokens.push_back(std::move(t));
  }
  s.text = corpus::reconstruct_text(s.tokens);
  return s;
}

inline corpus::AnnotatedDocument make_document(const corpus::CorpusId& corpus, const std::string& doc_id,
                                               const std::vector<std::string>& sentences,
                                               const std::string& title = {}) {
  corpus::AnnotatedDocument d;
  d.metadata.doc_id = doc_id;
  d.metadata.corpus = corpus;
  d.metadata.title = title.empty() ? doc_id : title;
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    d.sentences.push_back(make_sentence(doc_id + "-s" + std::to_string(i + 1), sentences[i]));
  }
  return d;
}

}  // namespace ctsearch::testing
