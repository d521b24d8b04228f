#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/corpus/document.hpp"

namespace ctsearch::corpus {

/// Splits cleaned text into sentences. Blank lines always end a block; when
/// `lines_are_blocks` is set every line is its own block (Markdown output,
/// where headings sit on their own line). Inside a block, '.', '!' and '?'
/// end a sentence when followed by whitespace and an uppercase letter, digit
/// or opening bracket, unless the preceding word is a known abbreviation or
/// an initial. Returned sentences have whitespace collapsed.
std::vector<std::string> split_sentences(std::string_view text, bool lines_are_blocks);

/// Whitespace/punctuation tokenization of one sentence. Tokens carry FORM,
/// SpaceAfter=No where needed, UPOS "PUNCT" for pure punctuation and "_"
/// (unannotated) in LEMMA, HEAD and DEPREL otherwise.
/// reconstruct_text(tokenize_sentence(s)) == s for whitespace-collapsed s.
std::vector<Token> tokenize_sentence(std::string_view sentence);

}  // namespace ctsearch::corpus
