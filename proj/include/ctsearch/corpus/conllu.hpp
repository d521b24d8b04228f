#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/corpus/document.hpp"

namespace ctsearch::corpus {

struct ConlluDiagnostic {
  enum class Kind {
    kMalformedLine,    // wrong column count or unusable ID/FORM; sentence skipped
    kNonNumericHead,   // token kept with head 0
    kUnsupportedLine,  // multiword-token range or empty node; line ignored
    kMalformedTree,    // root count, index or head range problems; sentence kept
  };

  Kind kind;
  std::size_t line = 0;  // 1-based
  std::string message;
};

std::string_view to_string(ConlluDiagnostic::Kind kind);

struct ConlluParseResult {
  std::vector<AnnotatedDocument> documents;
  std::vector<ConlluDiagnostic> diagnostics;
};

/// Parses CONLL-U text. Document boundaries come from "# newdoc id = ..."
/// comments; sentences seen before any such comment go to a document with an
/// empty id. Every document gets `corpus` as its corpus id.
ConlluParseResult parse_conllu(std::string_view input, const CorpusId& corpus = {});

/// Emits LF-terminated CONLL-U. parse_conllu(serialize_conllu(d)) reproduces
/// every modeled field of d.
std::string serialize_conllu(const std::vector<AnnotatedDocument>& documents);

}  // namespace ctsearch::corpus
