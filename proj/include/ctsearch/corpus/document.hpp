#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ctsearch::corpus {

/// Identifier of a registered corpus. Built-in ids are "TAC" and "NLAB".
class CorpusId {
 public:
  CorpusId() = default;
  explicit CorpusId(std::string value) : value_(std::move(value)) {}

  static CorpusId tac() { return CorpusId("TAC"); }
  static CorpusId nlab() { return CorpusId("NLAB"); }

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  auto operator<=>(const CorpusId&) const = default;

 private:
  std::string value_;
};

/// Known corpora and their display names. TAC and NLAB are always present.
class CorpusRegistry {
 public:
  CorpusRegistry();

  // Throws InvalidArgument on an empty id, empty display name or re-registration.
  void add(const CorpusId& id, std::string display_name);

  bool contains(const CorpusId& id) const;
  const std::string& display_name(const CorpusId& id) const;
  std::vector<CorpusId> ids() const;

  // Accepts ids case-insensitively ("nlab" -> NLAB).
  std::optional<CorpusId> resolve(std::string_view name) const;

 private:
  std::map<CorpusId, std::string> names_;
};

struct DocumentMetadata {
  std::string doc_id;
  CorpusId corpus;
  std::string title;
  std::vector<std::string> authors;
  std::optional<std::chrono::year_month_day> date;
  std::vector<std::string> keywords;
  std::optional<std::string> source_url;
  // Source-provided page kind markers such as "book", "person" or "meta".
  std::vector<std::string> tags;

  bool operator==(const DocumentMetadata&) const = default;
};

/// One CONLL-U token line. Columns the pipeline does not interpret (XPOS,
/// FEATS, DEPS, MISC) are carried verbatim.
struct Token {
  int index = 1;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos = "_";
  std::string feats = "_";
  int head = 0;
  std::string deprel;
  std::string deps = "_";
  std::string misc = "_";

  // HEAD column was "_" (unannotated) rather than a number.
  bool head_unspecified = false;
  // HEAD column was present but not numeric; head was reset to 0 and the
  // original column text is kept in raw_head.
  bool head_invalid = false;
  std::string raw_head;

  bool is_punct() const { return upos == "PUNCT"; }
  bool space_after() const;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string sent_id;
  std::vector<Token> tokens;
  std::string text;
  // Comment lines other than sent_id / text / newdoc, kept without the "# ".
  std::vector<std::string> extra_comments;

  bool operator==(const Sentence&) const = default;
};

/// Tree checks for machine annotations; malformed trees are reported, never rejected.
struct TreeDiagnostics {
  std::size_t root_count = 0;
  bool contiguous_indices = true;
  bool heads_in_range = true;
  bool has_self_loop = false;
  bool has_invalid_head = false;

  bool well_formed() const {
    return root_count == 1 && contiguous_indices && heads_in_range && !has_self_loop &&
           !has_invalid_head;
  }
};

TreeDiagnostics check_tree(const Sentence& sentence);

// Surface text rebuilt from token forms, honouring SpaceAfter=No in MISC.
std::string reconstruct_text(const std::vector<Token>& tokens);

struct AnnotatedDocument {
  DocumentMetadata metadata;
  std::vector<Sentence> sentences;

  bool operator==(const AnnotatedDocument&) const = default;
};

struct MathFragment {
  std::string raw;
  std::size_t begin = 0;  // byte range in the host text
  std::size_t end = 0;
};

}  // namespace ctsearch::corpus
