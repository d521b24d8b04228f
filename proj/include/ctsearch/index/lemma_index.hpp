#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/corpus/document.hpp"

namespace ctsearch::index {

using corpus::AnnotatedDocument;
using corpus::CorpusId;
using corpus::DocumentMetadata;

/// One token occurrence. `doc` indexes SentenceStore::documents(), which are
/// ordered by (corpus, doc_id), so ordering postings by (doc, sentence,
/// token) orders them by (corpus, doc_id, sentence, token).
struct Posting {
  std::uint32_t doc = 0;
  std::uint32_t sentence = 0;
  std::uint32_t token = 0;

  auto operator<=>(const Posting&) const = default;
};

struct TokenSpan {
  std::uint32_t begin = 0;  // byte offsets into the sentence text
  std::uint32_t end = 0;

  auto operator<=>(const TokenSpan&) const = default;
};

struct StoredToken {
  std::string form;
  std::string lemma;  // as annotated, original case
  std::string key;    // case-folded lemma (form when the lemma is unannotated)
  std::string upos;
  TokenSpan span;

  bool is_punct() const { return upos == "PUNCT"; }
  bool operator==(const StoredToken&) const = default;
};

struct StoredSentence {
  std::string sent_id;
  std::string text;
  std::vector<StoredToken> tokens;

  bool operator==(const StoredSentence&) const = default;
};

struct StoredDocument {
  DocumentMetadata metadata;
  std::vector<StoredSentence> sentences;

  bool operator==(const StoredDocument&) const = default;
};

/// Sentences of all indexed documents, addressable by posting.
class SentenceStore {
 public:
  SentenceStore() = default;
  explicit SentenceStore(std::vector<StoredDocument> documents);

  const std::vector<StoredDocument>& documents() const { return documents_; }
  const StoredDocument& document(std::uint32_t doc) const { return documents_.at(doc); }
  const StoredSentence& sentence(std::uint32_t doc, std::uint32_t sentence) const;
  const StoredToken& token(const Posting& p) const;

  std::optional<std::uint32_t> find_document(const CorpusId& corpus, std::string_view doc_id) const;

  std::size_t sentence_count() const;
  std::size_t token_count() const;

  bool operator==(const SentenceStore&) const = default;

 private:
  std::vector<StoredDocument> documents_;
};

struct CorpusSummary {
  std::size_t documents = 0;
  std::size_t sentences = 0;
  std::size_t tokens = 0;
  std::string checksum;  // SHA-256 of the canonical CONLL-U + manifest of the corpus

  bool operator==(const CorpusSummary&) const = default;
};

struct IndexManifest {
  std::uint32_t version = 0;
  std::int64_t build_timestamp = 0;  // seconds since the Unix epoch
  std::map<std::string, CorpusSummary> corpora;
  std::size_t lemma_count = 0;
  std::size_t token_count = 0;
  std::string payload_sha256;  // filled in by persist_index / load_index

  bool operator==(const IndexManifest&) const = default;
};

/// Case-folded lemma -> sorted postings, plus the surface-form table used to
/// lemmatize queries.
class LemmaIndex {
 public:
  using PostingMap = std::map<std::string, std::vector<Posting>, std::less<>>;
  using SurfaceMap = std::map<std::string, std::string, std::less<>>;

  LemmaIndex() = default;
  LemmaIndex(PostingMap postings, SurfaceMap surface_to_lemma, IndexManifest manifest);

  /// Postings for the case-folded lemma; empty for unknown lemmas.
  std::span<const Posting> lookup(std::string_view lemma) const;

  /// Most frequent lemma key for a case-folded surface form.
  std::optional<std::string_view> lemma_for_surface(std::string_view surface) const;

  bool has_lemma(std::string_view key) const;

  const PostingMap& postings() const { return postings_; }
  const SurfaceMap& surface_to_lemma() const { return surface_to_lemma_; }
  const IndexManifest& manifest() const { return manifest_; }
  IndexManifest& mutable_manifest() { return manifest_; }

  std::size_t total_postings() const;

  bool operator==(const LemmaIndex&) const = default;

 private:
  PostingMap postings_;
  SurfaceMap surface_to_lemma_;
  IndexManifest manifest_;
};

struct IndexedCorpus {
  LemmaIndex index;
  SentenceStore store;
};

struct BuildOptions {
  std::int64_t build_timestamp = 0;
};

inline constexpr std::uint32_t kIndexVersion = 1;

/// Index key of a token: the case-folded lemma, or the case-folded form when
/// LEMMA is "_" (unannotated).
std::string index_key(const corpus::Token& token);

/// Byte spans of each token form inside `text`, aligned left to right. A form
/// that cannot be located gets an empty span at the current position.
std::vector<TokenSpan> align_tokens(std::string_view text, const std::vector<corpus::Token>& tokens);

/// SHA-256 over the canonical serialization of one corpus's documents.
std::string corpus_checksum(const std::vector<AnnotatedDocument>& documents);

/// Builds the index over all documents. Throws Error(kDuplicateDocId)
/// listing every (corpus, doc_id) that occurs more than once.
IndexedCorpus build_index(std::vector<AnnotatedDocument> documents, const BuildOptions& options = {});

/// Posting list for the case-folded lemma (never throws).
std::span<const Posting> lookup_lemma(const LemmaIndex& index, std::string_view lemma);

}  // namespace ctsearch::index
