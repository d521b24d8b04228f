#include "ctsearch/index/lemma_index.hpp"

#include <algorithm>
#include <numeric>

#include "ctsearch/corpus/conllu.hpp"
#include "ctsearch/corpus/metadata.hpp"
#include "ctsearch/error.hpp"
#include "ctsearch/text/sha256.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::index {

SentenceStore::SentenceStore(std::vector<StoredDocument> documents)
    : documents_(std::move(documents)) {}

const StoredSentence& SentenceStore::sentence(std::uint32_t doc, std::uint32_t sentence) const {
  return documents_.at(doc).sentences.at(sentence);
}

const StoredToken& SentenceStore::token(const Posting& p) const {
  return sentence(p.doc, p.sentence).tokens.at(p.token);
}

std::optional<std::uint32_t> SentenceStore::find_document(const CorpusId& corpus,
                                                          std::string_view doc_id) const {
  auto it = std::lower_bound(documents_.begin(), documents_.end(), std::pair{&corpus, doc_id},
                             [](const StoredDocument& d, const auto& key) {
                               if (d.metadata.corpus != *key.first) return d.metadata.corpus < *key.first;
                               return std::string_view(d.metadata.doc_id) < key.second;
                             });
  if (it == documents_.end() || it->metadata.corpus != corpus || it->metadata.doc_id != doc_id) {
    return std::nullopt;
  }
  return static_cast<std::uint32_t>(it - documents_.begin());
}

std::size_t SentenceStore::sentence_count() const {
  std::size_t n = 0;
  for (const auto& d : documents_) n += d.sentences.size();
  return n;
}

std::size_t SentenceStore::token_count() const {
  std::size_t n = 0;
  for (const auto& d : documents_) {
    for (const auto& s : d.sentences) n += s.tokens.size();
  }
  return n;
}

LemmaIndex::LemmaIndex(PostingMap postings, SurfaceMap surface_to_lemma, IndexManifest manifest)
    : postings_(std::move(postings)),
      surface_to_lemma_(std::move(surface_to_lemma)),
      manifest_(std::move(manifest)) {}

std::span<const Posting> LemmaIndex::lookup(std::string_view lemma) const {
  auto it = postings_.find(text::casefold(lemma));
  if (it == postings_.end()) return {};
  return it->second;
}

std::optional<std::string_view> LemmaIndex::lemma_for_surface(std::string_view surface) const {
  auto it = surface_to_lemma_.find(surface);
  if (it == surface_to_lemma_.end()) return std::nullopt;
  return std::string_view(it->second);
}

bool LemmaIndex::has_lemma(std::string_view key) const { return postings_.count(key) != 0; }

std::size_t LemmaIndex::total_postings() const {
  std::size_t n = 0;
  for (const auto& [key, list] : postings_) n += list.size();
  return n;
}

std::string index_key(const corpus::Token& token) {
  return text::casefold(token.lemma == "_" ? token.form : token.lemma);
}

std::vector<TokenSpan> align_tokens(std::string_view text, const std::vector<corpus::Token>& tokens) {
  std::vector<TokenSpan> spans;
  spans.reserve(tokens.size());
  std::size_t cursor = 0;
  for (const auto& t : tokens) {
    std::size_t at = cursor;
    while (at < text.size() && text::is_ascii_space(text[at])) ++at;
    std::size_t found = text.compare(at, t.form.size(), t.form) == 0 ? at : text.find(t.form, cursor);
    if (found == std::string_view::npos || t.form.empty()) {
      spans.push_back({static_cast<std::uint32_t>(cursor), static_cast<std::uint32_t>(cursor)});
      continue;
    }
    cursor = found + t.form.size();
    spans.push_back({static_cast<std::uint32_t>(found), static_cast<std::uint32_t>(cursor)});
  }
  return spans;
}

std::string corpus_checksum(const std::vector<AnnotatedDocument>& documents) {
  std::vector<DocumentMetadata> metadata;
  metadata.reserve(documents.size());
  for (const auto& d : documents) metadata.push_back(d.metadata);
  text::Sha256 h;
  h.update(corpus::serialize_conllu(documents));
  h.update(corpus::serialize_manifest(metadata));
  return h.hex_digest();
}

IndexedCorpus build_index(std::vector<AnnotatedDocument> documents, const BuildOptions& options) {
  std::stable_sort(documents.begin(), documents.end(), [](const auto& a, const auto& b) {
    if (a.metadata.corpus != b.metadata.corpus) return a.metadata.corpus < b.metadata.corpus;
    return a.metadata.doc_id < b.metadata.doc_id;
  });

  std::vector<std::string> duplicates;
  for (std::size_t i = 1; i < documents.size(); ++i) {
    const auto& prev = documents[i - 1].metadata;
    const auto& cur = documents[i].metadata;
    if (prev.corpus == cur.corpus && prev.doc_id == cur.doc_id) {
      std::string name = cur.corpus.str() + "/" + cur.doc_id;
      if (duplicates.empty() || duplicates.back() != name) duplicates.push_back(std::move(name));
    }
  }
  if (!duplicates.empty()) {
    throw Error(ErrorCode::kDuplicateDocId, "duplicate document ids: " + text::join(duplicates, ", "));
  }

  IndexManifest manifest;
  manifest.version = kIndexVersion;
  manifest.build_timestamp = options.build_timestamp;
  for (std::size_t begin = 0; begin < documents.size();) {
    std::size_t end = begin;
    while (end < documents.size() && documents[end].metadata.corpus == documents[begin].metadata.corpus) ++end;
    std::vector<AnnotatedDocument> slice(documents.begin() + static_cast<std::ptrdiff_t>(begin),
                                         documents.begin() + static_cast<std::ptrdiff_t>(end));
    CorpusSummary summary;
    summary.documents = slice.size();
    for (const auto& d : slice) {
      summary.sentences += d.sentences.size();
      for (const auto& s : d.sentences) summary.tokens += s.tokens.size();
    }
    summary.checksum = corpus_checksum(slice);
    manifest.corpora[documents[begin].metadata.corpus.str()] = std::move(summary);
    begin = end;
  }

  LemmaIndex::PostingMap postings;
  std::map<std::string, std::map<std::string, std::size_t>, std::less<>> surface_counts;
  std::vector<StoredDocument> stored;
  stored.reserve(documents.size());
  std::size_t tokens_total = 0;

  for (std::uint32_t d = 0; d < documents.size(); ++d) {
    auto& doc = documents[d];
    StoredDocument sd;
    sd.metadata = std::move(doc.metadata);
    sd.sentences.reserve(doc.sentences.size());
    for (std::uint32_t s = 0; s < doc.sentences.size(); ++s) {
      auto& sentence = doc.sentences[s];
      StoredSentence ss;
      ss.sent_id = std::move(sentence.sent_id);
      ss.text = std::move(sentence.text);
      auto spans = align_tokens(ss.text, sentence.tokens);
      ss.tokens.reserve(sentence.tokens.size());
      for (std::uint32_t t = 0; t < sentence.tokens.size(); ++t) {
        auto& token = sentence.tokens[t];
        StoredToken st;
        st.key = index_key(token);
        st.form = std::move(token.form);
        st.lemma = std::move(token.lemma);
        st.upos = std::move(token.upos);
        st.span = spans[t];
        postings[st.key].push_back({d, s, t});
        ++surface_counts[text::casefold(st.form)][st.key];
        ss.tokens.push_back(std::move(st));
        ++tokens_total;
      }
      sd.sentences.push_back(std::move(ss));
    }
    stored.push_back(std::move(sd));
  }

  // Documents are visited in order, so each list is already sorted.
  LemmaIndex::SurfaceMap surface_to_lemma;
  for (auto& [surface, counts] : surface_counts) {
    // std::map iterates lemmas in lexicographic order, so ties keep the smallest.
    const std::string* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& [lemma, count] : counts) {
      if (count > best_count) {
        best = &lemma;
        best_count = count;
      }
    }
    surface_to_lemma.emplace(surface, *best);
  }

  manifest.lemma_count = postings.size();
  manifest.token_count = tokens_total;
  return {LemmaIndex(std::move(postings), std::move(surface_to_lemma), std::move(manifest)),
          SentenceStore(std::move(stored))};
}

std::span<const Posting> lookup_lemma(const LemmaIndex& index, std::string_view lemma) {
  return index.lookup(lemma);
}

}  // namespace ctsearch::index
