#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/corpus/conllu.hpp"
#include "ctsearch/corpus/document.hpp"

namespace ctsearch::corpus {

// Removes characters that only carry markup: backslash, braces, dollar,
// asterisk and backtick.
std::string remove_markup_characters(std::string_view text);

// NFC, math verbalization, Markdown stripping, residual markup removal.
std::string clean_markdown_document(std::string_view raw);

// NFC, math verbalization, text-mode LaTeX commands (\emph{x} -> x,
// \cite{...} dropped, ~ -> space), residual markup removal.
std::string clean_latex_document(std::string_view raw);

// Sentence-splits and tokenizes already cleaned text into an unannotated
// document (see tokenize_sentence).
AnnotatedDocument document_from_clean_text(const DocumentMetadata& metadata,
                                           std::string_view cleaned, bool lines_are_blocks);

struct IngestOptions {
  CorpusId corpus;
  std::filesystem::path raw_dir;
  std::filesystem::path manifest;
  std::filesystem::path out_dir;
};

struct IngestIssue {
  std::string doc_id;
  std::string reason;
};

struct IngestReport {
  std::size_t emitted = 0;
  std::vector<IngestIssue> dropped;   // filtered meta documents and empty documents
  std::vector<IngestIssue> failures;  // unreadable or missing per-document inputs
  std::vector<ConlluDiagnostic> diagnostics;
  std::vector<std::string> warnings;
  std::filesystem::path conllu_path;
  std::filesystem::path manifest_path;
  std::filesystem::path drop_report_path;
};

/// Converts raw documents listed in the manifest into
///   <out>/<corpus>.conllu, <out>/<corpus>.manifest.jsonl, <out>/<corpus>.drops.tsv.
/// For each manifest record of the corpus, <raw>/<doc_id>.conllu (already
/// annotated) is preferred over <doc_id>.md, <doc_id>.tex or <doc_id>.txt.
/// Throws Error(kIo) when the raw dir or manifest cannot be read.
IngestReport run_ingest(const IngestOptions& options);

struct LoadedCorpus {
  std::vector<AnnotatedDocument> documents;
  std::vector<ConlluDiagnostic> diagnostics;
  std::vector<std::filesystem::path> files;
};

/// Reads every <CORPUS>.conllu in `dir` together with its optional
/// <CORPUS>.manifest.jsonl (the layout run_ingest writes). The file stem is
/// the corpus id. When `only` is non-empty, other corpora are skipped.
/// Throws Error(kIo) for an unreadable dir or file.
LoadedCorpus load_corpus_dir(const std::filesystem::path& dir, std::span<const CorpusId> only = {});

}  // namespace ctsearch::corpus
