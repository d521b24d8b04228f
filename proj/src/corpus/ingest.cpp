#include "ctsearch/corpus/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "ctsearch/corpus/markdown.hpp"
#include "ctsearch/corpus/math_verbalizer.hpp"
#include "ctsearch/corpus/meta_filter.hpp"
#include "ctsearch/corpus/metadata.hpp"
#include "ctsearch/corpus/tokenizer.hpp"
#include "ctsearch/error.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::corpus {

namespace fs = std::filesystem;

std::string remove_markup_characters(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '\\' || c == '{' || c == '}' || c == '$' || c == '*' || c == '`') continue;
    out.push_back(c);
  }
  return out;
}

std::string clean_markdown_document(std::string_view raw) {
  std::string s = text::nfc(raw);
  s = verbalize_inline_math(s);
  s = strip_markdown(s);
  return remove_markup_characters(s);
}

namespace {

// Reads a balanced {...} group starting at `open`; returns the inner text and
// advances `pos` past the group.
std::string_view braced(std::string_view s, std::size_t& pos) {
  if (pos >= s.size() || s[pos] != '{') return {};
  int depth = 0;
  for (std::size_t i = pos; i < s.size(); ++i) {
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) {
      std::string_view inner = s.substr(pos + 1, i - pos - 1);
      pos = i + 1;
      return inner;
    }
  }
  std::string_view inner = s.substr(pos + 1);
  pos = s.size();
  return inner;
}

std::string latex_text_mode(std::string_view s) {
  static const std::map<std::string, int, std::less<>> kKeepArg = {
      {"emph", 1}, {"textbf", 1}, {"textit", 1}, {"textsc", 1}, {"textrm", 1},
      {"textsf", 1}, {"texttt", 1}, {"underline", 1}, {"url", 1}, {"mbox", 1}};
  static const std::map<std::string, int, std::less<>> kDropArgs = {
      {"cite", 1}, {"ref", 1}, {"label", 1}, {"eqref", 1}, {"footnote", 1},
      {"citep", 1}, {"citet", 1}, {"vspace", 1}, {"hspace", 1}};
  std::string out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\\' && i + 1 < s.size()) {
      char next = s[i + 1];
      if (std::isalpha(static_cast<unsigned char>(next)) == 0) {
        if (next == '\\') {
          out.push_back(' ');
        } else if (next != ' ') {
          out.push_back(next);  // \& \% \_ \#
        } else {
          out.push_back(' ');
        }
        i += 2;
        continue;
      }
      std::size_t j = i + 1;
      while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j])) != 0) ++j;
      std::string name(s.substr(i + 1, j - i - 1));
      i = j;
      if (name == "href") {
        braced(s, i);
        out.append(latex_text_mode(braced(s, i)));
      } else if (kKeepArg.count(name) != 0) {
        out.append(latex_text_mode(braced(s, i)));
      } else if (kDropArgs.count(name) != 0) {
        if (i < s.size() && s[i] == '[') {
          auto close = s.find(']', i);
          i = close == std::string_view::npos ? s.size() : close + 1;
        }
        braced(s, i);
        // Citations sit after a space that would otherwise precede punctuation.
        while (!out.empty() && out.back() == ' ') out.pop_back();
        if (i < s.size() && std::isalnum(static_cast<unsigned char>(s[i])) != 0) out.push_back(' ');
      } else if (i < s.size() && s[i] == ' ') {
        // Control words swallow the following space; keep a word boundary.
        out.push_back(' ');
        ++i;
      }
      continue;
    }
    if (c == '~') {
      out.push_back(' ');
    } else if (c == '%' && (i == 0 || s[i - 1] != '\\')) {
      auto nl = s.find('\n', i);
      i = nl == std::string_view::npos ? s.size() : nl;
      continue;
    } else if (s.substr(i, 2) == "``" || s.substr(i, 2) == "''") {
      out.push_back('"');
      i += 2;
      continue;
    } else if (s.substr(i, 3) == "---" ) {
      out.append(" - ");
      i += 3;
      continue;
    } else if (s.substr(i, 2) == "--") {
      out.push_back('-');
      i += 2;
      continue;
    } else {
      out.push_back(c);
    }
    ++i;
  }
  return out;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

void normalize_document(AnnotatedDocument& doc) {
  for (auto& s : doc.sentences) {
    s.text = text::nfc(s.text);
    for (auto& t : s.tokens) {
      t.form = text::nfc(t.form);
      t.lemma = text::nfc(t.lemma);
    }
  }
}

std::string tsv_field(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(c == '\t' || c == '\n' ? ' ' : c);
  return out;
}

}  // namespace

std::string clean_latex_document(std::string_view raw) {
  std::string s = text::nfc(raw);
  s = verbalize_inline_math(s);
  s = latex_text_mode(s);
  return remove_markup_characters(s);
}

AnnotatedDocument document_from_clean_text(const DocumentMetadata& metadata,
                                           std::string_view cleaned, bool lines_are_blocks) {
  AnnotatedDocument doc;
  doc.metadata = metadata;
  std::size_t n = 0;
  for (auto& sentence : split_sentences(cleaned, lines_are_blocks)) {
    Sentence s;
    s.tokens = tokenize_sentence(sentence);
    if (s.tokens.empty()) continue;
    s.sent_id = metadata.doc_id + "-" + std::to_string(++n);
    s.text = std::move(sentence);
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

IngestReport run_ingest(const IngestOptions& options) {
  if (!fs::is_directory(options.raw_dir)) {
    throw Error(ErrorCode::kIo, "raw directory not found: " + options.raw_dir.string());
  }
  const auto records = parse_manifest(read_file(options.manifest));
  fs::create_directories(options.out_dir);

  IngestReport report;
  bool any_raw = false;
  for (const auto& entry : fs::directory_iterator(options.raw_dir)) {
    if (entry.is_regular_file()) any_raw = true;
  }
  if (!any_raw) report.warnings.push_back("raw directory is empty: " + options.raw_dir.string());

  std::vector<AnnotatedDocument> documents;
  std::vector<DocumentMetadata> kept_metadata;
  const std::string wanted = text::casefold(options.corpus.str());
  for (const auto& record : records) {
    if (text::casefold(record.corpus.str()) != wanted) continue;
    DocumentMetadata metadata = record;
    metadata.corpus = options.corpus;

    if (auto reason = meta_document_reason(metadata)) {
      report.dropped.push_back({metadata.doc_id, *reason});
      continue;
    }

    const fs::path base = options.raw_dir / metadata.doc_id;
    AnnotatedDocument doc;
    try {
      if (fs::exists(fs::path(base).concat(".conllu"))) {
        auto parsed = parse_conllu(read_file(fs::path(base).concat(".conllu")), options.corpus);
        for (auto& d : parsed.diagnostics) report.diagnostics.push_back(std::move(d));
        doc.metadata = metadata;
        for (auto& part : parsed.documents) {
          for (auto& s : part.sentences) doc.sentences.push_back(std::move(s));
        }
        normalize_document(doc);
      } else if (fs::exists(fs::path(base).concat(".md"))) {
        doc = document_from_clean_text(
            metadata, clean_markdown_document(read_file(fs::path(base).concat(".md"))), true);
      } else if (fs::exists(fs::path(base).concat(".tex"))) {
        doc = document_from_clean_text(
            metadata, clean_latex_document(read_file(fs::path(base).concat(".tex"))), false);
      } else if (fs::exists(fs::path(base).concat(".txt"))) {
        doc = document_from_clean_text(metadata, text::nfc(read_file(fs::path(base).concat(".txt"))),
                                       false);
      } else {
        report.failures.push_back({metadata.doc_id, "no raw file found"});
        continue;
      }
    } catch (const Error& e) {
      report.failures.push_back({metadata.doc_id, e.what()});
      continue;
    }
    if (doc.sentences.empty()) {
      report.dropped.push_back({metadata.doc_id, "no sentences after cleaning"});
      continue;
    }
    kept_metadata.push_back(doc.metadata);
    documents.push_back(std::move(doc));
  }

  const std::string stem = options.corpus.str();
  report.conllu_path = options.out_dir / (stem + ".conllu");
  report.manifest_path = options.out_dir / (stem + ".manifest.jsonl");
  report.drop_report_path = options.out_dir / (stem + ".drops.tsv");
  write_file(report.conllu_path, serialize_conllu(documents));
  write_file(report.manifest_path, serialize_manifest(kept_metadata));
  std::string drops = "doc_id\treason\n";
  for (const auto& d : report.dropped) drops += tsv_field(d.doc_id) + "\t" + tsv_field(d.reason) + "\n";
  write_file(report.drop_report_path, drops);
  report.emitted = documents.size();
  return report;
}

LoadedCorpus load_corpus_dir(const fs::path& dir, std::span<const CorpusId> only) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::kIo, "corpus directory " + dir.string() + " is not readable");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".conllu") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  LoadedCorpus out;
  for (const auto& file : files) {
    CorpusId corpus(file.stem().string());
    if (!only.empty() && std::find(only.begin(), only.end(), corpus) == only.end()) continue;
    auto parsed = parse_conllu(read_file(file), corpus);
    fs::path manifest = dir / (file.stem().string() + ".manifest.jsonl");
    if (fs::exists(manifest)) attach_metadata(parsed.documents, parse_manifest(read_file(manifest)));
    for (auto& d : parsed.documents) d.metadata.corpus = corpus;
    out.documents.insert(out.documents.end(), std::make_move_iterator(parsed.documents.begin()),
                         std::make_move_iterator(parsed.documents.end()));
    out.diagnostics.insert(out.diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
    out.files.push_back(file);
  }
  return out;
}

}  // namespace ctsearch::corpus
