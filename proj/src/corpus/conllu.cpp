#include "ctsearch/corpus/conllu.hpp"

#include <charconv>
#include <optional>

#include "ctsearch/text/unicode.hpp"

namespace ctsearch::corpus {

std::string_view to_string(ConlluDiagnostic::Kind kind) {
  switch (kind) {
    case ConlluDiagnostic::Kind::kMalformedLine: return "MalformedLine";
    case ConlluDiagnostic::Kind::kNonNumericHead: return "NonNumericHead";
    case ConlluDiagnostic::Kind::kUnsupportedLine: return "UnsupportedLine";
    case ConlluDiagnostic::Kind::kMalformedTree: return "MalformedTree";
  }
  return "Unknown";
}

namespace {

constexpr std::string_view kNewdoc = "newdoc";
constexpr std::string_view kSentId = "sent_id";
constexpr std::string_view kText = "text";

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      break;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cols;
}

// Splits "key = value" comment bodies. Returns nullopt when the body is not a
// key/value pair for `key`.
std::optional<std::string_view> comment_value(std::string_view body, std::string_view key) {
  if (body.substr(0, key.size()) != key) return std::nullopt;
  std::string_view rest = body.substr(key.size());
  if (rest.empty()) return std::string_view{};
  if (rest.front() != ' ' && rest.front() != '=') return std::nullopt;
  rest = text::trim(rest);
  if (rest.empty()) return std::string_view{};
  if (rest.front() != '=') return std::nullopt;
  rest.remove_prefix(1);
  if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  return rest;
}

// "newdoc", "newdoc id = X" or "newdoc = X".
std::optional<std::string_view> newdoc_id(std::string_view body) {
  if (body.substr(0, kNewdoc.size()) != kNewdoc) return std::nullopt;
  std::string_view rest = body.substr(kNewdoc.size());
  if (!rest.empty() && rest.front() != ' ' && rest.front() != '=') return std::nullopt;
  rest = text::trim(rest);
  if (rest.empty()) return std::string_view{};
  if (rest.front() == '=') return text::trim(rest.substr(1));
  if (auto v = comment_value(rest, "id")) return *v;
  return std::string_view{};
}

class Parser {
 public:
  explicit Parser(CorpusId corpus) : corpus_(std::move(corpus)) {}

  void feed(std::string_view input) {
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < input.size()) {
      auto nl = input.find('\n', pos);
      std::string_view line =
          input.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? input.size() : nl + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      handle_line(line, line_no);
    }
    flush_sentence();
  }

  ConlluParseResult finish() && { return std::move(result_); }

 private:
  void handle_line(std::string_view line, std::size_t line_no) {
    if (text::trim(line).empty()) {
      flush_sentence();
      return;
    }
    if (line.front() == '#') {
      handle_comment(line, line_no);
      return;
    }
    handle_token(line, line_no);
  }

  void handle_comment(std::string_view line, std::size_t line_no) {
    std::string_view body = line.substr(1);
    if (!body.empty() && body.front() == ' ') body.remove_prefix(1);

    if (auto id = newdoc_id(body)) {
      if (has_tokens_) flush_sentence();
      AnnotatedDocument doc;
      doc.metadata.doc_id = std::string(text::trim(*id));
      doc.metadata.corpus = corpus_;
      result_.documents.push_back(std::move(doc));
      return;
    }
    if (has_tokens_) {
      // Comment after token lines without a separating blank line.
      flush_sentence();
    }
    sentence_open_ = true;
    if (sentence_start_line_ == 0) sentence_start_line_ = line_no;
    if (auto v = comment_value(body, kSentId)) {
      current_.sent_id = std::string(*v);
    } else if (auto t = comment_value(body, kText)) {
      current_.text = std::string(*t);
      has_text_ = true;
    } else {
      current_.extra_comments.emplace_back(body);
    }
  }

  void handle_token(std::string_view line, std::size_t line_no) {
    sentence_open_ = true;
    if (sentence_start_line_ == 0) sentence_start_line_ = line_no;
    has_tokens_ = true;
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      report(ConlluDiagnostic::Kind::kMalformedLine, line_no,
             "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
      skip_ = true;
      return;
    }
    std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) {
      report(ConlluDiagnostic::Kind::kUnsupportedLine, line_no,
             "multiword token or empty node '" + std::string(id) + "' ignored");
      return;
    }
    auto index = parse_int(id);
    if (!index || *index < 1) {
      report(ConlluDiagnostic::Kind::kMalformedLine, line_no,
             "token ID '" + std::string(id) + "' is not a positive integer");
      skip_ = true;
      return;
    }
    if (cols[1].empty() || cols[2].empty()) {
      report(ConlluDiagnostic::Kind::kMalformedLine, line_no, "empty FORM or LEMMA column");
      skip_ = true;
      return;
    }
    Token t;
    t.index = *index;
    t.form = std::string(cols[1]);
    t.lemma = std::string(cols[2]);
    t.upos = std::string(cols[3]);
    t.xpos = std::string(cols[4]);
    t.feats = std::string(cols[5]);
    if (cols[6] == "_") {
      t.head = 0;
      t.head_unspecified = true;
    } else if (auto head = parse_int(cols[6]); head && *head >= 0) {
      t.head = *head;
    } else {
      report(ConlluDiagnostic::Kind::kNonNumericHead, line_no,
             "HEAD '" + std::string(cols[6]) + "' is not a non-negative integer; set to 0");
      t.head = 0;
      t.head_invalid = true;
      t.raw_head = std::string(cols[6]);
    }
    t.deprel = std::string(cols[7]);
    t.deps = std::string(cols[8]);
    t.misc = std::string(cols[9]);
    current_.tokens.push_back(std::move(t));
  }

  void flush_sentence() {
    if (sentence_open_ && has_tokens_ && !skip_) {
      if (!has_text_) current_.text = reconstruct_text(current_.tokens);
      TreeDiagnostics tree = check_tree(current_);
      bool all_unspecified = true;
      for (const auto& t : current_.tokens) all_unspecified = all_unspecified && t.head_unspecified;
      if (!all_unspecified && !tree.well_formed()) {
        report(ConlluDiagnostic::Kind::kMalformedTree, sentence_start_line_,
               "sentence '" + current_.sent_id + "' has " + std::to_string(tree.root_count) +
                   " roots" + (tree.contiguous_indices ? "" : ", non-contiguous indices") +
                   (tree.heads_in_range ? "" : ", head out of range") +
                   (tree.has_self_loop ? ", self-loop" : ""));
      }
      if (result_.documents.empty()) {
        AnnotatedDocument doc;
        doc.metadata.corpus = corpus_;
        result_.documents.push_back(std::move(doc));
      }
      result_.documents.back().sentences.push_back(std::move(current_));
    }
    current_ = Sentence{};
    sentence_open_ = false;
    has_tokens_ = false;
    has_text_ = false;
    skip_ = false;
    sentence_start_line_ = 0;
  }

  void report(ConlluDiagnostic::Kind kind, std::size_t line, std::string message) {
    result_.diagnostics.push_back({kind, line, std::move(message)});
  }

  CorpusId corpus_;
  ConlluParseResult result_;
  Sentence current_;
  bool sentence_open_ = false;
  bool has_tokens_ = false;
  bool has_text_ = false;
  bool skip_ = false;
  std::size_t sentence_start_line_ = 0;
};

void append_token(std::string& out, const Token& t) {
  out += std::to_string(t.index);
  out += '\t';
  out += t.form;
  out += '\t';
  out += t.lemma;
  out += '\t';
  out += t.upos.empty() ? "_" : t.upos;
  out += '\t';
  out += t.xpos.empty() ? "_" : t.xpos;
  out += '\t';
  out += t.feats.empty() ? "_" : t.feats;
  out += '\t';
  if (t.head_unspecified) {
    out += '_';
  } else if (t.head_invalid) {
    out += t.raw_head;
  } else {
    out += std::to_string(t.head);
  }
  out += '\t';
  out += t.deprel.empty() ? "_" : t.deprel;
  out += '\t';
  out += t.deps.empty() ? "_" : t.deps;
  out += '\t';
  out += t.misc.empty() ? "_" : t.misc;
  out += '\n';
}

}  // namespace

ConlluParseResult parse_conllu(std::string_view input, const CorpusId& corpus) {
  Parser parser(corpus);
  parser.feed(input);
  return std::move(parser).finish();
}

std::string serialize_conllu(const std::vector<AnnotatedDocument>& documents) {
  std::string out;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const auto& doc = documents[d];
    const bool implicit_first =
        d == 0 && doc.metadata.doc_id.empty() && !doc.sentences.empty();
    if (!implicit_first) {
      out += doc.metadata.doc_id.empty() ? "# newdoc\n"
                                         : "# newdoc id = " + doc.metadata.doc_id + "\n";
    }
    for (const auto& s : doc.sentences) {
      if (s.tokens.empty()) continue;
      if (!s.sent_id.empty()) out += "# sent_id = " + s.sent_id + "\n";
      out += "# text = " + s.text + "\n";
      for (const auto& c : s.extra_comments) out += "# " + c + "\n";
      for (const auto& t : s.tokens) append_token(out, t);
      out += '\n';
    }
  }
  return out;
}

}  // namespace ctsearch::corpus
