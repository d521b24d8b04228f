// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ctsearch/corpus/conllu.hpp"
#include "ctsearch/corpus/ingest.hpp"
#include "ctsearch/corpus/meta_filter.hpp"
#include "ctsearch/error.hpp"
#include "ctsearch/index/persist.hpp"
#include "ctsearch/linker/sparql.hpp"
#include "ctsearch/linker/wikidata_client.hpp"
#include "ctsearch/search/highlight.hpp"
#include "ctsearch/search/phrase.hpp"
#include "ctsearch/service/api.hpp"
#include "ctsearch/termeval/evaluate.hpp"
#include "ctsearch/termeval/mwe.hpp"
#include "ctsearch/termeval/silver.hpp"
#include "ctsearch/termeval/textrank.hpp"
#include "ctsearch/text/unicode.hpp"
#include "generators.hpp"
#include "sample.hpp"

namespace {

namespace fs = std::filesystem;
using namespace ctsearch;
using index::CorpusId;

// Tolerances and budgets.
constexpr double kTextRankTolerance = 1e-6;
constexpr double kRingTolerance = 1e-9;
constexpr int kSearchCorpora = 200;
constexpr int kQueriesPerCorpus = 10;
constexpr int kHighlightCases = 1000;
constexpr std::size_t kRoundTripTokens = 10000;
constexpr int kConlluFiles = 100;
constexpr double kSoftMweRecall = 0.6;
constexpr double kSoftTextRankRecall = 0.4;

enum class Outcome { kPass, kFail, kSkip };

struct Verdict {
  Outcome outcome = Outcome::kPass;
  std::string detail;
};

class Check {
 public:
  bool expect(bool condition, const std::string& what) {
    if (!condition && failures_.size() < 5) failures_.push_back(what);
    failed_ = failed_ || !condition;
    return condition;
  }
  Verdict verdict(std::string detail) const {
    if (!failed_) return {Outcome::kPass, std::move(detail)};
    std::string msg;
    for (const auto& f : failures_) msg += (msg.empty() ? "" : "; ") + f;
    return {Outcome::kFail, msg};
  }

 private:
  bool failed_ = false;
  std::vector<std::string> failures_;
};

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path kGolden = testing::source_dir() / "tests/golden";

// ---------------------------------------------------------------------------

Verdict sparql_exactness() {
  Check c;
  const std::string unfiltered = read(kGolden / "label_query_unfiltered.sparql");
  const std::string filtered = read(kGolden / "label_query_filtered.sparql");
  c.expect(!unfiltered.empty() && !filtered.empty(), "golden queries missing");

  auto q1 = linker::build_sparql("category", linker::FilterList{});
  c.expect(linker::normalize_query_whitespace(q1.text) == linker::normalize_query_whitespace(unfiltered),
           "unfiltered query differs");

  // The published filtered query lists Q4167836 twice; the configured list
  // holds it once, so compare against the text with the repeated line removed.
  std::istringstream lines(filtered);
  std::string line, dedup;
  std::set<std::string> seen;
  while (std::getline(lines, line)) {
    const std::string key(text::trim(line));
    if (key.rfind("MINUS", 0) == 0 && !seen.insert(key).second) continue;
    dedup += line + "\n";
  }
  const auto defaults = linker::FilterList::defaults();
  auto q2 = linker::build_sparql("category", defaults);
  c.expect(linker::normalize_query_whitespace(q2.text) == linker::normalize_query_whitespace(dedup),
           "filtered query differs");
  std::size_t minus = 0;
  for (std::size_t p = 0; (p = q2.text.find("MINUS", p)) != std::string::npos; ++p) ++minus;
  c.expect(minus == defaults.size(), "MINUS count != filter list size");

  std::vector<std::string> raw;
  for (const auto& row : linker::published_filter_rows()) raw.push_back(row.id);
  c.expect(linker::normalize_query_whitespace(linker::render_label_query("category", raw)) ==
               linker::normalize_query_whitespace(filtered),
           "ten-row rendering differs from the published text");

  const std::vector<std::string> table5{"Q223557",  "Q4167836",  "Q17334923", "Q1914636", "Q3769299",
                                        "Q63539947", "Q186408", "Q186081",   "Q8142"};
  c.expect(defaults.ids() == table5, "default filter ids differ");
  return c.verdict("both queries equal modulo whitespace; " + std::to_string(defaults.size()) +
                   " unique filter ids, " + std::to_string(minus) + " MINUS clauses");
}

class CountingTransport : public linker::SparqlTransport {
 public:
  linker::HttpResponse execute(const linker::HttpRequest&) override {
    ++calls;
    return {0, "", std::nullopt, "network disabled"};
  }
  int calls = 0;
};

Verdict table4_replay() {
  Check c;
  struct Row {
    const char* id;
    const char* label;
    const char* description;
  };
  const Row table4[] = {
      {"Q15846545", "category", "class of sets"},
      {"P910", "topic's main category", "main Wikimedia category"},
      {"Q4167836", "Wikimedia category", "use with 'instance of' (P31) for Wikimedia category"},
      {"Q21146257", "type", "kind or variety of something"},
      {"Q15013692", "Category:Rhaba", "Wikimedia category"},
      {"Q9757078", "category", "Wikimedia category"},
      {"Q719395", "category",
       "algebraic structure of objects and morphisms between objects, which can be associatively composed if the "
       "(co)domains agree"},
      {"Q4118499", "category",
       "in Kantian philosophy, a pure concept of the understanding (Verstand); a characteristic of the appearance "
       "of any object in general, before it has been experienced"},
      {"Q16781549", "Category:Biographical plays about English royalty", "Wikimedia category"},
      {"Q64549097", "category", "concept"},
  };
  linker::ClientConfig cfg;
  cfg.mode = linker::ClientMode::kReplay;
  cfg.fixtures_dir = testing::source_dir() / "data/fixtures/wikidata";
  auto transport = std::make_shared<CountingTransport>();
  linker::WikidataClient client(cfg, transport);
  auto entries = linker::query_wikidata(linker::build_sparql("category", linker::FilterList{}), client);
  c.expect(entries.size() == 10, "expected 10 entries, got " + std::to_string(entries.size()));
  for (const auto& row : table4) {
    auto it = std::find_if(entries.begin(), entries.end(),
                           [&](const linker::KbEntry& e) { return e.entity_id == row.id; });
    if (!c.expect(it != entries.end(), std::string(row.id) + " missing")) continue;
    c.expect(it->label == row.label, std::string(row.id) + " label");
    c.expect(it->description == std::optional<std::string>(row.description), std::string(row.id) + " description");
  }
  c.expect(transport->calls == 0 && client.transport_calls() == 0, "transport used");
  return c.verdict("10/10 rows match, 0 network calls");
}

Verdict search_oracle() {
  Check c;
  std::size_t queries = 0, matches = 0, mismatches = 0;
  for (int seed = 0; seed < kSearchCorpora; ++seed) {
    testing::Rng rng(static_cast<std::uint64_t>(seed));
    testing::CorpusSpec spec;  // <= 500 sentences, <= 20 tokens, 50 lemmas
    auto ix = index::build_index(testing::random_corpus(rng, spec));
    for (int q = 0; q < kQueriesPerCorpus; ++q) {
      std::vector<std::string> lemmas;
      const int n = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int k = 0; k < n; ++k) {
        // Bias towards frequent lemmas so multi-word queries hit.
        const auto v = std::uniform_int_distribution<std::size_t>(0, spec.vocabulary - 1)(rng);
        lemmas.push_back(testing::vocab_lemma(k == 0 || q % 2 == 0 ? v % 8 : v));
      }
      std::vector<CorpusId> corpora;
      if (q % 4 == 3) corpora = {seed % 2 == 0 ? CorpusId::tac() : CorpusId::nlab()};
      auto got = search::find_phrase_matches(ix.index, ix.store, lemmas, corpora);
      std::set<testing::OracleMatch> as_set;
      for (const auto& m : got) as_set.emplace(m.posting.doc, m.posting.sentence, m.posting.token, m.last_token);
      const auto want = testing::brute_force_phrase_scan(ix.store, lemmas, corpora);
      if (as_set != want || as_set.size() != got.size()) ++mismatches;
      matches += want.size();
      ++queries;
    }
  }
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatching queries");
  c.expect(matches > 0, "oracle found no matches at all");
  return c.verdict(std::to_string(kSearchCorpora) + " corpora, " + std::to_string(queries) + " queries, " +
                   std::to_string(matches) + " matches, 0 mismatches");
}

Verdict inflection_matching() {
  Check c;
  auto corpus = testing::sample_corpus();
  service::ApiContext ctx(testing::replay_api_config(), corpus);
  auto r = service::handle_search(ctx, {{"q", "double category"}});
  c.expect(r.status == 200, "status " + std::to_string(r.status));
  const auto& groups = r.body["corpora"];
  c.expect(groups.contains("TAC") && groups.contains("NLAB"), "TAC and NLAB sections expected");
  bool singular = false, plural = false;
  for (const auto& [id, group] : groups.items()) {
    for (const auto& card : group["cards"]) {
      for (const auto& s : card["sentences"]) {
        const std::string text = s["text"];
        for (const auto& h : s["highlights"]) {
          // Code-point span back to bytes.
          std::size_t cp = 0, begin = std::string::npos, end = text.size();
          for (std::size_t i = 0; i <= text.size(); ++i) {
            if (i < text.size() && (static_cast<unsigned char>(text[i]) & 0xC0) == 0x80) continue;
            if (cp == h[0].get<std::size_t>()) begin = i;
            if (cp == h[1].get<std::size_t>()) {
              end = i;
              break;
            }
            ++cp;
          }
          if (begin == std::string::npos) continue;
          const std::string hit = text::casefold(text.substr(begin, end - begin));
          singular = singular || hit == "double category";
          plural = plural || hit == "double categories";
        }
      }
    }
  }
  c.expect(singular, "no 'double category' hit");
  c.expect(plural, "no 'double categories' hit");
  const auto tac_cards = groups["TAC"]["cards"].size();
  const auto nlab_cards = groups["NLAB"]["cards"].size();
  c.expect(tac_cards > 0 && nlab_cards > 0, "empty section");
  for (const auto& card : groups["NLAB"]["cards"]) {
    c.expect(card["url"].get<std::string>().rfind("https://ncatlab.org/", 0) == 0, "nLab card without link");
  }
  return c.verdict("singular and plural both matched; TAC " + std::to_string(tac_cards) + " cards, nLab " +
                   std::to_string(nlab_cards) + " cards in separate sections");
}

Verdict highlight_reconstruction() {
  Check c;
  testing::Rng rng(4242);
  const std::vector<std::string> alphabet{"a", "b", " ", "é", "λ", "→", ",", "x"};
  std::size_t merged = 0;
  for (int i = 0; i < kHighlightCases; ++i) {
    std::string s;
    for (int k = std::uniform_int_distribution<int>(0, 40)(rng); k > 0; --k) {
      s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    }
    const auto len = static_cast<std::uint32_t>(s.size());
    std::vector<index::TokenSpan> spans(std::uniform_int_distribution<int>(0, 5)(rng));
    for (auto& sp : spans) {
      auto a = std::uniform_int_distribution<std::uint32_t>(0, len)(rng);
      auto b = std::uniform_int_distribution<std::uint32_t>(0, len)(rng);
      sp = {std::min(a, b), std::max(a, b)};
    }
    const auto segments = search::highlight_sentence(s, spans);
    std::string joined;
    for (std::size_t k = 0; k < segments.size(); ++k) {
      joined += segments[k].text;
      if (k > 0) c.expect(segments[k].highlighted != segments[k - 1].highlighted, "adjacent segments not merged");
    }
    c.expect(joined == s, "concatenation differs");
    const auto m = search::merge_spans(spans, s.size());
    for (std::size_t k = 1; k < m.size(); ++k) c.expect(m[k - 1].end < m[k].begin, "merged spans touch");
    std::size_t highlighted_segments = 0;
    for (const auto& seg : segments) highlighted_segments += seg.highlighted ? 1 : 0;
    c.expect(highlighted_segments == m.size(), "segment count != merged span count");
    merged += spans.size() - std::min(spans.size(), m.size());
  }
  const std::string s = "Free double categories are studied.";
  const index::TokenSpan overlap[] = {{5, 15}, {12, 22}};
  const auto segs = search::highlight_sentence(s, overlap);
  c.expect(segs.size() == 3 && segs[1].text == "double categories" && segs[1].highlighted, "overlap example");
  return c.verdict(std::to_string(kHighlightCases) + " cases byte-equal; " + std::to_string(merged) +
                   " spans merged away or empty");
}

Verdict index_round_trip() {
  Check c;
  const fs::path path = fs::temp_directory_path() / "ctsearch-acceptance.idx";
  testing::Rng rng(10000);
  auto ix = index::build_index(testing::corpus_with_tokens(rng, kRoundTripTokens), {1700000000});
  c.expect(ix.store.token_count() >= kRoundTripTokens, "generated corpus too small");
  index::persist_index(ix.index, ix.store, path);
  auto loaded = index::load_index(path);
  std::size_t lists = 0;
  for (const auto& [lemma, postings] : ix.index.postings()) {
    const auto got = loaded.index.lookup(lemma);
    c.expect(std::equal(got.begin(), got.end(), postings.begin(), postings.end()), "posting list for " + lemma);
    ++lists;
  }
  c.expect(loaded.index.postings().size() == lists, "lemma count differs");
  c.expect(loaded.store == ix.store, "sentence store differs");

  const std::string good = read(path);
  auto expect_error = [&](std::string bytes, ErrorCode code, const std::string& what) {
    std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
    try {
      index::load_index(path);
      c.expect(false, what + " accepted");
    } catch (const Error& e) {
      c.expect(e.code() == code, what + " gave " + std::string(to_string(e.code())));
    }
  };
  std::string corrupt = good;
  corrupt[corrupt.size() / 2 + 40] ^= 0x10;
  expect_error(corrupt, ErrorCode::kChecksumMismatch, "corrupted payload");
  std::string bumped = good;
  bumped[8] = static_cast<char>(index::kIndexVersion + 1);
  expect_error(bumped, ErrorCode::kVersionMismatch, "version-bumped file");
  expect_error(good.substr(0, good.size() / 3), ErrorCode::kCorruptFile, "truncated file");
  fs::remove(path);
  return c.verdict(std::to_string(ix.store.token_count()) + " tokens, " + std::to_string(lists) +
                   " posting lists equal; corrupt/version/truncated rejected");
}

Verdict conllu_round_trip() {
  Check c;
  testing::Rng rng(100);
  for (int i = 0; i < kConlluFiles; ++i) {
    auto docs = testing::random_conllu_documents(rng, 1 + i % 4);
    const std::string s1 = corpus::serialize_conllu(docs);
    auto p1 = corpus::parse_conllu(s1);
    const std::string s2 = corpus::serialize_conllu(p1.documents);
    auto p2 = corpus::parse_conllu(s2);
    c.expect(p1.documents == docs, "file " + std::to_string(i) + ": parse differs from generated");
    c.expect(s1 == s2 && p1.documents == p2.documents, "file " + std::to_string(i) + ": not a fixed point");
  }
  const std::string golden = read(kGolden / "handwritten.conllu");
  auto g = corpus::parse_conllu(golden);
  c.expect(g.diagnostics.empty(), "golden has diagnostics");
  c.expect(g.documents.size() == 2 && g.documents[0].sentences.size() == 2, "golden structure");
  if (g.documents.size() == 2 && g.documents[0].sentences.size() == 2) {
    const auto& t = g.documents[0].sentences[1].tokens;
    c.expect(t.size() == 12 && t[8].form == "λ" && t[10].lemma == "term" && t[10].misc == "SpaceAfter=No",
             "golden token fields");
    c.expect(g.documents[0].sentences[1].extra_comments == std::vector<std::string>{"note = hand-annotated"},
             "golden comments");
    c.expect(g.documents[1].sentences[0].tokens[0].lemma == "Übergang", "golden Unicode lemma");
  }
  c.expect(corpus::serialize_conllu(g.documents) == golden, "golden does not serialize byte-identically");
  return c.verdict(std::to_string(kConlluFiles) + " generated files and the golden are fixed points");
}

Verdict textrank_oracle() {
  Check c;
  const auto corpus = testing::textrank_synthetic_corpus();
  termeval::TextRankParams p;
  p.iterations = 1000;
  p.tolerance = 1e-12;
  auto graph = termeval::build_cooccurrence_graph(corpus, p);
  auto scores = termeval::run_textrank(graph, p);
  auto oracle = testing::dense_textrank(corpus, p.window, p.damping, p.tolerance, p.iterations, p.content_upos);
  c.expect(graph.vertices == oracle.vertices, "vertex sets differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < graph.vertices.size() && i < oracle.scores.size(); ++i) {
    worst = std::max(worst, std::abs(scores.scores[i] - oracle.scores[i]));
  }
  c.expect(worst < kTextRankTolerance, "max deviation " + std::to_string(worst));

  termeval::TextRankParams ring;
  ring.window = 2;
  const int k = 12;
  termeval::TermSentence s;
  for (int i = 0; i <= k; ++i) {
    const std::string w = "w" + std::to_string(i % k);
    s.push_back({w, w, "NOUN"});
  }
  auto rg = termeval::build_cooccurrence_graph({s}, ring);
  auto rs = termeval::run_textrank(rg, ring);
  double spread = 0.0;
  for (double v : rs.scores) spread = std::max(spread, std::abs(v - rs.scores.front()));
  c.expect(rg.vertices.size() == static_cast<std::size_t>(k), "ring size");
  c.expect(spread < kRingTolerance, "ring spread " + std::to_string(spread));
  std::ostringstream d;
  d << graph.vertices.size() << " vertices, max |delta| " << std::scientific << std::setprecision(2) << worst
    << "; ring of " << k << " spread " << spread;
  return c.verdict(d.str());
}

Verdict evaluation_arithmetic() {
  Check c;
  auto is = [&](const termeval::EvalReport& r, double p, double rc, double f, const std::string& what) {
    c.expect(r.precision == p && r.recall == rc && r.f1 == f, what);
  };
  is(termeval::evaluate({"a", "b"}, std::set<std::string>{"a", "b"}), 1.0, 1.0, 1.0, "identical sets");
  is(termeval::evaluate({"a", "b"}, std::set<std::string>{"c", "d"}), 0.0, 0.0, 0.0, "disjoint sets");
  is(termeval::evaluate({"a", "b"}, std::set<std::string>{"b", "c"}), 0.5, 0.5, 0.5, "{a,b} vs {b,c}");
  is(termeval::evaluate({}, std::set<std::string>{"a"}), 0.0, 0.0, 0.0, "empty prediction");
  return c.verdict("identical 1/1/1, disjoint 0/0/0, {a,b}/{b,c} 0.5/0.5/0.5 exact");
}

Verdict silver_extractive() {
  Check c;
  auto ix = testing::sample_corpus();
  const auto author = termeval::build_silver_author(*ix);
  const auto titles = termeval::build_silver_titles(termeval::nlab_titles(*ix), *ix);
  const CorpusId tac[] = {CorpusId::tac()};
  std::size_t checked = 0;
  for (const auto* s : {&author, &titles}) {
    c.expect(!s->terms.empty(), s->name + " is empty");
    for (const auto& term : s->terms) {
      const auto lemmas = text::split_whitespace(term);
      c.expect(!search::find_phrase_matches(ix->index, ix->store, lemmas, tac).empty(),
               s->name + ": '" + term + "' unattested");
      ++checked;
    }
  }
  return c.verdict(std::to_string(author.terms.size()) + " author keywords, " + std::to_string(titles.terms.size()) +
                   " nLab titles; all " + std::to_string(checked) + " attested in TAC");
}

Verdict soft_reproduction() {
  const char* dir = std::getenv("CTSEARCH_REAL_CORPORA");
  if (dir == nullptr || *dir == '\0') {
    return {Outcome::kSkip, "set CTSEARCH_REAL_CORPORA to a directory with TAC.conllu and TAC.manifest.jsonl"};
  }
  Check c;
  auto loaded = corpus::load_corpus_dir(dir);
  auto kept = corpus::filter_meta_documents(loaded.documents).kept;
  auto ix = index::build_index(std::move(kept));
  const auto gold = termeval::build_silver_author(ix);
  const auto sentences = termeval::sentences_from_store(ix.store, CorpusId::tac());
  const auto mwe = termeval::evaluate(termeval::lemma_forms(termeval::extract_mwe(sentences)), gold);
  const auto tr = termeval::evaluate(termeval::lemma_forms(termeval::extract_textrank(sentences)), gold);
  c.expect(mwe.recall >= kSoftMweRecall, "MWE recall " + std::to_string(mwe.recall));
  c.expect(tr.recall >= kSoftTextRankRecall, "TextRank recall " + std::to_string(tr.recall));
  std::ostringstream d;
  d << std::fixed << std::setprecision(2) << "MWE recall " << mwe.recall << ", TextRank recall " << tr.recall
    << " against " << gold.terms.size() << " keywords (indicative)";
  auto v = c.verdict(d.str());
  if (v.outcome == Outcome::kFail) v.detail += " | " + d.str();
  return v;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"sparql-exactness", 1.0, sparql_exactness},
      {"table4-replay", 1.0, table4_replay},
      {"search-oracle-equivalence", 60.0, search_oracle},
      {"inflection-matching", 1.0, inflection_matching},
      {"highlight-reconstruction", 5.0, highlight_reconstruction},
      {"index-round-trip", 10.0, index_round_trip},
      {"conllu-round-trip", 5.0, conllu_round_trip},
      {"textrank-oracle", 5.0, textrank_oracle},
      {"evaluation-arithmetic", 1.0, evaluation_arithmetic},
      {"silver-extractive", 5.0, silver_extractive},
      {"soft-reproduction", 600.0, soft_reproduction},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criterion.run();
    } catch (const std::exception& e) {
      v = {Outcome::kFail, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.outcome == Outcome::kPass && seconds > criterion.budget_seconds) {
      v = {Outcome::kFail, "over budget; " + v.detail};
    }
    const char* label = v.outcome == Outcome::kPass ? "PASS" : v.outcome == Outcome::kSkip ? "SKIP" : "FAIL";
    failed += v.outcome == Outcome::kFail ? 1 : 0;
    std::cout << label << "  " << std::left << std::setw(27) << criterion.name << std::right << std::fixed
              << std::setprecision(3) << std::setw(8) << seconds << "s / " << std::setprecision(0)
              << criterion.budget_seconds << "s  " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
