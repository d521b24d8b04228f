#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "ctsearch/corpus/ingest.hpp"
#include "ctsearch/corpus/meta_filter.hpp"
#include "ctsearch/error.hpp"
#include "ctsearch/search/phrase.hpp"
#include "ctsearch/search/lemmatizer.hpp"
#include "ctsearch/termeval/candidate.hpp"
#include "ctsearch/termeval/evaluate.hpp"
#include "ctsearch/termeval/mwe.hpp"
#include "ctsearch/termeval/pos_pattern.hpp"
#include "ctsearch/termeval/silver.hpp"
#include "ctsearch/termeval/textrank.hpp"
#include "ctsearch/text/unicode.hpp"
#include "docs.hpp"
#include "generators.hpp"

namespace ctsearch::termeval {
namespace {

using index::CorpusId;

TermSentence tagged(const std::string& spec) {
  // "form/UPOS" items; lemma is the case-folded form
  TermSentence s;
  for (const auto& item : text::split_whitespace(spec)) {
    const auto slash = item.rfind('/');
    s.push_back({item.substr(0, slash), text::casefold(item.substr(0, slash)), item.substr(slash + 1)});
  }
  return s;
}

// ---- TextRank -------------------------------------------------------------------------

TEST(TextRank, TwoWordCorpusMerges) {
  auto c = extract_textrank({tagged("double/ADJ category/NOUN")});
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].lemma_form, "double category");
  EXPECT_EQ(c[0].surface, "double category");
}

TEST(TextRank, EmptyCorpus) {
  EXPECT_TRUE(extract_textrank({}).empty());
  EXPECT_TRUE(extract_textrank({tagged("the/DET of/ADP")}).empty());
}

TEST(TextRank, RingScoresAreEqual) {
  // a b c d e a: with window 2 every lemma has exactly two neighbours.
  TextRankParams p;
  p.window = 2;
  auto g = build_cooccurrence_graph({tagged("a/NOUN b/NOUN c/NOUN d/NOUN e/NOUN a/NOUN")}, p);
  ASSERT_EQ(g.vertices.size(), 5u);
  for (const auto& adj : g.adjacency) EXPECT_EQ(adj.size(), 2u);
  auto s = run_textrank(g, p);
  for (double v : s.scores) EXPECT_NEAR(v, s.scores[0], 1e-9);
  EXPECT_NEAR(s.scores[0], 1.0, 1e-9);
}

TEST(TextRank, GraphConstruction) {
  TextRankParams p;  // window 3
  auto g = build_cooccurrence_graph({tagged("a/NOUN of/ADP b/NOUN c/ADJ"), tagged("c/ADJ c/ADJ d/NOUN")}, p);
  EXPECT_EQ(g.vertices, (std::vector<std::string>{"a", "b", "c", "d"}));
  // a-b (distance 2), b-c, c-d; the function word keeps its position
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.adjacency[0], (std::vector<std::uint32_t>{1}));
}

TEST(TextRank, MatchesDenseOracle) {
  const auto corpus = testing::textrank_synthetic_corpus();
  TextRankParams p;
  p.iterations = 1000;
  p.tolerance = 1e-12;
  auto g = build_cooccurrence_graph(corpus, p);
  auto s = run_textrank(g, p);
  auto oracle = testing::dense_textrank(corpus, p.window, p.damping, p.tolerance, p.iterations, p.content_upos);
  ASSERT_EQ(g.vertices, oracle.vertices);
  EXPECT_TRUE(s.converged);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    EXPECT_NEAR(s.scores[i], oracle.scores[i], 1e-6) << g.vertices[i];
    EXPECT_NEAR(s.scores[i], oracle.exact[i], 1e-6) << g.vertices[i];
  }
}

TEST(TextRank, DefaultToleranceStopsCloseToFixedPoint) {
  const auto corpus = testing::textrank_synthetic_corpus();
  TextRankParams p;
  auto g = build_cooccurrence_graph(corpus, p);
  auto s = run_textrank(g, p);
  ASSERT_TRUE(s.converged);
  EXPECT_LT(s.final_delta, p.tolerance);
  EXPECT_LE(s.iterations, p.iterations);
  auto oracle = testing::dense_textrank(corpus, p.window, p.damping, 1e-14, 10000, p.content_upos);
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    EXPECT_GE(s.scores[i], 0.0);
    EXPECT_NEAR(s.scores[i], oracle.exact[i], 1e-4);
  }
}

TEST(TextRank, IterationCapReported) {
  TextRankParams p;
  p.iterations = 1;
  auto s = run_textrank(build_cooccurrence_graph(testing::textrank_synthetic_corpus(), p), p);
  EXPECT_EQ(s.iterations, 1);
  EXPECT_FALSE(s.converged);
}

TEST(TextRank, TopSelectionIncludesTies) {
  EXPECT_EQ(select_top_vertices({3, 1, 2}, {"a", "b", "c"}, 1.0 / 3.0), (std::vector<bool>{true, false, false}));
  EXPECT_EQ(select_top_vertices({2, 1, 2, 2}, {"a", "b", "c", "d"}, 0.25),
            (std::vector<bool>{true, false, true, true}));
  EXPECT_EQ(select_top_vertices({1, 2}, {"a", "b"}, 0.01), (std::vector<bool>{false, true}));
}

TEST(TextRank, ParamValidation) {
  TextRankParams p;
  p.window = 1;
  EXPECT_THROW(validate(p), Error);
  p = {};
  p.damping = 1.0;
  EXPECT_THROW(validate(p), Error);
  p = {};
  p.top_fraction = 0.0;
  EXPECT_THROW(validate(p), Error);
  p = {};
  p.tolerance = -1;
  EXPECT_THROW(validate(p), Error);
  EXPECT_NO_THROW(validate(TextRankParams{}));
}

TEST(TextRank, DeterministicAndSorted) {
  const auto corpus = testing::textrank_synthetic_corpus();
  auto a = extract_textrank(corpus);
  EXPECT_EQ(a, extract_textrank(corpus));
  for (std::size_t i = 1; i < a.size(); ++i) {
    EXPECT_TRUE(a[i - 1].score > a[i].score ||
                (a[i - 1].score == a[i].score && a[i - 1].lemma_form < a[i].lemma_form));
  }
  std::set<std::string> forms;
  for (const auto& c : a) EXPECT_TRUE(forms.insert(c.lemma_form).second);
}

// ---- POS patterns ---------------------------------------------------------------------

std::vector<std::string> tags(const std::string& s) { return text::split_whitespace(s); }

TEST(PosPattern, Matching) {
  auto p = PosPattern::compile("(ADJ|NOUN)* NOUN");
  EXPECT_TRUE(p.full_match(tags("NOUN")));
  EXPECT_TRUE(p.full_match(tags("ADJ ADJ NOUN NOUN")));
  EXPECT_FALSE(p.full_match(tags("ADJ")));
  EXPECT_FALSE(p.full_match(tags("DET NOUN")));
  EXPECT_EQ(p.match_ends(tags("ADJ NOUN NOUN VERB"), 0), (std::vector<std::size_t>{2, 3}));
  auto any = PosPattern::compile("DET? . +");
  EXPECT_TRUE(any.full_match(tags("DET X Y")));
  EXPECT_TRUE(PosPattern::compile("PROPN+").full_match(tags("PROPN PROPN")));
}

TEST(PosPattern, SyntaxErrors) {
  for (const char* bad : {"", "(NOUN", "NOUN)", "*NOUN", "noun", "NOUN||ADJ", "()"}) {
    try {
      PosPattern::compile(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kPatternSyntaxError) << bad;
    }
  }
}

TEST(PosPattern, MaximalSpans) {
  const auto patterns = compile_patterns({"(ADJ|NOUN)* NOUN"});
  EXPECT_EQ(maximal_pattern_spans(tags("DET ADJ NOUN VERB NOUN"), patterns),
            (std::vector<PatternSpan>{{1, 3}, {4, 5}}));
  EXPECT_TRUE(maximal_pattern_spans(tags("DET VERB"), patterns).empty());
}

// ---- MWE -----------------------------------------------------------------------------

TEST(Mwe, Examples) {
  auto a = extract_mwe({tagged("double/ADJ category/NOUN")});
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0].lemma_form, "double category");
  auto b = extract_mwe({tagged("the/DET category/NOUN")});
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0].lemma_form, "category");
}

TEST(Mwe, FrequencyAndDedup) {
  auto c = extract_mwe({tagged("Double/ADJ categories/NOUN"), tagged("a/DET double/ADJ categories/NOUN"),
                        tagged("Kan/PROPN"), tagged("monad/NOUN")});
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].lemma_form, "double categories");
  EXPECT_EQ(c[0].score, 2.0);
  EXPECT_EQ(c[0].surface, "Double categories");
}

TEST(Mwe, BadPatternFailsAtConfiguration) {
  MweOptions o;
  o.patterns = {"NOUN", "(ADJ"};
  EXPECT_THROW(extract_mwe({}, o), Error);
}

TEST(Mwe, AgreesWithRegexOracle) {
  const std::vector<std::vector<std::string>> pattern_sets{
      {"(ADJ|NOUN)* NOUN", "PROPN+"}, {"ADJ NOUN"}, {"NOUN (ADP DET? NOUN)?"}, {"(ADJ|NOUN)+", "VERB"}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    testing::Rng rng(seed);
    auto sentences = testing::random_tagged_sentences(rng, 40, 12);
    for (const auto& ps : pattern_sets) {
      auto got = extract_mwe(sentences, compile_patterns(ps));
      auto want = testing::regex_mwe_oracle(sentences, ps);
      std::map<std::string, double> g, w;
      for (const auto& c : got) EXPECT_TRUE(g.emplace(c.lemma_form, c.score).second);
      for (const auto& c : want) w[c.lemma_form] = c.count;
      EXPECT_EQ(g, w) << "seed " << seed << " pattern " << ps[0];
    }
  }
}

// ---- silver standards -------------------------------------------------------------------

index::IndexedCorpus silver_corpus() {
  auto tac = testing::make_document(
      CorpusId::tac(), "t1",
      {"Free|free|ADJ double|double|ADJ categories|category are|be|AUX studied|study|VERB",
       "Every|every|DET monad|monad has|have|VERB algebras|algebra"});
  tac.metadata.keywords = {"double category", "quantum gravity", "Monads", "algebra"};
  auto nlab_a = testing::make_document(CorpusId::nlab(), "double+category", {"x|x"}, "double category");
  auto nlab_b = testing::make_document(CorpusId::nlab(), "topos", {"y|y"}, "topos");
  return index::build_index({tac, nlab_a, nlab_b});
}

TEST(Silver, AuthorKeywords) {
  auto ix = silver_corpus();
  auto s = build_silver_author(ix);
  EXPECT_EQ(s.provenance, SilverProvenance::kAuthorKeywords);
  EXPECT_EQ(s.terms, (std::set<std::string>{"algebra", "double category", "monad"}));
}

TEST(Silver, Titles) {
  auto ix = silver_corpus();
  auto titles = nlab_titles(ix);
  EXPECT_EQ(titles.size(), 2u);
  auto s = build_silver_titles(titles, ix);
  EXPECT_EQ(s.provenance, SilverProvenance::kNlabTitles);
  EXPECT_EQ(s.terms, (std::set<std::string>{"double category"}));
}

TEST(Silver, ExtractiveOnSampleCorpus) {
  auto loaded = corpus::load_corpus_dir(std::filesystem::path(CTSEARCH_SOURCE_DIR) / "data/sample");
  auto kept = corpus::filter_meta_documents(loaded.documents).kept;
  auto ix = index::build_index(std::move(kept));
  for (const auto& s : {build_silver_author(ix), build_silver_titles(nlab_titles(ix), ix)}) {
    EXPECT_FALSE(s.terms.empty()) << s.name;
    const CorpusId tac[] = {CorpusId::tac()};
    for (const auto& term : s.terms) {
      const auto lemmas = text::split_whitespace(term);
      EXPECT_FALSE(search::find_phrase_matches(ix.index, ix.store, lemmas, tac).empty()) << term;
    }
  }
  EXPECT_EQ(build_silver_author(ix).terms.count("quantum gravity"), 0u);
}

// ---- evaluation ---------------------------------------------------------------------------

TEST(Evaluate, Arithmetic) {
  auto r = evaluate({"a", "b"}, std::set<std::string>{"b", "c"});
  EXPECT_DOUBLE_EQ(r.precision, 0.5);
  EXPECT_DOUBLE_EQ(r.recall, 0.5);
  EXPECT_DOUBLE_EQ(r.f1, 0.5);
  EXPECT_EQ(r.true_positives, 1u);
  auto same = evaluate({"a"}, std::set<std::string>{"a"});
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.f1, 1.0);
  auto none = evaluate({}, std::set<std::string>{"a"});
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);
  auto empty_gold = evaluate({"a"}, std::set<std::string>{});
  EXPECT_EQ(empty_gold.recall, 0.0);
}

TEST(Evaluate, RandomSetsAgainstDirectFormula) {
  testing::Rng rng(77);
  for (int i = 0; i < 500; ++i) {
    std::set<std::string> p, g;
    for (int k = 0; k < 20; ++k) {
      if (std::bernoulli_distribution(0.4)(rng)) p.insert(std::to_string(k));
      if (std::bernoulli_distribution(0.4)(rng)) g.insert(std::to_string(k));
    }
    std::size_t tp = 0;
    for (const auto& x : p) tp += g.count(x);
    const double prec = p.empty() ? 0.0 : double(tp) / p.size();
    const double rec = g.empty() ? 0.0 : double(tp) / g.size();
    const double f1 = prec + rec == 0 ? 0.0 : 2 * prec * rec / (prec + rec);
    auto r = evaluate(p, g);
    EXPECT_NEAR(r.precision, prec, 1e-12);
    EXPECT_NEAR(r.recall, rec, 1e-12);
    EXPECT_NEAR(r.f1, f1, 1e-12);
    EXPECT_NEAR(evaluate(g, p).precision, r.recall, 1e-12);
  }
}

TEST(Predictions, ParsingAndErrors) {
  auto ix = silver_corpus();
  EXPECT_EQ(parse_predictions("Double Categories\n\n  monads \r\n", ix.index),
            (std::set<std::string>{"double category", "monad"}));
  try {
    parse_predictions("ok\n\nbad\x01term\n", ix.index);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedPrediction);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  try {
    parse_predictions("ok\n\xFF\n", ix.index);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(read_prediction_file("/nonexistent/predictions.txt", ix.index), Error);
}

TEST(Report, TextAndJson) {
  SilverStandard gold{"author keywords", {"b", "c"}, SilverProvenance::kAuthorKeywords};
  auto row = evaluate({"a", "b"}, gold);
  row.model = "TextRank";
  const EvalReport rows[] = {row};
  const auto txt = report_to_text(rows, gold);
  EXPECT_NE(txt.find("Gold: author keywords (2 terms)"), std::string::npos) << txt;
  EXPECT_NE(txt.find("TextRank"), std::string::npos);
  EXPECT_NE(txt.find("0.50"), std::string::npos);
  auto j = report_to_json(rows, gold);
  EXPECT_EQ(j["gold"]["size"], 2);
  EXPECT_EQ(j["rows"][0]["model"], "TextRank");
  EXPECT_DOUBLE_EQ(j["rows"][0]["f1"].get<double>(), 0.5);
}

}  // namespace
}  // namespace ctsearch::termeval
