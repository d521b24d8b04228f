#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ctsearch/error.hpp"
#include "ctsearch/index/lemma_index.hpp"
#include "ctsearch/index/persist.hpp"
#include "docs.hpp"
#include "generators.hpp"

namespace ctsearch::index {
namespace {

namespace fs = std::filesystem;
using testing::make_document;

IndexedCorpus one_sentence() {
  return build_index({make_document(CorpusId::tac(), "d", {"categories|category compose|compose|VERB"})});
}

class TempFile : public ::testing::Test {
 protected:
  void SetUp() override {
    path_ = fs::temp_directory_path() /
            (std::string("ctsearch-") + ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".idx");
  }
  void TearDown() override { fs::remove(path_); }

  std::string bytes() const {
    std::ifstream in(path_, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  void overwrite(const std::string& s) const {
    std::ofstream out(path_, std::ios::binary | std::ios::trunc);
    out << s;
  }

  fs::path path_;
};

TEST(BuildIndex, OneSentence) {
  auto ix = one_sentence();
  ASSERT_EQ(ix.index.lookup("category").size(), 1u);
  EXPECT_EQ(ix.index.lookup("category")[0], (Posting{0, 0, 0}));
  EXPECT_EQ(ix.index.lookup("compose")[0], (Posting{0, 0, 1}));
  EXPECT_EQ(ix.index.lemma_for_surface("categories"), "category");
  EXPECT_EQ(ix.store.token_count(), 2u);
  EXPECT_EQ(ix.index.manifest().token_count, 2u);
  EXPECT_EQ(ix.index.manifest().corpora.at("TAC").documents, 1u);
}

TEST(BuildIndex, EmptyInput) {
  auto ix = build_index({});
  EXPECT_TRUE(ix.index.postings().empty());
  EXPECT_TRUE(ix.store.documents().empty());
  EXPECT_EQ(ix.index.manifest().lemma_count, 0u);
}

TEST(LookupLemma, CaseFoldedAndTotal) {
  auto ix = one_sentence();
  EXPECT_EQ(lookup_lemma(ix.index, "category").size(), 1u);
  EXPECT_EQ(lookup_lemma(ix.index, "CATEGORY").size(), 1u);
  EXPECT_TRUE(lookup_lemma(ix.index, "functor").empty());
  EXPECT_TRUE(lookup_lemma(ix.index, "").empty());
}

TEST(BuildIndex, DuplicateDocIdsAreAllListed) {
  try {
    build_index({make_document(CorpusId::tac(), "a", {"x"}), make_document(CorpusId::tac(), "a", {"y"}),
                 make_document(CorpusId::nlab(), "a", {"z"}), make_document(CorpusId::nlab(), "b", {"z"}),
                 make_document(CorpusId::nlab(), "b", {"z"})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateDocId);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("TAC/a"), std::string::npos) << msg;
    EXPECT_NE(msg.find("NLAB/b"), std::string::npos) << msg;
    EXPECT_EQ(msg.find("NLAB/a"), std::string::npos) << msg;
  }
}

TEST(BuildIndex, UnannotatedLemmaFallsBackToForm) {
  auto ix = build_index({make_document(CorpusId::tac(), "d", {"Sheaves|_"})});
  EXPECT_EQ(ix.index.lookup("sheaves").size(), 1u);
}

TEST(BuildIndex, PostingsSortedAndCompleteOnGeneratedCorpus) {
  testing::Rng rng(5);
  auto ix = build_index(testing::random_corpus(rng, {}));
  std::size_t total = 0;
  for (const auto& [key, postings] : ix.index.postings()) {
    EXPECT_TRUE(std::is_sorted(postings.begin(), postings.end())) << key;
    for (const auto& p : postings) EXPECT_EQ(ix.store.token(p).key, key);
    total += postings.size();
  }
  EXPECT_EQ(total, ix.store.token_count());
}

TEST(AlignTokens, SpansPointAtForms) {
  auto s = testing::make_sentence("s", "Free|free|ADJ double|double|ADJ categories|category ^.|.|PUNCT");
  auto spans = align_tokens(s.text, s.tokens);
  ASSERT_EQ(spans.size(), 4u);
  EXPECT_EQ(s.text.substr(spans[2].begin, spans[2].end - spans[2].begin), "categories");
  EXPECT_EQ(spans[3], (TokenSpan{22, 23}));
}

TEST_F(TempFile, RoundTripOneSentence) {
  auto ix = one_sentence();
  auto manifest = persist_index(ix.index, ix.store, path_);
  EXPECT_FALSE(manifest.payload_sha256.empty());
  auto loaded = load_index(path_);
  EXPECT_EQ(loaded.index.postings(), ix.index.postings());
  EXPECT_EQ(loaded.store, ix.store);
  EXPECT_EQ(loaded.index.manifest(), manifest);
  EXPECT_EQ(read_manifest(path_).payload_sha256, manifest.payload_sha256);
}

TEST_F(TempFile, RoundTripTenThousandTokens) {
  testing::Rng rng(99);
  auto ix = build_index(testing::corpus_with_tokens(rng, 10000));
  ASSERT_GE(ix.store.token_count(), 10000u);
  persist_index(ix.index, ix.store, path_);
  auto loaded = load_index(path_);
  EXPECT_EQ(loaded.index.postings(), ix.index.postings());
  EXPECT_EQ(loaded.index.surface_to_lemma(), ix.index.surface_to_lemma());
  EXPECT_EQ(loaded.store, ix.store);
}

TEST_F(TempFile, BuildIsByteDeterministic) {
  testing::Rng a(3), b(3);
  auto x = build_index(testing::random_corpus(a, {}), {1700000000});
  auto y = build_index(testing::random_corpus(b, {}), {1700000000});
  EXPECT_EQ(serialize_index(x.index, x.store), serialize_index(y.index, y.store));
  persist_index(x.index, x.store, path_);
  EXPECT_EQ(bytes(), serialize_index(x.index, x.store));
}

TEST_F(TempFile, VersionMismatchRejected) {
  auto ix = one_sentence();
  persist_index(ix.index, ix.store, path_);
  std::string b = bytes();
  b[8] = static_cast<char>(kIndexVersion + 1);
  overwrite(b);
  try {
    load_index(path_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kVersionMismatch);
  }
}

TEST_F(TempFile, PayloadCorruptionRejected) {
  auto ix = one_sentence();
  persist_index(ix.index, ix.store, path_);
  std::string b = bytes();
  b[b.size() - 3] ^= 0x5A;
  overwrite(b);
  try {
    load_index(path_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kChecksumMismatch);
  }
}

TEST_F(TempFile, TruncationAndGarbageRejected) {
  auto ix = one_sentence();
  persist_index(ix.index, ix.store, path_);
  const std::string good = bytes();
  for (std::size_t cut : {std::size_t{0}, std::size_t{5}, std::size_t{15}, good.size() / 2, good.size() - 1}) {
    overwrite(good.substr(0, cut));
    try {
      load_index(path_);
      FAIL() << "cut at " << cut;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kCorruptFile || e.code() == ErrorCode::kChecksumMismatch)
          << "cut at " << cut << ": " << e.what();
    }
  }
  overwrite("NOTANIDX" + good.substr(8));
  EXPECT_THROW(load_index(path_), Error);
}

TEST_F(TempFile, MissingFileIsIo) {
  try {
    load_index(path_.string() + ".absent");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Manifest, JsonRoundTripAndChecksumPerCorpus) {
  auto ix = build_index({make_document(CorpusId::tac(), "a", {"x y"}), make_document(CorpusId::nlab(), "b", {"z"})},
                        {42});
  auto m = ix.index.manifest();
  EXPECT_EQ(m.build_timestamp, 42);
  EXPECT_EQ(m.corpora.size(), 2u);
  EXPECT_EQ(m.corpora.at("TAC").checksum.size(), 64u);
  EXPECT_NE(m.corpora.at("TAC").checksum, m.corpora.at("NLAB").checksum);
  EXPECT_EQ(manifest_from_json(manifest_to_json(m)), m);
}

}  // namespace
}  // namespace ctsearch::index
