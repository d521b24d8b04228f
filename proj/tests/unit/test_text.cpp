#include <gtest/gtest.h>

#include "ctsearch/text/sha256.hpp"
#include "ctsearch/text/unicode.hpp"

namespace ctsearch::text {
namespace {

TEST(Nfc, ComposesCombiningMarks) {
  EXPECT_EQ(nfc("e\xCC\x81"), "\xC3\xA9");  // e + U+0301 -> é
  EXPECT_EQ(nfc("plain ascii"), "plain ascii");
}

TEST(Nfc, ReplacesInvalidBytes) {
  const std::string out = nfc("a\xFF" "b");
  EXPECT_TRUE(is_valid_utf8(out));
  EXPECT_NE(out.find("\xEF\xBF\xBD"), std::string::npos);
}

TEST(Casefold, FoldsUnicode) {
  EXPECT_EQ(casefold("Double Category"), "double category");
  EXPECT_EQ(casefold("STRASSE"), "strasse");
  EXPECT_EQ(casefold("Straße"), "strasse");
  EXPECT_EQ(casefold("ΣΟΦΙΑ"), casefold("σοφια"));
}

TEST(Utf8, Validation) {
  EXPECT_TRUE(is_valid_utf8(""));
  EXPECT_TRUE(is_valid_utf8("λ-calculus"));
  EXPECT_FALSE(is_valid_utf8("\xC3"));
  EXPECT_FALSE(is_valid_utf8("\xED\xA0\x80"));  // surrogate
}

TEST(Utf8, CodepointOffsets) {
  const std::string s = "αβ cat";
  EXPECT_EQ(codepoint_length(s), 6u);
  EXPECT_EQ(codepoint_offset(s, 0), 0u);
  EXPECT_EQ(codepoint_offset(s, 2), 1u);
  EXPECT_EQ(codepoint_offset(s, 5), 3u);
  EXPECT_EQ(codepoint_offset(s, 100), 6u);
}

TEST(Strings, WhitespaceHelpers) {
  EXPECT_EQ(trim("  a b \n"), "a b");
  EXPECT_EQ(trim(""), "");
  EXPECT_EQ(split_whitespace(" a  b\tc "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(join({"a", "b"}, "+"), "a+b");
  EXPECT_EQ(normalize_whitespace("  SELECT\n  ?x \t WHERE "), "SELECT ?x WHERE");
  EXPECT_TRUE(starts_with_ci("List of things", "list of"));
  EXPECT_FALSE(starts_with_ci("Lis", "list"));
}

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Sha256, IncrementalMatchesOneShot) {
  Sha256 h;
  h.update("ab");
  h.update("c");
  EXPECT_EQ(h.hex_digest(), sha256_hex("abc"));
}

}  // namespace
}  // namespace ctsearch::text
