#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ctsearch/corpus/document.hpp"

namespace ctsearch::corpus {

/// Turns a LaTeX math fragment into a short English phrase that can stand in
/// for the formula inside a sentence.
///
/// Rules, applied over a tokenized fragment:
///   - identifiers, numbers and Greek letters pass through ("\alpha" -> "alpha");
///   - operators map to fixed words ("\leq" -> "less than or equal to",
///     "\to" -> "to", "\times" -> "times", "," -> "comma", ...);
///   - an identifier followed by a parenthesized argument list reads as
///     "the expression f of <arguments>";
///   - "[x]" reads as "bracket x", "x_i" as "x sub i", "x^n" as "x super n",
///     "\frac{a}{b}" as "a over b";
///   - font commands (\mathcal, \mathbf, ...) are transparent.
/// If any construct is not covered, the whole fragment becomes
/// "the expression" followed by its identifiers, letters only.
///
/// The output is never empty and never contains '\\', '{', '}' or '$'.
std::string verbalize_math(const MathFragment& fragment);
std::string verbalize_math(std::string_view latex);

/// Locates $...$, $$...$$, \(...\) and \[...\] spans. Escaped dollars are
/// ignored; an unterminated opener is left as text.
std::vector<MathFragment> find_math_fragments(std::string_view text);

/// Replaces every math span in `text` by its verbalization.
std::string verbalize_inline_math(std::string_view text);

}  // namespace ctsearch::corpus
