#pragma once

#include <string>
#include <vector>

#include "ctsearch/termeval/candidate.hpp"
#include "ctsearch/termeval/pos_pattern.hpp"

namespace ctsearch::termeval {

struct MweOptions {
  std::vector<std::string> patterns{"(ADJ|NOUN)* NOUN", "PROPN+"};
};

/// Throws Error(kPatternSyntaxError) for any bad pattern.
std::vector<PosPattern> compile_patterns(const std::vector<std::string>& sources);

/// Maximal pattern spans of every sentence, deduplicated by lemma_form and
/// scored by occurrence count. Surface form is taken from the first
/// occurrence.
std::vector<CandidateTerm> extract_mwe(const std::vector<TermSentence>& sentences,
                                       const std::vector<PosPattern>& patterns);

std::vector<CandidateTerm> extract_mwe(const std::vector<TermSentence>& sentences, const MweOptions& options = {});

}  // namespace ctsearch::termeval
