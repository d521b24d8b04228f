#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctsearch/termeval/candidate.hpp"

namespace ctsearch::termeval {

struct TextRankParams {
  int window = 3;            // tokens i, j co-occur when |i - j| < window
  double damping = 0.85;
  int iterations = 100;      // iteration cap
  double tolerance = 1e-6;   // stop when max |delta| < tolerance
  double top_fraction = 1.0 / 3.0;
  std::vector<std::string> content_upos{"NOUN", "ADJ"};
};

/// Throws Error(kInvalidArgument) when a parameter is out of range.
void validate(const TextRankParams& params);

/// Undirected, unweighted co-occurrence graph over content-word lemmas.
struct CooccurrenceGraph {
  std::vector<std::string> vertices;                 // sorted lemma keys
  std::vector<std::vector<std::uint32_t>> adjacency;  // sorted, no self loops

  std::size_t edge_count() const;
};

CooccurrenceGraph build_cooccurrence_graph(const std::vector<TermSentence>& sentences,
                                           const TextRankParams& params);

struct TextRankScores {
  std::vector<double> scores;  // parallel to graph.vertices
  int iterations = 0;
  double final_delta = 0.0;
  bool converged = false;
};

/// Synchronous iteration from all-ones:
///   S(v) = (1 - d) + d * sum_{u ~ v} S(u) / deg(u)
TextRankScores run_textrank(const CooccurrenceGraph& graph, const TextRankParams& params);

/// Vertices in the top fraction (rounded up), plus any tied with the last.
std::vector<bool> select_top_vertices(const std::vector<double>& scores, const std::vector<std::string>& keys,
                                      double top_fraction);

/// Runs the full extractor: graph, scores, selection, then merges adjacent
/// selected tokens into phrases scored by the sum of their vertex scores.
std::vector<CandidateTerm> extract_textrank(const std::vector<TermSentence>& sentences,
                                            const TextRankParams& params = {});

}  // namespace ctsearch::termeval
