#include "ctsearch/termeval/textrank.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "ctsearch/error.hpp"

namespace ctsearch::termeval {

void validate(const TextRankParams& p) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, "textrank: " + what); };
  if (p.window < 2) fail("window must be at least 2");
  if (!(p.damping > 0.0 && p.damping < 1.0)) fail("damping must be in (0, 1)");
  if (p.iterations < 1) fail("iteration cap must be positive");
  if (!(p.tolerance > 0.0)) fail("tolerance must be positive");
  if (!(p.top_fraction > 0.0 && p.top_fraction <= 1.0)) fail("top fraction must be in (0, 1]");
  if (p.content_upos.empty()) fail("no content tags");
}

std::size_t CooccurrenceGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& n : adjacency) twice += n.size();
  return twice / 2;
}

namespace {

bool is_content(const TermToken& t, const TextRankParams& p) {
  return std::find(p.content_upos.begin(), p.content_upos.end(), t.upos) != p.content_upos.end() &&
         !t.lemma.empty();
}

}  // namespace

CooccurrenceGraph build_cooccurrence_graph(const std::vector<TermSentence>& sentences,
                                           const TextRankParams& params) {
  validate(params);
  std::set<std::string> keys;
  for (const auto& s : sentences) {
    for (const auto& t : s) {
      if (is_content(t, params)) keys.insert(t.lemma);
    }
  }
  CooccurrenceGraph g;
  g.vertices.assign(keys.begin(), keys.end());
  std::map<std::string_view, std::uint32_t> id;
  for (std::uint32_t i = 0; i < g.vertices.size(); ++i) id[g.vertices[i]] = i;

  std::vector<std::set<std::uint32_t>> adj(g.vertices.size());
  const auto w = static_cast<std::size_t>(params.window);
  for (const auto& s : sentences) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!is_content(s[i], params)) continue;
      for (std::size_t j = i + 1; j < s.size() && j - i < w; ++j) {
        if (!is_content(s[j], params)) continue;
        auto a = id[s[i].lemma];
        auto b = id[s[j].lemma];
        if (a == b) continue;
        adj[a].insert(b);
        adj[b].insert(a);
      }
    }
  }
  g.adjacency.reserve(adj.size());
  for (auto& n : adj) g.adjacency.emplace_back(n.begin(), n.end());
  return g;
}

TextRankScores run_textrank(const CooccurrenceGraph& graph, const TextRankParams& params) {
  validate(params);
  const std::size_t n = graph.vertices.size();
  TextRankScores out;
  out.scores.assign(n, 1.0);
  if (n == 0) {
    out.converged = true;
    return out;
  }
  const double d = params.damping;
  std::vector<double> next(n);
  for (int it = 1; it <= params.iterations; ++it) {
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      double sum = 0.0;
      for (auto u : graph.adjacency[v]) sum += out.scores[u] / static_cast<double>(graph.adjacency[u].size());
      next[v] = (1.0 - d) + d * sum;
      delta = std::max(delta, std::abs(next[v] - out.scores[v]));
    }
    out.scores.swap(next);
    out.iterations = it;
    out.final_delta = delta;
    if (delta < params.tolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

std::vector<bool> select_top_vertices(const std::vector<double>& scores, const std::vector<std::string>& keys,
                                      double top_fraction) {
  const std::size_t n = scores.size();
  std::vector<bool> selected(n, false);
  if (n == 0) return selected;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return keys[a] < keys[b];
  });
  auto k = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * top_fraction - 1e-12));
  k = std::clamp<std::size_t>(k, 1, n);
  const double cutoff = scores[order[k - 1]];
  for (std::size_t v = 0; v < n; ++v) selected[v] = scores[v] >= cutoff;
  return selected;
}

std::vector<CandidateTerm> extract_textrank(const std::vector<TermSentence>& sentences,
                                            const TextRankParams& params) {
  CooccurrenceGraph graph = build_cooccurrence_graph(sentences, params);
  TextRankScores scores = run_textrank(graph, params);
  std::vector<bool> selected = select_top_vertices(scores.scores, graph.vertices, params.top_fraction);

  std::map<std::string_view, std::uint32_t> id;
  for (std::uint32_t i = 0; i < graph.vertices.size(); ++i) id[graph.vertices[i]] = i;

  std::map<std::string, CandidateTerm> phrases;
  for (const auto& s : sentences) {
    std::size_t i = 0;
    while (i < s.size()) {
      auto is_selected = [&](const TermToken& t) -> bool {
        if (!is_content(t, params)) return false;
        return selected[id.at(t.lemma)];
      };
      if (!is_selected(s[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      CandidateTerm c;
      while (j < s.size() && is_selected(s[j])) {
        if (j > i) {
          c.surface += ' ';
          c.lemma_form += ' ';
        }
        c.surface += s[j].form;
        c.lemma_form += s[j].lemma;
        c.score += scores.scores[id.at(s[j].lemma)];
        ++j;
      }
      phrases.try_emplace(c.lemma_form, std::move(c));
      i = j;
    }
  }
  std::vector<CandidateTerm> out;
  out.reserve(phrases.size());
  for (auto& [_, c] : phrases) out.push_back(std::move(c));
  sort_candidates(out);
  return out;
}

}  // namespace ctsearch::termeval
