#include "hiertext/stopping_rule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hiertext {

NfaContext NfaContext::for_image(std::uint32_t region_count, int width,
                                 int height) {
  NfaContext ctx;
  ctx.n = std::max<std::uint32_t>(region_count, 1);
  const double diagonal = std::hypot(width, height);
  ctx.feature_ranges = {{{0.0, 255.0},
                         {0.0, 255.0},
                         {0.0, 255.0},
                         {0.0, diagonal},
                         {0.0, diagonal}}};
  return ctx;
}

double binomial_tail(std::uint32_t k, std::uint32_t n, double p) {
  if (k > n) throw std::invalid_argument("binomial_tail: k > n");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("binomial_tail: bad p");
  if (k == 0) return 1.0;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  const double lp = std::log(p);
  if (k == n) return std::exp(static_cast<double>(n) * lp);
  const double lq = std::log1p(-p);
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  double sum = 0.0;
  for (std::uint32_t i = k; i <= n; ++i) {
    const double lterm = lg_n1 - std::lgamma(static_cast<double>(i) + 1.0) -
                         std::lgamma(static_cast<double>(n - i) + 1.0) +
                         i * lp + (n - i) * lq;
    sum += std::exp(lterm);
  }
  return std::min(sum, 1.0);
}

double nfa_probability(const GroupStats& stats, const NfaContext& ctx) {
  double p = 1.0;
  for (int i = 0; i < 5; ++i) {
    const auto [lo, hi] = ctx.feature_ranges[i];
    const double ratio = (stats.fmax[i] - stats.fmin[i]) / (hi - lo);
    p *= std::clamp(ratio, 1e-4, 1.0);
  }
  return std::max(p, 1e-12);
}

double nfa(const GroupStats& stats, const NfaContext& ctx) {
  if (stats.count < 2)
    throw std::invalid_argument("nfa: singleton nodes have no NFA");
  return binomial_tail(stats.count, ctx.n, nfa_probability(stats, ctx));
}

std::vector<NodeEval> evaluate_nodes(const Dendrogram& d,
                                     std::span<const GroupStats> stats,
                                     std::span<const Region> regions,
                                     const BoostedModel& model,
                                     const NfaContext& ctx) {
  std::vector<NodeEval> evals(d.size());
  for (std::uint32_t i = d.leaf_count; i < d.size(); ++i) {
    const GroupStats& s = stats[i];
    if (s.oversize || s.count < 2 || s.count > kMaxClusterSize) continue;
    NodeEval& e = evals[i];
    e.eligible = true;
    const GroupFeatureVector h = group_features(s, regions);
    e.classifier_score = score(model, h);
    e.text = e.classifier_score > model.accept_threshold;
    e.nfa_value = nfa(s, ctx);
  }
  return evals;
}

std::vector<std::uint32_t> select_groups(const Dendrogram& d,
                                         std::span<const NodeEval> evals) {
  const double inf = std::numeric_limits<double>::infinity();
  const size_t n = d.size();
  std::vector<double> min_desc(n, inf), min_anc(n, inf);

  // children have smaller ids: ascending pass gathers descendant minima,
  // descending pass pushes ancestor minima down
  for (std::uint32_t i = 0; i < n; ++i) {
    if (d.is_leaf(i)) continue;
    for (const std::uint32_t c : {d.nodes[i].left, d.nodes[i].right}) {
      double m = min_desc[c];
      if (evals[c].text) m = std::min(m, evals[c].nfa_value);
      min_desc[i] = std::min(min_desc[i], m);
    }
  }
  for (std::uint32_t i = static_cast<std::uint32_t>(n); i-- > 0;) {
    if (d.is_leaf(i)) continue;
    double m = min_anc[i];
    if (evals[i].text) m = std::min(m, evals[i].nfa_value);
    min_anc[d.nodes[i].left] = m;
    min_anc[d.nodes[i].right] = m;
  }

  std::vector<std::uint32_t> selected;
  for (std::uint32_t i = 0; i < n; ++i) {
    const NodeEval& e = evals[i];
    if (!e.eligible || !e.text) continue;
    if (e.nfa_value < min_desc[i] && e.nfa_value <= min_anc[i])
      selected.push_back(i);
  }
  return selected;
}

}  // namespace hiertext
