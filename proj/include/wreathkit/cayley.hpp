#pragma once

// Cayley-ball graphs and exact (rooted or unrooted) graph isomorphism by
// individualization-refinement backtracking.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wreathkit/errors.hpp"
#include "wreathkit/growth.hpp"

namespace wreathkit {

/// Simple undirected graph with a distinguished root.
struct BallGraph {
  std::uint32_t n = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // u < v, sorted, no repeats
  std::uint32_t root = 0;

  static BallGraph from_edges(std::uint32_t n, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                              std::uint32_t root = 0) {
    BallGraph g;
    g.n = n;
    g.root = root;
    if (n == 0 || root >= n) throw OutOfRange("graph root out of range");
    for (auto& [u, v] : edges) {
      if (u >= n || v >= n) throw OutOfRange("edge endpoint out of range");
      if (u > v) std::swap(u, v);
    }
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    return g;
  }

  std::vector<std::vector<std::uint32_t>> adjacency() const {
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (const auto& [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }

  /// "n m root" header, then one "u v" line per edge.
  std::string to_text() const {
    std::ostringstream out;
    out << n << ' ' << edges.size() << ' ' << root << '\n';
    for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
    return out.str();
  }

  static BallGraph from_text(const std::string& text) {
    std::istringstream in(text);
    std::uint32_t n = 0, root = 0;
    std::size_t m = 0;
    if (!(in >> n >> m >> root)) throw SchemaError("header", "expected 'n m root'", 1);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::size_t i = 0; i < m; ++i) {
      std::uint32_t u, v;
      if (!(in >> u >> v)) throw SchemaError("edge", "expected 'u v'", static_cast<int>(i + 2));
      edges.emplace_back(u, v);
    }
    return from_edges(n, std::move(edges), root);
  }
};

/// Ball of radius r in the Cayley graph for `gens` (assumed closed under
/// inverses); vertex 0 is the identity and vertices follow BFS order.
template <class E, class Compose, class Key>
BallGraph cayley_ball(const std::vector<E>& gens, const E& identity, Compose compose, Key key, unsigned radius,
                      const GrowthOptions& opt = {}) {
  const Ball<E> ball = enumerate_ball(gens, identity, compose, key, radius, opt);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t i = 0; i < ball.size(); ++i)
    for (const E& s : gens) {
      auto it = ball.index.find(key(compose(ball.elements[i], s)));
      if (it != ball.index.end()) edges.emplace_back(i, it->second);
    }
  return BallGraph::from_edges(static_cast<std::uint32_t>(ball.size()), std::move(edges), 0);
}

/// True iff `map` is a bijection g1 -> g2 carrying edges onto edges (and the
/// root onto the root when rooted).
inline bool verify_isomorphism(const BallGraph& g1, const BallGraph& g2, const std::vector<std::uint32_t>& map,
                               bool rooted) {
  if (g1.n != g2.n || g1.edges.size() != g2.edges.size() || map.size() != g1.n) return false;
  std::vector<bool> hit(g2.n);
  for (auto v : map) {
    if (v >= g2.n || hit[v]) return false;
    hit[v] = true;
  }
  if (rooted && map[g1.root] != g2.root) return false;
  for (const auto& [u, v] : g1.edges) {
    auto e = std::minmax(map[u], map[v]);
    if (!std::binary_search(g2.edges.begin(), g2.edges.end(), std::pair<std::uint32_t, std::uint32_t>(e)))
      return false;
  }
  return true;
}

struct IsoResult {
  bool isomorphic = false;
  std::vector<std::uint32_t> witness;  // g1 vertex -> g2 vertex
  std::size_t nodes = 0;               // search nodes visited
};

namespace detail {

class PairSearch {
 public:
  PairSearch(const BallGraph& g1, const BallGraph& g2, bool rooted, std::size_t node_budget)
      : g1_(g1), g2_(g2), a1_(g1.adjacency()), a2_(g2.adjacency()), rooted_(rooted), budget_(node_budget) {}

  IsoResult run() {
    IsoResult res;
    if (g1_.n != g2_.n || g1_.edges.size() != g2_.edges.size()) return res;
    std::vector<std::uint32_t> c1(g1_.n, 0), c2(g2_.n, 0);
    if (rooted_) {
      c1[g1_.root] = 1;
      c2[g2_.root] = 1;
    }
    if (refine(c1, c2) && search(c1, c2, res.witness)) res.isomorphic = true;
    res.nodes = nodes_;
    return res;
  }

 private:
  using Sig = std::vector<std::uint32_t>;

  // Joint colour refinement; colours are numbered by sorted signature so both
  // graphs share one palette. False if the colour histograms ever differ.
  bool refine(std::vector<std::uint32_t>& c1, std::vector<std::uint32_t>& c2) {
    std::size_t classes = count_classes(c1);
    for (;;) {
      std::vector<Sig> s1 = signatures(a1_, c1), s2 = signatures(a2_, c2);
      std::map<Sig, std::pair<std::size_t, std::size_t>> hist;
      for (const auto& s : s1) ++hist[s].first;
      for (const auto& s : s2) ++hist[s].second;
      std::map<Sig, std::uint32_t> id;
      for (const auto& [s, cnt] : hist) {
        if (cnt.first != cnt.second) return false;
        id.emplace(s, static_cast<std::uint32_t>(id.size()));
      }
      for (std::size_t v = 0; v < c1.size(); ++v) c1[v] = id[s1[v]];
      for (std::size_t v = 0; v < c2.size(); ++v) c2[v] = id[s2[v]];
      if (id.size() == classes) return true;
      classes = id.size();
    }
  }

  static std::vector<Sig> signatures(const std::vector<std::vector<std::uint32_t>>& adj,
                                     const std::vector<std::uint32_t>& c) {
    std::vector<Sig> out(adj.size());
    for (std::size_t v = 0; v < adj.size(); ++v) {
      Sig& s = out[v];
      s.reserve(adj[v].size() + 1);
      for (auto u : adj[v]) s.push_back(c[u]);
      std::sort(s.begin(), s.end());
      s.insert(s.begin(), c[v]);
    }
    return out;
  }

  static std::size_t count_classes(const std::vector<std::uint32_t>& c) {
    std::vector<std::uint32_t> s = c;
    std::sort(s.begin(), s.end());
    return static_cast<std::size_t>(std::unique(s.begin(), s.end()) - s.begin());
  }

  bool search(const std::vector<std::uint32_t>& c1, const std::vector<std::uint32_t>& c2,
              std::vector<std::uint32_t>& witness) {
    if (++nodes_ > budget_) throw SizeBudgetExceeded("isomorphism search exceeded its node budget");
    // first non-singleton colour class, in colour order
    std::vector<std::uint32_t> size(g1_.n + 1, 0);
    for (auto c : c1) ++size[c];
    std::uint32_t target = UINT32_MAX;
    for (std::uint32_t c = 0; c < size.size(); ++c)
      if (size[c] > 1) {
        target = c;
        break;
      }
    if (target == UINT32_MAX) {
      std::vector<std::uint32_t> by_colour(g2_.n);
      for (std::uint32_t v = 0; v < g2_.n; ++v) by_colour[c2[v]] = v;
      witness.assign(g1_.n, 0);
      for (std::uint32_t u = 0; u < g1_.n; ++u) witness[u] = by_colour[c1[u]];
      return verify_isomorphism(g1_, g2_, witness, rooted_);
    }
    const std::uint32_t fresh = static_cast<std::uint32_t>(g1_.n);
    std::uint32_t u = 0;
    while (c1[u] != target) ++u;
    for (std::uint32_t v = 0; v < g2_.n; ++v) {
      if (c2[v] != target) continue;
      std::vector<std::uint32_t> d1 = c1, d2 = c2;
      d1[u] = fresh;
      d2[v] = fresh;
      if (refine(d1, d2) && search(d1, d2, witness)) return true;
    }
    return false;
  }

  const BallGraph& g1_;
  const BallGraph& g2_;
  std::vector<std::vector<std::uint32_t>> a1_, a2_;
  bool rooted_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
};

}  // namespace detail

/// Exact isomorphism test. The witness, when present, has been checked edge by
/// edge. SizeBudgetExceeded if the search visits more than node_budget nodes.
inline IsoResult graph_isomorphic(const BallGraph& g1, const BallGraph& g2, bool rooted,
                                  std::size_t node_budget = 1'000'000) {
  return detail::PairSearch(g1, g2, rooted, node_budget).run();
}

}  // namespace wreathkit
