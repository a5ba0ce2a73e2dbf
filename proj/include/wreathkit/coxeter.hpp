#pragma once

// Coxeter matrices on windowed H-sets, rank-2 orders through the geometric
// representation, the relators r_{g,h}, and the permutation model of
// Sym_0(Z) x| Z generated by the transposition 0<->1 and the shift.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wreathkit/errors.hpp"
#include "wreathkit/wreath.hpp"

namespace wreathkit {

/// A Coxeter matrix entry; std::nullopt stands for infinity.
using CoxEntry = std::optional<std::uint32_t>;
inline constexpr std::nullopt_t kInfinite = std::nullopt;

inline std::string entry_string(CoxEntry m) { return m ? std::to_string(*m) : "inf"; }

template <HSetAction Action>
class CoxeterMatrix {
 public:
  using Point = typename Action::Point;
  using Top = typename Action::Top;

  /// Vertices are action.window_points(); off-diagonal entries start at 2.
  /// `generators` are the elements of H whose invariance validate() checks.
  CoxeterMatrix(Action action, std::vector<Top> generators)
      : action_(std::move(action)), generators_(std::move(generators)), vertices_(action_.window_points()) {
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_.emplace(vertices_[i], i);
    entries_.assign(vertices_.size() * vertices_.size(), CoxEntry{2});
    for (std::size_t i = 0; i < vertices_.size(); ++i) entries_[i * vertices_.size() + i] = 1;
  }

  static CoxeterMatrix from_rule(Action action, std::vector<Top> generators,
                                 const std::function<CoxEntry(const Point&, const Point&)>& rule) {
    CoxeterMatrix m(std::move(action), std::move(generators));
    for (const auto& s : m.vertices_)
      for (const auto& t : m.vertices_) m.set(s, t, rule(s, t));
    return m;
  }

  bool contains(const Point& v) const { return index_.contains(v); }

  CoxEntry at(const Point& s, const Point& t) const { return entries_[slot(s, t)]; }
  void set(const Point& s, const Point& t, CoxEntry m) { entries_[slot(s, t)] = m; }
  void set_pair(const Point& s, const Point& t, CoxEntry m) {
    set(s, t, m);
    set(t, s, m);
  }

  const Action& action() const { return action_; }
  const std::vector<Top>& generators() const { return generators_; }
  const std::vector<Point>& vertices() const { return vertices_; }

 private:
  std::size_t slot(const Point& s, const Point& t) const {
    const auto i = index_.find(s), j = index_.find(t);
    if (i == index_.end() || j == index_.end()) throw WindowEscape("vertex outside the Coxeter window");
    return i->second * vertices_.size() + j->second;
  }

  Action action_;
  std::vector<Top> generators_;
  std::vector<Point> vertices_;
  std::map<Point, std::size_t> index_;
  std::vector<CoxEntry> entries_;
};

struct CoxeterReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks symmetry, unit diagonal, off-diagonal entries >= 2 and
/// mu(gs, gt) = mu(s, t) for every generator g whenever gs, gt stay in the window.
template <HSetAction Action>
CoxeterReport validate(const CoxeterMatrix<Action>& m) {
  CoxeterReport r;
  const auto& a = m.action();
  auto name = [&](const auto& s, const auto& t) {
    return "mu(" + a.point_string(s) + "," + a.point_string(t) + ")";
  };
  for (const auto& s : m.vertices())
    for (const auto& t : m.vertices()) {
      const CoxEntry e = m.at(s, t);
      if (s == t) {
        if (e != CoxEntry{1}) r.violations.push_back("diagonal " + name(s, t) + "=" + entry_string(e));
        continue;
      }
      if (e && *e < 2) r.violations.push_back("off-diagonal " + name(s, t) + "=" + entry_string(e));
      if (s < t && e != m.at(t, s))
        r.violations.push_back("asymmetric " + name(s, t) + "=" + entry_string(e) + " but " + name(t, s) + "=" +
                               entry_string(m.at(t, s)));
      for (const auto& g : m.generators()) {
        const auto gs = a.act(g, s), gt = a.act(g, t);
        if (!m.contains(gs) || !m.contains(gt)) continue;
        if (m.at(gs, gt) != e)
          r.violations.push_back("not invariant under " + a.top_string(g) + ": " + name(s, t) + "=" + entry_string(e) +
                                 " but " + name(gs, gt) + "=" + entry_string(m.at(gs, gt)));
      }
    }
  return r;
}

/// mu(i, j) = phi(|i - j|) on Z with H = Z acting by translation.
struct LineRule {
  std::function<CoxEntry(std::int64_t)> phi;

  CoxeterMatrix<IntegerLine> window(std::int64_t lo, std::int64_t hi) const {
    return CoxeterMatrix<IntegerLine>::from_rule(IntegerLine(lo, hi), {1, -1},
                                                 [&](std::int64_t i, std::int64_t j) { return phi(std::abs(i - j)); });
  }

  /// The rule with every entry mu(n, n + d) replaced by infinity.
  LineRule with_infinite(std::int64_t d) const {
    return {[phi = phi, d = std::abs(d)](std::int64_t x) { return x == d ? kInfinite : phi(x); }};
  }

  /// 3 for neighbours, 2 otherwise: the Coxeter system of Sym_0(Z).
  static LineRule neumann() {
    return {[](std::int64_t d) -> CoxEntry { return d == 0 ? 1u : d == 1 ? 3u : 2u; }};
  }
};

namespace detail {

// sigma_s sigma_t in the basis (e_s, e_t) for the Gram matrix [[2, c], [c, 2]].
template <class T>
Eigen::Matrix<T, 2, 2> rank2_product(T c) {
  Eigen::Matrix<T, 2, 2> s, t;
  s << -1, -c, 0, 1;
  t << 1, 0, -c, -1;
  return s * t;
}

inline constexpr std::uint32_t kOrderCap = 1u << 20;

}  // namespace detail

/// Order of sigma_s sigma_t in the rank-2 geometric representation with Gram
/// entry -2cos(pi/m); m = 2, 3 and infinity are handled over the integers.
inline CoxEntry dihedral_order(CoxEntry m) {
  if (m && *m < 2) throw InvalidCoxeterMatrix("dihedral order needs m >= 2");
  if (!m || *m <= 3) {
    const std::int64_t c = !m ? -2 : *m == 2 ? 0 : -1;
    using M = Eigen::Matrix<std::int64_t, 2, 2>;
    const M rho = detail::rank2_product<std::int64_t>(c), one = M::Identity();
    const M nil = rho - one;
    // rho = 1 + nil with nil^2 = 0 and nil != 0: rho^n = 1 + n nil is never 1.
    if (nil != M::Zero() && nil * nil == M::Zero()) return kInfinite;
    M p = rho;
    for (std::uint32_t k = 1; k <= 6; ++k, p = p * rho)
      if (p == one) return k;
    throw InvalidCoxeterMatrix("integral rank-2 product of unexpected order");
  }
  const double c = -2.0 * std::cos(std::numbers::pi / *m);
  const Eigen::Matrix2d rho = detail::rank2_product<double>(c);
  constexpr double tol = 1e-9;
  auto is_one = [&](const Eigen::Matrix2d& x) { return (x - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < tol; };
  if (rho.trace() >= 2 - tol && !is_one(rho)) return kInfinite;
  Eigen::Matrix2d p = rho;
  for (std::uint32_t k = 1; k <= detail::kOrderCap; ++k, p = p * rho)
    if (is_one(p)) return k;
  throw OutOfRange("rank-2 order above " + std::to_string(detail::kOrderCap));
}

/// Normal form w_{v_1} ... w_{v_k} h in W(V, mu) x| H.
template <class Point, class Top>
struct WreathedCoxElement {
  std::vector<Point> word;
  Top top;
  friend bool operator==(const WreathedCoxElement&, const WreathedCoxElement&) = default;
};

/// A letter of a word in the vertex generators w_v and elements of H.
template <class Point, class Top>
struct CoxLetter {
  bool is_vertex = false;
  Point vertex{};
  Top top{};

  static CoxLetter vertex_letter(Point v) { return {true, v, Top{}}; }
  static CoxLetter top_letter(Top h) { return {false, Point{}, h}; }
  friend bool operator==(const CoxLetter&, const CoxLetter&) = default;
};

template <HSetAction Action>
using CoxWord = std::vector<CoxLetter<typename Action::Point, typename Action::Top>>;

/// Merges adjacent letters from H and drops the trivial ones.
template <HSetAction Action>
CoxWord<Action> simplify(const Action& a, const CoxWord<Action>& word) {
  CoxWord<Action> out;
  for (const auto& l : word) {
    if (!l.is_vertex && !out.empty() && !out.back().is_vertex) {
      out.back().top = a.compose(out.back().top, l.top);
      if (a.is_identity(out.back().top)) out.pop_back();
    } else if (l.is_vertex || !a.is_identity(l.top)) {
      out.push_back(l);
    }
  }
  return out;
}

/// Moves every letter of H to the right using h w_v h^-1 = w_{hv}.
template <HSetAction Action>
WreathedCoxElement<typename Action::Point, typename Action::Top> normalize(const Action& a, const CoxWord<Action>& word) {
  WreathedCoxElement<typename Action::Point, typename Action::Top> e{{}, a.identity()};
  for (const auto& l : word) {
    if (l.is_vertex)
      e.word.push_back(a.act(e.top, l.vertex));
    else
      e.top = a.compose(e.top, l.top);
  }
  return e;
}

/// Cancels adjacent equal vertex letters (each w_v is an involution).
template <class Point, class Top>
WreathedCoxElement<Point, Top> reduce(WreathedCoxElement<Point, Top> e) {
  std::vector<Point> out;
  for (const auto& v : e.word) {
    if (!out.empty() && out.back() == v)
      out.pop_back();
    else
      out.push_back(v);
  }
  e.word = std::move(out);
  return e;
}

template <HSetAction Action>
std::string render(const Action& a, const CoxWord<Action>& word) {
  std::string out;
  for (const auto& l : word) {
    if (!out.empty()) out += ' ';
    if (!l.is_vertex)
      out += a.top_string(l.top);
    else if (l.vertex == a.basepoint())
      out += 'w';
    else
      out += "w_" + a.point_string(l.vertex);
  }
  return out;
}

/// (g w_{v_i} g^-1 h w_{v_j} h^-1)^{mu(g v_i, h v_j)}, simplified.
template <HSetAction Action>
CoxWord<Action> relator_word(const CoxeterMatrix<Action>& m, const typename Action::Top& g,
                             const typename Action::Top& h, const typename Action::Point& vi,
                             const typename Action::Point& vj) {
  using L = CoxLetter<typename Action::Point, typename Action::Top>;
  const auto& a = m.action();
  const CoxEntry mu = m.at(a.act(g, vi), a.act(h, vj));
  if (!mu) throw InfiniteEntry("no relator: mu(" + a.point_string(a.act(g, vi)) + "," + a.point_string(a.act(h, vj)) + ") is infinite");
  const CoxWord<Action> base{L::top_letter(g),           L::vertex_letter(vi), L::top_letter(a.inverse(g)),
                             L::top_letter(h),           L::vertex_letter(vj), L::top_letter(a.inverse(h))};
  CoxWord<Action> word;
  for (std::uint32_t k = 0; k < *mu; ++k) word.insert(word.end(), base.begin(), base.end());
  return simplify(a, word);
}

template <HSetAction Action>
WreathedCoxElement<typename Action::Point, typename Action::Top> relator(const CoxeterMatrix<Action>& m,
                                                                         const typename Action::Top& g,
                                                                         const typename Action::Top& h,
                                                                         const typename Action::Point& vi,
                                                                         const typename Action::Point& vj) {
  return normalize(m.action(), relator_word(m, g, h, vi, vj));
}

/// r_n = (w t^n w t^-n)^{mu(0, n)} for a matrix on the integer line.
inline CoxWord<IntegerLine> line_relator(const CoxeterMatrix<IntegerLine>& m, std::int64_t n) {
  return relator_word(m, std::int64_t{0}, n, std::int64_t{0}, std::int64_t{0});
}

/// True iff w t^p w t^-p has infinite order once every mu(n, n + p) is set to
/// infinity; the window is extended to contain 0 and p.
inline bool independence_probe(const LineRule& rule, std::int64_t p) {
  if (p == 0) throw OutOfRange("probe index must be nonzero");
  if (!rule.phi(std::abs(p))) throw InfiniteEntry("mu(0," + std::to_string(p) + ") is already infinite");
  const auto primed = rule.with_infinite(p).window(std::min<std::int64_t>(0, p), std::max<std::int64_t>(0, p));
  if (const auto r = validate(primed); !r.ok()) throw InvalidCoxeterMatrix(r.violations.front());
  return !dihedral_order(primed.at(0, p)).has_value();
}

/// Runs independence_probe over `ps` on up to `jobs` threads; results follow the order of `ps`.
inline std::vector<bool> independence_probes(const LineRule& rule, const std::vector<std::int64_t>& ps,
                                             unsigned jobs = 1) {
  std::vector<bool> out(ps.size());
  jobs = std::max(1u, jobs);
  for (std::size_t start = 0; start < ps.size(); start += jobs) {
    std::vector<std::future<bool>> batch;
    for (std::size_t i = start; i < std::min(ps.size(), start + jobs); ++i)
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                 [&, i] { return independence_probe(rule, ps[i]); }));
    for (std::size_t i = 0; i < batch.size(); ++i) out[start + i] = batch[i].get();
  }
  return out;
}

/// Orbit counts of H on the vertices and on the finite-entry pairs of one window.
struct PairOrbitCensus {
  std::size_t vertex_orbits = 0;
  std::size_t finite_pair_orbits = 0;
};

/// Orbits are the components of the graph joining x to g x for the matrix
/// generators whenever both lie in the window, so they are exact when every
/// orbit is contained in the window and lower bounds otherwise.
template <HSetAction Action>
PairOrbitCensus pair_census(const CoxeterMatrix<Action>& m) {
  const auto& vs = m.vertices();
  const std::size_t n = vs.size();
  std::vector<std::size_t> parent(n * n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<typename Action::Point, std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) idx.emplace(vs[i], i);
  auto image = [&](const auto& g, std::size_t i) -> std::optional<std::size_t> {
    const auto it = idx.find(m.action().act(g, vs[i]));
    return it == idx.end() ? std::nullopt : std::optional<std::size_t>(it->second);
  };
  for (const auto& g : m.generators())
    for (std::size_t i = 0; i < n; ++i) {
      const auto gi = image(g, i);
      if (!gi) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (const auto gj = image(g, j)) parent[find(i * n + j)] = find(*gi * n + *gj);
    }
  PairOrbitCensus c;
  std::set<std::size_t> pairs, verts;
  for (std::size_t i = 0; i < n; ++i) {
    verts.insert(find(i * n + i));
    for (std::size_t j = 0; j < n; ++j)
      if (m.at(vs[i], vs[j])) pairs.insert(find(i * n + j));
  }
  c.vertex_orbits = verts.size();
  c.finite_pair_orbits = pairs.size();
  return c;
}

/// Census on the window of level k = 0, 1, 2, ...
using PairOrbitOracle = std::function<PairOrbitCensus(std::size_t)>;

/// Windows [-step * 2^k, step * 2^k] of a line rule.
inline PairOrbitOracle line_pair_oracle(LineRule rule, std::int64_t step = 4) {
  return [rule = std::move(rule), step](std::size_t k) {
    const auto r = step << k;
    return pair_census(rule.window(-r, r));
  };
}

/// Side conditions that come with the instance rather than being computed.
struct PresentationFlags {
  bool stabilizers_compactly_generated = true;
  bool h_compactly_presented = true;
};

struct PresentationReport {
  bool compactly_presented = false;
  std::vector<PairOrbitCensus> history;
};

/// Queries the oracle on `levels` growing windows. The census must stay
/// constant over the last `stable_levels` of them, otherwise OracleUnstable.
inline PresentationReport compact_presented(const PairOrbitOracle& oracle, PresentationFlags flags = {},
                                            std::size_t levels = 6, std::size_t stable_levels = 3) {
  if (stable_levels < 2 || levels < stable_levels) throw OutOfRange("need levels >= stable_levels >= 2");
  PresentationReport r;
  for (std::size_t k = 0; k < levels; ++k) r.history.push_back(oracle(k));
  const auto& last = r.history.back();
  for (std::size_t k = levels - stable_levels; k < levels; ++k)
    if (r.history[k].finite_pair_orbits != last.finite_pair_orbits || r.history[k].vertex_orbits != last.vertex_orbits)
      throw OracleUnstable("pair orbit count still changing: " + std::to_string(r.history[k].finite_pair_orbits) +
                           " -> " + std::to_string(last.finite_pair_orbits));
  r.compactly_presented = last.vertex_orbits > 0 && flags.stabilizers_compactly_generated && flags.h_compactly_presented;
  return r;
}

/// An element sigma t^shift of Sym_0(Z) x| Z, acting by x -> sigma(x + shift);
/// sigma is stored on the window [lo, hi] and fixes everything outside it.
struct NeumannPermutation {
  std::int64_t lo = 0;
  std::vector<std::int64_t> images;
  std::int64_t shift = 0;

  bool is_identity() const {
    if (shift != 0) return false;
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i] != lo + static_cast<std::int64_t>(i)) return false;
    return true;
  }
  friend bool operator==(const NeumannPermutation&, const NeumannPermutation&) = default;
};

/// Evaluates w_{v_1} ... w_{v_k} t^h with w_v the transposition v <-> v+1.
inline NeumannPermutation neumann_model(const WreathedCoxElement<std::int64_t, std::int64_t>& e,
                                        const IntegerLine& window) {
  NeumannPermutation p{window.lo(), {}, e.top};
  for (auto x = window.lo(); x <= window.hi(); ++x) p.images.push_back(x);
  // Rightmost letter acts first: apply transpositions to positions in reverse.
  for (auto it = e.word.rbegin(); it != e.word.rend(); ++it) {
    const auto v = *it;
    if (!window.in_window(v) || !window.in_window(v + 1))
      throw WindowEscape("transposition " + std::to_string(v) + "<->" + std::to_string(v + 1) + " leaves the window");
    for (auto& y : p.images) {
      if (y == v)
        y = v + 1;
      else if (y == v + 1)
        y = v;
    }
  }
  return p;
}

/// Order of an element in the permutation model, or nullopt for a nonzero shift.
inline std::optional<std::uint64_t> neumann_order(const WreathedCoxElement<std::int64_t, std::int64_t>& e,
                                                  const IntegerLine& window) {
  if (e.top != 0) return std::nullopt;
  const auto p = neumann_model(e, window);
  std::uint64_t order = 1;
  std::vector<bool> seen(p.images.size());
  for (std::size_t i = 0; i < p.images.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p.images[j] - p.lo)) {
      seen[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

}  // namespace wreathkit
