#pragma once

// The polycompact radical W(G) and the bounded radical B(G) of a semirestricted
// wreath product G = B wr^A_X H with B finite, predicted from declared data on
// H, and a conjugacy-closure search that certifies bounded or escaping classes.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wreathkit/errors.hpp"
#include "wreathkit/groups.hpp"
#include "wreathkit/wreath.hpp"

namespace wreathkit {

/// A subset of H given by a membership predicate. `trivial` declares the set to be {1}.
template <class Top>
struct TopSet {
  std::string name;
  std::function<bool(const Top&)> contains;
  bool trivial = false;
};

template <class Top>
TopSet<Top> intersect(const TopSet<Top>& a, const TopSet<Top>& b) {
  return {a.name + " & " + b.name, [a, b](const Top& h) { return a.contains(h) && b.contains(h); },
          a.trivial || b.trivial};
}

/// Declared subgroups of H. kernel = N, the kernel of the action on X;
/// finite_normal = N', the preimage of the union of finite normal subgroups of
/// H/N; finitary = N'', elements acting as finitely supported permutations;
/// w and b are W(H) and B(H).
template <class Top>
struct TopOracles {
  std::optional<TopSet<Top>> kernel, finite_normal, finitary, w, b;
};

enum class RadicalKind { W, B };

/// Xi = N for non-compact B and N' & N'' for compact B. Lamp groups here are
/// finite, so the second form is the one produced.
enum class XiKind { N, FiniteNormalAndFinitary };

template <class Top>
struct RadicalDescriptor {
  RadicalKind kind = RadicalKind::W;
  Subgroup core_part;  // allowed values on infinite orbits
  Subgroup lamp_part;  // allowed values on finite orbits
  TopSet<Top> top_part;
  XiKind xi_kind = XiKind::FiniteNormalAndFinitary;
  bool finite_orbits = false;

  bool trivial() const {
    return core_part.is_trivial() && (!finite_orbits || lamp_part.is_trivial()) && top_part.trivial;
  }

  std::string describe() const {
    std::string s = kind == RadicalKind::W ? "W(G) = " : "B(G) = ";
    s += "Core^{X_inf} (order " + std::to_string(core_part.order()) + ")";
    if (finite_orbits) s += " x L^{X_fin} (order " + std::to_string(lamp_part.order()) + ")";
    return s + " x| (" + top_part.name + ")";
  }
};

template <HSetAction Action>
struct RadicalInstance {
  using Top = typename Action::Top;
  Wreath<Action> wreath;
  Subgroup a;
  TopOracles<Top> oracles;

  bool has_finite_orbits() const {
    const auto& act = wreath.action();
    if constexpr (requires { act.window_points(); }) {
      for (const auto& x : act.window_points())
        if (act.orbit_is_finite(x)) return true;
      return false;
    } else {
      return act.orbit_is_finite(act.basepoint());
    }
  }
};

namespace detail {
template <class Top>
const TopSet<Top>& need(const std::optional<TopSet<Top>>& s, const char* what) {
  if (!s) throw MissingOracle(std::string("instance declares no oracle for ") + what);
  return *s;
}
}  // namespace detail

/// The radical of the requested kind, following the closed formulas. MissingOracle
/// when a subgroup of H that the formula needs was not declared.
template <HSetAction Action>
RadicalDescriptor<typename Action::Top> predict(const RadicalInstance<Action>& in, RadicalKind kind) {
  using Top = typename Action::Top;
  const auto& b = in.wreath.lamp_group();
  const auto& top_radical = detail::need(kind == RadicalKind::W ? in.oracles.w : in.oracles.b,
                                         kind == RadicalKind::W ? "W(H)" : "B(H)");
  const bool finite_orbits = in.has_finite_orbits();
  const auto whole = Subgroup::whole(b);  // W(B) = B(B) = B for finite B
  if (in.a.order() == b.order())
    return {kind, whole, whole, top_radical, XiKind::FiniteNormalAndFinitary, finite_orbits};
  const auto xi = intersect(detail::need(in.oracles.finite_normal, "N'"), detail::need(in.oracles.finitary, "N''"));
  return RadicalDescriptor<Top>{kind, core(b, in.a), whole, intersect(top_radical, xi),
                                XiKind::FiniteNormalAndFinitary, finite_orbits};
}

template <HSetAction Action>
RadicalDescriptor<typename Action::Top> predict_W(const RadicalInstance<Action>& in) {
  return predict(in, RadicalKind::W);
}

template <HSetAction Action>
RadicalDescriptor<typename Action::Top> predict_B(const RadicalInstance<Action>& in) {
  return predict(in, RadicalKind::B);
}

/// WindowEscape if a lamp point is outside the window.
template <HSetAction Action>
bool membership(const Wreath<Action>& w, const typename Wreath<Action>::Element& g,
                const RadicalDescriptor<typename Action::Top>& d) {
  const auto& act = w.action();
  for (const auto& [x, v] : g.lamp) {
    if (!act.in_window(x)) throw WindowEscape("lamp point outside the window");
    if (!(act.orbit_is_finite(x) ? d.lamp_part : d.core_part).contains(v)) return false;
  }
  return d.top_part.contains(g.top);
}

/// The three conditions that together are equivalent to W(G) = 1.
struct TrivialityConditions {
  bool top_trivial = false;          // W(H) & Xi = 1
  bool finite_orbits_ok = false;     // X_fin nonempty implies W(B) = 1
  bool core_trivial = false;         // Core_B(A) = 1
  bool all() const { return top_trivial && finite_orbits_ok && core_trivial; }
};

template <HSetAction Action>
TrivialityConditions triviality_conditions(const RadicalInstance<Action>& in) {
  const auto& b = in.wreath.lamp_group();
  TrivialityConditions c;
  c.core_trivial = core(b, in.a).is_trivial();
  c.finite_orbits_ok = !in.has_finite_orbits() || b.order() == 1;
  const auto xi = intersect(detail::need(in.oracles.finite_normal, "N'"), detail::need(in.oracles.finitary, "N''"));
  c.top_trivial = intersect(detail::need(in.oracles.w, "W(H)"), xi).trivial;
  return c;
}

enum class ClosureKind { Bounded, Escaped, BudgetExhausted };

inline const char* to_string(ClosureKind k) {
  switch (k) {
    case ClosureKind::Bounded: return "bounded";
    case ClosureKind::Escaped: return "escaped";
    default: return "budget-exhausted";
  }
}

/// Bounded: `orbit` is the full conjugacy class under the generators, finite.
/// Escaped: g' = c_m ... c_1 g c_1^-1 ... c_m^-1 for the conjugators in `path`;
/// each probe p_i has points[i] in Supp_A(p_i g' p_i^-1), the points are
/// distinct, and `mechanism` names why the family is unbounded: "infinite-orbit"
/// (points[0] has an infinite H-orbit) or "moved-points" (the top of g' lies
/// outside N'' and so moves infinitely many points).
template <class Element, class Point>
struct ClosureVerdict {
  ClosureKind kind = ClosureKind::BudgetExhausted;
  std::vector<Element> orbit;
  std::vector<Element> path;
  std::vector<Element> probes;
  std::vector<Point> points;
  std::string mechanism;
  std::size_t explored = 0;
};

/// delta_x(b) for every window point x and b != 1, then the given top elements.
template <HSetAction Action>
std::vector<typename Wreath<Action>::Element> standard_generators(const Wreath<Action>& w,
                                                                  const std::vector<typename Action::Top>& tops) {
  std::vector<typename Wreath<Action>::Element> gens;
  for (const auto& x : w.action().window_points())
    for (ElementId b = 1; b < w.lamp_group().order(); ++b) gens.push_back(w.delta(x, b));
  for (const auto& t : tops) gens.push_back(w.top_element(t));
  return gens;
}

namespace detail {

template <HSetAction Action, class Verdict>
bool try_escape(const RadicalInstance<Action>& in, const typename Wreath<Action>::Element& e,
                const std::vector<typename Wreath<Action>::Element>& gens, Verdict& v) {
  const auto& w = in.wreath;
  const auto& act = w.action();
  const auto& b = w.lamp_group();
  const Subgroup core_a = core(b, in.a);
  auto has = [&](const auto& elem, const auto& x) {
    for (const auto& y : w.supp_a(elem, in.a))
      if (y == x) return true;
    return false;
  };
  // a lamp value outside the core on an infinite orbit
  for (const auto& [x, val] : e.lamp) {
    if (act.orbit_is_finite(x) || core_a.contains(val)) continue;
    std::optional<typename Wreath<Action>::Element> probe;
    if (in.a.contains(val)) {
      for (ElementId c = 1; c < b.order() && !probe; ++c)
        if (has(w.conjugate(w.delta(x, c), e), x)) probe = w.delta(x, c);
      if (!probe) continue;
      v.path.push_back(*probe);
    }
    const auto g2 = probe ? w.conjugate(*probe, e) : e;
    v.mechanism = "infinite-orbit";
    v.probes = {w.identity()};
    v.points = {x};
    for (const auto& t : gens) {
      if (!t.is_pure_top() || act.act(t.top, x) == x) continue;
      auto p = t;
      for (int i = 0; i < 4; ++i) {
        try {
          const auto y = act.act(p.top, x);
          if (std::find(v.points.begin(), v.points.end(), y) != v.points.end() || !has(w.conjugate(p, g2), y)) break;
          v.probes.push_back(p);
          v.points.push_back(y);
          p = w.compose(t, p);
        } catch (const WindowEscape&) {
          break;
        }
      }
      break;
    }
    return true;
  }
  // a top element outside N''
  if constexpr (requires { act.window_points(); }) {
    if (in.oracles.finitary && !in.oracles.finitary->contains(e.top)) {
      for (const auto& x : act.window_points()) {
        const auto hx = act.act(e.top, x);
        if (hx == x || !act.in_window(hx)) continue;
        for (ElementId c = 1; c < b.order(); ++c) {
          const auto p = w.delta(x, c);
          if (has(w.conjugate(p, e), hx) && std::find(v.points.begin(), v.points.end(), hx) == v.points.end()) {
            v.probes.push_back(p);
            v.points.push_back(hx);
            break;
          }
        }
        if (v.points.size() >= 4) break;
      }
      if (!v.points.empty()) {
        v.mechanism = "moved-points";
        return true;
      }
    }
  }
  return false;
}

}  // namespace detail

/// Explores the conjugacy class of g under conjugation by gens and their
/// inverses. A certificate is only issued when it is exact: Bounded needs a
/// closed finite class whose tops fix everything outside the window (so that
/// the window generators account for all of B^X); Escaped needs one of the two
/// unboundedness mechanisms above.
template <HSetAction Action>
ClosureVerdict<typename Wreath<Action>::Element, typename Action::Point> conj_closure(
    const RadicalInstance<Action>& in, const typename Wreath<Action>::Element& g,
    const std::vector<typename Wreath<Action>::Element>& gens, std::size_t budget = 100000) {
  using Element = typename Wreath<Action>::Element;
  const auto& w = in.wreath;
  ClosureVerdict<Element, typename Action::Point> v;
  std::vector<Element> inverses;
  for (const auto& s : gens) inverses.push_back(w.inverse(s));

  std::map<std::string, std::size_t> seen;
  std::vector<Element> elems{g};
  std::vector<std::pair<std::size_t, Element>> parent{{0, w.identity()}};
  seen.emplace(w.canonical(g), 0);
  bool incomplete = false;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    v.explored = i + 1;
    decltype(v) attempt;
    if (detail::try_escape(in, elems[i], gens, attempt)) {
      std::vector<Element> path;
      for (std::size_t j = i; j != 0; j = parent[j].first) path.push_back(parent[j].second);
      std::reverse(path.begin(), path.end());
      for (auto& p : attempt.path) path.push_back(p);
      attempt.path = std::move(path);
      attempt.kind = ClosureKind::Escaped;
      attempt.explored = v.explored;
      return attempt;
    }
    for (std::size_t s = 0; s < gens.size(); ++s)
      for (const Element* by : {&gens[s], static_cast<const Element*>(&inverses[s])}) {
        Element c;
        try {
          c = w.conjugate(*by, elems[i]);
        } catch (const WindowEscape&) {
          incomplete = true;
          continue;
        }
        if (seen.emplace(w.canonical(c), elems.size()).second) {
          if (elems.size() >= budget) return v;
          elems.push_back(c);
          parent.emplace_back(i, *by);
        }
      }
  }
  if (incomplete) return v;
  for (const auto& e : elems)
    if (!w.action().fixes_outside_window(e.top)) return v;
  v.kind = ClosureKind::Bounded;
  v.orbit = std::move(elems);
  return v;
}

/// Replays an Escaped verdict: the path, each probe, and the certificate's premise.
template <HSetAction Action>
bool verify_escape(const RadicalInstance<Action>& in, const typename Wreath<Action>::Element& g,
                   const ClosureVerdict<typename Wreath<Action>::Element, typename Action::Point>& v) {
  if (v.kind != ClosureKind::Escaped || v.probes.size() != v.points.size() || v.points.empty()) return false;
  const auto& w = in.wreath;
  auto e = g;
  for (const auto& c : v.path) e = w.conjugate(c, e);
  for (std::size_t i = 0; i < v.points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (v.points[j] == v.points[i]) return false;
    const auto s = w.supp_a(w.conjugate(v.probes[i], e), in.a);
    if (std::find(s.begin(), s.end(), v.points[i]) == s.end()) return false;
  }
  if (v.mechanism == "infinite-orbit") return !w.action().orbit_is_finite(v.points[0]);
  if (v.mechanism == "moved-points") return in.oracles.finitary && !in.oracles.finitary->contains(e.top);
  return false;
}

}  // namespace wreathkit
