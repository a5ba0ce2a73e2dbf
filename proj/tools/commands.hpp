#pragma once

// Subcommands of the wreathkit tool. Each writes its artifact to `out` and
// returns the exit status: 0 when every checked property holds, 1 otherwise.
// Module errors propagate as exceptions.

#include <functional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "acceptance_criteria.hpp"
#include "json.hpp"
#include "wreathkit/cayley.hpp"
#include "wreathkit/coxeter.hpp"
#include "wreathkit/growth.hpp"
#include "wreathkit/instance.hpp"
#include "wreathkit/radicals.hpp"
#include "wreathkit/walls.hpp"

namespace wreathkit::cli {

using ojson = nlohmann::ordered_json;

struct Options {
  unsigned radius = 4;
  std::size_t budget_bytes = 0;
  unsigned jobs = 1;
  bool unrooted = false;
  std::vector<std::int64_t> probes;
};

inline GrowthOptions growth_options(const Options& opt) { return {opt.jobs, opt.budget_bytes}; }

namespace detail {

template <class F>
auto with_group(const Instance& in, const std::string& command, F f) {
  return std::visit(
      [&](const auto& x) -> decltype(f(std::declval<const GrigorchukInstance&>())) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, GrigorchukInstance> || std::is_same_v<T, WreathInstance<IntegerLine>> ||
                      std::is_same_v<T, WreathInstance<FiniteAction>>)
          return f(x);
        else
          throw SchemaError("kind", command + " needs a wreath or grigorchuk instance, got " + kind_of(in));
      },
      in);
}

// Calls f(generators, identity, compose, key) for the group of the instance.
template <class F>
auto enumerate(const Instance& in, const std::string& command, F f) {
  return with_group(in, command, [&](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, GrigorchukInstance>) {
      return f(
          x.generators, grigorchuk::Word(),
          [](const grigorchuk::Word& u, const grigorchuk::Word& v) { return grigorchuk::multiply(u, v); },
          [](const grigorchuk::Word& u) { return grigorchuk::canonical_key(u); });
    } else {
      const auto& w = x.wreath;
      using E = typename std::decay_t<decltype(w)>::Element;
      return f(
          x.generators, w.identity(), [&w](const E& u, const E& v) { return w.compose(u, v); },
          [&w](const E& u) { return w.canonical(u); });
    }
  });
}

template <class T>
const T& expect_kind(const Instance& in, const std::string& command, const std::string& kind) {
  if (const T* p = std::get_if<T>(&in)) return *p;
  throw SchemaError("kind", command + " needs a " + kind + " instance, got " + kind_of(in));
}

inline std::string rational(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace detail

/// CSV table radius,ball,sphere.
inline int growth(const Instance& in, const Options& opt, std::ostream& out) {
  const auto table = detail::enumerate(in, "growth", [&](const auto& gens, const auto& id, auto compose, auto key) {
    return ball_sizes(gens, id, compose, key, opt.radius, growth_options(opt));
  });
  out << table.csv();
  return 0;
}

/// Rooted (or unrooted) isomorphism of the two Cayley balls; the witness maps
/// vertices of the first ball, in breadth-first order, to the second.
inline int iso(const Instance& a, const Instance& b, const Options& opt, std::ostream& out) {
  auto ball = [&](const Instance& in) {
    return detail::enumerate(in, "iso", [&](const auto& gens, const auto& id, auto compose, auto key) {
      return cayley_ball(gens, id, compose, key, opt.radius, growth_options(opt));
    });
  };
  const BallGraph g1 = ball(a), g2 = ball(b);
  const bool rooted = !opt.unrooted;
  const auto res = graph_isomorphic(g1, g2, rooted);
  const bool ok = res.isomorphic && verify_isomorphism(g1, g2, res.witness, rooted);
  ojson j;
  j["radius"] = opt.radius;
  j["rooted"] = rooted;
  j["vertices"] = {g1.n, g2.n};
  j["edges"] = {g1.edges.size(), g2.edges.size()};
  j["isomorphic"] = ok;
  j["witness"] = ok ? ojson(res.witness) : ojson::array();
  out << j.dump(2) << '\n';
  return ok ? 0 : 1;
}

/// Pseudo-metric axioms, exact l1 embedding, CND test and the cut bound. The
/// cut bound runs over every subset and is skipped above 20 points.
inline int walls_check(const Instance& in, const Options&, std::ostream& out) {
  const Walling& w = detail::expect_kind<WallsInstance>(in, "walls-check", "walls").walling;
  const std::size_t n = w.ground();
  const auto d = distance_matrix(w);
  bool metric = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      metric = metric && d[x][y] == d[y][x] && d[x][y] >= Rational{0} && (x != y || d[x][y] == Rational{0});
      for (std::size_t z = 0; z < n; ++z) metric = metric && d[x][y] <= d[x][z] + d[z][y];
    }
  const auto phi = l1_embed(w);
  bool l1 = true;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) l1 = l1 && l1_distance(phi[x], phi[y]) == d[x][y];
  const bool cnd = cnd_check(d, 1e-9);
  ojson j;
  j["ground"] = n;
  j["walls"] = w.walls().size();
  ojson rows = ojson::array();
  for (const auto& row : d) {
    ojson r = ojson::array();
    for (const auto& v : row) r.push_back(detail::rational(v));
    rows.push_back(r);
  }
  j["distances"] = rows;
  j["pseudo_metric"] = metric;
  j["l1_exact"] = l1;
  j["cnd"] = cnd;
  bool cut = true;
  if (n <= 20) {
    for (PointSet f = 1; f < point_bit(n); ++f) {
      Rational best{0};
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
          if ((f >> x & 1) && (f >> y & 1)) best = std::max(best, d[x][y]);
      if (cut_weight(w, f) < best) {
        cut = false;
        break;
      }
    }
    j["cut_bound"] = cut;
  } else {
    j["cut_bound"] = "skipped";
  }
  out << j.dump(2) << '\n';
  return metric && l1 && cnd && cut ? 0 : 1;
}

/// ell0 of the listed shifts and ell, ell' of the listed elements. Fails if
/// some element has ell(fh) < ell0(h).
inline int pw_lengths(const Instance& in, const Options&, std::ostream& out) {
  const auto& c = detail::expect_kind<CommInstance>(in, "pw-lengths", "commaction");
  const PWConstruction pw(c.action, c.b, c.a, c.window);
  ojson j;
  j["generators"] = ojson::array();
  for (auto h : c.shifts) j["generators"].push_back({{"generator", pw.wreath().to_string(pw.wreath().top_element(h))}, {"ell0", c.action.ell0(h)}});
  j["elements"] = ojson::array();
  bool ok = true;
  for (const auto& e : c.elements) {
    const auto ell = pw.length(e);
    ok = ok && ell >= c.action.ell0(e.top);
    j["elements"].push_back({{"element", pw.wreath().to_string(e)}, {"ell", ell}, {"ell_prime", second_length(e, c.ell1)}});
  }
  out << j.dump(2) << '\n';
  return ok ? 0 : 1;
}

namespace detail {

template <HSetAction Action>
int radical(const RadicalQuery<Action>& query, std::ostream& out) {
  const auto& in = query.instance;
  const auto& w = in.wreath;
  const auto pw = predict_W(in), pb = predict_B(in);
  ojson j;
  j["W"] = pw.describe();
  j["B"] = pb.describe();
  j["W_trivial"] = pw.trivial();
  if (in.oracles.finite_normal && in.oracles.finitary && in.oracles.w) {
    const auto t = triviality_conditions(in);
    j["triviality_conditions"] = {{"top_trivial", t.top_trivial},
                                  {"finite_orbits_ok", t.finite_orbits_ok},
                                  {"core_trivial", t.core_trivial}};
  }
  const auto gens = standard_generators(w, query.tops);
  auto strings = [&](const auto& xs, auto f) {
    ojson a = ojson::array();
    for (const auto& x : xs) a.push_back(f(x));
    return a;
  };
  auto elem = [&](const auto& e) { return w.to_string(e); };
  bool ok = true;
  j["verdicts"] = ojson::array();
  for (const auto& g : query.elements) {
    const auto v = conj_closure(in, g, gens);
    ojson r;
    r["element"] = w.to_string(g);
    r["verdict"] = to_string(v.kind);
    r["in_W"] = membership(w, g, pw);
    if (v.kind == ClosureKind::Bounded) {
      r["class_size"] = v.orbit.size();
    } else if (v.kind == ClosureKind::Escaped) {
      const bool replayed = verify_escape(in, g, v);
      ok = ok && replayed;
      r["mechanism"] = v.mechanism;
      r["path"] = strings(v.path, elem);
      r["probes"] = strings(v.probes, elem);
      r["points"] = strings(v.points, [&](const auto& x) { return w.action().point_string(x); });
      r["replayed"] = replayed;
    } else {
      r["explored"] = v.explored;
    }
    j["verdicts"].push_back(r);
  }
  out << j.dump(2) << '\n';
  return ok ? 0 : 1;
}

}  // namespace detail

/// Predicted W(G) and B(G) and a conjugacy-closure verdict per listed element.
/// Fails if an escape certificate does not replay.
inline int radical(const Instance& in, const Options&, std::ostream& out) {
  if (const auto* s = std::get_if<RadicalQuery<IntegerLine>>(&in)) return detail::radical(*s, out);
  if (const auto* s = std::get_if<RadicalQuery<IntegerCycles>>(&in)) return detail::radical(*s, out);
  throw SchemaError("kind", "radical needs a radical instance, got " + kind_of(in));
}

/// Validates the windowed matrix and runs the independence probe for each
/// requested p. Fails on a violation or a dependent relator.
inline int coxeter(const Instance& in, const Options& opt, std::ostream& out) {
  const auto& query = detail::expect_kind<CoxeterInstance>(in, "coxeter", "coxeter");
  const auto m = query.matrix();
  const auto report = validate(m);
  ojson j;
  j["window"] = {query.lo, query.hi};
  j["valid"] = report.ok();
  j["violations"] = report.violations;
  std::set<std::uint32_t> finite;
  bool infinite = false;
  for (const auto& s : m.vertices())
    for (const auto& t : m.vertices())
      if (const auto e = m.at(s, t); s != t) {
        if (!e) infinite = true;
        else if (*e >= 2) finite.insert(*e);
      }
  ojson orders = ojson::object();
  for (auto v : finite) orders[std::to_string(v)] = entry_string(dihedral_order(v));
  if (infinite) orders["inf"] = entry_string(dihedral_order(kInfinite));
  j["dihedral_orders"] = orders;
  bool ok = report.ok();
  if (!opt.probes.empty()) {
    if (!query.entries.empty()) throw SchemaError("entries", "probes need a pure distance rule without explicit entries");
    const auto res = independence_probes(query.rule, opt.probes, opt.jobs);
    j["probes"] = ojson::array();
    for (std::size_t i = 0; i < res.size(); ++i) {
      j["probes"].push_back({{"p", opt.probes[i]}, {"independent", static_cast<bool>(res[i])}});
      ok = ok && res[i];
    }
  }
  out << j.dump(2) << '\n';
  return ok ? 0 : 1;
}

/// Runs every acceptance criterion. One line per criterion goes to `log`;
/// the JSON summary, without timings, goes to `out`.
inline int suite(std::ostream& out, std::ostream& log) {
  ojson j;
  j["criteria"] = ojson::array();
  std::size_t passed = 0;
  const auto criteria = acceptance::all_criteria();
  for (const auto& run : criteria) {
    const auto o = run();
    log << acceptance::to_line(o) << '\n';
    passed += o.pass;
    j["criteria"].push_back({{"id", o.id}, {"name", o.name}, {"pass", o.pass}, {"detail", o.detail}});
  }
  j["passed"] = passed;
  j["total"] = criteria.size();
  out << j.dump(2) << '\n';
  return passed == criteria.size() ? 0 : 1;
}

}  // namespace wreathkit::cli
