#pragma once

// Instance files for the command-line front end. Every kind is a JSON object
// with a "kind" tag; a walling may also be given in the plain walling text
// format (first line "ground n"). Errors are SchemaErrors naming the field
// path, or the line for syntax errors.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wreathkit/commensurate.hpp"
#include "wreathkit/coxeter.hpp"
#include "wreathkit/errors.hpp"
#include "wreathkit/grigorchuk.hpp"
#include "wreathkit/groups.hpp"
#include "wreathkit/radicals.hpp"
#include "wreathkit/walls.hpp"
#include "wreathkit/wreath.hpp"

namespace wreathkit {

template <HSetAction Action>
struct WreathInstance {
  Wreath<Action> wreath;
  Subgroup a;
  std::vector<typename Wreath<Action>::Element> generators;  // closed under inverses
};

struct GrigorchukInstance {
  std::vector<grigorchuk::Word> generators;
};

struct WallsInstance {
  Walling walling;
};

struct CommInstance {
  CommAction action;
  FiniteGroup b;
  Subgroup a;
  IntegerLine window;
  std::vector<std::int64_t> shifts;
  std::vector<Wreath<IntegerLine>::Element> elements;
  std::vector<std::uint64_t> ell1;  // indexed by element of B
};

template <HSetAction Action>
struct RadicalQuery {
  RadicalInstance<Action> instance;
  std::vector<typename Action::Top> tops;
  std::vector<typename Wreath<Action>::Element> elements;
};

struct CoxeterInstance {
  std::int64_t lo = 0, hi = 0;
  LineRule rule;
  std::vector<std::tuple<std::int64_t, std::int64_t, CoxEntry>> entries;

  CoxeterMatrix<IntegerLine> matrix() const {
    auto m = rule.window(lo, hi);
    for (const auto& [i, j, e] : entries) m.set_pair(i, j, e);
    return m;
  }
};

using Instance =
    std::variant<WreathInstance<IntegerLine>, WreathInstance<FiniteAction>, GrigorchukInstance, WallsInstance,
                 CommInstance, RadicalQuery<IntegerLine>, RadicalQuery<IntegerCycles>, CoxeterInstance>;

inline std::string kind_of(const Instance& in) {
  static constexpr const char* names[] = {"wreath", "wreath", "grigorchuk", "walls",
                                          "commaction", "radical", "radical", "coxeter"};
  return names[in.index()];
}

namespace instance_detail {

using json = nlohmann::json;

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}
inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// An object whose keys must come from a fixed list.
class Fields {
 public:
  Fields(const json& j, std::string path, std::initializer_list<std::string_view> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw SchemaError(path_.empty() ? "instance" : path_, "expected an object");
    for (const auto& [key, _] : j.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == key;
      if (!ok) throw SchemaError(at(key), "unknown field");
    }
  }

  const json* maybe(const std::string& key) const {
    const auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }
  const json& need(const std::string& key) const {
    if (const json* v = maybe(key)) return *v;
    throw SchemaError(at(key), "missing field");
  }
  std::string at(const std::string& key) const { return join(path_, key); }

 private:
  const json& j_;
  std::string path_;
};

inline std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline unsigned count(const json& j, const std::string& path, std::int64_t min = 1) {
  const auto v = integer(j, path);
  if (v < min || v > 1'000'000) throw SchemaError(path, "expected an integer >= " + std::to_string(min));
  return static_cast<unsigned>(v);
}

inline std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

inline std::pair<std::int64_t, std::int64_t> range(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [lo, hi]");
  const auto lo = integer(j[0], index(path, 0)), hi = integer(j[1], index(path, 1));
  if (lo > hi) throw SchemaError(path, "lo exceeds hi");
  return {lo, hi};
}

inline FiniteGroup group(const json& j, const std::string& path) {
  const Fields f(j, path, {"kind", "n", "factors", "table", "labels"});
  const std::string kind = text(f.need("kind"), f.at("kind"));
  try {
    if (kind == "cyclic") return FiniteGroup::cyclic(count(f.need("n"), f.at("n")));
    if (kind == "dihedral") return FiniteGroup::dihedral(count(f.need("n"), f.at("n")));
    if (kind == "symmetric") return FiniteGroup::symmetric(count(f.need("n"), f.at("n")));
    if (kind == "product") {
      const json& fs = array(f.need("factors"), f.at("factors"));
      if (fs.empty()) throw SchemaError(f.at("factors"), "need at least one factor");
      FiniteGroup g = group(fs[0], index(f.at("factors"), 0));
      for (std::size_t i = 1; i < fs.size(); ++i)
        g = FiniteGroup::direct_product(g, group(fs[i], index(f.at("factors"), i)));
      return g;
    }
    if (kind == "table") {
      FiniteGroup::Table table;
      const json& rows = array(f.need("table"), f.at("table"));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = array(rows[i], index(f.at("table"), i));
        auto& out = table.emplace_back();
        for (std::size_t k = 0; k < row.size(); ++k)
          out.push_back(static_cast<ElementId>(count(row[k], index(index(f.at("table"), i), k), 0)));
      }
      std::vector<std::string> labels;
      if (const json* l = f.maybe("labels"))
        for (std::size_t i = 0; i < array(*l, f.at("labels")).size(); ++i)
          labels.push_back(text((*l)[i], index(f.at("labels"), i)));
      return FiniteGroup::from_table(table, std::move(labels));
    }
  } catch (const InvalidGroup& e) {
    throw SchemaError(path, e.what());
  }
  throw SchemaError(f.at("kind"), "unknown group kind '" + kind + "'");
}

inline ElementId element(const FiniteGroup& g, const json& j, const std::string& path) {
  if (j.is_string()) {
    if (const auto id = g.find_label(j.get<std::string>())) return *id;
    throw SchemaError(path, "no element labelled '" + j.get<std::string>() + "'");
  }
  const auto v = integer(j, path);
  if (v < 0 || static_cast<std::size_t>(v) >= g.order()) throw SchemaError(path, "element id out of range");
  return static_cast<ElementId>(v);
}

// "trivial", "whole", or a list of generators.
inline Subgroup subgroup(const FiniteGroup& g, const json* j, const std::string& path) {
  if (!j) return Subgroup::trivial(g);
  if (j->is_string()) {
    if (*j == "trivial") return Subgroup::trivial(g);
    if (*j == "whole") return Subgroup::whole(g);
    throw SchemaError(path, "expected 'trivial', 'whole' or a list of generators");
  }
  std::vector<ElementId> gens;
  for (std::size_t i = 0; i < array(*j, path).size(); ++i) gens.push_back(element(g, (*j)[i], index(path, i)));
  return Subgroup::generated_by(g, gens);
}

template <HSetAction Action, class PointParser, class TopParser>
typename Wreath<Action>::Element wreath_element(const Wreath<Action>& w, const json& j, const std::string& path,
                                                PointParser point, TopParser top) {
  const Fields f(j, path, {"lamp", "top"});
  typename Wreath<Action>::Lamp lamp;
  if (const json* l = f.maybe("lamp")) {
    for (std::size_t i = 0; i < array(*l, f.at("lamp")).size(); ++i) {
      const std::string p = index(f.at("lamp"), i);
      if (!(*l)[i].is_array() || (*l)[i].size() != 2) throw SchemaError(p, "expected [point, value]");
      lamp.emplace_back(point((*l)[i][0], index(p, 0)), element(w.lamp_group(), (*l)[i][1], index(p, 1)));
    }
  }
  auto h = f.maybe("top") ? top(f.need("top"), f.at("top")) : w.action().identity();
  try {
    return w.make(std::move(lamp), std::move(h));
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

template <HSetAction Action>
void close_under_inverses(const Wreath<Action>& w, std::vector<typename Wreath<Action>::Element>& gens) {
  std::vector<typename Wreath<Action>::Element> out;
  std::set<std::string> seen;
  for (const auto& g : gens)
    for (const auto& e : {g, w.inverse(g)})
      if (seen.insert(w.canonical(e)).second) out.push_back(e);
  gens = std::move(out);
}

inline auto line_point(const IntegerLine& line) {
  return [line](const json& j, const std::string& path) {
    const auto x = integer(j, path);
    if (!line.in_window(x)) throw SchemaError(path, "point outside X_window");
    return x;
  };
}

inline Instance parse_wreath(const Fields& f) {
  const FiniteGroup b = group(f.need("B"), f.at("B"));
  const Subgroup a = subgroup(b, f.maybe("A"), f.at("A"));
  const std::string hk = text(f.need("H_kind"), f.at("H_kind"));
  const json* gens = f.maybe("generators");
  if (hk == "Z") {
    const auto [lo, hi] = range(f.need("X_window"), f.at("X_window"));
    if (f.maybe("H") || f.maybe("perms")) throw SchemaError(f.at("H"), "H_kind Z takes no H group");
    WreathInstance<IntegerLine> in{Wreath<IntegerLine>(b, IntegerLine(lo, hi)), a, {}};
    if (!in.wreath.action().in_window(0)) throw SchemaError(f.at("X_window"), "window must contain 0");
    if (gens) {
      for (std::size_t i = 0; i < array(*gens, f.at("generators")).size(); ++i)
        in.generators.push_back(wreath_element(in.wreath, (*gens)[i], index(f.at("generators"), i),
                                               line_point(in.wreath.action()),
                                               [](const json& j, const std::string& p) { return integer(j, p); }));
    } else {
      for (ElementId v = 1; v < b.order(); ++v) in.generators.push_back(in.wreath.delta(0, v));
      in.generators.push_back(in.wreath.top_element(1));
    }
    close_under_inverses(in.wreath, in.generators);
    return in;
  }
  if (hk == "regular" || hk == "permutation") {
    if (f.maybe("X_window")) throw SchemaError(f.at("X_window"), "finite H acts on its own points");
    const FiniteGroup h = group(f.need("H"), f.at("H"));
    std::optional<FiniteAction> act;
    if (hk == "regular") {
      act = FiniteAction::regular(h);
    } else {
      std::vector<std::vector<FiniteAction::Point>> perms;
      const json& ps = array(f.need("perms"), f.at("perms"));
      for (std::size_t i = 0; i < ps.size(); ++i) {
        auto& row = perms.emplace_back();
        for (std::size_t k = 0; k < array(ps[i], index(f.at("perms"), i)).size(); ++k)
          row.push_back(count(ps[i][k], index(index(f.at("perms"), i), k), 0));
      }
      try {
        act.emplace(h, std::move(perms));
      } catch (const InvalidGroup& e) {
        throw SchemaError(f.at("perms"), e.what());
      }
    }
    WreathInstance<FiniteAction> in{Wreath<FiniteAction>(b, *act), a, {}};
    const auto& action = in.wreath.action();
    if (gens) {
      for (std::size_t i = 0; i < array(*gens, f.at("generators")).size(); ++i)
        in.generators.push_back(wreath_element(
            in.wreath, (*gens)[i], index(f.at("generators"), i),
            [&](const json& j, const std::string& p) {
              const auto x = count(j, p, 0);
              if (!action.in_window(x)) throw SchemaError(p, "point outside the H-set");
              return static_cast<FiniteAction::Point>(x);
            },
            [&](const json& j, const std::string& p) { return element(h, j, p); }));
    } else {
      for (ElementId v = 1; v < b.order(); ++v) in.generators.push_back(in.wreath.delta(0, v));
      for (ElementId t = 1; t < h.order(); ++t) in.generators.push_back(in.wreath.top_element(t));
    }
    close_under_inverses(in.wreath, in.generators);
    return in;
  }
  throw SchemaError(f.at("H_kind"), "unknown H_kind '" + hk + "' (expected Z, regular or permutation)");
}

inline Instance parse_grigorchuk(const Fields& f) {
  GrigorchukInstance in;
  if (const json* g = f.maybe("generators")) {
    for (std::size_t i = 0; i < array(*g, f.at("generators")).size(); ++i) {
      const auto w = text((*g)[i], index(f.at("generators"), i));
      try {
        grigorchuk::check_word(w);
      } catch (const Error& e) {
        throw SchemaError(index(f.at("generators"), i), e.what());
      }
      in.generators.push_back(grigorchuk::reduce(w));
    }
  } else {
    in.generators = {"a", "b", "c", "d"};
  }
  return in;
}

inline Instance parse_walls(const Fields& f) {
  const auto ground = count(f.need("ground"), f.at("ground"));
  std::vector<Wall> walls;
  const json& ws = array(f.need("walls"), f.at("walls"));
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const std::string p = index(f.at("walls"), i);
    const Fields wf(ws[i], p, {"weight", "mask"});
    Wall w;
    const json& weight = wf.need("weight");
    if (weight.is_number_integer()) {
      w.weight = Rational(weight.get<std::int64_t>());
    } else {
      try {
        w.weight = parse_rational(text(weight, wf.at("weight")));
      } catch (const std::invalid_argument&) {
        throw SchemaError(wf.at("weight"), "not a rational");
      }
    }
    const auto mask = text(wf.need("mask"), wf.at("mask"));
    if (mask.size() != ground) throw SchemaError(wf.at("mask"), "mask length differs from ground size");
    for (std::size_t k = 0; k < mask.size(); ++k) {
      if (mask[k] != '0' && mask[k] != '1') throw SchemaError(wf.at("mask"), "bits must be 0 or 1");
      if (mask[k] == '1') w.mask |= point_bit(k);
    }
    try {
      Walling(ground, {w});
    } catch (const InvalidWalling& e) {
      throw SchemaError(p, e.what());
    }
    walls.push_back(w);
  }
  try {
    return WallsInstance{Walling(ground, std::move(walls))};
  } catch (const InvalidWalling& e) {
    throw SchemaError(f.at("ground"), e.what());
  }
}

inline TailedSubset tailed(const json& j, const std::string& path) {
  const Fields f(j, path, {"lo", "bits", "left", "right"});
  TailedSubset s;
  if (const json* v = f.maybe("lo")) s.lo = integer(*v, f.at("lo"));
  if (const json* v = f.maybe("bits")) s.bits = text(*v, f.at("bits"));
  if (const json* v = f.maybe("left")) s.left = text(*v, f.at("left"));
  if (const json* v = f.maybe("right")) s.right = text(*v, f.at("right"));
  try {
    s.validate();
  } catch (const SchemaError& e) {
    throw SchemaError(f.at(e.field()), e.what());
  }
  return s;
}

inline Instance parse_commaction(const Fields& f) {
  std::vector<TailedSubset> copies;
  const json& cs = array(f.need("M"), f.at("M"));
  if (cs.empty()) throw SchemaError(f.at("M"), "need at least one copy");
  for (std::size_t i = 0; i < cs.size(); ++i) copies.push_back(tailed(cs[i], index(f.at("M"), i)));
  const FiniteGroup b = group(f.need("B"), f.at("B"));
  const Subgroup a = subgroup(b, f.maybe("A"), f.at("A"));
  const auto [lo, hi] = f.maybe("X_window") ? range(f.need("X_window"), f.at("X_window"))
                                            : std::pair<std::int64_t, std::int64_t>{-64, 64};
  CommInstance in{CommAction(std::move(copies)), b, a, IntegerLine(lo, hi), {}, {}, {}};
  if (const json* g = f.maybe("generators")) {
    for (std::size_t i = 0; i < array(*g, f.at("generators")).size(); ++i)
      in.shifts.push_back(integer((*g)[i], index(f.at("generators"), i)));
  } else {
    in.shifts = {1};
  }
  const Wreath<IntegerLine> w(b, in.window);
  if (const json* e = f.maybe("elements"))
    for (std::size_t i = 0; i < array(*e, f.at("elements")).size(); ++i)
      in.elements.push_back(wreath_element(w, (*e)[i], index(f.at("elements"), i), line_point(in.window),
                                           [](const json& j, const std::string& p) { return integer(j, p); }));
  if (const json* l = f.maybe("ell1")) {
    if (array(*l, f.at("ell1")).size() != b.order()) throw SchemaError(f.at("ell1"), "need one length per element of B");
    for (std::size_t i = 0; i < l->size(); ++i) in.ell1.push_back(count((*l)[i], index(f.at("ell1"), i), 0));
    if (in.ell1[0] != 0) throw SchemaError(f.at("ell1"), "the identity must have length 0");
  } else {
    for (std::size_t v = 0; v < b.order(); ++v) in.ell1.push_back(v == 0 ? 0 : 1);
  }
  return in;
}

// "trivial", "all", or {"multiples": k}, a subgroup of Z.
inline TopSet<std::int64_t> top_set(const json& j, const std::string& path) {
  using Z = std::int64_t;
  if (j == "trivial") return {"1", [](Z h) { return h == 0; }, true};
  if (j == "all") return {"Z", [](Z) { return true; }, false};
  if (j.is_object()) {
    const Fields f(j, path, {"multiples"});
    const Z k = integer(f.need("multiples"), f.at("multiples"));
    if (k == 0) return {"1", [](Z h) { return h == 0; }, true};
    return {std::to_string(std::abs(k)) + "Z", [k](Z h) { return h % k == 0; }, false};
  }
  throw SchemaError(path, "expected 'trivial', 'all' or {\"multiples\": k}");
}

template <HSetAction Action, class PointParser>
RadicalQuery<Action> radical_query(const Fields& f, Wreath<Action> w, PointParser point) {
  Subgroup a = subgroup(w.lamp_group(), f.maybe("A"), f.at("A"));
  RadicalQuery<Action> query{{std::move(w), std::move(a), {}}, {}, {}};
  auto& in = query.instance;
  if (const json* o = f.maybe("oracles")) {
    const Fields of(*o, f.at("oracles"), {"kernel", "finite_normal", "finitary", "W", "B"});
    auto set = [&](const char* key, auto& slot) {
      if (const json* v = of.maybe(key)) slot = top_set(*v, of.at(key));
    };
    set("kernel", in.oracles.kernel);
    set("finite_normal", in.oracles.finite_normal);
    set("finitary", in.oracles.finitary);
    set("W", in.oracles.w);
    set("B", in.oracles.b);
  }
  auto top = [](const json& j, const std::string& p) { return integer(j, p); };
  if (const json* t = f.maybe("tops")) {
    for (std::size_t i = 0; i < array(*t, f.at("tops")).size(); ++i) query.tops.push_back(top((*t)[i], index(f.at("tops"), i)));
  } else {
    query.tops = {1};
  }
  if (const json* e = f.maybe("elements"))
    for (std::size_t i = 0; i < array(*e, f.at("elements")).size(); ++i)
      query.elements.push_back(wreath_element(in.wreath, (*e)[i], index(f.at("elements"), i), point, top));
  return query;
}

inline Instance parse_radical(const Fields& f) {
  const FiniteGroup b = group(f.need("B"), f.at("B"));
  const std::string hk = text(f.need("H_kind"), f.at("H_kind"));
  if (hk == "Z") {
    const auto [lo, hi] = range(f.need("X_window"), f.at("X_window"));
    const IntegerLine line(lo, hi);
    return radical_query(f, Wreath<IntegerLine>(b, line), line_point(line));
  }
  if (hk == "cycles") {
    const auto max_cycle = count(f.need("max_cycle"), f.at("max_cycle"));
    const IntegerCycles cycles(max_cycle);
    return radical_query(f, Wreath<IntegerCycles>(b, cycles), [cycles](const json& j, const std::string& p) {
      if (!j.is_array() || j.size() != 2) throw SchemaError(p, "expected [cycle length, residue]");
      const IntegerCycles::Point x{integer(j[0], index(p, 0)), integer(j[1], index(p, 1))};
      if (!cycles.in_window(x)) throw SchemaError(p, "point outside the cycles");
      return x;
    });
  }
  throw SchemaError(f.at("H_kind"), "unknown H_kind '" + hk + "' (expected Z or cycles)");
}

inline CoxEntry cox_entry(const json& j, const std::string& path) {
  if (j == "inf") return kInfinite;
  const auto v = integer(j, path);
  if (v < 1 || v > 1'000'000) throw SchemaError(path, "expected a positive integer or \"inf\"");
  return static_cast<std::uint32_t>(v);
}

inline Instance parse_coxeter(const Fields& f) {
  CoxeterInstance query;
  std::tie(query.lo, query.hi) = range(f.need("X_window"), f.at("X_window"));
  const Fields r(f.need("rule"), f.at("rule"), {"table", "default"});
  std::vector<CoxEntry> table;
  if (const json* t = r.maybe("table"))
    for (std::size_t i = 0; i < array(*t, r.at("table")).size(); ++i) table.push_back(cox_entry((*t)[i], index(r.at("table"), i)));
  const CoxEntry fallback = r.maybe("default") ? cox_entry(r.need("default"), r.at("default")) : CoxEntry{2};
  query.rule.phi = [table, fallback](std::int64_t d) -> CoxEntry {
    if (d == 0 && table.empty()) return 1u;
    return static_cast<std::size_t>(d) < table.size() ? table[d] : fallback;
  };
  if (const json* e = f.maybe("entries")) {
    for (std::size_t i = 0; i < array(*e, f.at("entries")).size(); ++i) {
      const std::string p = index(f.at("entries"), i);
      if (!(*e)[i].is_array() || (*e)[i].size() != 3) throw SchemaError(p, "expected [i, j, m]");
      const auto s = integer((*e)[i][0], index(p, 0)), t = integer((*e)[i][1], index(p, 1));
      if (s < query.lo || s > query.hi || t < query.lo || t > query.hi) throw SchemaError(p, "vertex outside X_window");
      query.entries.emplace_back(s, t, cox_entry((*e)[i][2], index(p, 2)));
    }
  }
  return query;
}

inline int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) line += text[i] == '\n';
  return line;
}

}  // namespace instance_detail

/// Parses instance text. JSON objects dispatch on "kind"; text starting with
/// "ground" or a '#' comment is read as a walling in the plain text format.
inline Instance parse_instance_text(const std::string& source) {
  using namespace instance_detail;
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (source[first] == '#' || source.compare(first, 6, "ground") == 0))
    return WallsInstance{parse_walling(source)};
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    throw SchemaError("", e.what(), line_of(source, e.byte ? e.byte - 1 : 0));
  }
  if (!j.is_object()) throw SchemaError("instance", "expected a JSON object");
  const auto kind_it = j.find("kind");
  if (kind_it == j.end()) throw SchemaError("kind", "missing field");
  const std::string kind = instance_detail::text(*kind_it, "kind");
  if (kind == "wreath")
    return parse_wreath(Fields(j, "", {"kind", "description", "B", "A", "H_kind", "H", "perms", "X_window", "generators"}));
  if (kind == "grigorchuk") return parse_grigorchuk(Fields(j, "", {"kind", "description", "generators"}));
  if (kind == "walls") return parse_walls(Fields(j, "", {"kind", "description", "ground", "walls"}));
  if (kind == "commaction")
    return parse_commaction(
        Fields(j, "", {"kind", "description", "M", "B", "A", "X_window", "generators", "elements", "ell1"}));
  if (kind == "radical")
    return parse_radical(Fields(
        j, "", {"kind", "description", "B", "A", "H_kind", "X_window", "max_cycle", "oracles", "tops", "elements"}));
  if (kind == "coxeter") return parse_coxeter(Fields(j, "", {"kind", "description", "X_window", "rule", "entries"}));
  throw SchemaError("kind", "unknown kind '" + kind + "' (expected wreath, walls, commaction, radical, coxeter or grigorchuk)");
}

inline Instance parse_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_text(buf.str());
}

}  // namespace wreathkit
