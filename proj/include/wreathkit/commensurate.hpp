#pragma once

// Commensurated subsets of Y = Z x {copies} under the shift action of Z, the
// lengths l0, l and l', the PW action on pairs (y, p), and partitioned
// (half-restricted) wreath products over Z x {copies}.

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "wreathkit/errors.hpp"
#include "wreathkit/groups.hpp"
#include "wreathkit/wreath.hpp"

namespace wreathkit {

/// A subset of Z given by explicit bits on [lo, lo + bits.size()) and two
/// periodic tails: below lo, left[k % |left|] is the bit of lo - 1 - k; above
/// the window, right[k % |right|] is the bit of hi + 1 + k.
struct TailedSubset {
  std::int64_t lo = 0;
  std::string bits;
  std::string left = "0";
  std::string right = "0";

  std::int64_t hi() const { return lo + static_cast<std::int64_t>(bits.size()) - 1; }

  void validate() const {
    auto ok = [](const std::string& s) {
      return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
    };
    if (!ok(bits)) throw SchemaError("bits", "bits must be 0 or 1");
    if (left.empty() || !ok(left)) throw SchemaError("left", "tail pattern must be a non-empty 0/1 string");
    if (right.empty() || !ok(right)) throw SchemaError("right", "tail pattern must be a non-empty 0/1 string");
  }

  bool contains(std::int64_t n) const {
    if (n < lo) return left[static_cast<std::size_t>((lo - 1 - n) % static_cast<std::int64_t>(left.size()))] == '1';
    if (n > hi()) return right[static_cast<std::size_t>((n - hi() - 1) % static_cast<std::int64_t>(right.size()))] == '1';
    return bits[static_cast<std::size_t>(n - lo)] == '1';
  }

  TailedSubset complement() const {
    TailedSubset c = *this;
    for (auto* s : {&c.bits, &c.left, &c.right})
      for (char& ch : *s) ch = ch == '1' ? '0' : '1';
    return c;
  }

  static TailedSubset empty() { return {}; }
  static TailedSubset all() { return {0, "", "1", "1"}; }
  /// {n >= from}
  static TailedSubset ray_up(std::int64_t from = 0) { return {from, "", "0", "1"}; }
  static TailedSubset finite(std::int64_t lo, std::string bits) { return {lo, std::move(bits), "0", "0"}; }
};

struct YPoint {
  std::int64_t n = 0;
  std::uint32_t copy = 0;
  friend auto operator<=>(const YPoint&, const YPoint&) = default;
};

/// Z acting by translation on Y = Z x {0..k-1}, together with M, a subset of Y
/// described copy by copy.
class CommAction {
 public:
  CommAction() = default;
  explicit CommAction(std::vector<TailedSubset> copies) : copies_(std::move(copies)) {
    if (copies_.empty()) throw SchemaError("copies", "need at least one copy");
    for (const auto& c : copies_) c.validate();
  }

  static CommAction naturals() { return CommAction({TailedSubset::ray_up(0)}); }

  const std::vector<TailedSubset>& copies() const { return copies_; }
  std::uint32_t copy_count() const { return static_cast<std::uint32_t>(copies_.size()); }

  bool in_m(const YPoint& y) const { return copies_.at(y.copy).contains(y.n); }

  /// y in x + M, i.e. x in W_y.
  bool in_w(const YPoint& y, std::int64_t x) const { return in_m({y.n - x, y.copy}); }

  std::vector<std::int64_t> w_set(const YPoint& y, std::int64_t lo, std::int64_t hi) const {
    std::vector<std::int64_t> out;
    for (auto x = lo; x <= hi; ++x)
      if (in_w(y, x)) out.push_back(x);
    return out;
  }

  std::int64_t lo_bound() const {
    std::int64_t v = std::numeric_limits<std::int64_t>::max();
    for (const auto& c : copies_) v = std::min(v, c.lo);
    return v;
  }
  std::int64_t hi_bound() const {
    std::int64_t v = std::numeric_limits<std::int64_t>::min();
    for (const auto& c : copies_) v = std::max(v, c.hi());
    return v;
  }
  std::int64_t left_period() const {
    std::int64_t p = 1;
    for (const auto& c : copies_) p = std::lcm(p, static_cast<std::int64_t>(c.left.size()));
    return p;
  }
  std::int64_t right_period() const {
    std::int64_t p = 1;
    for (const auto& c : copies_) p = std::lcm(p, static_cast<std::int64_t>(c.right.size()));
    return p;
  }

  /// The points y with pred(y) in the core [lo - margin, hi + margin] of every
  /// copy. pred must only look at membership of y + offsets with |offset| < margin;
  /// it is then periodic beyond the core, and one extra period on each side
  /// decides whether the set is finite. TailUndetermined if it is not.
  template <class Pred>
  std::vector<YPoint> collect(std::int64_t margin, Pred pred) const {
    const std::int64_t a = lo_bound() - margin, b = hi_bound() + margin;
    std::vector<YPoint> out;
    for (std::uint32_t c = 0; c < copy_count(); ++c) {
      for (auto n = a; n <= b; ++n)
        if (pred(YPoint{n, c})) out.push_back({n, c});
      for (auto n = a - left_period(); n < a; ++n)
        if (pred(YPoint{n, c})) throw TailUndetermined("infinitely many points below " + std::to_string(a));
      for (auto n = b + 1; n <= b + right_period(); ++n)
        if (pred(YPoint{n, c})) throw TailUndetermined("infinitely many points above " + std::to_string(b));
    }
    return out;
  }

  /// #(M symdiff (h + M)).
  std::uint64_t ell0(std::int64_t h) const {
    return collect(std::abs(h) + 1, [&](const YPoint& y) { return in_m(y) != in_m({y.n - h, y.copy}); }).size();
  }

  /// (#(M \ hM), #(hM \ M)).
  std::pair<std::uint64_t, std::uint64_t> halves(std::int64_t h) const {
    const auto m = std::abs(h) + 1;
    return {collect(m, [&](const YPoint& y) { return in_m(y) && !in_m({y.n - h, y.copy}); }).size(),
            collect(m, [&](const YPoint& y) { return !in_m(y) && in_m({y.n - h, y.copy}); }).size()};
  }

  /// Y x {0,1} with M x {0} u M^c x {1}: copies of the second half follow the first.
  CommAction symmetrize() const {
    std::vector<TailedSubset> c = copies_;
    for (const auto& s : copies_) c.push_back(s.complement());
    return CommAction(std::move(c));
  }

 private:
  std::vector<TailedSubset> copies_;
};

/// (y, p) with p: Z -> B/A finitely supported, sorted, never the coset A itself.
struct PWPair {
  YPoint y;
  std::vector<std::pair<std::int64_t, ElementId>> p;
  friend bool operator==(const PWPair&, const PWPair&) = default;
};

/// The PW action of B wr Z (lamps over X = Z, L = 1) on pairs (y, p):
/// h.(y, p) = (y + h, h.p), f.(y, p) = (y, fbar restricted to W_y^c times p).
class PWConstruction {
 public:
  using LineWreath = Wreath<IntegerLine>;
  using Element = LineWreath::Element;

  PWConstruction(CommAction act, FiniteGroup b, Subgroup a, IntegerLine window)
      : act_(std::move(act)), a_(std::move(a)), cosets_(a_), wreath_(std::move(b), window) {}

  const CommAction& action() const { return act_; }
  const LineWreath& wreath() const { return wreath_; }
  const Subgroup& lamp_subgroup() const { return a_; }
  const LeftCosets& cosets() const { return cosets_; }

  bool valid(const PWPair& z) const {
    for (const auto& [x, c] : z.p)
      if (c == 0 || act_.in_w(z.y, x)) return false;
    return std::is_sorted(z.p.begin(), z.p.end());
  }

  bool in_n(const PWPair& z) const { return z.p.empty() && act_.in_m(z.y); }

  PWPair act(const Element& g, const PWPair& z) const {
    PWPair out{{z.y.n + g.top, z.y.copy}, {}};
    std::map<std::int64_t, ElementId> p;
    for (const auto& [x, c] : z.p) {
      if (!wreath_.action().in_window(x + g.top))
        throw WindowEscape("coset support leaves the window under translation");
      p[x + g.top] = c;
    }
    for (const auto& [x, b] : g.lamp) {
      if (act_.in_w(out.y, x)) continue;
      auto it = p.find(x);
      const ElementId c = cosets_.act(b, it == p.end() ? 0 : it->second);
      if (it == p.end())
        p.emplace(x, c);
      else
        it->second = c;
    }
    for (const auto& [x, c] : p)
      if (c != 0) out.p.emplace_back(x, c);
    return out;
  }

  /// #(N symdiff gN) with N = M x {1}.
  std::uint64_t length(const Element& g) const {
    const auto ginv = wreath_.inverse(g);
    std::int64_t reach = std::abs(g.top);
    for (const auto& [x, b] : g.lamp) reach = std::max(reach, std::abs(x) + std::abs(g.top));
    auto leaves = [&](const Element& e) {
      return act_
          .collect(reach + 1, [&](const YPoint& y) { return act_.in_m(y) && !in_n(act(e, PWPair{y, {}})); })
          .size();
    };
    return leaves(g) + leaves(ginv);
  }

  /// {m in M : m not in x + M for some x in Supp_A(f)}, the first coordinates of N \ f^-1 N.
  std::vector<YPoint> n_minus_preimage(const Element& f) const {
    const auto s = wreath_.supp_a(f, a_);
    std::int64_t reach = 0;
    for (auto x : s) reach = std::max(reach, std::abs(x));
    return act_.collect(reach + 1, [&](const YPoint& y) {
      if (!act_.in_m(y)) return false;
      for (auto x : s)
        if (!act_.in_w(y, x)) return true;
      return false;
    });
  }

  /// Elements g = f t^h with l(g) + l'(g) <= k, f supported in [lo, hi]. Since
  /// both lengths grow with the support, a depth-first search over supports in
  /// increasing order with pruning is exhaustive. `touches_edge` is set when a
  /// surviving element reaches lo or hi, in which case the window may be too small.
  struct Sublevel {
    std::vector<Element> elements;
    bool touches_edge = false;
  };

  Sublevel sublevel_set(std::uint64_t k, const std::vector<std::uint64_t>& ell1, std::int64_t lo, std::int64_t hi) const {
    Sublevel out;
    const auto& b = wreath_.lamp_group();
    for (std::int64_t h = lo; h <= hi; ++h) {
      if (act_.ell0(h) > k) continue;
      if (h == lo || h == hi) out.touches_edge = true;
      std::vector<std::pair<std::int64_t, ElementId>> lamp;
      auto dfs = [&](auto&& self, std::int64_t from) -> void {
        const Element g{lamp, h};
        if (length(g) + second_length(g, ell1) > k) return;
        out.elements.push_back(g);
        for (const auto& [x, v] : lamp)
          if (x == lo || x == hi) out.touches_edge = true;
        for (std::int64_t x = from; x <= hi; ++x)
          for (ElementId v = 1; v < b.order(); ++v) {
            lamp.emplace_back(x, v);
            self(self, x + 1);
            lamp.pop_back();
          }
      };
      dfs(dfs, lo);
    }
    return out;
  }

  /// l'(f t^h) = sum of ell1(f(x)).
  static std::uint64_t second_length(const Element& g, const std::vector<std::uint64_t>& ell1) {
    std::uint64_t s = 0;
    for (const auto& [x, v] : g.lamp) s += ell1.at(v);
    return s;
  }

 private:
  CommAction act_;
  Subgroup a_;
  LeftCosets cosets_;
  LineWreath wreath_;
};

/// l'(f t^h) = sum of ell1(f(x)) over the lamp support.
inline std::uint64_t second_length(const PWConstruction::Element& g, const std::vector<std::uint64_t>& ell1) {
  return PWConstruction::second_length(g, ell1);
}

// ---------------------------------------------------------------------------
// Partitioned wreath products B^{X,M,A} x| Z over X = Z x {copies}.

struct Block {
  std::vector<TailedSubset> copies;  // the block's trace on each copy
  Subgroup a;
};

/// Lamp values on one copy. Values are exact on [known_lo, known_hi]; outside,
/// they are unknown but lie in the subgroup of their block. kUnbounded marks an
/// exact side.
struct CopyLamp {
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;
  std::int64_t known_lo = -kUnbounded;
  std::int64_t known_hi = kUnbounded;
  std::vector<std::pair<std::int64_t, ElementId>> values;  // sorted, non-identity

  bool exact() const { return known_lo == -kUnbounded && known_hi == kUnbounded; }
  bool known(std::int64_t n) const { return known_lo <= n && n <= known_hi; }
  std::optional<ElementId> value(std::int64_t n) const {
    if (!known(n)) return std::nullopt;
    auto it = std::lower_bound(values.begin(), values.end(), std::make_pair(n, ElementId{0}));
    return it != values.end() && it->first == n ? it->second : FiniteGroup::identity();
  }
  friend bool operator==(const CopyLamp&, const CopyLamp&) = default;
};

struct PartitionedElement {
  std::vector<CopyLamp> lamps;
  std::int64_t shift = 0;
  friend bool operator==(const PartitionedElement&, const PartitionedElement&) = default;
};

class PartitionedWreath {
 public:
  using Element = PartitionedElement;

  /// SchemaError if the blocks do not partition Z x {copies};
  /// CommensurationViolated if the shift moves infinitely many points across blocks.
  PartitionedWreath(FiniteGroup b, std::uint32_t copies, std::vector<Block> blocks)
      : b_(std::move(b)), copies_(copies), blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw SchemaError("partition", "no blocks");
    for (const auto& bl : blocks_) {
      if (bl.copies.size() != copies_) throw SchemaError("partition", "block does not describe every copy");
      if (bl.a.parent().order() != b_.order()) throw SchemaError("partition", "block subgroup of a different group");
      actions_.emplace_back(bl.copies);
    }
    try {
      const CommAction all(union_copies());
      all.collect(1, [&](const YPoint& y) {
        int hits = 0;
        for (const auto& act : actions_) hits += act.in_m(y);
        if (hits != 1) throw SchemaError("partition", "blocks overlap or miss a point near " + std::to_string(y.n));
        return false;
      });
    } catch (const TailUndetermined&) {
      throw SchemaError("partition", "tails do not partition the line");
    }
    try {
      for (const auto& act : actions_) act.ell0(1);
    } catch (const TailUndetermined& e) {
      throw CommensurationViolated(std::string("a block is not commensurated by the shift: ") + e.what());
    }
  }

  /// B^{(X, M]}: values in B on M, finitely supported off M, one copy.
  static PartitionedWreath half_restricted(FiniteGroup b, TailedSubset m) {
    Block compact{{m}, Subgroup::whole(b)}, discrete{{m.complement()}, Subgroup::trivial(b)};
    return PartitionedWreath(b, 1, {compact, discrete});
  }

  /// Two copies; compact on N x {0} and on (Z \ N) x {1}.
  static PartitionedWreath two_sided(FiniteGroup b) {
    const auto up = TailedSubset::ray_up(0), down = up.complement();
    Block compact{{up, down}, Subgroup::whole(b)}, discrete{{down, up}, Subgroup::trivial(b)};
    return PartitionedWreath(b, 2, {compact, discrete});
  }

  const FiniteGroup& lamp_group() const { return b_; }
  std::uint32_t copies() const { return copies_; }
  const std::vector<Block>& blocks() const { return blocks_; }

  std::size_t block_of(std::uint32_t copy, std::int64_t n) const {
    for (std::size_t i = 0; i < actions_.size(); ++i)
      if (actions_[i].in_m({n, copy})) return i;
    throw OutOfRange("point in no block");
  }

  Element identity() const { return {std::vector<CopyLamp>(copies_), 0}; }

  /// An exact element with finitely many non-identity values.
  Element make(const std::vector<std::tuple<std::uint32_t, std::int64_t, ElementId>>& entries, std::int64_t shift) const {
    Element e = identity();
    e.shift = shift;
    std::vector<std::map<std::int64_t, ElementId>> acc(copies_);
    for (const auto& [c, n, v] : entries) {
      if (c >= copies_) throw OutOfRange("no such copy");
      b_.check(v);
      auto& slot = acc[c][n];
      slot = b_.compose(slot, v);
    }
    for (std::uint32_t c = 0; c < copies_; ++c)
      for (const auto& [n, v] : acc[c])
        if (v != FiniteGroup::identity()) e.lamps[c].values.emplace_back(n, v);
    return e;
  }

  /// Checks a hand-built element: sorted values inside the known range and
  /// unknown ranges only on points whose block subgroup is non-trivial.
  void validate(const Element& e) const {
    if (e.lamps.size() != copies_) throw SchemaError("lamps", "wrong number of copies");
    for (std::uint32_t c = 0; c < copies_; ++c) {
      const auto& l = e.lamps[c];
      if (l.known_lo > l.known_hi + 1) throw SchemaError("lamps", "empty known range");
      for (std::size_t i = 0; i < l.values.size(); ++i) {
        const auto& [n, v] = l.values[i];
        b_.check(v);
        if (v == FiniteGroup::identity() || !l.known(n) || (i && l.values[i - 1].first >= n))
          throw SchemaError("lamps", "values must be sorted, known and non-identity");
      }
      check_unknown(c, l);
    }
  }

  /// (f1, k1)(f2, k2) = (f1 * (k1 . f2), k1 + k2) with (k . f)(x) = f(x - k).
  /// WindowEscape when the product is undetermined on a discrete block.
  Element compose(const Element& u, const Element& v) const {
    Element out{std::vector<CopyLamp>(copies_), u.shift + v.shift};
    for (std::uint32_t c = 0; c < copies_; ++c) {
      const auto& a = u.lamps[c];
      const auto sv = shifted(v.lamps[c], u.shift);
      CopyLamp r;
      r.known_lo = std::max(a.known_lo, sv.known_lo);
      r.known_hi = std::min(a.known_hi, sv.known_hi);
      std::map<std::int64_t, ElementId> vals;
      for (const auto& [n, x] : a.values) vals[n] = x;
      for (const auto& [n, y] : sv.values) {
        auto& slot = vals[n];
        slot = b_.compose(slot, y);
      }
      for (const auto& [n, x] : vals)
        if (x != FiniteGroup::identity() && r.known(n)) r.values.emplace_back(n, x);
      check_unknown(c, r, true);
      out.lamps[c] = std::move(r);
    }
    return out;
  }

  Element inverse(const Element& u) const {
    Element out{std::vector<CopyLamp>(copies_), -u.shift};
    for (std::uint32_t c = 0; c < copies_; ++c) {
      CopyLamp l = u.lamps[c];
      for (auto& [n, v] : l.values) v = b_.inverse(v);
      out.lamps[c] = shifted(l, -u.shift);
      check_unknown(c, out.lamps[c], true);
    }
    return out;
  }

  Element power(const Element& u, long long k) const {
    Element r = identity();
    const Element base = k < 0 ? inverse(u) : u;
    for (long long i = 0; i < std::abs(k); ++i) r = compose(r, base);
    return r;
  }

  /// Same shift and same values wherever both are known.
  static bool agree(const Element& u, const Element& v) {
    if (u.shift != v.shift || u.lamps.size() != v.lamps.size()) return false;
    for (std::size_t c = 0; c < u.lamps.size(); ++c) {
      const auto& a = u.lamps[c];
      const auto& b = v.lamps[c];
      const auto lo = std::max(a.known_lo, b.known_lo), hi = std::min(a.known_hi, b.known_hi);
      for (const auto* l : {&a, &b})
        for (const auto& [n, x] : l->values)
          if (lo <= n && n <= hi && a.value(n) != b.value(n)) return false;
    }
    return true;
  }

  /// Membership in the compact open subgroup prod_i A_i^{M_i}, decided on the
  /// known values (unknown values lie in their block subgroup by construction).
  bool in_compact_open(const Element& u) const {
    if (u.shift != 0) return false;
    for (std::uint32_t c = 0; c < copies_; ++c)
      for (const auto& [n, v] : u.lamps[c].values)
        if (!blocks_[block_of(c, n)].a.contains(v)) return false;
    return true;
  }

 private:
  /// All-zero subsets spanning every block's window and tail periods, used to scan the partition.
  std::vector<TailedSubset> union_copies() const {
    std::vector<TailedSubset> u;
    for (std::uint32_t c = 0; c < copies_; ++c) {
      std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
      std::size_t lp = 1, rp = 1;
      for (const auto& bl : blocks_) {
        lo = std::min(lo, bl.copies[c].lo);
        hi = std::max(hi, bl.copies[c].hi());
        lp = std::lcm(lp, bl.copies[c].left.size());
        rp = std::lcm(rp, bl.copies[c].right.size());
      }
      hi = std::max(hi, lo - 1);
      u.push_back({lo, std::string(static_cast<std::size_t>(hi - lo + 1), '0'), std::string(lp, '0'),
                   std::string(rp, '0')});
    }
    return u;
  }

  CopyLamp shifted(const CopyLamp& l, std::int64_t k) const {
    CopyLamp r = l;
    if (r.known_lo != -CopyLamp::kUnbounded) r.known_lo += k;
    if (r.known_hi != CopyLamp::kUnbounded) r.known_hi += k;
    for (auto& [n, v] : r.values) n += k;
    return r;
  }

  void check_unknown(std::uint32_t c, const CopyLamp& l, bool escape = false) const {
    std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = std::numeric_limits<std::int64_t>::min();
    std::int64_t lp = 1, rp = 1;
    for (const auto& bl : blocks_) {
      lo = std::min(lo, bl.copies[c].lo);
      hi = std::max(hi, bl.copies[c].hi());
      lp = std::lcm(lp, static_cast<std::int64_t>(bl.copies[c].left.size()));
      rp = std::lcm(rp, static_cast<std::int64_t>(bl.copies[c].right.size()));
    }
    auto bad = [&](std::int64_t n) { return blocks_[block_of(c, n)].a.is_trivial(); };
    auto fail = [&](std::int64_t n) {
      const std::string what = "lamp undetermined at " + std::to_string(n) + " on a discrete block";
      if (escape) throw WindowEscape(what);
      throw SchemaError("lamps", what);
    };
    if (l.known_lo != -CopyLamp::kUnbounded)
      for (auto n = l.known_lo - 1; n >= std::min(l.known_lo - 1, lo - 1) - lp; --n)
        if (bad(n)) fail(n);
    if (l.known_hi != CopyLamp::kUnbounded)
      for (auto n = l.known_hi + 1; n <= std::max(l.known_hi + 1, hi + 1) + rp; ++n)
        if (bad(n)) fail(n);
  }

  FiniteGroup b_;
  std::uint32_t copies_;
  std::vector<Block> blocks_;
  std::vector<CommAction> actions_;
};

// ---------------------------------------------------------------------------
// Uniform commensuration diagnostics.

struct CommensurationReport {
  std::vector<std::uint64_t> sums;        // per generator: sum_i #(M_i symdiff h M_i)
  std::vector<std::size_t> non_invariant;  // blocks moved by some generator
  bool window_growing = false;             // the non-invariant list grew along the windows
};

/// Blocks given as subsets of Z x {copies}, generators as shifts. Blocks need
/// not cover; a single block gives its l0.
inline CommensurationReport uniform_commensuration_check(const std::vector<CommAction>& blocks,
                                                         const std::vector<std::int64_t>& shifts) {
  CommensurationReport r;
  std::vector<bool> moved(blocks.size());
  for (auto h : shifts) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto d = blocks[i].ell0(h);
      s += d;
      if (d) moved[i] = true;
    }
    r.sums.push_back(s);
  }
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (moved[i]) r.non_invariant.push_back(i);
  return r;
}

/// A finite window: a block label per point and generator maps with -1 for a
/// point whose image leaves the window.
struct WindowedFamily {
  std::size_t points = 0;
  std::vector<std::uint32_t> block;
  std::vector<std::vector<std::int64_t>> generators;
};

/// Checks each window in turn (windows are expected to be nested); the report
/// holds sums and blocks for the last one. TailUndetermined when a generator
/// leaves the window; InvalidGroup when a generator map is not injective.
inline CommensurationReport uniform_commensuration_check(const std::vector<WindowedFamily>& windows) {
  CommensurationReport r;
  std::vector<std::size_t> counts;
  for (const auto& w : windows) {
    if (w.block.size() != w.points) throw SchemaError("block", "one block label per point");
    std::uint32_t nblocks = 0;
    for (auto b : w.block) nblocks = std::max(nblocks, b + 1);
    std::vector<bool> moved(nblocks);
    r.sums.clear();
    for (const auto& g : w.generators) {
      if (g.size() != w.points) throw SchemaError("generators", "one image per point");
      std::vector<bool> hit(w.points);
      std::uint64_t s = 0;
      for (std::size_t x = 0; x < w.points; ++x) {
        if (g[x] < 0 || static_cast<std::size_t>(g[x]) >= w.points)
          throw TailUndetermined("generator image of point " + std::to_string(x) + " leaves the window");
        const auto y = static_cast<std::size_t>(g[x]);
        if (hit[y]) throw InvalidGroup("generator map is not injective");
        hit[y] = true;
        if (w.block[y] != w.block[x]) {
          s += 2;  // y is in g M_i \ M_i and x's image leaves M_i
          moved[w.block[x]] = moved[w.block[y]] = true;
        }
      }
      r.sums.push_back(s);
    }
    r.non_invariant.clear();
    for (std::size_t i = 0; i < moved.size(); ++i)
      if (moved[i]) r.non_invariant.push_back(i);
    counts.push_back(r.non_invariant.size());
  }
  r.window_growing = counts.size() >= 2;
  for (std::size_t i = 1; i < counts.size(); ++i)
    if (counts[i] <= counts[i - 1]) r.window_growing = false;
  return r;
}

/// Q2/Z2 truncated to the points a/2^J, blocked by the order 2^i of the point,
/// with the translations by 2^-j for j = 1..J.
inline WindowedFamily dyadic_window(unsigned j_max) {
  WindowedFamily w;
  const std::int64_t n = std::int64_t{1} << j_max;
  w.points = static_cast<std::size_t>(n);
  for (std::int64_t a = 0; a < n; ++a) {
    unsigned i = 0;
    while (((a << i) & (n - 1)) != 0) ++i;
    w.block.push_back(i);
  }
  for (unsigned j = 1; j <= j_max; ++j) {
    std::vector<std::int64_t> g(w.points);
    for (std::int64_t a = 0; a < n; ++a) g[static_cast<std::size_t>(a)] = (a + (n >> j)) % n;
    w.generators.push_back(std::move(g));
  }
  return w;
}

}  // namespace wreathkit
