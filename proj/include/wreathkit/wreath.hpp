#pragma once

// Exact arithmetic in the finitely supported part B^(X) x| H of a
// semirestricted wreath product, for an H-set X seen through a finite window.
// The compact tail A^X is never materialized; supports are finite and must
// stay inside the window (WindowEscape otherwise).

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "wreathkit/errors.hpp"
#include "wreathkit/groups.hpp"

namespace wreathkit {

namespace detail {

inline void append_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

inline void append_signed(std::string& out, std::int64_t v) {
  append_varint(out, (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63));
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace detail

/// An H-set X seen through a finite window, together with the group H.
///
/// act() must be an action of H on X; in_window() decides which points an
/// element's support may occupy. The key functions append an injective byte
/// encoding used for hashing and deduplication.
template <class A>
concept HSetAction = requires(const A& a, const typename A::Top& t, const typename A::Point& p, std::string& out) {
  typename A::Top;
  typename A::Point;
  { a.identity() } -> std::same_as<typename A::Top>;
  { a.compose(t, t) } -> std::same_as<typename A::Top>;
  { a.inverse(t) } -> std::same_as<typename A::Top>;
  { a.act(t, p) } -> std::same_as<typename A::Point>;
  { a.in_window(p) } -> std::same_as<bool>;
  { a.is_identity(t) } -> std::same_as<bool>;
  { a.basepoint() } -> std::same_as<typename A::Point>;
  a.append_top_key(out, t);
  a.append_point_key(out, p);
};

/// H = Z acting on X = Z by translation; the window is [lo, hi].
class IntegerLine {
 public:
  using Top = std::int64_t;
  using Point = std::int64_t;

  IntegerLine(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {
    if (lo > hi) throw OutOfRange("empty window");
  }

  Top identity() const { return 0; }
  Top compose(Top a, Top b) const { return a + b; }
  Top inverse(Top a) const { return -a; }
  Point act(Top h, Point x) const { return x + h; }
  bool is_identity(Top h) const { return h == 0; }
  Point basepoint() const { return 0; }
  bool in_window(Point x) const { return lo_ <= x && x <= hi_; }

  // Orbit structure, used by the radical module.
  bool orbit_is_finite(Point) const { return false; }
  bool orbit_within_window(Point) const { return false; }
  bool fixes_outside_window(Top h) const { return h == 0; }
  std::vector<Point> window_points() const {
    std::vector<Point> out;
    for (auto x = lo_; x <= hi_; ++x) out.push_back(x);
    return out;
  }

  void append_top_key(std::string& out, Top h) const { detail::append_signed(out, h); }
  void append_point_key(std::string& out, Point x) const { detail::append_signed(out, x); }
  std::string top_string(Top h) const { return "t^" + std::to_string(h); }
  std::string point_string(Point x) const { return std::to_string(x); }

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }

 private:
  std::int64_t lo_, hi_;
};

/// H = Z acting faithfully on X = disjoint union of cycles Z/k for every
/// k >= 1; the window holds the cycles of length 1..max_cycle. Every orbit is
/// finite and every window orbit lies entirely in the window.
class IntegerCycles {
 public:
  using Top = std::int64_t;
  struct Point {
    std::int64_t length;
    std::int64_t residue;
    friend auto operator<=>(const Point&, const Point&) = default;
  };

  explicit IntegerCycles(std::int64_t max_cycle) : max_cycle_(max_cycle) {
    if (max_cycle < 1) throw OutOfRange("need at least one cycle");
  }

  Top identity() const { return 0; }
  Top compose(Top a, Top b) const { return a + b; }
  Top inverse(Top a) const { return -a; }
  Point act(Top h, Point x) const { return {x.length, detail::floor_mod(x.residue + h, x.length)}; }
  bool is_identity(Top h) const { return h == 0; }
  Point basepoint() const { return {1, 0}; }
  bool in_window(const Point& x) const {
    return x.length >= 1 && x.length <= max_cycle_ && x.residue >= 0 && x.residue < x.length;
  }

  bool orbit_is_finite(const Point&) const { return true; }
  bool orbit_within_window(const Point& x) const { return in_window(x); }
  // Cycles longer than max_cycle are outside the window; n fixes all of them only if n = 0.
  bool fixes_outside_window(Top h) const { return h == 0; }
  std::vector<Point> window_points() const {
    std::vector<Point> out;
    for (std::int64_t k = 1; k <= max_cycle_; ++k)
      for (std::int64_t r = 0; r < k; ++r) out.push_back({k, r});
    return out;
  }

  void append_top_key(std::string& out, Top h) const { detail::append_signed(out, h); }
  void append_point_key(std::string& out, const Point& x) const {
    detail::append_varint(out, static_cast<std::uint64_t>(x.length));
    detail::append_varint(out, static_cast<std::uint64_t>(x.residue));
  }
  std::string top_string(Top h) const { return "t^" + std::to_string(h); }
  std::string point_string(const Point& x) const {
    return std::to_string(x.residue) + "/" + std::to_string(x.length);
  }

  std::int64_t max_cycle() const { return max_cycle_; }

 private:
  std::int64_t max_cycle_;
};

/// A finite group H acting on {0..m-1} through a permutation table.
class FiniteAction {
 public:
  using Top = ElementId;
  using Point = std::uint32_t;

  /// perms[h][x] is the image of x under h; must be an action of `group`.
  FiniteAction(FiniteGroup group, std::vector<std::vector<Point>> perms)
      : group_(std::move(group)), perms_(std::move(perms)) {
    if (perms_.size() != group_.order()) throw InvalidGroup("one permutation per group element required");
    const std::size_t m = perms_.empty() ? 0 : perms_.front().size();
    for (const auto& p : perms_)
      if (p.size() != m) throw InvalidGroup("permutations of unequal degree");
    for (ElementId a = 0; a < group_.order(); ++a)
      for (ElementId b = 0; b < group_.order(); ++b)
        for (Point x = 0; x < m; ++x)
          if (perms_[group_.compose(a, b)][x] != perms_[a][perms_[b][x]])
            throw InvalidGroup("permutation table is not an action");
  }

  /// Regular action of a group on itself by left multiplication.
  static FiniteAction regular(const FiniteGroup& group) {
    std::vector<std::vector<Point>> perms(group.order(), std::vector<Point>(group.order()));
    for (ElementId h = 0; h < group.order(); ++h)
      for (ElementId x = 0; x < group.order(); ++x) perms[h][x] = group.compose(h, x);
    return FiniteAction(group, std::move(perms));
  }

  Top identity() const { return FiniteGroup::identity(); }
  Top compose(Top a, Top b) const { return group_.compose(a, b); }
  Top inverse(Top a) const { return group_.inverse(a); }
  Point act(Top h, Point x) const { return perms_.at(h).at(x); }
  bool is_identity(Top h) const { return h == FiniteGroup::identity(); }
  Point basepoint() const { return 0; }
  bool in_window(Point x) const { return x < degree(); }

  bool orbit_is_finite(Point) const { return true; }
  bool orbit_within_window(Point x) const { return in_window(x); }
  bool fixes_outside_window(Top) const { return true; }
  std::vector<Point> window_points() const {
    std::vector<Point> out(degree());
    std::iota(out.begin(), out.end(), Point{0});
    return out;
  }

  void append_top_key(std::string& out, Top h) const { detail::append_varint(out, h); }
  void append_point_key(std::string& out, Point x) const { detail::append_varint(out, x); }
  std::string top_string(Top h) const { return group_.label(h); }
  std::string point_string(Point x) const { return std::to_string(x); }

  const FiniteGroup& group() const { return group_; }
  std::size_t degree() const { return perms_.empty() ? 0 : perms_.front().size(); }

 private:
  FiniteGroup group_;
  std::vector<std::vector<Point>> perms_;
};

/// (f, h): a finitely supported lamp map f: X -> B and a top element h.
/// Lamp entries are sorted by point and never hold the identity of B.
template <class Point, class Top>
struct WreathElement {
  std::vector<std::pair<Point, ElementId>> lamp;
  Top top{};

  ElementId value_at(const Point& x) const {
    auto it = std::lower_bound(lamp.begin(), lamp.end(), x,
                               [](const auto& e, const Point& p) { return e.first < p; });
    return it != lamp.end() && it->first == x ? it->second : FiniteGroup::identity();
  }

  bool is_pure_top() const { return lamp.empty(); }

  friend bool operator==(const WreathElement&, const WreathElement&) = default;
};

/// Arithmetic in B^(X) x| H with (h.f)(x) = f(h^-1 x), so that
/// (f1,h1)(f2,h2) = (f1 * (h1.f2), h1 h2).
template <HSetAction Action>
class Wreath {
 public:
  using Point = typename Action::Point;
  using Top = typename Action::Top;
  using Element = WreathElement<Point, Top>;
  using Lamp = std::vector<std::pair<Point, ElementId>>;

  Wreath(FiniteGroup lamp_group, Action action) : b_(std::move(lamp_group)), action_(std::move(action)) {}

  const FiniteGroup& lamp_group() const { return b_; }
  const Action& action() const { return action_; }

  Element identity() const { return {{}, action_.identity()}; }

  Element top_element(Top h) const { return {{}, std::move(h)}; }

  /// delta_x(b): value b at x, identity elsewhere.
  Element delta(const Point& x, ElementId b) const {
    b_.check(b);
    require_window(x);
    Element e{{}, action_.identity()};
    if (b != FiniteGroup::identity()) e.lamp.emplace_back(x, b);
    return e;
  }

  /// Build an element from arbitrary (point, value) pairs; values at the same
  /// point are multiplied left to right.
  Element make(Lamp entries, Top h) const {
    for (const auto& [x, v] : entries) {
      require_window(x);
      b_.check(v);
    }
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    Lamp out;
    for (const auto& [x, v] : entries) {
      if (!out.empty() && out.back().first == x)
        out.back().second = b_.compose(out.back().second, v);
      else
        out.emplace_back(x, v);
    }
    std::erase_if(out, [](const auto& e) { return e.second == FiniteGroup::identity(); });
    return {std::move(out), std::move(h)};
  }

  /// h.f, the translated lamp map: (h.f)(h x) = f(x).
  Lamp translate(const Top& h, const Lamp& f) const {
    Lamp out;
    out.reserve(f.size());
    for (const auto& [x, v] : f) {
      Point y = action_.act(h, x);
      if (!action_.in_window(y))
        throw WindowEscape("support point " + describe(x) + " leaves the window under translation");
      out.emplace_back(std::move(y), v);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

  /// Pointwise product f1 * f2.
  Lamp multiply(const Lamp& f1, const Lamp& f2) const {
    Lamp out;
    out.reserve(f1.size() + f2.size());
    auto a = f1.begin(), b = f2.begin();
    while (a != f1.end() || b != f2.end()) {
      if (b == f2.end() || (a != f1.end() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == f1.end() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        const ElementId v = b_.compose(a->second, b->second);
        if (v != FiniteGroup::identity()) out.emplace_back(a->first, v);
        ++a;
        ++b;
      }
    }
    return out;
  }

  Lamp pointwise_inverse(const Lamp& f) const {
    Lamp out = f;
    for (auto& e : out) e.second = b_.inverse(e.second);
    return out;
  }

  Element compose(const Element& u, const Element& v) const {
    return {multiply(u.lamp, translate(u.top, v.lamp)), action_.compose(u.top, v.top)};
  }

  Element inverse(const Element& u) const {
    Top hinv = action_.inverse(u.top);
    Lamp lamp = translate(hinv, pointwise_inverse(u.lamp));
    return {std::move(lamp), std::move(hinv)};
  }

  Element conjugate(const Element& by, const Element& g) const {
    return compose(compose(by, g), inverse(by));
  }

  /// [u, v] = u v u^-1 v^-1.
  Element commutator(const Element& u, const Element& v) const {
    return compose(compose(u, v), compose(inverse(u), inverse(v)));
  }

  /// [fh, delta_x(b)].
  Element commutator_with_delta(const Element& u, const Point& x, ElementId b) const {
    return commutator(u, delta(x, b));
  }

  Element power(const Element& u, long long k) const {
    Element base = k < 0 ? inverse(u) : u;
    Element out = identity();
    for (long long i = 0; i < (k < 0 ? -k : k); ++i) out = compose(out, base);
    return out;
  }

  /// Points where the lamp value lies outside A.
  std::vector<Point> supp_a(const Element& u, const Subgroup& a) const {
    require_subgroup_of(b_, a);
    std::vector<Point> out;
    for (const auto& [x, v] : u.lamp)
      if (!a.contains(v)) out.push_back(x);
    return out;
  }

  std::vector<Point> support(const Element& u) const {
    std::vector<Point> out;
    for (const auto& e : u.lamp) out.push_back(e.first);
    return out;
  }

  bool in_window(const Element& u) const {
    return std::all_of(u.lamp.begin(), u.lamp.end(), [&](const auto& e) { return action_.in_window(e.first); });
  }

  /// Injective byte encoding: top key, then the sorted lamp entries.
  std::string canonical(const Element& u) const {
    std::string out;
    action_.append_top_key(out, u.top);
    detail::append_varint(out, u.lamp.size());
    for (const auto& [x, v] : u.lamp) {
      action_.append_point_key(out, x);
      detail::append_varint(out, v);
    }
    return out;
  }

  std::string to_string(const Element& u) const {
    std::string out = "{";
    for (std::size_t i = 0; i < u.lamp.size(); ++i) {
      if (i) out += ", ";
      out += describe(u.lamp[i].first) + "->" + b_.label(u.lamp[i].second);
    }
    return out + "} " + action_.top_string(u.top);
  }

 private:
  void require_window(const Point& x) const {
    if (!action_.in_window(x)) throw WindowEscape("point " + describe(x) + " is outside the window");
  }

  std::string describe(const Point& x) const { return action_.point_string(x); }

  FiniteGroup b_;
  Action action_;
};

/// Result of classifying the map induced by u: B1 -> B2 on semirestricted
/// powers: proper iff u^-1(A2) = A1, cocompact iff B1 -> B2/A2 is onto.
struct CopciClass {
  bool proper = false;
  bool cocompact = false;
  bool copci() const { return proper && cocompact; }
  friend bool operator==(const CopciClass&, const CopciClass&) = default;
};

inline CopciClass copci_classify(const HomomorphismTable& u, const Subgroup& a1, const Subgroup& a2) {
  const FiniteGroup& b1 = a1.parent();
  const FiniteGroup& b2 = a2.parent();
  if (!is_homomorphism(u, b1, b2)) throw NotHomomorphism("map is not a group homomorphism");
  for (ElementId a : a1.members())
    if (!a2.contains(u[a])) throw ImageNotInA2("u(A1) is not contained in A2");

  std::size_t preimage = 0;
  for (ElementId b = 0; b < b1.order(); ++b)
    if (a2.contains(u[b])) ++preimage;

  const LeftCosets cosets(a2);
  std::vector<bool> hit(cosets.count());
  std::size_t hits = 0;
  for (ElementId b = 0; b < b1.order(); ++b) {
    const ElementId c = cosets.coset_of(u[b]);
    if (!hit[c]) {
      hit[c] = true;
      ++hits;
    }
  }
  return {preimage == a1.order(), hits == cosets.count()};
}

}  // namespace wreathkit
