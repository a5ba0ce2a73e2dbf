#pragma once

// The first Grigorchuk group acting on the binary rooted tree, with
//   a = swap of the first letter, b = (a, c), c = (a, d), d = (1, b).
// Words are strings over {a,b,c,d} and act right to left:
// act(uv, x) = act(u, act(v, x)).

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wreathkit/errors.hpp"
#include "wreathkit/wreath.hpp"

namespace wreathkit::grigorchuk {

using Word = std::string;

inline constexpr std::string_view kGenerators = "abcd";
inline constexpr int kDefaultLevelCap = 64;

inline void check_word(std::string_view w) {
  for (char ch : w)
    if (ch < 'a' || ch > 'd') throw OutOfRange(std::string("not a Grigorchuk generator: '") + ch + "'");
}

namespace detail {

// b, c, d and 1 form a Klein four-group; index them as 1 = 0, b = 1, c = 2, d = 3.
inline int klein_index(char ch) { return ch == 'b' ? 1 : ch == 'c' ? 2 : ch == 'd' ? 3 : 0; }
inline char klein_letter(int i) { return "\0bcd"[i]; }

}  // namespace detail

/// Free reduction using a^2 = b^2 = c^2 = d^2 = 1 and bc = cb = d etc.
/// The result alternates a with one letter of {b,c,d}.
inline Word reduce(std::string_view w) {
  Word out;
  out.reserve(w.size());
  for (char ch : w) {
    if (ch == 'a') {
      if (!out.empty() && out.back() == 'a')
        out.pop_back();
      else
        out.push_back('a');
      continue;
    }
    if (ch < 'b' || ch > 'd') throw OutOfRange(std::string("not a Grigorchuk generator: '") + ch + "'");
    if (!out.empty() && out.back() != 'a') {
      const int k = detail::klein_index(out.back()) ^ detail::klein_index(ch);
      out.pop_back();
      if (k != 0) out.push_back(detail::klein_letter(k));
    } else {
      out.push_back(ch);
    }
  }
  return out;
}

/// Inverse of a word: every generator is an involution.
inline Word inverse(std::string_view w) { return reduce(Word(w.rbegin(), w.rend())); }

inline Word multiply(std::string_view u, std::string_view v) { return reduce(Word(u) + Word(v)); }

/// Image of a single generator on a finite vertex, in place.
inline void act_letter(char g, std::string& v) {
  if (v.empty()) return;
  if (g == 'a') {
    v[0] = v[0] == '0' ? '1' : '0';
    return;
  }
  char state = g;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == '0') {
      if (state != 'd' && i + 1 < v.size()) v[i + 1] = v[i + 1] == '0' ? '1' : '0';
      return;
    }
    state = state == 'b' ? 'c' : state == 'c' ? 'd' : 'b';
  }
}

/// Image of the vertex v (a string over {0,1}) under w.
inline std::string act(std::string_view w, std::string v) {
  check_word(w);
  for (auto it = w.rbegin(); it != w.rend(); ++it) act_letter(*it, v);
  return v;
}

struct Sections {
  bool swaps = false;
  Word left;   // section at 0
  Word right;  // section at 1
};

/// Root permutation and reduced first-level sections: w = swap^s (left, right).
inline Sections sections(std::string_view w) {
  Sections s;
  std::array<Word, 2> parts;
  // Track where each starting letter currently sits while reading right to left.
  std::array<int, 2> pos = {0, 1};
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const char g = *it;
    for (int start = 0; start < 2; ++start) {
      const int x = pos[start];
      char sec = 0;
      switch (g) {
        case 'a': break;
        case 'b': sec = x == 0 ? 'a' : 'c'; break;
        case 'c': sec = x == 0 ? 'a' : 'd'; break;
        case 'd': sec = x == 0 ? 0 : 'b'; break;
        default: throw OutOfRange(std::string("not a Grigorchuk generator: '") + g + "'");
      }
      if (sec) parts[start].push_back(sec);
      if (g == 'a') pos[start] ^= 1;
    }
  }
  s.swaps = pos[0] == 1;
  for (auto& p : parts) std::reverse(p.begin(), p.end());
  s.left = reduce(parts[0]);
  s.right = reduce(parts[1]);
  return s;
}

/// The finite Mealy automaton of all states reachable from w.
struct StateAutomaton {
  std::vector<Word> words;
  std::vector<bool> swaps;
  std::vector<std::array<std::uint32_t, 2>> next;
};

inline StateAutomaton reachable_states(std::string_view w, int level_cap = kDefaultLevelCap) {
  StateAutomaton m;
  std::unordered_map<Word, std::uint32_t> index;
  std::vector<int> depth;
  auto add = [&](Word s, int d) {
    auto [it, fresh] = index.emplace(std::move(s), static_cast<std::uint32_t>(m.words.size()));
    if (fresh) {
      if (d > level_cap) throw LevelCapExceeded("section recursion exceeded level " + std::to_string(level_cap));
      m.words.push_back(it->first);
      depth.push_back(d);
    }
    return it->second;
  };
  add(reduce(w), 0);
  for (std::size_t i = 0; i < m.words.size(); ++i) {
    const Sections s = sections(m.words[i]);
    const int d = depth[i] + 1;
    const std::uint32_t l = add(s.left, d);
    const std::uint32_t r = add(s.right, d);
    m.swaps.push_back(s.swaps);
    m.next.push_back({l, r});
  }
  return m;
}

/// Word problem: w is trivial iff no reachable state swaps at the root.
inline bool is_identity(std::string_view w, int level_cap = kDefaultLevelCap) {
  const Word r = reduce(w);
  if (r.empty()) return true;
  const auto m = reachable_states(r, level_cap);
  return std::none_of(m.swaps.begin(), m.swaps.end(), [](bool s) { return s; });
}

/// Injective key for the group element of w: its minimized state automaton,
/// numbered breadth-first from the initial state.
inline std::string canonical_key(std::string_view w, int level_cap = kDefaultLevelCap) {
  const auto m = reachable_states(w, level_cap);
  const std::size_t n = m.words.size();
  std::vector<std::uint32_t> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = m.swaps[i] ? 1 : 0;
  std::size_t count = 0;
  for (;;) {
    std::map<std::array<std::uint32_t, 3>, std::uint32_t> sig;
    std::vector<std::uint32_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::array<std::uint32_t, 3> key = {cls[i], cls[m.next[i][0]], cls[m.next[i][1]]};
      next[i] = sig.emplace(key, static_cast<std::uint32_t>(sig.size())).first->second;
    }
    const bool stable = sig.size() == count;
    count = sig.size();
    cls = std::move(next);
    if (stable) break;
  }
  std::vector<std::uint32_t> rep(count, UINT32_MAX);
  for (std::size_t i = 0; i < n; ++i)
    if (rep[cls[i]] == UINT32_MAX) rep[cls[i]] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> number(count, UINT32_MAX);
  std::vector<std::uint32_t> order;
  number[cls[0]] = 0;
  order.push_back(cls[0]);
  std::string out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::uint32_t s = rep[order[k]];
    out.push_back(m.swaps[s] ? '1' : '0');
    for (int side = 0; side < 2; ++side) {
      const std::uint32_t c = cls[m.next[s][side]];
      if (number[c] == UINT32_MAX) {
        number[c] = static_cast<std::uint32_t>(order.size());
        order.push_back(c);
      }
      ::wreathkit::detail::append_varint(out, number[c]);
    }
  }
  return out;
}

/// Order of the element w, or 0 if it exceeds max_order.
inline std::uint64_t element_order(std::string_view w, std::uint64_t max_order = 1u << 12) {
  Word p = reduce(w);
  for (std::uint64_t k = 1; k <= max_order; ++k) {
    if (is_identity(p)) return k;
    p = multiply(p, w);
  }
  return 0;
}

/// Eventually periodic boundary ray: prefix followed by period repeated forever.
struct Ray {
  std::string prefix;
  std::string period;

  char bit(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return period[(i - prefix.size()) % period.size()];
  }
};

/// Parses "1^inf", "(01)^inf" and an optional " prefix=110".
inline Ray parse_ray(std::string_view text) {
  auto bad = [&](const std::string& why) { return SchemaError("ray", why + " in '" + std::string(text) + "'"); };
  Ray r;
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  const auto caret = s.find("^inf");
  if (caret == std::string_view::npos) throw bad("missing '^inf'");
  std::string_view body = s.substr(0, caret);
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
  r.period = std::string(body);
  std::string_view rest = s.substr(caret + 4);
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  if (!rest.empty()) {
    constexpr std::string_view key = "prefix=";
    if (rest.substr(0, key.size()) != key) throw bad("expected 'prefix='");
    r.prefix = std::string(rest.substr(key.size()));
    while (!r.prefix.empty() && r.prefix.back() == ' ') r.prefix.pop_back();
  }
  if (r.period.empty()) throw bad("empty period");
  for (char ch : r.period + r.prefix)
    if (ch != '0' && ch != '1') throw bad("bits must be 0 or 1");
  return r;
}

/// Orbit points of a ray are stored as their shortest deviation: the point is
/// `dev` followed by the ray from position |dev| on, and dev's last bit differs
/// from the ray there.
class RayOrbit {
 public:
  explicit RayOrbit(Ray ray, int level_cap = kDefaultLevelCap) : ray_(std::move(ray)), cap_(level_cap) {}

  const Ray& ray() const { return ray_; }
  int level_cap() const { return cap_; }

  std::string apply_letter(char g, std::string dev) const {
    if (g == 'a') {
      touch(dev, 0);
      dev[0] ^= 1;
      return normalize(std::move(dev));
    }
    const std::size_t tail_start = std::max(dev.size(), ray_.prefix.size());
    std::set<std::pair<char, std::size_t>> seen;
    char state = g;
    for (std::size_t i = 0;; ++i) {
      if (i >= tail_start && !seen.emplace(state, (i - ray_.prefix.size()) % ray_.period.size()).second)
        return dev;  // the walk follows the periodic tail forever: nothing moves
      const char bit = i < dev.size() ? dev[i] : ray_.bit(i);
      if (bit == '0') {
        if (state == 'd') return dev;
        touch(dev, i + 1);
        dev[i + 1] ^= 1;
        return normalize(std::move(dev));
      }
      state = state == 'b' ? 'c' : state == 'c' ? 'd' : 'b';
    }
  }

  std::string apply(std::string_view w, std::string dev) const {
    check_word(w);
    for (auto it = w.rbegin(); it != w.rend(); ++it) dev = apply_letter(*it, std::move(dev));
    return dev;
  }

  /// First `level` bits of the point.
  std::string truncate(const std::string& dev, std::size_t level) const {
    std::string out;
    for (std::size_t i = 0; i < level; ++i) out.push_back(i < dev.size() ? dev[i] : ray_.bit(i));
    return out;
  }

 private:
  void touch(std::string& dev, std::size_t i) const {
    if (i >= static_cast<std::size_t>(cap_))
      throw LevelExhausted("orbit point deviates from the ray beyond level " + std::to_string(cap_));
    while (dev.size() <= i) dev.push_back(ray_.bit(dev.size()));
  }

  std::string normalize(std::string dev) const {
    while (!dev.empty() && dev.back() == ray_.bit(dev.size() - 1)) dev.pop_back();
    return dev;
  }

  Ray ray_;
  int cap_;
};

/// Window of the Schreier graph of the ray's orbit: the ball of radius r
/// around the ray itself, with one (possibly looping) edge per generator.
struct SchreierBall {
  std::vector<std::string> points;  // deviations, points[0] is the ray
  std::vector<int> distance;
  std::vector<std::array<int, 4>> neighbour;  // -1 when outside the ball

  std::size_t size() const { return points.size(); }

  /// Simple-graph degree (loops and parallel edges collapsed).
  std::size_t degree(std::size_t v) const {
    std::set<int> s;
    for (int u : neighbour[v])
      if (u >= 0 && u != static_cast<int>(v)) s.insert(u);
    return s.size();
  }

  /// Number of components of the annulus r/2 < dist <= r that reach the sphere.
  std::size_t end_estimate() const {
    const int r = distance.empty() ? 0 : *std::max_element(distance.begin(), distance.end());
    const int inner = r / 2;
    std::vector<int> comp(size(), -1);
    std::size_t ends = 0;
    for (std::size_t s = 0; s < size(); ++s) {
      if (distance[s] <= inner || comp[s] >= 0) continue;
      bool reaches = false;
      std::vector<std::size_t> stack = {s};
      comp[s] = static_cast<int>(s);
      while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        reaches |= distance[v] == r;
        for (int u : neighbour[v])
          if (u >= 0 && distance[u] > inner && comp[u] < 0) {
            comp[u] = static_cast<int>(s);
            stack.push_back(static_cast<std::size_t>(u));
          }
      }
      if (reaches) ++ends;
    }
    return ends;
  }
};

inline SchreierBall schreier_ball(const RayOrbit& orbit, int radius) {
  SchreierBall g;
  std::map<std::string, int> index;
  g.points.push_back("");
  g.distance.push_back(0);
  index.emplace("", 0);
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    std::array<int, 4> nb{};
    for (int k = 0; k < 4; ++k) {
      const std::string img = orbit.apply_letter(kGenerators[k], g.points[i]);
      auto it = index.find(img);
      if (it == index.end() && g.distance[i] < radius) {
        it = index.emplace(img, static_cast<int>(g.points.size())).first;
        g.points.push_back(img);
        g.distance.push_back(g.distance[i] + 1);
      }
      nb[k] = it == index.end() ? -1 : it->second;
    }
    g.neighbour.push_back(nb);
  }
  return g;
}

}  // namespace wreathkit::grigorchuk

namespace wreathkit {

/// The Grigorchuk group acting on the orbit of a boundary ray; points are
/// deviation strings. The window is the set of points deviating within the
/// orbit's level cap.
class GrigorchukSchreier {
 public:
  using Top = grigorchuk::Word;
  using Point = std::string;

  explicit GrigorchukSchreier(grigorchuk::RayOrbit orbit) : orbit_(std::move(orbit)) {}

  Top identity() const { return {}; }
  Top compose(const Top& a, const Top& b) const { return grigorchuk::multiply(a, b); }
  Top inverse(const Top& a) const { return grigorchuk::inverse(a); }
  Point act(const Top& h, const Point& x) const { return orbit_.apply(h, x); }
  bool is_identity(const Top& h) const { return grigorchuk::is_identity(h); }
  Point basepoint() const { return {}; }
  bool in_window(const Point& x) const { return x.size() <= static_cast<std::size_t>(orbit_.level_cap()); }

  // A single infinite orbit on which the group acts faithfully.
  bool orbit_is_finite(const Point&) const { return false; }
  bool orbit_within_window(const Point&) const { return false; }
  bool fixes_outside_window(const Top& h) const { return is_identity(h); }

  void append_top_key(std::string& out, const Top& h) const {
    const std::string k = grigorchuk::canonical_key(h);
    detail::append_varint(out, k.size());
    out += k;
  }
  void append_point_key(std::string& out, const Point& x) const {
    detail::append_varint(out, x.size());
    out += x;
  }
  std::string top_string(const Top& h) const { return h.empty() ? "1" : h; }
  std::string point_string(const Point& x) const { return x.empty() ? "ray" : x; }

  const grigorchuk::RayOrbit& orbit() const { return orbit_; }

 private:
  grigorchuk::RayOrbit orbit_;
};

}  // namespace wreathkit
