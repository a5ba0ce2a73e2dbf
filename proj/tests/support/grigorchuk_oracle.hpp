#pragma once

// Level-n permutation model of the Grigorchuk generators, built directly from
// the wreath recursion on integer-coded vertices. Independent of the word
// reduction, sections and minimization in the library.

#include <cstdint>
#include <map>
#include <queue>
#include <string>
#include <vector>

namespace wreathkit::oracle {

using LevelPerm = std::vector<std::uint32_t>;

/// Vertex s[0..L-1] is coded as sum s[i] * 2^(L-1-i), so the first letter is
/// the top bit.
class GrigorchukLevel {
 public:
  explicit GrigorchukLevel(unsigned level) : level_(level) {
    for (char g : std::string("abcd")) perms_[g] = build(g, level);
  }

  unsigned level() const { return level_; }
  std::size_t size() const { return std::size_t{1} << level_; }
  const LevelPerm& generator(char g) const { return perms_.at(g); }

  LevelPerm identity() const {
    LevelPerm p(size());
    for (std::uint32_t i = 0; i < p.size(); ++i) p[i] = i;
    return p;
  }

  /// Words act right to left.
  LevelPerm word(const std::string& w) const {
    LevelPerm p = identity();
    for (auto it = w.rbegin(); it != w.rend(); ++it) p = after(*it, p);
    return p;
  }

  /// g applied after p.
  LevelPerm after(char g, const LevelPerm& p) const {
    const auto& q = perms_.at(g);
    LevelPerm out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = q[p[i]];
    return out;
  }

  static bool is_identity(const LevelPerm& p) {
    for (std::uint32_t i = 0; i < p.size(); ++i)
      if (p[i] != i) return false;
    return true;
  }

  std::string decode(std::uint32_t v) const {
    std::string s(level_, '0');
    for (unsigned i = 0; i < level_; ++i)
      if (v >> (level_ - 1 - i) & 1u) s[i] = '1';
    return s;
  }

  std::uint32_t encode(const std::string& s) const {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < level_; ++i) v = v << 1 | (s[i] == '1');
    return v;
  }

 private:
  // g = (g0, g1) on level L: lower half (first bit 0) and upper half.
  static LevelPerm build(char g, unsigned level) {
    const std::size_t n = std::size_t{1} << level;
    LevelPerm p(n);
    if (level == 0) {
      p[0] = 0;
      return p;
    }
    const std::size_t half = n / 2;
    if (g == 'a') {
      for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i ^ half);
      return p;
    }
    const char left = g == 'd' ? 'e' : 'a';
    const char right = g == 'b' ? 'c' : g == 'c' ? 'd' : 'b';
    const LevelPerm l = left == 'e' ? iota(half) : build(left, level - 1);
    const LevelPerm r = build(right, level - 1);
    for (std::size_t i = 0; i < half; ++i) {
      p[i] = l[i];
      p[half + i] = static_cast<std::uint32_t>(half + r[i]);
    }
    return p;
  }

  static LevelPerm iota(std::size_t n) {
    LevelPerm p(n);
    for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
    return p;
  }

  unsigned level_;
  std::map<char, LevelPerm> perms_;
};

inline std::uint64_t permutation_order(const LevelPerm& p) {
  LevelPerm q = p;
  for (std::uint64_t k = 1;; ++k) {
    bool id = true;
    for (std::uint32_t i = 0; i < q.size() && id; ++i) id = q[i] == i;
    if (id) return k;
    LevelPerm next(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) next[i] = p[q[i]];
    q = std::move(next);
  }
}

/// |B_0|..|B_r| for generators {a,b,c,d}: enumerate every word of length <= r
/// and deduplicate by the level permutation.
inline std::vector<std::size_t> naive_grigorchuk_balls(unsigned radius, unsigned level) {
  const GrigorchukLevel model(level);
  std::map<LevelPerm, unsigned> shortest;
  std::vector<std::pair<LevelPerm, unsigned>> stack = {{model.identity(), 0}};
  while (!stack.empty()) {
    auto [p, len] = std::move(stack.back());
    stack.pop_back();
    auto [it, fresh] = shortest.emplace(p, len);
    if (!fresh) it->second = std::min(it->second, len);
    if (len == radius) continue;
    for (char g : std::string("abcd")) stack.emplace_back(model.after(g, p), len + 1);
  }
  std::vector<std::size_t> sizes(radius + 1, 0);
  for (const auto& [p, len] : shortest)
    for (unsigned n = len; n <= radius; ++n) ++sizes[n];
  return sizes;
}

/// Radius-r ball around `start` in the level-L Schreier graph, as labelled
/// vertices with one neighbour per generator (-1 outside the ball).
struct FiniteSchreier {
  std::vector<std::string> vertices;
  std::vector<int> distance;
  std::vector<std::vector<int>> neighbour;
};

inline FiniteSchreier finite_schreier_ball(const std::string& start, unsigned radius) {
  const GrigorchukLevel model(static_cast<unsigned>(start.size()));
  FiniteSchreier g;
  std::map<std::uint32_t, int> index;
  std::vector<std::uint32_t> codes = {model.encode(start)};
  index[codes[0]] = 0;
  g.distance.push_back(0);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    std::vector<int> nb;
    for (char c : std::string("abcd")) {
      const std::uint32_t img = model.generator(c)[codes[i]];
      auto it = index.find(img);
      if (it == index.end() && g.distance[i] < static_cast<int>(radius)) {
        it = index.emplace(img, static_cast<int>(codes.size())).first;
        codes.push_back(img);
        g.distance.push_back(g.distance[i] + 1);
      }
      nb.push_back(it == index.end() ? -1 : it->second);
    }
    g.neighbour.push_back(nb);
  }
  for (auto c : codes) g.vertices.push_back(model.decode(c));
  return g;
}

}  // namespace wreathkit::oracle
