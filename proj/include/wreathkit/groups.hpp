#pragma once

// Finite groups as explicit multiplication tables, plus the subgroup calculus
// (cores, normal closures, conjugacy classes, cosets) the other modules use.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wreathkit/errors.hpp"

namespace wreathkit {

using ElementId = std::uint32_t;

/// Immutable finite group given by its Cayley table. Element 0 is the identity.
/// Copies share the underlying table.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<ElementId>>;

  /// Validates the full group law (identity at 0, Latin square, associativity).
  static FiniteGroup from_table(const Table& table, std::vector<std::string> labels = {}) {
    const std::size_t n = table.size();
    if (n == 0) throw InvalidGroup("empty table");
    auto data = std::make_shared<Data>();
    data->order = n;
    data->table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (table[i].size() != n) throw InvalidGroup("table row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < n; ++j) {
        if (table[i][j] >= n) throw InvalidGroup("table entry out of range");
        data->table[i * n + j] = table[i][j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (data->table[i] != i || data->table[i * n] != i)
        throw InvalidGroup("element 0 is not a two-sided identity");
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<bool> row(n), col(n);
      for (std::size_t j = 0; j < n; ++j) {
        row[data->table[i * n + j]] = true;
        col[data->table[j * n + i]] = true;
      }
      if (std::find(row.begin(), row.end(), false) != row.end() ||
          std::find(col.begin(), col.end(), false) != col.end())
        throw InvalidGroup("table is not a Latin square");
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const ElementId ab = data->table[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (data->table[ab * n + c] != data->table[a * n + data->table[b * n + c]])
            throw InvalidGroup("table is not associative");
      }
    data->fill_inverses();
    data->labels = std::move(labels);
    data->fill_default_labels();
    return FiniteGroup(std::move(data));
  }

  /// Z/k, element i is the residue i.
  static FiniteGroup cyclic(unsigned k) {
    if (k == 0) throw InvalidGroup("cyclic group of order 0");
    auto data = std::make_shared<Data>();
    data->order = k;
    data->table.resize(std::size_t{k} * k);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) data->table[i * k + j] = (i + j) % k;
    data->fill_inverses();
    data->fill_default_labels();
    return FiniteGroup(std::move(data));
  }

  /// Dihedral group of order 2k; element i + k*j is r^i s^j with s r s = r^-1.
  static FiniteGroup dihedral(unsigned k) {
    if (k == 0) throw InvalidGroup("dihedral group needs k >= 1");
    auto data = std::make_shared<Data>();
    const unsigned n = 2 * k;
    data->order = n;
    data->table.resize(std::size_t{n} * n);
    for (unsigned g = 0; g < n; ++g)
      for (unsigned h = 0; h < n; ++h) {
        const unsigned a = g % k, x = g / k, b = h % k, y = h / k;
        const unsigned rot = x == 0 ? (a + b) % k : (a + k - b) % k;
        data->table[g * n + h] = rot + k * ((x + y) % 2);
      }
    data->labels.resize(n);
    for (unsigned g = 0; g < n; ++g) {
      const unsigned a = g % k;
      std::string s = a == 0 ? "e" : "r^" + std::to_string(a);
      if (g >= k) s = a == 0 ? "s" : "r^" + std::to_string(a) + "s";
      data->labels[g] = s;
    }
    data->fill_inverses();
    return FiniteGroup(std::move(data));
  }

  /// Symmetric group on {0..n-1}, elements in lexicographic order of their
  /// one-line notation (identity first). Composition is (p*q)(i) = p(q(i)).
  static FiniteGroup symmetric(unsigned n) {
    if (n == 0 || n > 6) throw InvalidGroup("symmetric group supported for 1 <= n <= 6");
    auto data = std::make_shared<Data>();
    std::vector<unsigned> perm(n);
    std::iota(perm.begin(), perm.end(), 0u);
    do {
      data->permutations.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const std::size_t order = data->permutations.size();
    data->order = order;
    data->table.resize(order * order);
    for (std::size_t a = 0; a < order; ++a)
      for (std::size_t b = 0; b < order; ++b) {
        std::vector<unsigned> c(n);
        for (unsigned i = 0; i < n; ++i) c[i] = data->permutations[a][data->permutations[b][i]];
        data->table[a * order + b] = static_cast<ElementId>(permutation_rank(c));
      }
    data->labels.resize(order);
    for (std::size_t g = 0; g < order; ++g) data->labels[g] = cycle_notation(data->permutations[g]);
    data->fill_inverses();
    return FiniteGroup(std::move(data));
  }

  /// G x H with element g*|H| + h.
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    auto data = std::make_shared<Data>();
    const std::size_t m = h.order();
    const std::size_t n = g.order() * m;
    data->order = n;
    data->table.resize(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const auto gx = static_cast<ElementId>(x / m), hx = static_cast<ElementId>(x % m);
        const auto gy = static_cast<ElementId>(y / m), hy = static_cast<ElementId>(y % m);
        data->table[x * n + y] = static_cast<ElementId>(g.compose(gx, gy) * m + h.compose(hx, hy));
      }
    data->labels.resize(n);
    for (std::size_t x = 0; x < n; ++x)
      data->labels[x] = "(" + g.label(static_cast<ElementId>(x / m)) + "," +
                        h.label(static_cast<ElementId>(x % m)) + ")";
    data->fill_inverses();
    return FiniteGroup(std::move(data));
  }

  std::size_t order() const noexcept { return data_->order; }
  static constexpr ElementId identity() noexcept { return 0; }

  ElementId compose(ElementId g, ElementId h) const {
    check(g);
    check(h);
    return data_->table[g * data_->order + h];
  }

  ElementId inverse(ElementId g) const {
    check(g);
    return data_->inverse[g];
  }

  ElementId conjugate(ElementId by, ElementId g) const {
    return compose(compose(by, g), inverse(by));
  }

  ElementId power(ElementId g, long long k) const {
    check(g);
    if (k < 0) {
      g = inverse(g);
      k = -k;
    }
    ElementId out = identity();
    for (long long i = 0; i < k; ++i) out = compose(out, g);
    return out;
  }

  unsigned element_order(ElementId g) const {
    check(g);
    unsigned k = 1;
    for (ElementId x = g; x != identity(); x = compose(x, g)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (ElementId a = 0; a < order(); ++a)
      for (ElementId b = a + 1; b < order(); ++b)
        if (compose(a, b) != compose(b, a)) return false;
    return true;
  }

  const std::string& label(ElementId g) const {
    check(g);
    return data_->labels[g];
  }

  std::optional<ElementId> find_label(const std::string& s) const {
    for (ElementId g = 0; g < order(); ++g)
      if (data_->labels[g] == s) return g;
    return std::nullopt;
  }

  /// One-line notation when the group was built by symmetric().
  std::optional<std::vector<unsigned>> as_permutation(ElementId g) const {
    check(g);
    if (data_->permutations.empty()) return std::nullopt;
    return data_->permutations[g];
  }

  /// Element id of a one-line permutation in symmetric(n).
  ElementId from_permutation(std::span<const unsigned> perm) const {
    if (data_->permutations.empty() || perm.size() != data_->permutations.front().size())
      throw InvalidGroup("not a symmetric group of matching degree");
    return static_cast<ElementId>(permutation_rank(perm));
  }

  bool same_group(const FiniteGroup& other) const noexcept { return data_ == other.data_; }

  void check(ElementId g) const {
    if (g >= data_->order)
      throw OutOfRange("element id " + std::to_string(g) + " out of range for group of order " +
                       std::to_string(data_->order));
  }

 private:
  struct Data {
    std::size_t order = 0;
    std::vector<ElementId> table;
    std::vector<ElementId> inverse;
    std::vector<std::string> labels;
    std::vector<std::vector<unsigned>> permutations;

    void fill_inverses() {
      inverse.assign(order, 0);
      for (std::size_t g = 0; g < order; ++g)
        for (std::size_t h = 0; h < order; ++h)
          if (table[g * order + h] == 0) {
            inverse[g] = static_cast<ElementId>(h);
            break;
          }
    }

    void fill_default_labels() {
      if (labels.size() == order) return;
      labels.resize(order);
      for (std::size_t g = 0; g < order; ++g) labels[g] = std::to_string(g);
    }
  };

  explicit FiniteGroup(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  static std::size_t permutation_rank(std::span<const unsigned> perm) {
    // Lehmer code in lexicographic order.
    const std::size_t n = perm.size();
    std::size_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t smaller = 0;
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[j] < perm[i]) ++smaller;
      std::size_t fact = 1;
      for (std::size_t k = 2; k < n - i; ++k) fact *= k;
      rank += smaller * fact;
    }
    return rank;
  }

  static std::string cycle_notation(const std::vector<unsigned>& perm) {
    std::string out;
    std::vector<bool> seen(perm.size());
    for (unsigned i = 0; i < perm.size(); ++i) {
      if (seen[i] || perm[i] == i) continue;
      out += "(";
      for (unsigned j = i; !seen[j]; j = perm[j]) {
        seen[j] = true;
        out += std::to_string(j + 1);
      }
      out += ")";
    }
    return out.empty() ? "e" : out;
  }

  std::shared_ptr<const Data> data_;
};

/// A subgroup of a finite group, kept as a sorted member list plus a bitmap.
class Subgroup {
 public:
  static Subgroup from_members(const FiniteGroup& parent, std::vector<ElementId> members) {
    std::vector<bool> in(parent.order());
    for (ElementId m : members) {
      parent.check(m);
      in[m] = true;
    }
    if (!in[FiniteGroup::identity()]) throw NotASubgroup("subset does not contain the identity");
    for (std::size_t a = 0; a < in.size(); ++a) {
      if (!in[a]) continue;
      if (!in[parent.inverse(static_cast<ElementId>(a))])
        throw NotASubgroup("subset is not closed under inverses");
      for (std::size_t b = 0; b < in.size(); ++b)
        if (in[b] && !in[parent.compose(static_cast<ElementId>(a), static_cast<ElementId>(b))])
          throw NotASubgroup("subset is not closed under the group law");
    }
    return Subgroup(parent, std::move(in));
  }

  static Subgroup generated_by(const FiniteGroup& parent, std::span<const ElementId> gens) {
    std::vector<bool> in(parent.order());
    std::vector<ElementId> frontier{FiniteGroup::identity()};
    in[FiniteGroup::identity()] = true;
    while (!frontier.empty()) {
      const ElementId x = frontier.back();
      frontier.pop_back();
      for (ElementId g : gens) {
        const ElementId y = parent.compose(x, g);
        if (!in[y]) {
          in[y] = true;
          frontier.push_back(y);
        }
      }
    }
    return Subgroup(parent, std::move(in));
  }

  static Subgroup trivial(const FiniteGroup& parent) { return generated_by(parent, {}); }

  static Subgroup whole(const FiniteGroup& parent) {
    return Subgroup(parent, std::vector<bool>(parent.order(), true));
  }

  const FiniteGroup& parent() const noexcept { return parent_; }
  bool contains(ElementId g) const { return g < in_.size() && in_[g]; }
  const std::vector<ElementId>& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_whole() const noexcept { return members_.size() == in_.size(); }

  bool is_subset_of(const Subgroup& other) const {
    return std::all_of(members_.begin(), members_.end(), [&](ElementId g) { return other.contains(g); });
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_.same_group(b.parent_) && a.members_ == b.members_;
  }

 private:
  Subgroup(FiniteGroup parent, std::vector<bool> in) : parent_(std::move(parent)), in_(std::move(in)) {
    for (std::size_t g = 0; g < in_.size(); ++g)
      if (in_[g]) members_.push_back(static_cast<ElementId>(g));
  }

  FiniteGroup parent_;
  std::vector<bool> in_;
  std::vector<ElementId> members_;
};

inline void require_subgroup_of(const FiniteGroup& g, const Subgroup& a) {
  if (!a.parent().same_group(g)) throw NotASubgroup("subgroup belongs to a different group");
}

/// Orbit of g under conjugation, sorted.
inline std::vector<ElementId> conjugacy_class(ElementId g, const FiniteGroup& group) {
  group.check(g);
  std::vector<bool> seen(group.order());
  std::vector<ElementId> out;
  for (ElementId b = 0; b < group.order(); ++b) {
    const ElementId c = group.conjugate(b, g);
    if (!seen[c]) {
      seen[c] = true;
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<ElementId>> conjugacy_classes(const FiniteGroup& group) {
  std::vector<std::vector<ElementId>> classes;
  std::vector<bool> seen(group.order());
  for (ElementId g = 0; g < group.order(); ++g) {
    if (seen[g]) continue;
    classes.push_back(conjugacy_class(g, group));
    for (ElementId c : classes.back()) seen[c] = true;
  }
  return classes;
}

inline bool is_normal(const FiniteGroup& group, const Subgroup& a) {
  require_subgroup_of(group, a);
  for (ElementId b = 0; b < group.order(); ++b)
    for (ElementId x : a.members())
      if (!a.contains(group.conjugate(b, x))) return false;
  return true;
}

/// Largest normal subgroup of B contained in A: the intersection of all bAb^-1.
inline Subgroup core(const FiniteGroup& b_group, const Subgroup& a) {
  require_subgroup_of(b_group, a);
  std::vector<ElementId> kept;
  for (ElementId x : a.members()) {
    bool in_all = true;
    // x lies in bAb^-1 iff b^-1 x b lies in A.
    for (ElementId b = 0; b < b_group.order() && in_all; ++b)
      in_all = a.contains(b_group.conjugate(b_group.inverse(b), x));
    if (in_all) kept.push_back(x);
  }
  return Subgroup::from_members(b_group, std::move(kept));
}

/// Smallest normal subgroup containing `generators`.
inline Subgroup normal_closure(std::span<const ElementId> generators, const FiniteGroup& group) {
  std::vector<ElementId> conjugates;
  for (ElementId s : generators) {
    const auto cls = conjugacy_class(s, group);
    conjugates.insert(conjugates.end(), cls.begin(), cls.end());
  }
  return Subgroup::generated_by(group, conjugates);
}

/// Every normal subgroup, found as the unions of conjugacy classes that are
/// closed under the group law. Exponential in the number of classes.
inline std::vector<Subgroup> normal_subgroups(const FiniteGroup& group) {
  const auto classes = conjugacy_classes(group);
  if (classes.size() > 20) throw SizeBudgetExceeded("too many conjugacy classes for enumeration");
  std::vector<Subgroup> out;
  const std::size_t rest = classes.size() - 1;  // classes[0] is {e}
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest); ++mask) {
    std::vector<ElementId> members{FiniteGroup::identity()};
    for (std::size_t i = 0; i < rest; ++i)
      if (mask >> i & 1) members.insert(members.end(), classes[i + 1].begin(), classes[i + 1].end());
    try {
      out.push_back(Subgroup::from_members(group, std::move(members)));
    } catch (const NotASubgroup&) {
    }
  }
  return out;
}

/// Left cosets bA of a subgroup A; coset ids are dense, coset 0 is A itself.
class LeftCosets {
 public:
  explicit LeftCosets(const Subgroup& a) : group_(a.parent()), coset_of_(a.parent().order(), kUnset) {
    for (ElementId b = 0; b < group_.order(); ++b) {
      if (coset_of_[b] != kUnset) continue;
      const auto id = static_cast<ElementId>(representatives_.size());
      representatives_.push_back(b);
      for (ElementId x : a.members()) coset_of_[group_.compose(b, x)] = id;
    }
  }

  std::size_t count() const noexcept { return representatives_.size(); }
  ElementId coset_of(ElementId b) const {
    group_.check(b);
    return coset_of_[b];
  }
  ElementId representative(ElementId coset) const { return representatives_.at(coset); }

  /// Left action b . (cA) = (bc)A.
  ElementId act(ElementId b, ElementId coset) const {
    return coset_of(group_.compose(b, representative(coset)));
  }

 private:
  static constexpr ElementId kUnset = ~ElementId{0};
  FiniteGroup group_;
  std::vector<ElementId> coset_of_;
  std::vector<ElementId> representatives_;
};

/// A map between finite groups, listed as images of element ids.
using HomomorphismTable = std::vector<ElementId>;

inline bool is_homomorphism(const HomomorphismTable& u, const FiniteGroup& from, const FiniteGroup& to) {
  if (u.size() != from.order()) return false;
  for (ElementId img : u)
    if (img >= to.order()) return false;
  for (ElementId a = 0; a < from.order(); ++a)
    for (ElementId b = 0; b < from.order(); ++b)
      if (u[from.compose(a, b)] != to.compose(u[a], u[b])) return false;
  return true;
}

/// Left-regular action of F on itself as a homomorphism into S_|F|, with
/// elements of F numbered by their ids.
struct RegularEmbedding {
  FiniteGroup symmetric;
  HomomorphismTable map;
  Subgroup point_stabilizer;  // stabilizer of the point 0 (the identity of F)
};

inline RegularEmbedding left_regular_embedding(const FiniteGroup& f) {
  const auto n = static_cast<unsigned>(f.order());
  FiniteGroup sym = FiniteGroup::symmetric(n);
  HomomorphismTable map(n);
  for (ElementId g = 0; g < n; ++g) {
    std::vector<unsigned> perm(n);
    for (ElementId x = 0; x < n; ++x) perm[x] = f.compose(g, x);
    map[g] = sym.from_permutation(perm);
  }
  std::vector<ElementId> stab;
  for (ElementId s = 0; s < sym.order(); ++s)
    if ((*sym.as_permutation(s))[0] == 0) stab.push_back(s);
  Subgroup stabilizer = Subgroup::from_members(sym, std::move(stab));
  return {std::move(sym), std::move(map), std::move(stabilizer)};
}

}  // namespace wreathkit
