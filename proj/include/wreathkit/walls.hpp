#pragma once

// Finite wallings on a window of points, the cut relation, the kernels d_mu and
// D_mu, exact l1 embeddings, and a conditionally-negative-definite test.

#include <Eigen/Dense>
#include <algorithm>
#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wreathkit/errors.hpp"
#include "wreathkit/groups.hpp"
#include "wreathkit/wreath.hpp"

namespace wreathkit {

using Rational = boost::rational<std::int64_t>;
using PointSet = std::uint64_t;  // bit i <-> ground point i

inline PointSet point_bit(std::size_t x) { return PointSet{1} << x; }

/// True iff M splits F: F meets both M and its complement.
inline bool cuts(PointSet m, PointSet f) { return (m & f) != 0 && (~m & f) != 0; }

struct Wall {
  PointSet mask = 0;
  Rational weight{0};
  friend bool operator==(const Wall&, const Wall&) = default;
};

class Walling {
 public:
  Walling() = default;

  /// InvalidWalling for an empty or full wall, a wall outside the ground, or a
  /// negative weight.
  Walling(std::size_t ground, std::vector<Wall> walls) : ground_(ground), walls_(std::move(walls)) {
    if (ground > 63) throw InvalidWalling("ground sets are limited to 63 points");
    const PointSet full = ground_mask();
    for (const auto& w : walls_) {
      if (w.mask == 0) throw InvalidWalling("empty wall");
      if (w.mask & ~full) throw InvalidWalling("wall leaves the ground set");
      if (w.mask == full) throw InvalidWalling("wall equals the whole ground set");
      if (w.weight < 0) throw InvalidWalling("negative wall weight");
    }
  }

  std::size_t ground() const { return ground_; }
  const std::vector<Wall>& walls() const { return walls_; }
  PointSet ground_mask() const { return ground_ == 64 ? ~PointSet{0} : point_bit(ground_) - 1; }

  Walling scaled(Rational k) const {
    std::vector<Wall> w = walls_;
    for (auto& x : w) x.weight *= k;
    return Walling(ground_, std::move(w));
  }

  /// "ground n", then "weight bitmask" per wall, bitmask char i <-> point i.
  std::string to_text() const {
    std::ostringstream out;
    out << "ground " << ground_ << '\n';
    for (const auto& w : walls_) {
      out << w.weight.numerator();
      if (w.weight.denominator() != 1) out << '/' << w.weight.denominator();
      out << ' ';
      for (std::size_t i = 0; i < ground_; ++i) out << ((w.mask >> i & 1) ? '1' : '0');
      out << '\n';
    }
    return out.str();
  }

 private:
  std::size_t ground_ = 0;
  std::vector<Wall> walls_;
};

inline Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  std::size_t used = 0;
  const long long num = std::stoll(s.substr(0, slash), &used);
  if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
  long long den = 1;
  if (slash != std::string::npos) {
    const std::string d = s.substr(slash + 1);
    den = std::stoll(d, &used);
    if (used != d.size() || den == 0) throw std::invalid_argument(s);
  }
  return Rational(num, den);
}

/// Parses the walling text format; every problem, including a violated
/// walling invariant, is reported as a SchemaError with its line.
inline Walling parse_walling(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::size_t ground = 0;
  bool have_header = false;
  std::vector<Wall> walls;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a)) continue;
    if (a[0] == '#') continue;
    if (!(ls >> b) || (ls >> extra)) throw SchemaError(have_header ? "wall" : "ground", "expected two fields", lineno);
    if (!have_header) {
      if (a != "ground") throw SchemaError("ground", "first line must be 'ground n'", lineno);
      try {
        ground = std::stoul(b);
      } catch (const std::exception&) {
        throw SchemaError("ground", "not a number: " + b, lineno);
      }
      have_header = true;
      continue;
    }
    Wall w;
    try {
      w.weight = parse_rational(a);
    } catch (const std::exception&) {
      throw SchemaError("weight", "not a rational: " + a, lineno);
    }
    if (b.size() != ground) throw SchemaError("bitmask", "bitmask length differs from ground size", lineno);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i] != '0' && b[i] != '1') throw SchemaError("bitmask", "bits must be 0 or 1", lineno);
      if (b[i] == '1') w.mask |= point_bit(i);
    }
    try {
      Walling(ground, {w});
    } catch (const InvalidWalling& e) {
      throw SchemaError("wall", e.what(), lineno);
    }
    walls.push_back(w);
  }
  if (!have_header) throw SchemaError("ground", "missing 'ground n' header", lineno);
  try {
    return Walling(ground, std::move(walls));
  } catch (const InvalidWalling& e) {
    throw SchemaError("ground", e.what(), 1);
  }
}

/// mu{M : M cuts F}.
inline Rational cut_weight(const Walling& w, PointSet f) {
  Rational s{0};
  for (const auto& wall : w.walls())
    if (cuts(wall.mask, f)) s += wall.weight;
  return s;
}

inline Rational d_mu(const Walling& w, std::size_t x, std::size_t y) {
  if (x >= w.ground() || y >= w.ground()) throw OutOfRange("point outside the ground set");
  return cut_weight(w, point_bit(x) | point_bit(y));
}

using KernelMatrix = std::vector<std::vector<Rational>>;

inline KernelMatrix distance_matrix(const Walling& w) {
  const std::size_t n = w.ground();
  KernelMatrix k(n, std::vector<Rational>(n, Rational{0}));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) k[x][y] = k[y][x] = d_mu(w, x, y);
  return k;
}

/// phi(x) = (weight_M [x in M])_M.
inline std::vector<std::vector<Rational>> l1_embed(const Walling& w) {
  std::vector<std::vector<Rational>> phi(w.ground(), std::vector<Rational>(w.walls().size(), Rational{0}));
  for (std::size_t x = 0; x < w.ground(); ++x)
    for (std::size_t j = 0; j < w.walls().size(); ++j)
      if (w.walls()[j].mask >> x & 1) phi[x][j] = w.walls()[j].weight;
  return phi;
}

inline Rational l1_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s{0};
  for (std::size_t i = 0; i < a.size(); ++i) s += boost::abs(a[i] - b[i]);
  return s;
}

/// Orbit sum of a walling under a finite permutation group (one permutation
/// per group element); the result is invariant under every listed permutation.
inline Walling invariant_walling(const Walling& w, const std::vector<std::vector<std::uint32_t>>& perms) {
  std::map<PointSet, Rational> acc;
  for (const auto& wall : w.walls())
    for (const auto& p : perms) {
      PointSet img = 0;
      for (std::size_t x = 0; x < w.ground(); ++x)
        if (wall.mask >> x & 1) img |= point_bit(p.at(x));
      acc[img] += wall.weight;
    }
  std::vector<Wall> walls;
  for (const auto& [m, r] : acc) walls.push_back({m, r});
  return Walling(w.ground(), std::move(walls));
}

/// D_mu(f1 h1, f2 h2) = mu{M : M cuts Supp_A(f1^-1 f2) u {h1 x0, h2 x0}}, with
/// f1^-1 f2 taken pointwise and x0 the action's basepoint. `index` maps a point
/// of X to its ground position and throws WindowEscape if it has none.
template <HSetAction Action, class Index>
Rational D_mu(const Walling& w, const Wreath<Action>& wr, const typename Wreath<Action>::Element& u1,
              const typename Wreath<Action>::Element& u2, const Subgroup& a, Index index) {
  const auto& act = wr.action();
  const auto diff = wr.multiply(wr.pointwise_inverse(u1.lamp), u2.lamp);
  PointSet f = point_bit(index(act.act(u1.top, act.basepoint()))) | point_bit(index(act.act(u2.top, act.basepoint())));
  for (const auto& [x, v] : diff)
    if (!a.contains(v)) f |= point_bit(index(x));
  return cut_weight(w, f);
}

/// Index map for actions whose points already are ground positions.
inline std::function<std::size_t(std::uint32_t)> direct_index(std::size_t ground) {
  return [ground](std::uint32_t x) -> std::size_t {
    if (x >= ground) throw WindowEscape("point " + std::to_string(x) + " is outside the walling ground");
    return x;
  };
}

inline Eigen::MatrixXd to_eigen(const KernelMatrix& k) {
  const auto n = static_cast<Eigen::Index>(k.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = boost::rational_cast<double>(k[i][j]);
  return m;
}

/// Largest eigenvalue of K on the zero-sum subspace, i.e. of P K P with
/// P = I - 11^T/n. AsymmetricInput unless K is symmetric with zero diagonal.
inline double cnd_margin(const Eigen::MatrixXd& k) {
  const Eigen::Index n = k.rows();
  if (k.cols() != n) throw AsymmetricInput("kernel matrix is not square");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (k(i, i) != 0) throw AsymmetricInput("kernel matrix has a nonzero diagonal entry");
    for (Eigen::Index j = 0; j < i; ++j)
      if (k(i, j) != k(j, i)) throw AsymmetricInput("kernel matrix is not symmetric");
  }
  if (n < 2) return 0;
  const Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd r = p * k * p;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (r + r.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

/// True iff c^T K c <= tol for all unit zero-sum vectors c.
inline bool cnd_check(const Eigen::MatrixXd& k, double tol = 1e-9) { return cnd_margin(k) <= tol; }

inline bool cnd_check(const KernelMatrix& k, double tol = 1e-9) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i].size() != k.size()) throw AsymmetricInput("kernel matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (k[i][j] != k[j][i]) throw AsymmetricInput("kernel matrix is not symmetric");
  }
  return cnd_check(to_eigen(k), tol);
}

}  // namespace wreathkit
