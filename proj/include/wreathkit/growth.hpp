#pragma once

// Breadth-first ball enumeration over any group whose elements have an
// injective byte key, and least-squares growth diagnostics on the result.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wreathkit/errors.hpp"

namespace wreathkit {

struct GrowthOptions {
  unsigned jobs = 1;
  /// 0 means: take WREATHKIT_BUDGET_MB from the environment, else unlimited.
  std::size_t budget_bytes = 0;
};

inline std::size_t effective_budget(const GrowthOptions& opt) {
  if (opt.budget_bytes) return opt.budget_bytes;
  if (const char* env = std::getenv("WREATHKIT_BUDGET_MB")) {
    char* end = nullptr;
    const unsigned long long mb = std::strtoull(env, &end, 10);
    if (end != env && mb > 0) return static_cast<std::size_t>(mb) << 20;
  }
  return 0;
}

/// Elements of the ball of radius r in discovery order, grouped by sphere.
/// Discovery order is: sphere n-1 in order, times generators in order.
template <class E>
struct Ball {
  std::vector<E> elements;
  std::vector<std::string> keys;
  std::vector<std::size_t> sphere_start;  // sphere n is [sphere_start[n], sphere_start[n+1])
  std::unordered_map<std::string, std::uint32_t> index;

  std::size_t radius() const { return sphere_start.size() - 2; }
  std::size_t size() const { return elements.size(); }
};

template <class E, class Compose, class Key>
Ball<E> enumerate_ball(const std::vector<E>& gens, const E& identity, Compose compose, Key key, unsigned radius,
                       const GrowthOptions& opt = {}) {
  const std::size_t budget = effective_budget(opt);
  std::size_t used = 0;
  Ball<E> ball;
  auto exceeded = [budget] {
    return MemoryBudgetExceeded("ball enumeration exceeded " + std::to_string(budget) + " bytes");
  };
  // Rough resident cost of one stored element: the element with its heap
  // (estimated from the key length), the key held twice, vector slack and a
  // hash node.
  auto cost = [](std::size_t key_size) {
    const std::size_t str = sizeof(std::string) + (key_size > 15 ? key_size + 16 : 0);
    return 2 * sizeof(E) + 2 * key_size + 32 + 3 * str + 64;
  };
  auto admit = [&](E e, std::string k) {
    used += cost(k.size());
    if (budget && used > budget) throw exceeded();
    ball.index.emplace(k, static_cast<std::uint32_t>(ball.elements.size()));
    ball.keys.push_back(std::move(k));
    ball.elements.push_back(std::move(e));
  };
  ball.sphere_start.push_back(0);
  admit(identity, key(identity));
  ball.sphere_start.push_back(1);

  const unsigned jobs = std::max(1u, opt.jobs);
  for (unsigned n = 1; n <= radius; ++n) {
    const std::size_t lo = ball.sphere_start[n - 1], hi = ball.sphere_start[n];
    const std::size_t count = hi - lo;
    std::vector<std::vector<std::pair<E, std::string>>> parts(jobs);
    const std::size_t share = budget ? (budget > used ? budget - used : 0) / jobs : 0;
    auto work = [&](unsigned j) {
      const std::size_t a = lo + count * j / jobs, b = lo + count * (j + 1) / jobs;
      std::size_t pending = 0;
      for (std::size_t i = a; i < b; ++i)
        for (const E& s : gens) {
          E p = compose(ball.elements[i], s);
          std::string k = key(p);
          if (ball.index.count(k)) continue;
          pending += cost(k.size());
          if (budget && pending > share) throw exceeded();
          parts[j].emplace_back(std::move(p), std::move(k));
        }
    };
    if (jobs == 1 || count < 64) {
      for (unsigned j = 0; j < jobs; ++j) work(j);
    } else {
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> errors(jobs);
      for (unsigned j = 0; j < jobs; ++j)
        threads.emplace_back([&, j] {
          try {
            work(j);
          } catch (...) {
            errors[j] = std::current_exception();
          }
        });
      for (auto& t : threads) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (auto& part : parts)
      for (auto& [e, k] : part)
        if (!ball.index.count(k)) admit(std::move(e), std::move(k));
    ball.sphere_start.push_back(ball.elements.size());
  }
  return ball;
}

struct GrowthTable {
  std::vector<std::size_t> sizes;    // |B_0| .. |B_r|
  std::vector<std::size_t> spheres;  // |S_0| .. |S_r|
  std::string generators;

  std::size_t radius() const { return sizes.empty() ? 0 : sizes.size() - 1; }

  static GrowthTable from_sizes(std::vector<std::size_t> sizes, std::string generators = {}) {
    GrowthTable t;
    t.generators = std::move(generators);
    for (std::size_t n = 0; n < sizes.size(); ++n) t.spheres.push_back(n ? sizes[n] - sizes[n - 1] : sizes[0]);
    t.sizes = std::move(sizes);
    return t;
  }

  /// "radius,ball,sphere" header and one row per radius.
  std::string csv() const {
    std::string out = "radius,ball,sphere\n";
    for (std::size_t n = 0; n < sizes.size(); ++n)
      out += std::to_string(n) + "," + std::to_string(sizes[n]) + "," + std::to_string(spheres[n]) + "\n";
    return out;
  }
};

template <class E>
GrowthTable table_of(const Ball<E>& ball, std::string generators = {}) {
  std::vector<std::size_t> sizes;
  for (std::size_t n = 1; n < ball.sphere_start.size(); ++n) sizes.push_back(ball.sphere_start[n]);
  return GrowthTable::from_sizes(std::move(sizes), std::move(generators));
}

template <class E, class Compose, class Key>
GrowthTable ball_sizes(const std::vector<E>& gens, const E& identity, Compose compose, Key key, unsigned radius,
                       const GrowthOptions& opt = {}, std::string generators = {}) {
  return table_of(enumerate_ball(gens, identity, compose, key, radius, opt), std::move(generators));
}

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root mean square
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  const double den = n * sxx - sx * sx;
  f.slope = den == 0 ? 0 : (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - f.slope * x[i] - f.intercept;
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

/// Fits of log|B_n| against log(n + 1/2) (polynomial), n (exponential), and
/// of log log|B_n| against log n (stretched exponential). Only fits are
/// reported, never a growth type.
struct GrowthReport {
  LineFit polynomial;
  LineFit exponential;
  LineFit stretched;

  double polynomial_degree() const { return polynomial.slope; }
  double exponential_base() const { return std::exp(exponential.slope); }
  double stretched_exponent() const { return stretched.slope; }
};

inline GrowthReport growth_report(const GrowthTable& t) {
  if (t.sizes.size() < 5) throw TableTooShort("growth report needs radius at least 4");
  std::vector<double> lp, ln, lb, sx, sy;
  for (std::size_t n = 0; n < t.sizes.size(); ++n) {
    const double b = std::log(static_cast<double>(t.sizes[n]));
    lp.push_back(std::log(n + 0.5));
    ln.push_back(static_cast<double>(n));
    lb.push_back(b);
    if (n >= 1 && t.sizes[n] > 1) {
      sx.push_back(std::log(static_cast<double>(n)));
      sy.push_back(std::log(b));
    }
  }
  GrowthReport r;
  r.polynomial = least_squares(lp, lb);
  r.exponential = least_squares(ln, lb);
  if (sx.size() >= 2) r.stretched = least_squares(sx, sy);
  return r;
}

}  // namespace wreathkit
