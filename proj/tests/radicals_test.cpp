#include <gtest/gtest.h>

#include <random>
#include <set>

#include "wreathkit/grigorchuk.hpp"
#include "wreathkit/radicals.hpp"

namespace wk = wreathkit;
using wk::ClosureKind;

namespace {

using Z = std::int64_t;

wk::TopSet<Z> zero_set(const std::string& name) {
  return {name, [](Z h) { return h == 0; }, true};
}
wk::TopSet<Z> all_of_z(const std::string& name) {
  return {name, [](Z) { return true; }, false};
}

// H = Z acting faithfully: N = N' = N'' = W(H) = 0 and B(H) = Z.
wk::TopOracles<Z> integer_oracles() {
  return {zero_set("N"), zero_set("N'"), zero_set("N''"), zero_set("W(H)"), all_of_z("B(H)")};
}

wk::Subgroup transposition_subgroup(const wk::FiniteGroup& s3) { return wk::Subgroup::from_members(s3, {0, 1}); }

using CycleInstance = wk::RadicalInstance<wk::IntegerCycles>;
using LineInstance = wk::RadicalInstance<wk::IntegerLine>;

CycleInstance cycles_instance(unsigned max_cycle = 4) {
  const auto s3 = wk::FiniteGroup::symmetric(3);
  return {wk::Wreath<wk::IntegerCycles>(s3, wk::IntegerCycles(max_cycle)), transposition_subgroup(s3),
          integer_oracles()};
}

LineInstance line_instance(const wk::FiniteGroup& b, const wk::Subgroup& a, Z radius = 8) {
  return {wk::Wreath<wk::IntegerLine>(b, wk::IntegerLine(-radius, radius)), a, integer_oracles()};
}

template <class W>
typename W::Element random_element(const W& w, const std::vector<typename W::Point>& points, std::mt19937& rng,
                                   Z top) {
  typename W::Lamp lamp;
  for (int k = 1 + static_cast<int>(rng() % 3); k > 0; --k)
    lamp.emplace_back(points[rng() % points.size()], static_cast<wk::ElementId>(rng() % w.lamp_group().order()));
  return w.make(lamp, top);
}

}  // namespace

TEST(Predict, CyclesWithCoreFreeSubgroupGiveFinitelySupportedLamps) {
  const auto in = cycles_instance();
  for (const auto& d : {wk::predict_W(in), wk::predict_B(in)}) {
    EXPECT_TRUE(d.core_part.is_trivial());
    EXPECT_EQ(d.lamp_part.order(), 6u);
    EXPECT_TRUE(d.finite_orbits);
    EXPECT_TRUE(d.top_part.trivial);
    EXPECT_FALSE(d.trivial());
  }
  const auto& w = in.wreath;
  const auto d = wk::predict_W(in);
  std::mt19937 rng(3);
  const auto pts = w.action().window_points();
  for (int i = 0; i < 200; ++i) {
    EXPECT_TRUE(wk::membership(w, random_element(w, pts, rng, 0), d));
    EXPECT_FALSE(wk::membership(w, random_element(w, pts, rng, 1 + static_cast<Z>(rng() % 5)), d));
    EXPECT_FALSE(wk::membership(w, w.top_element(-1 - static_cast<Z>(rng() % 5)), wk::predict_B(in)));
  }
  EXPECT_TRUE(wk::membership(w, w.identity(), d));
}

TEST(Predict, WholeLampSubgroup) {
  const auto c2 = wk::FiniteGroup::cyclic(2);
  const auto in = line_instance(c2, wk::Subgroup::whole(c2));
  const auto d = wk::predict_W(in);
  EXPECT_EQ(d.core_part.order(), 2u);
  const auto& w = in.wreath;
  EXPECT_TRUE(wk::membership(w, w.make({{0, 1}, {5, 1}}, 0), d));
  EXPECT_FALSE(wk::membership(w, w.make({{0, 1}}, 1), d));
  EXPECT_TRUE(wk::membership(w, w.make({{0, 1}}, 1), wk::predict_B(in)));
}

TEST(Predict, CoreFreeOnInfiniteOrbit) {
  const auto s3 = wk::FiniteGroup::symmetric(3);
  const auto in = line_instance(s3, transposition_subgroup(s3));
  const auto d = wk::predict_W(in);
  EXPECT_TRUE(d.trivial());
  const auto& w = in.wreath;
  EXPECT_TRUE(wk::membership(w, w.identity(), d));
  for (wk::ElementId v = 1; v < 6; ++v) EXPECT_FALSE(wk::membership(w, w.delta(3, v), d));
  EXPECT_THROW(wk::membership(w, wk::Wreath<wk::IntegerLine>::Element{{{99, 1}}, 0}, d), wk::WindowEscape);
}

TEST(Predict, NormalLampSubgroupSurvivesOnInfiniteOrbits) {
  const auto s3 = wk::FiniteGroup::symmetric(3);
  const auto rot = wk::Subgroup::generated_by(s3, std::vector<wk::ElementId>{3});
  ASSERT_EQ(rot.order(), 3u);
  const auto in = line_instance(s3, rot);
  const auto d = wk::predict_W(in);
  EXPECT_EQ(d.core_part.order(), 3u);
  EXPECT_TRUE(wk::membership(in.wreath, in.wreath.make({{-2, 3}, {4, 4}}, 0), d));
  EXPECT_FALSE(wk::membership(in.wreath, in.wreath.delta(0, 1), d));
}

TEST(Predict, SymmetricLampsOverGrigorchukSchreierGraph) {
  namespace g = wk::grigorchuk;
  using Act = wk::GrigorchukSchreier;
  const auto s4 = wk::FiniteGroup::symmetric(4);
  std::vector<wk::ElementId> fix_last;
  for (wk::ElementId x = 0; x < s4.order(); ++x)
    if ((*s4.as_permutation(x))[3] == 3) fix_last.push_back(x);
  auto trivial_word = [](const std::string& name) {
    return wk::TopSet<g::Word>{name, [](const g::Word& h) { return g::is_identity(h); }, true};
  };
  const wk::RadicalInstance<Act> in{wk::Wreath<Act>(s4, Act(g::RayOrbit(g::parse_ray("1^inf")))),
                                    wk::Subgroup::from_members(s4, fix_last),
                                    {trivial_word("N"), trivial_word("N'"), trivial_word("N''"),
                                     trivial_word("W(H)"), trivial_word("B(H)")}};
  const auto d = wk::predict_W(in);
  EXPECT_TRUE(d.trivial());
  EXPECT_TRUE(wk::triviality_conditions(in).all());
  const auto& w = in.wreath;
  EXPECT_TRUE(wk::membership(w, w.top_element("aa"), d));
  EXPECT_FALSE(wk::membership(w, w.top_element("ab"), d));
  const auto lamp = w.delta("", 1);
  EXPECT_FALSE(wk::membership(w, lamp, d));
  const std::vector<wk::Wreath<Act>::Element> gens = {w.top_element("a"), w.top_element("b"), w.top_element("c"),
                                                      w.top_element("d")};
  const auto v = wk::conj_closure(in, lamp, gens, 200);
  ASSERT_EQ(v.kind, ClosureKind::Escaped);
  EXPECT_EQ(v.mechanism, "infinite-orbit");
  EXPECT_TRUE(wk::verify_escape(in, lamp, v));
  EXPECT_NE(wk::conj_closure(in, w.top_element("a"), gens, 50).kind, ClosureKind::Bounded);
}

TEST(Predict, MissingOracle) {
  auto in = cycles_instance();
  in.oracles.finitary.reset();
  EXPECT_THROW(wk::predict_W(in), wk::MissingOracle);
  EXPECT_THROW(wk::triviality_conditions(in), wk::MissingOracle);
  in = cycles_instance();
  in.oracles.b.reset();
  EXPECT_NO_THROW(wk::predict_W(in));
  EXPECT_THROW(wk::predict_B(in), wk::MissingOracle);
}

TEST(ConjClosure, LamplighterDeltaEscapesUnderShifts) {
  const auto c2 = wk::FiniteGroup::cyclic(2);
  const auto in = line_instance(c2, wk::Subgroup::trivial(c2), 16);
  const auto& w = in.wreath;
  const auto g = w.delta(0, 1);
  const auto v = wk::conj_closure(in, g, wk::standard_generators(w, {1, -1}));
  ASSERT_EQ(v.kind, ClosureKind::Escaped);
  EXPECT_EQ(v.mechanism, "infinite-orbit");
  EXPECT_TRUE(v.path.empty());
  EXPECT_EQ(v.points, (std::vector<Z>{0, 1, 2, 3, 4}));
  for (std::size_t k = 0; k < v.probes.size(); ++k) EXPECT_EQ(v.probes[k], w.top_element(static_cast<Z>(k)));
  EXPECT_TRUE(wk::verify_escape(in, g, v));
}

TEST(ConjClosure, CycleLampsAreBounded) {
  const auto in = cycles_instance(4);
  const auto& w = in.wreath;
  const auto gens = wk::standard_generators(w, {1, -1});
  const auto f = w.make({{{3, 1}, 1}, {{4, 2}, 3}}, 0);
  const auto v = wk::conj_closure(in, f, gens);
  ASSERT_EQ(v.kind, ClosureKind::Bounded);
  // rotations of the cycles, then B-conjugation at each occupied point
  std::set<std::string> expected;
  for (Z r = 0; r < 12; ++r)
    for (wk::ElementId x = 0; x < 6; ++x)
      for (wk::ElementId y = 0; y < 6; ++y) {
        const auto& b = w.lamp_group();
        const auto rotated = w.conjugate(w.top_element(r), f);
        const auto c = w.make({{rotated.lamp[0].first, b.compose(b.compose(x, rotated.lamp[0].second), b.inverse(x))},
                               {rotated.lamp[1].first, b.compose(b.compose(y, rotated.lamp[1].second), b.inverse(y))}},
                              0);
        expected.insert(w.canonical(c));
      }
  std::set<std::string> got;
  for (const auto& e : v.orbit) got.insert(w.canonical(e));
  EXPECT_EQ(got, expected);
  const auto shift = wk::conj_closure(in, w.top_element(1), gens);
  ASSERT_EQ(shift.kind, ClosureKind::Escaped);
  EXPECT_EQ(shift.mechanism, "moved-points");
  EXPECT_TRUE(wk::verify_escape(in, w.top_element(1), shift));
}

TEST(ConjClosure, BudgetExhaustedIsNotACertificate) {
  const auto in = cycles_instance(6);
  const auto& w = in.wreath;
  const auto f = w.make({{{5, 1}, 1}, {{6, 2}, 3}, {{4, 0}, 5}}, 0);
  EXPECT_EQ(wk::conj_closure(in, f, wk::standard_generators(w, {1, -1}), 5).kind, ClosureKind::BudgetExhausted);
}

TEST(ConjClosure, SoundnessOnLineCorpus) {
  const auto s3 = wk::FiniteGroup::symmetric(3);
  const auto in = line_instance(s3, transposition_subgroup(s3));
  const auto& w = in.wreath;
  const auto gens = wk::standard_generators(w, {1, -1});
  const auto d = wk::predict_W(in);
  std::mt19937 rng(12);
  std::vector<Z> pts;
  for (Z x = -4; x <= 4; ++x) pts.push_back(x);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_element(w, pts, rng, static_cast<Z>(rng() % 5) - 2);
    const auto v = wk::conj_closure(in, g, gens, 2000);
    if (wk::membership(w, g, d)) {
      ASSERT_EQ(v.kind, ClosureKind::Bounded);
      ASSERT_EQ(v.orbit.size(), 1u);
    } else {
      ASSERT_EQ(v.kind, ClosureKind::Escaped) << w.to_string(g);
      ASSERT_TRUE(wk::verify_escape(in, g, v));
    }
  }
}

TEST(ConjClosure, SoundnessOnCycleCorpus) {
  const auto in = cycles_instance(4);
  const auto& w = in.wreath;
  const auto gens = wk::standard_generators(w, {1, -1});
  const auto d = wk::predict_B(in);
  const auto pts = w.action().window_points();
  std::mt19937 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_element(w, pts, rng, rng() % 3 ? 0 : static_cast<Z>(rng() % 5) - 2);
    const auto v = wk::conj_closure(in, g, gens, 20000);
    if (wk::membership(w, g, d)) {
      ASSERT_NE(v.kind, ClosureKind::Escaped);
    } else {
      ASSERT_EQ(v.kind, ClosureKind::Escaped);
    }
    if (v.kind == ClosureKind::Escaped) {
      ASSERT_TRUE(wk::verify_escape(in, g, v));
    }
  }
}

TEST(FiniteInstances, RadicalsAreTheWholeGroup) {
  struct Case {
    wk::FiniteGroup b;
    std::vector<wk::ElementId> a;
    wk::FiniteGroup h;
  };
  const std::vector<Case> cases = {{wk::FiniteGroup::cyclic(2), {0}, wk::FiniteGroup::cyclic(3)},
                                   {wk::FiniteGroup::symmetric(3), {0, 1}, wk::FiniteGroup::cyclic(2)},
                                   {wk::FiniteGroup::cyclic(3), {0}, wk::FiniteGroup::dihedral(2)}};
  for (const auto& c : cases) {
    using W = wk::Wreath<wk::FiniteAction>;
    auto all = [](const std::string& n) { return wk::TopSet<wk::ElementId>{n, [](wk::ElementId) { return true; }, false}; };
    const wk::RadicalInstance<wk::FiniteAction> in{W(c.b, wk::FiniteAction::regular(c.h)),
                                                   wk::Subgroup::from_members(c.b, c.a),
                                                   {all("N"), all("N'"), all("N''"), all("W(H)"), all("B(H)")}};
    const auto& w = in.wreath;
    // enumerate G
    std::vector<W::Element> group;
    const std::size_t n = c.h.order();
    std::size_t lamps = 1;
    for (std::size_t i = 0; i < n; ++i) lamps *= c.b.order();
    for (std::size_t code = 0; code < lamps; ++code)
      for (wk::ElementId t = 0; t < n; ++t) {
        W::Lamp lamp;
        std::size_t r = code;
        for (std::uint32_t x = 0; x < n; ++x, r /= c.b.order())
          lamp.emplace_back(x, static_cast<wk::ElementId>(r % c.b.order()));
        group.push_back(w.make(lamp, t));
      }
    std::vector<wk::ElementId> tops;
    for (wk::ElementId t = 1; t < n; ++t) tops.push_back(t);
    const auto gens = wk::standard_generators(w, tops);
    for (const auto& d : {wk::predict_W(in), wk::predict_B(in)})
      for (const auto& g : group) {
        ASSERT_TRUE(wk::membership(w, g, d));
        const auto v = wk::conj_closure(in, g, gens);
        ASSERT_EQ(v.kind, ClosureKind::Bounded);
        std::set<std::string> brute, got;
        for (const auto& y : group) brute.insert(w.canonical(w.conjugate(y, g)));
        for (const auto& e : v.orbit) got.insert(w.canonical(e));
        ASSERT_EQ(got, brute);
      }
  }
}

TEST(Triviality, DescriptorAgreesWithConditions) {
  const auto s3 = wk::FiniteGroup::symmetric(3);
  const auto c2 = wk::FiniteGroup::cyclic(2);
  const auto rot = wk::Subgroup::generated_by(s3, std::vector<wk::ElementId>{3});
  std::vector<std::pair<bool, bool>> seen;
  auto check = [&](const auto& in) {
    const auto c = wk::triviality_conditions(in);
    EXPECT_EQ(wk::predict_W(in).trivial(), c.all());
    seen.emplace_back(wk::predict_W(in).trivial(), c.all());
  };
  check(line_instance(s3, transposition_subgroup(s3)));
  check(line_instance(s3, rot));
  check(line_instance(c2, wk::Subgroup::trivial(c2)));
  check(cycles_instance());
  auto weak = line_instance(s3, transposition_subgroup(s3));
  weak.oracles.w = all_of_z("W(H)");
  weak.oracles.finite_normal = all_of_z("N'");
  weak.oracles.finitary = all_of_z("N''");
  check(weak);
  const auto c1 = wk::FiniteGroup::cyclic(1);
  const wk::RadicalInstance<wk::IntegerCycles> trivial_lamps{
      wk::Wreath<wk::IntegerCycles>(c1, wk::IntegerCycles(3)), wk::Subgroup::trivial(c1), integer_oracles()};
  check(trivial_lamps);
  EXPECT_EQ(std::count(seen.begin(), seen.end(), std::make_pair(true, true)), 3);
}
