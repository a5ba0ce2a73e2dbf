#include <gtest/gtest.h>

#include <random>
#include <set>

#include "group_oracles.hpp"
#include "wreathkit/groups.hpp"

namespace wk = wreathkit;
using wk::ElementId;
using wk::FiniteGroup;
using wk::Subgroup;

namespace {

ElementId perm_id(const FiniteGroup& s, const wk::oracle::Perm& p) { return s.from_permutation(p); }

std::set<ElementId> as_set(const Subgroup& s) { return {s.members().begin(), s.members().end()}; }

std::vector<FiniteGroup> small_groups() {
  return {FiniteGroup::cyclic(1),   FiniteGroup::cyclic(6),    FiniteGroup::dihedral(4),
          FiniteGroup::symmetric(3), FiniteGroup::symmetric(4),
          FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
          FiniteGroup::direct_product(FiniteGroup::symmetric(3), FiniteGroup::cyclic(2)),
          FiniteGroup::dihedral(6)};
}

}  // namespace

TEST(Compose, IdentityIsNeutral) {
  const auto s3 = FiniteGroup::symmetric(3);
  for (ElementId g = 0; g < s3.order(); ++g) {
    EXPECT_EQ(s3.compose(FiniteGroup::identity(), g), g);
    EXPECT_EQ(s3.compose(g, s3.inverse(g)), FiniteGroup::identity());
  }
}

TEST(Compose, TranspositionsInS3MatchPermutationOracle) {
  const auto s3 = FiniteGroup::symmetric(3);
  const auto t12 = wk::oracle::transposition(3, 0, 1);
  const auto t23 = wk::oracle::transposition(3, 1, 2);
  const auto expected = wk::oracle::perm_compose(t12, t23);
  EXPECT_EQ(expected, wk::oracle::cycle3(3, 0, 1, 2));  // 1->2->3->1
  EXPECT_EQ(s3.compose(perm_id(s3, t12), perm_id(s3, t23)), perm_id(s3, expected));
  EXPECT_EQ(s3.label(perm_id(s3, expected)), "(123)");
}

TEST(Compose, CyclicArithmetic) {
  const auto c4 = FiniteGroup::cyclic(4);
  EXPECT_EQ(c4.compose(1, 3), 0u);
  EXPECT_EQ(c4.compose(2, 3), 1u);
}

TEST(Compose, OutOfRangeIdThrows) {
  const auto c4 = FiniteGroup::cyclic(4);
  EXPECT_THROW(c4.compose(4, 0), wk::OutOfRange);
  EXPECT_THROW(c4.inverse(17), wk::OutOfRange);
}

TEST(Compose, AssociativityOnFullTables) {
  for (const auto& g : small_groups()) {
    ASSERT_LE(g.order(), 24u);
    for (ElementId a = 0; a < g.order(); ++a)
      for (ElementId b = 0; b < g.order(); ++b)
        for (ElementId c = 0; c < g.order(); ++c)
          ASSERT_EQ(g.compose(g.compose(a, b), c), g.compose(a, g.compose(b, c)));
  }
}

TEST(Compose, SymmetricTableMatchesPermutationArithmetic) {
  const auto s4 = FiniteGroup::symmetric(4);
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const ElementId a = rng() % s4.order(), b = rng() % s4.order();
    const auto expected = wk::oracle::perm_compose(*s4.as_permutation(a), *s4.as_permutation(b));
    ASSERT_EQ(*s4.as_permutation(s4.compose(a, b)), expected);
  }
}

TEST(FromTable, RejectsBrokenTables) {
  EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1, 1}}), wk::InvalidGroup);
  EXPECT_THROW(FiniteGroup::from_table({{1, 0}, {0, 1}}), wk::InvalidGroup);
  EXPECT_THROW(FiniteGroup::from_table({{0, 1, 2}, {1, 2}, {2, 0, 1}}), wk::InvalidGroup);
  // Latin square with identity that is not associative (order 5 loop).
  const FiniteGroup::Table loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroup::from_table(loop), wk::InvalidGroup);
  const auto k4 = FiniteGroup::from_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
  EXPECT_TRUE(k4.is_abelian());
  EXPECT_EQ(k4.element_order(3), 2u);
}

TEST(Subgroups, ClosureIsEnforced) {
  const auto s3 = FiniteGroup::symmetric(3);
  const ElementId t12 = perm_id(s3, wk::oracle::transposition(3, 0, 1));
  const ElementId t23 = perm_id(s3, wk::oracle::transposition(3, 1, 2));
  EXPECT_THROW(Subgroup::from_members(s3, {0, t12, t23}), wk::NotASubgroup);
  EXPECT_THROW(Subgroup::from_members(s3, {t12}), wk::NotASubgroup);
  EXPECT_EQ(Subgroup::from_members(s3, {0, t12}).order(), 2u);
}

TEST(Core, WholeGroupIsItsOwnCore) {
  const auto s4 = FiniteGroup::symmetric(4);
  EXPECT_TRUE(wk::core(s4, Subgroup::whole(s4)).is_whole());
}

TEST(Core, TranspositionSubgroupOfS3HasTrivialCore) {
  const auto s3 = FiniteGroup::symmetric(3);
  const ElementId t12 = perm_id(s3, wk::oracle::transposition(3, 0, 1));
  const auto a = Subgroup::from_members(s3, {0, t12});
  EXPECT_EQ(wk::oracle::core_by_intersection(s3, as_set(a)), std::set<ElementId>{0});
  EXPECT_TRUE(wk::core(s3, a).is_trivial());
}

TEST(Core, AlternatingSubgroupIsNormal) {
  const auto s3 = FiniteGroup::symmetric(3);
  const ElementId c = perm_id(s3, wk::oracle::cycle3(3, 0, 1, 2));
  const auto a3 = Subgroup::generated_by(s3, std::vector<ElementId>{c});
  ASSERT_EQ(a3.order(), 3u);
  EXPECT_EQ(wk::oracle::core_by_intersection(s3, as_set(a3)), as_set(a3));
  EXPECT_EQ(wk::core(s3, a3), a3);
}

TEST(Core, EqualsUnionOfNormalSubgroupsInside) {
  for (const auto& g : small_groups()) {
    const auto normals = wk::normal_subgroups(g);
    for (ElementId x = 0; x < g.order(); ++x) {
      const auto a = Subgroup::generated_by(g, std::vector<ElementId>{x});
      std::set<ElementId> expected;
      for (const auto& n : normals)
        if (n.is_subset_of(a)) expected.insert(n.members().begin(), n.members().end());
      const auto c = wk::core(g, a);
      ASSERT_EQ(as_set(c), expected);
      ASSERT_TRUE(wk::is_normal(g, c));
    }
  }
}

TEST(NormalClosure, ExamplesMatchSaturationOracle) {
  const auto s3 = FiniteGroup::symmetric(3);
  const ElementId c = perm_id(s3, wk::oracle::cycle3(3, 0, 1, 2));
  const ElementId t = perm_id(s3, wk::oracle::transposition(3, 0, 1));
  EXPECT_TRUE(wk::normal_closure(std::vector<ElementId>{}, s3).is_trivial());
  const auto nc = wk::normal_closure(std::vector<ElementId>{c}, s3);
  EXPECT_EQ(as_set(nc), wk::oracle::normal_closure_by_saturation(s3, {c}));
  EXPECT_EQ(nc.order(), 3u);
  const auto nt = wk::normal_closure(std::vector<ElementId>{t}, s3);
  EXPECT_EQ(as_set(nt), wk::oracle::normal_closure_by_saturation(s3, {t}));
  EXPECT_TRUE(nt.is_whole());
}

TEST(NormalClosure, AgreesWithSaturationEverywhere) {
  for (const auto& g : small_groups())
    for (ElementId x = 0; x < g.order(); ++x)
      ASSERT_EQ(as_set(wk::normal_closure(std::vector<ElementId>{x}, g)),
                wk::oracle::normal_closure_by_saturation(g, {x}));
}

TEST(ConjugacyClass, Examples) {
  const auto s3 = FiniteGroup::symmetric(3);
  EXPECT_EQ(wk::conjugacy_class(0, s3), std::vector<ElementId>{0});
  const ElementId t = perm_id(s3, wk::oracle::transposition(3, 0, 1));
  std::set<ElementId> transpositions;
  for (ElementId g = 0; g < s3.order(); ++g) {
    const auto p = *s3.as_permutation(g);
    int fixed = 0;
    for (unsigned i = 0; i < 3; ++i) fixed += p[i] == i;
    if (fixed == 1) transpositions.insert(g);
  }
  const auto cls = wk::conjugacy_class(t, s3);
  EXPECT_EQ(std::set<ElementId>(cls.begin(), cls.end()), transpositions);
  const auto c6 = FiniteGroup::cyclic(6);
  for (ElementId g = 0; g < 6; ++g) EXPECT_EQ(wk::conjugacy_class(g, c6), std::vector<ElementId>{g});
}

TEST(ConjugacyClass, ClassesPartitionTheGroup) {
  for (const auto& g : small_groups()) {
    std::size_t total = 0;
    std::set<ElementId> seen;
    for (const auto& cls : wk::conjugacy_classes(g)) {
      EXPECT_EQ(g.order() % cls.size(), 0u);
      total += cls.size();
      for (ElementId x : cls) EXPECT_TRUE(seen.insert(x).second);
    }
    EXPECT_EQ(total, g.order());
  }
}

TEST(Cosets, LeftActionIsConsistent) {
  const auto s4 = FiniteGroup::symmetric(4);
  const auto emb = wk::left_regular_embedding(FiniteGroup::cyclic(4));
  const wk::LeftCosets cosets(emb.point_stabilizer);
  EXPECT_EQ(cosets.count(), 4u);
  for (ElementId b = 0; b < emb.symmetric.order(); ++b)
    for (ElementId c = 0; c < cosets.count(); ++c)
      for (ElementId d = 0; d < emb.symmetric.order(); ++d)
        ASSERT_EQ(cosets.act(emb.symmetric.compose(b, d), c), cosets.act(b, cosets.act(d, c)));
  EXPECT_TRUE(wk::is_homomorphism(emb.map, FiniteGroup::cyclic(4), emb.symmetric));
  (void)s4;
}
