#include <gtest/gtest.h>

#include "skorokhod/turbo.hpp"

using namespace skorokhod;

TEST(RightContinuousInverse, JumpsAcrossFlatPieces) {
  const auto inv = right_continuous_inverse(sigma_limit());
  EXPECT_DOUBLE_EQ(inv(0.25), 0.125);
  EXPECT_DOUBLE_EQ(inv(0.5), 0.75);
  EXPECT_DOUBLE_EQ(inv.left_limit(0.5), 0.25);
  EXPECT_DOUBLE_EQ(inv(1.0), 1.0);
}

TEST(RightContinuousInverse, FlatAtTopGivesJumpAtOne) {
  const TimeChange s{{0.0, 0.0}, {0.5, 1.0}, {1.0, 1.0}};
  const auto inv = right_continuous_inverse(s);
  EXPECT_DOUBLE_EQ(inv.left_limit(1.0), 0.5);
  EXPECT_DOUBLE_EQ(inv(1.0), 1.0);
}

TEST(Visualize, EmbedIsIdentity) {
  const auto f = CadlagFunction::step({0.3, 0.7}, {1.0, -1.0, 2.0});
  EXPECT_TRUE(approx_equal(visualize(embed(f)), f));
}

TEST(Visualize, TriangleLimitIsZero) {
  // g_4 vanishes outside [1/4, 3/4], which is exactly the flat piece.
  const auto v = visualize(paper_limit());
  EXPECT_NEAR(sup_distance(v, CadlagFunction::constant(0.0)), 0.0, 1e-15);
}

TEST(Visualize, ReparametrizationInvariant) {
  const Turbofunction x{g_theta_family(8.0), sigma_theta_family(8.0)};
  const Homeomorphism g{{0.0, 0.0}, {0.3, 0.6}, {1.0, 1.0}};
  EXPECT_LE(sup_distance(visualize(compose(x, g)), visualize(x)), 1e-12);
}

TEST(Instantons, TriangleLimitHasOneAtHalf) {
  const auto list = instantons(paper_limit());
  ASSERT_EQ(list.size(), 1u);
  EXPECT_DOUBLE_EQ(list[0].s, 0.5);
  EXPECT_DOUBLE_EQ(list[0].t_begin, 0.25);
  EXPECT_DOUBLE_EQ(list[0].t_end, 0.75);
  EXPECT_DOUBLE_EQ(list[0].value_min, 0.0);
  EXPECT_DOUBLE_EQ(list[0].value_max, 1.0);
  EXPECT_DOUBLE_EQ(list[0].trace(0.5), 1.0);
}

TEST(SigmaDelta, IsStrictAndValidated) {
  const auto s = sigma_delta(sigma_limit(), 0.1);
  EXPECT_TRUE(s.is_strictly_increasing());
  EXPECT_DOUBLE_EQ(s(0.5), 0.9 * 0.5 + 0.1 * 0.5);
  EXPECT_THROW(sigma_delta(sigma_limit(), 0.0), DomainError);
  EXPECT_THROW(sigma_delta(sigma_limit(), 1.0), DomainError);
}

TEST(Family, ThetaPrecondition) {
  EXPECT_THROW(g_theta_family(2.0), DomainError);
  EXPECT_THROW(sigma_theta_family(1.5), DomainError);
  const auto g = g_theta_family(4.0);
  EXPECT_DOUBLE_EQ(g(0.5), 1.0);
  EXPECT_DOUBLE_EQ(g(0.375), 0.5);
  EXPECT_DOUBLE_EQ(g(0.2), 0.0);
}

TEST(Canonicalize, ReparametrizationsCollapse) {
  const Turbofunction x{g_theta_family(8.0), sigma_theta_family(8.0)};
  const Homeomorphism g{{0.0, 0.0}, {0.2, 0.5}, {1.0, 1.0}};
  EXPECT_TRUE(canonical_forms_equal(canonicalize(x), canonicalize(compose(x, g))));
}

TEST(Canonicalize, Idempotent) {
  const Turbofunction x{CadlagFunction::step({0.5}, {0.0, 1.0}), sigma_limit()};
  const auto c = canonicalize(x);
  EXPECT_TRUE(canonical_forms_equal(c, canonicalize(c), 1e-12));
}

TEST(Canonicalize, StandstillIsRemoved) {
  // Both coordinates constant on [0.4, 0.6]; dropping that piece changes nothing.
  const TimeChange s{{0.0, 0.0}, {0.4, 0.5}, {0.6, 0.5}, {1.0, 1.0}};
  const Turbofunction x{CadlagFunction::constant(1.0), s};
  const Turbofunction y = embed(CadlagFunction::constant(1.0));
  EXPECT_TRUE(canonical_forms_equal(canonicalize(x), canonicalize(y)));
}

TEST(Canonicalize, ProtectedPlateauBetweenJumpsSurvives) {
  // F = 0, 2, 1 with jumps at 0.3 and 0.6 while sigma is flat on [0.3, 0.6]:
  // the middle value is an excursion inside an instanton.
  const auto F = CadlagFunction::step({0.3, 0.6}, {0.0, 2.0, 1.0});
  const TimeChange s{{0.0, 0.0}, {0.3, 0.4}, {0.6, 0.4}, {1.0, 1.0}};
  const auto c = canonicalize(Turbofunction{F, s});
  EXPECT_DOUBLE_EQ(c.F().max_value(), 2.0);
  EXPECT_EQ(instantons(c).size(), 1u);
}
