#include <gtest/gtest.h>

#include <cmath>

#include "skorokhod/completion.hpp"

using namespace skorokhod;

namespace {

CauchySequence triangle_sequence(int k_min, int k_max) {
  std::vector<Turbofunction> items;
  for (int k = k_min; k <= k_max; ++k) items.push_back(embed(g_theta_family(std::ldexp(1.0, k))));
  return CauchySequence(std::move(items));
}

}  // namespace

TEST(CauchySequence, GapBoundsRespectFamilyBound) {
  const auto seq = triangle_sequence(2, 6);
  ASSERT_EQ(seq.gap_bounds().size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_LE(seq.gap_bound(k), std::ldexp(1.0, -static_cast<int>(k) - 3) + 1e-6);
  }
  EXPECT_NEAR(seq.tail(0), seq.gap_bound(0) + seq.gap_bound(1) + seq.gap_bound(2) + seq.gap_bound(3), 1e-15);
}

TEST(CauchyLimit, ConstantSequence) {
  const Turbofunction x{g_theta_family(6.0), sigma_theta_family(5.0)};
  const CauchySequence seq({x, x, x});
  const auto rep = cauchy_limit(seq, 1e-6);
  EXPECT_LE(rep.residual, 1e-6);
  EXPECT_LE(rho_plus_bounds(rep.limit, x, 1e-6).upper, 2e-6);
  EXPECT_TRUE(rep.continuous);
}

TEST(CauchyLimit, RefusesWhenGapsTooLarge) {
  const auto seq = triangle_sequence(2, 4);
  EXPECT_THROW(cauchy_limit(seq, 1e-3), RefusalError);
  EXPECT_THROW(cauchy_limit(seq, 0.0), DomainError);
}

TEST(CauchyLimit, TriangleFamilyApproachesItsLimit) {
  const auto seq = triangle_sequence(2, 10);
  const auto rep = cauchy_limit(seq, 1e-3);
  EXPECT_TRUE(rep.continuous);
  EXPECT_LE(rep.residual, 1e-3);
  EXPECT_LE(rho_plus_bounds(rep.limit, paper_limit(), 1e-3).upper, 2e-3);
  // Residual soundness for the last three items.
  for (std::size_t k = seq.size() - 3; k < seq.size(); ++k) {
    EXPECT_LE(rho_plus_bounds(seq.items()[k], rep.limit, 1e-3).upper, seq.tail(k) + rep.residual + 1e-3);
  }
}

TEST(CauchyLimit, NotContinuousWhenAnItemJumps) {
  const Turbofunction x = embed(CadlagFunction::step({0.5}, {0.0, 1.0}));
  const auto rep = cauchy_limit(CauchySequence({x, x}), 1e-6);
  EXPECT_FALSE(rep.continuous);
}

TEST(PointwiseCheck, ClassifiesTriangleFamily) {
  const auto seq = triangle_sequence(2, 6);
  const auto reps = pointwise_check(seq, paper_limit(), {0.1, 0.25, 0.4, 0.5, 0.75, 1.0});
  ASSERT_EQ(reps.size(), 6u);
  EXPECT_EQ(reps[3].cls, PointClass::exceptional);
  EXPECT_TRUE(reps[3].deviations.empty());
  EXPECT_EQ(reps[5].cls, PointClass::endpoint);
  for (std::size_t i : {0u, 1u, 2u, 4u}) {
    EXPECT_EQ(reps[i].cls, PointClass::good) << reps[i].s;
    EXPECT_TRUE(reps[i].converges) << reps[i].s;
  }
  // g_theta(0.4) = (1 - theta/10)_+ for the items theta = 4, 8, ...
  EXPECT_NEAR(reps[2].deviations[0], 0.6, 1e-12);
  EXPECT_NEAR(reps[2].deviations[1], 0.2, 1e-12);
  EXPECT_TRUE(reps[5].converges);
}

TEST(PointwiseCheck, JumpPointsAreExceptional) {
  const Turbofunction x = embed(CadlagFunction::step({0.3}, {0.0, 1.0}));
  EXPECT_EQ(classify_point(x, 0.3), PointClass::exceptional);
  EXPECT_EQ(classify_point(x, 0.31), PointClass::good);
  EXPECT_THROW(classify_point(x, 1.5), DomainError);
}
