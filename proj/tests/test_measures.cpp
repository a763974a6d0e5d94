#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "divlab/measures.hpp"
#include "oracles.hpp"

using namespace divlab;
using channels::JCParams;
using measures::OptConfig;

namespace {

const JCParams kTarget{2.0, 2.0};
const channels::FreeFamily kFamily = channels::free_family(2.0, 0.01, 0.99, 99);
const OptConfig kOpt{};

std::vector<double> free_ratios(double t, double tau, int n) {
  std::vector<double> out;
  for (double gk : oracle::linspace(0.01, 0.99, n)) out.push_back(oracle::ratio(t, tau, gk, 2.0));
  return out;
}

}  // namespace

TEST(MeasuresTest, OptConfigValidation) {
  OptConfig bad;
  bad.grid_theta = 1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = OptConfig{};
  bad.tol = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_NO_THROW(kOpt.validate());
}

TEST(MeasuresTest, BlochGridCoversTheBall) {
  const auto grid = measures::bloch_grid(kOpt);
  ASSERT_EQ(grid.size(), static_cast<std::size_t>(24 * 12 * 8));
  bool north = false, south = false;
  for (const auto& b : grid) {
    ASSERT_NO_THROW(qmat::bloch_to_state(b));
    north |= b.r == 1.0 && b.theta == 0.0;
    south |= b.r == 1.0 && b.theta == oracle::kPi;
  }
  EXPECT_TRUE(north);
  EXPECT_TRUE(south);
}

TEST(MeasuresTest, CpIndivisibilityMatchesClosedForm) {
  for (double t = 0.0; t <= 5.0; t += 0.01) {
    const auto cp = measures::cp_indivisibility(kTarget, t, 0.01);
    if (!cp) continue;
    const double g = oracle::ratio(t, 0.01, 2.0, 2.0);
    EXPECT_NEAR(*cp, std::max(g * g - 1.0, 0.0), 1e-9) << "t=" << t;
  }
}

TEST(MeasuresTest, SingularIntervalIsNull) {
  const double t = 3.0 * oracle::kPi / 4.0;
  EXPECT_FALSE(measures::cp_indivisibility(kTarget, t, 0.01));
  EXPECT_FALSE(measures::p_indivisibility(kTarget, t, 0.01, kOpt));
  EXPECT_FALSE(measures::nm1(kTarget, kFamily, t, 0.01, kOpt));
  EXPECT_FALSE(measures::nm2(kTarget, kFamily, t, 0.01, kOpt));
  const measures::MeasureRecord m = measures::evaluate(kTarget, kFamily, t, 0.01, kOpt);
  EXPECT_TRUE(m.singular);
  EXPECT_FALSE(m.g || m.p_i || m.cp_i || m.nm1 || m.nm2 || m.d);
}

TEST(MeasuresTest, PIndivisibilityMatchesDirectionOracle) {
  for (double t : {0.4, 1.2, 2.0, 2.36, 2.5, 3.3, 4.1}) {
    const auto pi = measures::p_indivisibility(kTarget, t, 0.01, kOpt);
    ASSERT_TRUE(pi);
    const double G1 = oracle::amplitude_22(t), G2 = oracle::amplitude_22(t + 0.01);
    EXPECT_NEAR(pi->value, oracle::p_indivisibility_directions(G1, G2), 1e-6) << "t=" << t;
    EXPECT_GE(pi->value, 0.0);
    EXPECT_GE(pi->value, pi->raw);
  }
}

TEST(MeasuresTest, PIndivisibilityArgmaxReproducesValue) {
  const double t = 2.5, tau = 0.01;
  const auto pi = measures::p_indivisibility(kTarget, t, tau, kOpt);
  ASSERT_TRUE(pi);
  const double G1 = channels::decay_amplitude(t, kTarget);
  const double G2 = channels::decay_amplitude(t + tau, kTarget);
  EXPECT_NEAR(measures::reference::p_objective(G1, G2, pi->rho1, pi->rho2), pi->raw, 1e-10);
}

TEST(MeasuresTest, Nm1MatchesGridOracle) {
  for (double t : {0.5, 2.36, 3.0}) {
    const auto r = measures::nm1(kTarget, kFamily, t, 0.01, kOpt);
    ASSERT_TRUE(r);
    const std::vector<double> g_free = free_ratios(t, 0.01, 2001);
    const double expected = oracle::nm1(oracle::amplitude_22(t), oracle::ratio(t, 0.01, 2, 2),
                                        g_free, 21, 361);
    EXPECT_NEAR(r->value, expected, 1e-3) << "t=" << t;
    EXPECT_GE(r->gamma0, 0.01);
    EXPECT_LE(r->gamma0, 0.99);
  }
}

TEST(MeasuresTest, Nm1ArgmaxReproducesValue) {
  const double t = 2.36, tau = 0.01;
  const auto r = measures::nm1(kTarget, kFamily, t, tau, kOpt);
  ASSERT_TRUE(r);
  const double G = channels::decay_amplitude(t, kTarget);
  const double g = channels::interval_map(t, tau, kTarget).g;
  const double value = measures::reference::nm1_objective(G, g, kFamily.ratio(r->gamma0, t, tau),
                                                          r->state);
  EXPECT_NEAR(value, r->value, 1e-9);
}

TEST(MeasuresTest, Nm2MatchesAnalyticBlockFormula) {
  for (double t = 0.05; t < 5.0; t += 0.23) {
    const auto r = measures::nm2(kTarget, kFamily, t, 0.01, kOpt);
    if (!r) continue;
    const double g = oracle::ratio(t, 0.01, 2.0, 2.0);
    EXPECT_NEAR(r->value, oracle::nm2(g, free_ratios(t, 0.01, 100001)), 1e-6) << "t=" << t;
    EXPECT_NEAR(measures::reference::nm2_objective(g, kFamily.ratio(r->gamma0, t, 0.01)), r->value,
                1e-9);
  }
}

TEST(MeasuresTest, Nm2BoundedForContractiveMapsOnly) {
  for (double t = 0.0; t <= 5.0; t += 0.01) {
    const auto r = measures::nm2(kTarget, kFamily, t, 0.01, kOpt);
    if (!r) continue;
    const double g = channels::interval_map(t, 0.01, kTarget).g;
    if (std::abs(g) <= 1.0) {
      EXPECT_LE(r->value, 1.0) << "t=" << t;
    } else {
      EXPECT_GE(r->value, 0.5 * (g * g - 1.0) - 1e-12) << "t=" << t;
    }
  }
}

TEST(MeasuresTest, DiameterMatchesGridOracle) {
  for (double t : {0.0, 1.0, 2.36, 4.0}) {
    const measures::DiameterResult d = measures::diameter_d(kFamily, t, 0.01, kOpt);
    const double expected = oracle::diameter(free_ratios(t, 0.01, 61), 240);
    EXPECT_NEAR(d.value, expected, 1e-3) << "t=" << t;
    EXPECT_GE(d.value, expected - 1e-9);
    const double value = measures::reference::d_objective(kFamily.ratio(d.gamma0_1, t, 0.01),
                                                          kFamily.ratio(d.gamma0_2, t, 0.01),
                                                          d.rho1, d.rho2);
    EXPECT_NEAR(value, d.value, 1e-9);
  }
}

TEST(MeasuresTest, SingleMemberFamilyDiameterIsStateDiameter) {
  const channels::FreeFamily one = channels::FreeFamily::single(2.0, 0.5);
  const double g = one.ratio(0.5, 1.0, 0.01);
  const measures::DiameterResult d = measures::diameter_d(one, 1.0, 0.01, kOpt);
  EXPECT_NEAR(d.value, oracle::diameter({g}, 720), 1e-6);
}

TEST(MeasuresTest, ReferenceObjectivesAgreeWithBlochFormulas) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto random_xz = [&] {
    const double r = u(rng), th = oracle::kPi * u(rng);
    return qmat::BlochVector{r, th, u(rng) < 0.5 ? 0.0 : oracle::kPi};
  };
  auto xz = [](const qmat::BlochVector& b) {
    return oracle::XZ{b.r * std::sin(b.theta) * std::cos(b.phi), b.r * std::cos(b.theta)};
  };
  for (int trial = 0; trial < 300; ++trial) {
    const qmat::BlochVector a = random_xz(), b = random_xz();
    const double G1 = 2 * u(rng) - 1, G2 = 2 * u(rng) - 1, gk = u(rng);
    const double p = oracle::dist_xz(oracle::damp_xz(G2, xz(a)), oracle::damp_xz(G2, xz(b))) -
                     oracle::dist_xz(oracle::damp_xz(G1, xz(a)), oracle::damp_xz(G1, xz(b)));
    EXPECT_NEAR(measures::reference::p_objective(G1, G2, a, b), p, 1e-12);
    const double d = oracle::dist_xz(oracle::damp_xz(G1, xz(a)), oracle::damp_xz(gk, xz(b)));
    EXPECT_NEAR(measures::reference::d_objective(G1, gk, a, b), d, 1e-12);
    EXPECT_NEAR(measures::reference::nm2_objective(G1, gk), oracle::choi_distance(G1, gk), 1e-12);
    const oracle::XZ v = oracle::damp_xz(G2, xz(a));
    const double n1 = oracle::dist_xz(oracle::damp_xz(G1, v), oracle::damp_xz(gk, v));
    EXPECT_NEAR(measures::reference::nm1_objective(G2, G1, gk, a), n1, 1e-12);
  }
}

TEST(MeasuresTest, MarkovianTargetIsNull) {
  const JCParams markov{0.5, 2.0};
  for (double t : {0.0, 0.7, 2.0, 4.5}) {
    const measures::MeasureRecord m = measures::evaluate(markov, kFamily, t, 0.01, kOpt);
    ASSERT_FALSE(m.singular);
    EXPECT_LE(*m.p_i, 1e-9);
    EXPECT_LE(*m.cp_i, 1e-9);
    EXPECT_LE(*m.nm1, 1e-6);
    EXPECT_LE(*m.nm2, 1e-6);
  }
}

TEST(MeasuresTest, IdentityIntervalIsNearlyFree) {
  const measures::MeasureRecord m = measures::evaluate({0.5, 2.0}, kFamily, 0.0, 1e-9, kOpt);
  EXPECT_LE(*m.p_i, 1e-6);
  EXPECT_LE(*m.cp_i, 1e-6);
  EXPECT_LE(*m.nm1, 1e-6);
  EXPECT_LE(*m.nm2, 1e-6);
}

TEST(MeasuresTest, GridRefinementIsStable) {
  OptConfig fine = kOpt;
  fine.grid_theta = 48;
  fine.grid_phi = 24;
  fine.grid_r = 16;
  for (double t : {1.0, 2.36, 3.5}) {
    const auto a = measures::evaluate(kTarget, kFamily, t, 0.01, kOpt);
    const auto b = measures::evaluate(kTarget, kFamily, t, 0.01, fine);
    EXPECT_NEAR(*a.p_i, *b.p_i, 1e-3);
    EXPECT_NEAR(*a.nm1, *b.nm1, 1e-3);
    EXPECT_NEAR(*a.nm2, *b.nm2, 1e-3);
    EXPECT_NEAR(*a.d, *b.d, 1e-3);
  }
}

TEST(MeasuresTest, EvaluateIsDeterministic) {
  const auto a = measures::evaluate(kTarget, kFamily, 2.5, 0.01, kOpt);
  const auto b = measures::evaluate(kTarget, kFamily, 2.5, 0.01, kOpt);
  EXPECT_EQ(*a.p_i, *b.p_i);
  EXPECT_EQ(*a.nm1, *b.nm1);
  EXPECT_EQ(*a.nm2, *b.nm2);
  EXPECT_EQ(*a.d, *b.d);
}

TEST(MeasuresTest, RecordFieldsAreConsistent) {
  const auto m = measures::evaluate(kTarget, kFamily, 1.7, 0.01, kOpt);
  EXPECT_EQ(m.t, 1.7);
  EXPECT_EQ(m.tau, 0.01);
  EXPECT_EQ(m.gamma0, 2.0);
  EXPECT_EQ(m.lambda, 2.0);
  EXPECT_NEAR(*m.g, oracle::ratio(1.7, 0.01, 2, 2), 1e-13);
  EXPECT_GE(*m.p_i, 0.0);
  EXPECT_GE(*m.cp_i, 0.0);
  EXPECT_GE(*m.nm1, 0.0);
  EXPECT_GE(*m.nm2, 0.0);
  EXPECT_GE(*m.d, 0.0);
  EXPECT_LE(*m.d, 1.0 + 1e-12);
}
