#include <cmath>

#include <gtest/gtest.h>

#include "oracles/frozen_values.hpp"
#include "qpswf/qbessel.hpp"

using namespace qpswf;

namespace {
void expect_rel(double got, double want, double tol) { EXPECT_NEAR(got, want, tol * std::abs(want)) << "want " << want; }
}  // namespace

TEST(HahnExton, MatchesOracleOffLattice) {
  expect_rel(jv(1.0, QParams(0.5, 0.0)).value, frozen::kJv_z1_q05_v0, 1e-13);
  expect_rel(jv(0.3, QParams(0.5, -0.5)).value, frozen::kJv_z0p3_q05_vm05, 1e-13);
  expect_rel(jv(8.0, QParams(0.5, -0.5)).value, frozen::kJv_z8_q05_vm05, 1e-12);
}

TEST(HahnExton, MatchesOracleDeepOnLattice) {
  const BesselEvalReport r = HahnExton(QParams(0.5, -0.5)).lattice(-10);
  expect_rel(r.value, frozen::kJv_lattice_m10_q05_vm05, 1e-12);
  EXPECT_TRUE(r.cancellation_flag);
  EXPECT_GT(r.precision_bits, 53u);
  expect_rel(HahnExton(QParams(0.3, 1.5)).lattice(-8).value, frozen::kJv_lattice_m8_q03_v15, 1e-12);
}

TEST(HahnExton, SmallArgumentsStayInDouble) {
  const BesselEvalReport r = jv(0.3, QParams(0.5, -0.5));
  EXPECT_EQ(r.precision_bits, 53u);
  EXPECT_FALSE(r.cancellation_flag);
  EXPECT_GT(r.terms_used, 1u);
}

TEST(HahnExton, ValueAtZeroAndEvenness) {
  const HahnExton j(0.6, 0.7);
  EXPECT_DOUBLE_EQ(j(0.0).value, 1.0);
  EXPECT_DOUBLE_EQ(j(-2.5).value, j(2.5).value);
}

TEST(HahnExton, ScaledAgreesWithDirectArgument) {
  const HahnExton j(0.5, 0.0);
  expect_rel(j.scaled(3.0, -2).value, j(12.0).value, 1e-12);
  expect_rel(j.scaled(1.0, 4).value, j.lattice(4).value, 1e-15);
}

TEST(HahnExton, SmallArgumentLimit) {
  // (1 - j_v(z)) / z^2 -> q^2 / ((1-q^2)(1-q^{2v+2})) as z -> 0
  const double q = 0.5, v = 0.3, z = 1e-4;
  const double c1 = q * q / ((1 - q * q) * (1 - std::pow(q, 2 * v + 2)));
  EXPECT_NEAR((1.0 - HahnExton(q, v)(z).value) / (z * z), c1, 1e-6);
}

TEST(HahnExton, RejectsBadParameters) {
  EXPECT_THROW(HahnExton(1.0, 0.0), InvalidParameter);
  EXPECT_THROW(HahnExton(0.5, -1.5), InvalidParameter);
}

TEST(BesselTable, MatchesOnDemandEvaluation) {
  const HahnExton j(0.5, -0.5);
  const BesselTable t(j, -6, 10);
  EXPECT_EQ(t.e_min(), -6);
  EXPECT_EQ(t.e_max(), 10);
  for (int e = -8; e <= 12; ++e) EXPECT_EQ(t(e), j.lattice(e).value) << e;
  EXPECT_THROW(BesselTable(j, 2, 1), InvalidParameter);
}

TEST(Bound, HoldsOnSmallGrid) {
  for (const double q : {0.3, 0.8}) {
    for (const double v : {-0.5, 1.5}) {
      const QParams p(q, v);
      const HahnExton j(p);
      for (int n = -6; n <= 20; ++n) EXPECT_LE(std::abs(j.lattice(n).value), jv_bound(n, p) + 1e-12) << q << ' ' << v << ' ' << n;
    }
  }
}

TEST(ProductIntegral, ClosedFormMatchesOracle) {
  const QParams p(0.5, 0.0);
  expect_rel(product_integral_closed(1.0, 0.5, 0, p), frozen::kProd_y1_z05_a1_q05_v0, 1e-12);
  expect_rel(product_integral_closed(2.0, 0.25, 2, p), frozen::kProd_yqm1_zq2_aq2_q05_v0, 1e-12);
}

TEST(ProductIntegral, DirectSumConverges) {
  const QParams p(0.5, 0.0);
  expect_rel(product_integral_direct(1.0, 0.5, 0, p, 120), frozen::kProd_y1_z05_a1_q05_v0, 1e-13);
  EXPECT_THROW(product_integral_direct(1.0, 0.5, 0, p, 0), InvalidParameter);
}

TEST(ProductIntegral, ClosedFormSymmetricInArguments) {
  const QParams p(0.7, 1.5);
  EXPECT_NEAR(product_integral_closed(0.4, 1.9, -1, p), product_integral_closed(1.9, 0.4, -1, p), 1e-14);
}

TEST(ProductIntegral, DegenerateAndNegativeArgumentsRejected) {
  const QParams p(0.5, 0.0);
  EXPECT_THROW(product_integral_closed(0.5, 0.5, 0, p), DegenerateArguments);
  EXPECT_THROW(product_integral_closed(0.5, 0.5 * (1 + 1e-12), 0, p), DegenerateArguments);
  EXPECT_THROW(product_integral_closed(-0.5, 1.0, 0, p), InvalidParameter);
  EXPECT_TRUE(nearly_degenerate(1.0, -1.0));
  EXPECT_FALSE(nearly_degenerate(1.0, 1.001));
}
