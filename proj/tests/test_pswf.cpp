#include <cmath>
#include <memory>

#include <gtest/gtest.h>

#include "oracles/frozen_values.hpp"
#include "qpswf/pswf.hpp"
#include "qpswf/qfourier.hpp"

using namespace qpswf;

namespace {

const QParams& params() {
  static const QParams p(0.5, -0.5);
  return p;
}

const PswfBasis& basis() {
  static const PswfBasis b = compute_pswf(Bandlimit(0, 60), params(), 12);
  return b;
}

}  // namespace

TEST(Bandlimit, GeometryAndValidation) {
  const Bandlimit b(-1, 10);
  const QParams& p = params();
  EXPECT_DOUBLE_EQ(b.point(0, p), 2.0);
  EXPECT_DOUBLE_EQ(b.weight(2, p), 0.5 * 0.5);
  EXPECT_EQ(b.retained(), LatticeWindow(-1, 8));
  EXPECT_THROW(Bandlimit(0, 0), InvalidParameter);
}

TEST(ConcentrationOperator, SymmetrizedMatrix) {
  const ConcentrationOperator op(Bandlimit(0, 20), params());
  const DenseMatrix<double> b = op.symmetric_matrix();
  EXPECT_TRUE(b.symmetric());
  const double w0 = op.weights()[0], w3 = op.weights()[3];
  EXPECT_DOUBLE_EQ(b(0, 3), params().c_qv() * std::sqrt(w0 * w3) * HahnExton(params()).lattice(3).value);
}

TEST(Pswf, EigenvaluesMatchOracle) {
  const PswfBasis& bs = basis();
  EXPECT_NEAR(bs.eigenvalue(0), frozen::kLambda0_q05_vm05_a1, 1e-14);
  EXPECT_NEAR(bs.eigenvalue(1), frozen::kLambda1_q05_vm05_a1, 1e-14);
  EXPECT_NEAR(bs.eigenvalue(2), frozen::kLambda2_q05_vm05_a1, 1e-14);
  EXPECT_NEAR(bs.eigenvalue(3), frozen::kLambda3_q05_vm05_a1, 1e-14);
  // Below the 1e-16 rounding floor of the double eigenproblem, only the
  // magnitude is meaningful.
  EXPECT_NEAR(bs.eigenvalue(4), frozen::kLambda4_q05_vm05_a1, 1e-16);
}

TEST(Pswf, EigenvaluesKeepSignsAndSortByMagnitude) {
  const PswfBasis& bs = basis();
  EXPECT_LT(bs.eigenvalue(1), 0.0);
  EXPECT_LT(bs.eigenvalue(3), 0.0);
  for (std::size_t i = 1; i < bs.count(); ++i) EXPECT_LT(std::abs(bs.eigenvalue(i)), std::abs(bs.eigenvalue(i - 1)));
}

TEST(Pswf, SamplesMatchOracleAndSignConvention) {
  const PswfBasis& bs = basis();
  EXPECT_NEAR(bs.sample(0, 0), frozen::kPsi0_at_a_q05_vm05_a1, 1e-13);
  EXPECT_NEAR(bs.eval(0, 0.3), frozen::kPsi0_at_0p3_q05_vm05_a1, 1e-12);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_GT(bs.sample(i, 0), 0.0);
}

TEST(Pswf, ExtensionReproducesSamplesInBand) {
  const PswfBasis& bs = basis();
  for (std::size_t i = 0; i < 4; ++i)
    for (int m = 0; m < 20; ++m) EXPECT_NEAR(bs.eval_lattice(i, m), bs.sample(i, m), 1e-12);
  EXPECT_NEAR(bs.eval(1, 0.5), bs.sample(1, 1), 1e-12);
}

TEST(Pswf, TabulationUsesExtension) {
  const PswfBasis& bs = basis();
  const LatticeFunction f = bs.tabulate(2, LatticeWindow(-5, 30));
  for (int n = -5; n <= 30; ++n) EXPECT_NEAR(f[n], bs.eval_lattice(2, n), 1e-15);
}

TEST(Pswf, ResidualsAndBandNorms) {
  const PswfBasis& bs = basis();
  const ConcentrationOperator op(bs.bandlimit(), params());
  for (std::size_t i = 0; i < bs.count(); ++i) {
    EXPECT_LE(eigen_residual(bs, op, i), 1e-12) << i;
    EXPECT_NEAR(op.band_norm(bs.samples(i)), std::abs(bs.eigenvalue(i)), 1e-14) << i;
  }
}

TEST(Pswf, OrthonormalOnTheFullLattice) {
  const PswfBasis& bs = basis();
  const std::vector<LatticeFunction> psi = bs.tabulate_all(bs.natural_window(), bs.count());
  for (std::size_t i = 0; i < psi.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) EXPECT_NEAR(inner_product(psi[i], psi[j], params()), i == j ? 1.0 : 0.0, 1e-12);
}

TEST(Pswf, ConcentrationIndexIsLambdaSquared) {
  const PswfBasis& bs = basis();
  const std::vector<LatticeFunction> psi = bs.tabulate_all(bs.natural_window(), 4);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(concentration_index(psi[i], bs.bandlimit(), params()), std::pow(bs.eigenvalue(i), 2), 1e-12);
  }
  EXPECT_THROW(concentration_index(LatticeFunction(LatticeWindow(0, 5)), bs.bandlimit(), params()), ZeroFunction);
}

TEST(Pswf, WiderBandHasMoreNearUnitEigenvalues) {
  const PswfBasis wide = compute_pswf(Bandlimit(-2, 60), params(), 6);
  EXPECT_GT(std::abs(wide.eigenvalue(1)), 0.99);
  EXPECT_GE(wide.eigenvalue(0) * wide.eigenvalue(0), basis().eigenvalue(0) * basis().eigenvalue(0) - 1e-10);
}

TEST(Pswf, KeepAndShapeValidation) {
  const Bandlimit b(0, 10);
  EXPECT_THROW(compute_pswf(b, params(), 0), InvalidParameter);
  EXPECT_THROW(compute_pswf(b, params(), 11), InvalidParameter);
  EXPECT_THROW(eigendecompose(build_operator_matrix(Bandlimit(0, 9), params()), b, params(), 3), InvalidParameter);
  EXPECT_EQ(compute_pswf(b, params(), 10).count(), 10u);
}

TEST(Kernel, ClosedFormAgreesWithDirectSum) {
  const Bandlimit b(0, 80);
  const KernelEvaluator closed(b, params(), KernelMode::closed_form);
  const KernelEvaluator direct(b, params(), KernelMode::direct_sum);
  for (const auto& [x, y] : {std::pair{0.3, 1.7}, std::pair{2.0, 0.01}, std::pair{1.0, 0.5}}) {
    EXPECT_NEAR(closed(x, y), direct(x, y), 1e-12) << x << ' ' << y;
  }
  EXPECT_NEAR(closed.lattice(1, 4), direct.lattice(1, 4), 1e-12);
  EXPECT_THROW(closed.lattice(2, 2), DegenerateArguments);
  EXPECT_THROW(closed(0.7, 0.7), DegenerateArguments);
}

TEST(Kernel, EigenSeriesAgreesWithDirectSum) {
  auto bs = std::make_shared<const PswfBasis>(compute_pswf(Bandlimit(0, 60), params(), 25));
  const KernelEvaluator series(bs);
  const KernelEvaluator direct(bs->bandlimit(), params(), KernelMode::direct_sum);
  EXPECT_EQ(series.mode(), KernelMode::eigen_series);
  for (int x = 0; x <= 8; x += 2)
    for (int y = 0; y <= 8; y += 3) EXPECT_NEAR(series.lattice(x, y), direct.lattice(x, y), 1e-12);
  EXPECT_NEAR(kernel(series, 0.3, 0.6), kernel(direct, 0.3, 0.6), 1e-12);
  EXPECT_THROW(KernelEvaluator(bs->bandlimit(), params(), KernelMode::eigen_series), InvalidParameter);
}

TEST(Kernel, ReproducesBandlimitedFunctions) {
  // f = F(u), u on [0, a]_q: f(x) = <f, k_x>.
  const QParams& p = params();
  const Bandlimit b(0, 60);
  const TransformPlan plan(p, LatticeWindow(-72, 72));
  LatticeFunction u(plan.in_window());
  for (int t = 0; t < 12; ++t) u[t] = std::cos(1.0 + t);
  const LatticeFunction f = fqv_transform(u, plan);
  const KernelEvaluator direct(b, p, KernelMode::direct_sum);
  for (const int x : {-2, 0, 3}) {
    const LatticeFunction kx = LatticeFunction::from_exponents(plan.in_window(), [&](int y) { return direct.lattice(x, y); });
    EXPECT_NEAR(inner_product(f, kx, p), f[x], 1e-12) << x;
  }
}
