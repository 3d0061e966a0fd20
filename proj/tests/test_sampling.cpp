#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qpswf/pswf.hpp"
#include "qpswf/sampling.hpp"

using namespace qpswf;

namespace {

const QParams& params() {
  static const QParams p(0.5, -0.5);
  return p;
}

double runge(double x) { return 1.0 / (1.0 + x * x); }

}  // namespace

TEST(SamplingGrid, Defaults) {
  const SamplingGrid g;
  EXPECT_EQ(g.k_min, -10);
  EXPECT_EQ(g.k_max, 40);
  EXPECT_EQ(g.size(), 51u);
  EXPECT_EQ(compact_grid().window(), LatticeWindow(-1, 10));
  EXPECT_NEAR(g.weight(2, params()), 0.5 * 0.25, 1e-17);
  EXPECT_THROW(SamplingGrid(3, 2), InvalidParameter);
}

TEST(SamplingKernel, ClosedFormAgreesWithJacksonSum) {
  const Bandlimit b(-1, 80);
  const SamplingKernel k(b, params(), -10, 40);
  for (const double z : {0.3, 1.1, 2.5})
    for (const int n : {-3, 0, 4}) EXPECT_NEAR(k(z, n), k.direct(z, n), 1e-12) << z << ' ' << n;
  EXPECT_NEAR(sampling_kernel(0.3, 2, b, params()), k(0.3, 2), 1e-15);
}

TEST(SamplingKernel, FallsBackOnTheDiagonal) {
  const Bandlimit b(0, 60);
  const SamplingKernel k(b, params(), -5, 10);
  EXPECT_DOUBLE_EQ(k(params().point(3), 3), k.direct(params().point(3), 3));
  EXPECT_NEAR(k(params().point(3) * (1 + 1e-8), 3), k.direct(params().point(3), 3), 1e-6);
}

TEST(Reconstruct, RecoversPswfOffLattice) {
  const Bandlimit b(0, 60);
  const PswfBasis bs = compute_pswf(b, params(), 3);
  const SamplingGrid grid;
  const SamplingKernel kernel(b, params(), grid);
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<double> s(grid.size());
    for (int k = grid.k_min; k <= grid.k_max; ++k) s[static_cast<std::size_t>(k - grid.k_min)] = bs.eval_lattice(i, k);
    for (const double z : {0.05, 0.3, 0.7, 1.3, 1.9}) EXPECT_NEAR(reconstruct(s, z, grid, kernel, params()), bs.eval(i, z), 1e-10);
    EXPECT_NEAR(reconstruct(s, 0.25, grid, b, params()), s[static_cast<std::size_t>(2 - grid.k_min)], 1e-10);
  }
}

TEST(Reconstruct, SampleCountChecked) {
  const Bandlimit b(0, 60);
  const std::vector<double> s(5, 0.0);
  EXPECT_THROW(reconstruct(s, 0.5, SamplingGrid(), b, params()), InvalidParameter);
}

TEST(Reconstruct, ZeroSamplesGiveZero) {
  const SamplingGrid grid(-1, 10);
  const std::vector<double> s(grid.size(), 0.0);
  SumDiagnostics d;
  EXPECT_EQ(reconstruct(s, 0.4, grid, Bandlimit(0, 60), params(), &d), 0.0);
  EXPECT_FALSE(d.tail_warning);
}

TEST(Project, IdempotentAndFixesBandlimitedFunctions) {
  const TransformPlan plan(params(), LatticeWindow(-15, 60));
  const LatticeFunction f = LatticeFunction::tabulate(plan.in_window(), params(), runge);
  const Bandlimit b(-1, 60);
  const LatticeFunction fa = project(f, b, plan);
  const LatticeFunction faa = project(fa, b, plan);
  for (int n = -3; n <= 40; ++n) EXPECT_NEAR(faa[n], fa[n], 1e-12);
}

TEST(Project, ReconstructionMatchesProjectionOnLattice) {
  const TransformPlan plan(params(), LatticeWindow(-15, 60));
  const LatticeFunction f = LatticeFunction::tabulate(plan.in_window(), params(), runge);
  const Bandlimit b(0, 60);
  const LatticeFunction fa = project(f, b, plan);
  const SamplingGrid grid;
  const std::vector<double> s = grid_samples(fa, grid);
  for (int n = -1; n <= 10; ++n) EXPECT_NEAR(reconstruct(s, params().point(n), grid, b, params()), fa[n], 1e-10);
}

TEST(Convergence, ErrorDecreasesWithBand) {
  const TransformPlan plan(params(), LatticeWindow(-15, 60));
  const LatticeFunction f = LatticeFunction::tabulate(plan.in_window(), params(), runge);
  const std::vector<int> a_exps{0, -1, -2};
  const std::vector<ConvergencePoint> c = convergence_study(f, a_exps, 10, plan, -1);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_GT(c[0].sup_error, c[1].sup_error);
  EXPECT_GT(c[1].sup_error, c[2].sup_error);
  const std::vector<int> wrong{0, 1};
  EXPECT_THROW(convergence_study(f, wrong, 10, plan), InvalidParameter);
}
