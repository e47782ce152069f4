#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "rotwave/dtn.hpp"
#include "rotwave/error.hpp"
#include "rotwave/spectral.hpp"
#include "support.hpp"

using namespace rotwave;
using rwtest::max_diff;

namespace {

// Multipliers evaluated by direct O(N^4) DFT sums, independent of the FFT
// path. m(k1, k2) acts on the coefficient of lattice mode (k1, k2).
template <class M>
RealField naive_multiplier(const RealField& f, M m) {
  const Grid2D& g = f.grid();
  const int nx = g.nx(), ny = g.ny();
  std::vector<Complex> c(g.size());
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) c[g.index(i, j)] = rwtest::naive_dft(f, i, j) * m(i, j);
  RealField out(g);
  for (int a = 0; a < nx; ++a)
    for (int b = 0; b < ny; ++b) {
      Complex s = 0.0;
      for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
          s += c[g.index(i, j)] *
               std::polar(1.0, 2.0 * M_PI * (double(i) * a / nx + double(j) * b / ny));
      out(a, b) = s.real() / (nx * ny);
    }
  return out;
}

RealField nl(const RealField& f, double s) {
  const Grid2D& g = f.grid();
  return naive_multiplier(f, [&](int i, int j) {
    const double k = g.kabs(i, j);
    return Complex(k > 0 ? std::pow(k, s) : 0.0, 0.0);
  });
}

RealField nd(const RealField& f, int axis) {
  const Grid2D& g = f.grid();
  return naive_multiplier(f, [&](int i, int j) {
    return Complex(0.0, axis == 1 ? g.kx_odd(i) : g.ky_odd(j));
  });
}

RealField mul(const RealField& a, const RealField& b) { return pointwise(a, b); }

RealField cosx(const Grid2D& g, double amp, int m = 1) {
  return RealField::from_function(g, [=](double x, double) { return amp * std::cos(m * x); });
}

}  // namespace

TEST_CASE("order range") {
  CHECK_THROWS_AS(DtnOrder(-1), ConfigError);
  CHECK_THROWS_AS(DtnOrder(7), ConfigError);
  CHECK(DtnOrder(6).value() == 6);
}

TEST_CASE("flat surface gives Lambda") {
  const Grid2D g(32, 32);
  const RealField phi = rwtest::random_smooth(g, 21, 6);
  const RealField h(g);
  for (int order = 0; order <= 6; ++order)
    CHECK(max_diff(dtn_apply(h, phi, DtnOrder(order)), lambda_pow(phi, 1.0)) < 1e-13);
}

TEST_CASE("constant elevation gives Lambda") {
  const Grid2D g(32, 32);
  const RealField phi = rwtest::random_smooth(g, 22, 4);
  const RealField lp = lambda_pow(phi, 1.0);
  for (double c : {0.05, 0.3, -1.0})
    for (int order = 1; order <= 4; ++order)
      CHECK(max_diff(dtn_apply(RealField::constant(g, c), phi, DtnOrder(order)), lp) <
            1e-11 * std::max(1.0, lp.max_abs()));
  CHECK(g2_apply(RealField::constant(g, 0.7), phi).max_abs() < 1e-12);
  CHECK(g3_apply(RealField::constant(g, 0.7), phi).max_abs() < 1e-12);
}

TEST_CASE("vertical shift invariance") {
  const Grid2D g(32, 32);
  const RealField h = 0.05 * rwtest::random_smooth(g, 23, 3);
  const RealField phi = rwtest::random_smooth(g, 24, 4);
  for (double c : {-1.0, -0.3, 0.5, 1.0})
    for (int order = 0; order <= 3; ++order)
      CHECK(max_diff(dtn_apply(h + RealField::constant(g, c), phi, DtnOrder(order)),
                     dtn_apply(h, phi, DtnOrder(order))) < 1e-10);
}

TEST_CASE("g2 and g3 against direct multiplier compositions") {
  const Grid2D g(16, 16);
  const RealField h = 0.1 * rwtest::random_smooth(g, 31, 2);
  const RealField phi = rwtest::random_smooth(g, 32, 2);
  // -div(h grad phi) - Lambda(h Lambda phi)
  const RealField g2 = -1.0 * (nd(mul(h, nd(phi, 1)), 1) + nd(mul(h, nd(phi, 2)), 2)) -
                       nl(mul(h, nl(phi, 1)), 1);
  CHECK(max_diff(g2_apply(h, phi, false), g2) < 1e-12);
  const RealField h2 = mul(h, h);
  const RealField g3 = -0.5 * nl(mul(h2, nl(phi, 2)), 1) - 0.5 * nl(mul(h2, nl(phi, 1)), 2) +
                       nl(mul(h, nl(mul(h, nl(phi, 1)), 1)), 1);
  CHECK(max_diff(g3_apply(h, phi, false), g3) < 1e-12);
}

TEST_CASE("closed forms for h = eps cos x1, phi = cos x1") {
  // Hand expansion: g2 = eps cos 2x - eps cos 2x = 0, g3 = -eps^2/4 cos x.
  const Grid2D g(32, 32);
  const double eps = 0.1;
  const RealField h = cosx(g, eps), phi = cosx(g, 1.0);
  CHECK(g2_apply(h, phi).max_abs() < 1e-14);
  CHECK(max_diff(g3_apply(h, phi), cosx(g, -eps * eps / 4.0)) < 1e-14);
}

TEST_CASE("recursion terms reproduce g2 and g3") {
  const Grid2D g(32, 32);
  const RealField h = 0.1 * rwtest::random_smooth(g, 41, 3);
  const RealField phi = rwtest::random_smooth(g, 42, 3);
  CHECK(max_diff(dtn_term(h, phi, 1), g2_apply(h, phi)) < 1e-13);
  CHECK(max_diff(dtn_term(h, phi, 2), g3_apply(h, phi)) < 1e-13);
  RealField sum = lambda_pow(phi, 1.0);
  for (int j = 1; j <= 4; ++j) sum += dtn_term(h, phi, j);
  CHECK(max_diff(sum, dtn_apply(h, phi, DtnOrder(4))) < 1e-13);
}

TEST_CASE("self-adjoint at first order, flat operator positive") {
  const Grid2D g(32, 32);
  const RealField h = 0.1 * rwtest::random_smooth(g, 51, 3);
  const RealField phi = rwtest::random_smooth(g, 52, 4);
  const RealField chi = rwtest::random_smooth(g, 53, 4);
  const double a = inner(phi, dtn_apply(h, chi, DtnOrder(1)));
  const double b = inner(chi, dtn_apply(h, phi, DtnOrder(1)));
  CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
  for (unsigned s = 60; s < 65; ++s) {
    const RealField f = rwtest::random_noise(g, s);
    CHECK(inner(f, lambda_pow(f, 1.0)) >= 0.0);
  }
}

TEST_CASE("exact oracle") {
  const Grid2D g(32, 32);
  const DtnSample flat = dtn_oracle_exact(RealField(g), LatticeMode{1, 0});
  CHECK(max_diff(flat.phi, cosx(g, 1.0)) < 1e-15);
  CHECK(max_diff(flat.gphi, cosx(g, 1.0)) < 1e-15);
  const DtnSample up = dtn_oracle_exact(RealField::constant(g, 0.3), LatticeMode{1, 0});
  CHECK(max_diff(up.gphi, cosx(g, std::exp(0.3))) < 1e-14);
  CHECK_THROWS_AS(dtn_oracle_exact(RealField(g), LatticeMode{0, 0}), InvalidInput);
  // finite depth, flat: |k| tanh(|k| H)
  const DtnSample fd = dtn_oracle_exact(RealField(g), LatticeMode{2, 0}, 0.5);
  CHECK(max_diff(fd.gphi, cosx(g, 2.0 * std::tanh(1.0), 2)) < 1e-14);
}

TEST_CASE("series converges to the exact oracle") {
  const Grid2D g(64, 64);
  const std::vector<double> eps{0.01, 0.02, 0.04};
  const LatticeMode k{1, 0};
  // For this family G_1(h) phi_0 vanishes identically, so orders 0 and 1
  // share their error; slopes come out 2, 2, 3, 4.
  const double expect[] = {2.0, 2.0, 3.0, 4.0};
  for (int order = 0; order <= 3; ++order) {
    const ConvergenceStudy s = dtn_convergence_study(g, eps, DtnOrder(order), k);
    CHECK(s.slope >= order + 0.9);
    CHECK(s.slope == doctest::Approx(expect[order]).epsilon(0.02));
  }
  const ConvergenceStudy diag = dtn_convergence_study(g, eps, DtnOrder(2), LatticeMode{1, 1});
  CHECK(diag.slope >= 2.9);
  const double e2[] = {0.01, 0.02};
  CHECK_THROWS_AS(dtn_convergence_order(g, e2, DtnOrder(1), k), InvalidInput);
}

TEST_CASE("strip oracle, flat strip") {
  const Grid2D g(16, 16);
  const RealField h(g);
  for (int m : {1, 2}) {
    const RealField phi = cosx(g, 1.0, m);
    const RealField want = cosx(g, m * std::tanh(10.0 * m), m);
    CHECK(max_diff(dtn_oracle_strip(h, phi, 10.0, 32), want) < 1e-8);
  }
}

TEST_CASE("strip oracle refinement on a wavy surface") {
  const Grid2D g(32, 32);
  const RealField h = cosx(g, 0.05);
  const DtnSample exact = dtn_oracle_exact(h, LatticeMode{1, 0}, 1.0);
  const double e32 = max_diff(dtn_oracle_strip(h, exact.phi, 1.0, 32), exact.gphi);
  const double e64 = max_diff(dtn_oracle_strip(h, exact.phi, 1.0, 64), exact.gphi);
  CHECK(e64 < e32);
  CHECK(e32 / e64 >= 3.5);
}

TEST_CASE("strip oracle errors") {
  const Grid2D g(16, 16);
  const RealField h = cosx(g, 0.05);
  const RealField phi = cosx(g, 1.0);
  CHECK_THROWS_AS(dtn_oracle_strip(h, phi, 10.0, 16), InvalidInput);
  CHECK_THROWS_AS(dtn_oracle_strip(h, phi, 0.2, 32), InvalidInput);
  StripOptions tight;
  tight.max_iterations = 1;
  tight.tolerance = 1e-14;
  try {
    (void)dtn_oracle_strip(h, phi, 1.0, 32, tight);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.residual() > 0.0);
  }
}
