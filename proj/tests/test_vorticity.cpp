#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rotwave/error.hpp"
#include "rotwave/spectral.hpp"
#include "rotwave/vorticity.hpp"
#include "support.hpp"

using namespace rotwave;
using rwtest::max_diff;

namespace {

RealField f(const Grid2D& g, double (*fn)(double, double)) {
  return RealField::from_function(g, fn);
}

VorticityTrace trace_of(VectorField v) { return VorticityTrace{std::move(v), 0.0}; }

RealField wavy(const Grid2D& g) {
  return RealField::from_function(
      g, [](double x, double y) { return 0.1 * std::cos(x) + 0.05 * std::sin(x + 2 * y); });
}

}  // namespace

TEST_CASE("b_omega") {
  const Grid2D g(32, 32);
  const VorticityTrace v = trace_of(VectorField(f(g, [](double x, double) { return std::sin(x); }),
                                                RealField(g)));
  CHECK(b_omega(RealField(g), v).max_abs() == 0.0);
  const RealField hy = f(g, [](double, double y) { return std::cos(y); });
  const VorticityTrace ex = trace_of(VectorField(RealField::constant(g, 1.0), RealField(g)));
  CHECK(b_omega(hy, ex).max_abs() < 1e-15);
  const RealField h = f(g, [](double x, double) { return 0.1 * std::cos(x); });
  CHECK(max_diff(b_omega(h, v),
                 f(g, [](double x, double) { return -0.1 * std::sin(x) * std::sin(x); })) < 1e-15);
}

TEST_CASE("u_omega") {
  const Grid2D g(32, 32);
  const VorticityTrace ex = trace_of(VectorField(RealField::constant(g, 1.0), RealField(g)));
  const VectorField flat = u_omega(RealField(g), ex);
  CHECK(max_diff(flat.x, ex.v_omega.x) == 0.0);
  CHECK(u_omega(wavy(g), VorticityTrace::zero(g)).max_abs() == 0.0);
  const double eps = 0.2;
  const RealField h = RealField::from_function(g, [&](double x, double) { return eps * std::cos(x); });
  const VectorField u = u_omega(h, ex);
  CHECK(max_diff(u.x, RealField::from_function(g, [&](double x, double) {
                   return 1.0 + eps * eps * std::sin(x) * std::sin(x);
                 })) < 1e-14);
  CHECK(u.y.max_abs() < 1e-15);
}

TEST_CASE("b_omega and u_omega are linear in the trace") {
  const Grid2D g(32, 32);
  const RealField h = wavy(g);
  const VectorField v1(rwtest::random_smooth(g, 1), rwtest::random_smooth(g, 2));
  const VectorField v2(rwtest::random_smooth(g, 3), rwtest::random_smooth(g, 4));
  const double a = 0.75, b = -2.0;  // exact in binary
  const VectorField comb = v1 * a + v2 * b;
  const RealField lhs = b_omega(h, trace_of(comb));
  const RealField rhs = a * b_omega(h, trace_of(v1)) + b * b_omega(h, trace_of(v2));
  CHECK(max_diff(lhs, rhs) < 1e-14);
  const VectorField ul = u_omega(h, trace_of(comb));
  const VectorField ur = u_omega(h, trace_of(v1)) * a + u_omega(h, trace_of(v2)) * b;
  CHECK(max_diff(ul.x, ur.x) < 1e-14);
  CHECK(max_diff(ul.y, ur.y) < 1e-14);
}

TEST_CASE("curl residual") {
  const Grid2D g(32, 32);
  const RealField zero(g);
  // gradient of cos(x1 + x2) on a flat surface
  const VectorField ga = grad(f(g, [](double x, double y) { return std::cos(x + y); }));
  CHECK(curl_residual(zero, trace_of(ga), zero).max_abs() < 1e-12);
  // stream function psi = cos x1, V = (-d2 psi, d1 psi), omega_n = Lap psi = -cos x1
  const VectorField gp = grad(f(g, [](double x, double) { return std::cos(x); }));
  const VectorField rot(-1.0 * gp.y, gp.x);
  const RealField lap = f(g, [](double x, double) { return -std::cos(x); });
  CHECK(curl_residual(zero, trace_of(rot), lap).max_abs() < 1e-12);
  CHECK(curl_residual(zero, trace_of(rot), zero).max_abs() > 0.5);
  CHECK(curl_residual(wavy(g), VorticityTrace::zero(g), zero).max_abs() == 0.0);
}

TEST_CASE("recover_a_omega") {
  const Grid2D g(32, 32);
  const RealField c = f(g, [](double x, double) { return std::cos(x); });
  const VectorField gc = grad(c);
  CHECK(max_diff(recover_a_omega(RealField(g), trace_of(gc)), c) < 1e-14);
  CHECK(recover_a_omega(wavy(g), VorticityTrace::zero(g)).max_abs() == 0.0);

  // admissible trace on a wavy surface from the gradient of cos x2
  const RealField h = f(g, [](double x, double) { return 0.1 * std::cos(x); });
  const VorticityProvider p = VorticityProvider::analytic(
      g, AnalyticSpec{AnalyticFamily::gradient_cosine, 1.0, LatticeMode{0, 1}, 0.0, 1.0});
  const VorticityTrace tr = p.trace(0.0, h);
  const RealField a = recover_a_omega(h, tr);
  CHECK(max_diff(a, f(g, [](double, double y) { return std::cos(y); })) < 1e-9);
  const VectorField ga = grad(a), u = u_omega(h, tr);
  CHECK(std::max(max_diff(ga.x, u.x), max_diff(ga.y, u.y)) < 1e-8);
  CHECK(std::abs(a.mean()) < 1e-15);

  const VectorField gp = grad(c);
  try {
    (void)recover_a_omega(RealField(g), trace_of(VectorField(-1.0 * gp.y, gp.x)));
    FAIL("expected ConstraintViolation");
  } catch (const ConstraintViolation& e) {
    CHECK(e.residual() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("analytic providers") {
  const Grid2D g(64, 64);
  const RealField h = wavy(g);
  const double times[] = {0.0, 0.3, 1.7, 10.0};
  for (AnalyticFamily fam : {AnalyticFamily::gradient_cosine, AnalyticFamily::gradient_gaussian}) {
    const VorticityProvider p =
        VorticityProvider::analytic(g, AnalyticSpec{fam, 0.02, LatticeMode{1, 2}, 0.8, 0.7});
    CHECK(p.kind() == ProviderKind::analytic);
    CHECK(p.check_admissible(h, times) < 1e-10);
    for (double t : times) {
      const ProviderSample s = p.sample(t, h);
      const VectorField grad_a = grad(recover_a_omega(h, s.trace));
      const VectorField u = u_omega(h, s.trace);
      CHECK(std::max(max_diff(grad_a.x, u.x), max_diff(grad_a.y, u.y)) < 1e-8);
    }
  }
  // The stream family matches its own normal vorticity but is not admissible.
  const AnalyticSpec stream{AnalyticFamily::stream_cosine, 0.02, LatticeMode{1, 1}, 0.5, 1.0};
  CHECK_THROWS_AS(VorticityProvider::analytic(g, stream), ConstraintViolation);
  const VorticityProvider sp = VorticityProvider::analytic(g, stream, false);
  for (double t : times) {
    const ProviderSample s = sp.sample(t, h);
    CHECK(curl_residual(h, s.trace, s.omega_n).max_abs() < 1e-10);
  }
  CHECK_THROWS_AS(sp.check_admissible(h, times), ConstraintViolation);
}

TEST_CASE("zero and static providers") {
  const Grid2D g(16, 16);
  const VorticityProvider z = VorticityProvider::zero(g);
  for (double t : {0.0, 1.0, 100.0}) CHECK(z.trace(t, wavy(g)).is_zero());
  const VectorField v(rwtest::random_smooth(g, 7), rwtest::random_smooth(g, 8));
  const VorticityProvider s = VorticityProvider::from_trace(v);
  CHECK(s.kind() == ProviderKind::static_trace);
  CHECK(max_diff(s.trace(5.0, RealField(g)).v_omega.x, v.x) == 0.0);
  RealField bad(g);
  bad[3] = std::nan("");
  CHECK_THROWS_AS(VorticityProvider::from_trace(VectorField(bad, RealField(g))), ConfigError);
}

TEST_CASE("family names") {
  CHECK(analytic_family_from_string("stream-cosine") == AnalyticFamily::stream_cosine);
  CHECK(to_string(AnalyticFamily::gradient_gaussian) == "gradient-gaussian");
  CHECK_THROWS_AS(analytic_family_from_string("vortex"), ConfigError);
}
