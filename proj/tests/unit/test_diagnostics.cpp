#include "tangent_llg/diagnostics.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace tangent_llg;

namespace {

// ∫_K f₊ for linear f via the divided-difference formula
// ∫ φ(f) = 3!·V·Φ[f₀,…,f₃] with Φ''' = φ, here Φ(t) = t₊⁴/24.
long double positive_part_integral(const std::array<double, 4>& f, double V) {
  long double sum = 0.0L;
  for (int i = 0; i < 4; ++i) {
    long double denom = 1.0L;
    for (int j = 0; j < 4; ++j) {
      if (j != i) denom *= static_cast<long double>(f[i]) - f[j];
    }
    const long double t = std::max(0.0, f[i]);
    sum += t * t * t * t / 24.0L / denom;
  }
  return 6.0L * V * sum;
}

double abs_integral_oracle(const std::array<double, 4>& f, double V) {
  const std::array<double, 4> g{-f[0], -f[1], -f[2], -f[3]};
  return static_cast<double>(positive_part_integral(f, V) + positive_part_integral(g, V));
}

}  // namespace

TEST_CASE("average magnetization") {
  const Mesh mesh = generate_type1({{2, 2, 1}, {80.0, 80.0, 10.0}});
  const FormSet f = assemble_static(mesh, DmiForm::bulk);
  const auto up = NodalVectorField::uniform(mesh.vertex_count(), {0, 0, 1});
  CHECK((avg_magnetization(up, f) - Vec3(0, 0, 1)).norm() <= 1e-15);
  const double q = 0.01;
  const auto m0 = NodalVectorField::uniform(mesh.vertex_count(),
                                            {q, -q, std::sqrt(1 - 2 * q * q)});
  const Vec3 avg = avg_magnetization(m0, f);
  CHECK(avg[0] == doctest::Approx(0.01));
  CHECK(avg[1] == doctest::Approx(-0.01));
  CHECK(avg[2] == doctest::Approx(std::sqrt(0.9998)).epsilon(1e-14));

  std::mt19937 rng(41);
  std::normal_distribution<double> g;
  NodalVectorField r(mesh.vertex_count());
  for (Index z = 0; z < mesh.vertex_count(); ++z) {
    r.set(z, Vec3(g(rng), g(rng), g(rng)).normalized());
  }
  CHECK(avg_magnetization(r, f).norm() <= 1.0 + 1e-12);
  CHECK((avg_magnetization(-r, f) + avg_magnetization(r, f)).norm() <= 1e-15);
}

TEST_CASE("exact L1 integral of a linear function on one cell") {
  const Mesh tet({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 1, 2, 3}});
  const double V = 1.0 / 6.0;
  CHECK(abs_integral_p1(tet, 0, {1, 1, 1, 1}) == doctest::Approx(V));
  CHECK(abs_integral_p1(tet, 0, {-2, -2, -2, -2}) == doctest::Approx(2 * V));
  CHECK(abs_integral_p1(tet, 0, {0, 0, 0, 0}) == 0.0);
  // One vertex positive: the positive part is a corner tet scaled by t = f/(f−g).
  CHECK(abs_integral_p1(tet, 0, {1, 0, 0, 0}) == doctest::Approx(V / 4));

  std::mt19937 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::array<double, 4> f;
    for (auto& v : f) v = u(rng);
    CHECK(abs_integral_p1(tet, 0, f) ==
          doctest::Approx(abs_integral_oracle(f, V)).epsilon(1e-9));
  }
  // Exact zeros at vertices and two-two splits.
  CHECK(abs_integral_p1(tet, 0, {1, -1, 0, 0}) ==
        doctest::Approx(abs_integral_oracle({1, -1, 1e-7, -1e-7}, V)).epsilon(1e-6));
  CHECK(abs_integral_p1(tet, 0, {1, 1, -1, -1}) ==
        doctest::Approx(abs_integral_oracle({1, 1 + 1e-6, -1, -1 - 1e-6}, V)).epsilon(1e-5));
}

TEST_CASE("constraint violation") {
  const Mesh mesh = generate_type2({{2, 2, 1}, {2.0, 2.0, 1.0}});
  const auto unit = NodalVectorField::uniform(mesh.vertex_count(), {0.6, 0, 0.8});
  CHECK(constraint_violation_L1(unit, mesh) <= 1e-15);
  const double delta = 0.03;
  const auto big = NodalVectorField::uniform(mesh.vertex_count(),
                                             {0, 0, std::sqrt(1.0 + delta)});
  CHECK(constraint_violation_L1(big, mesh) ==
        doctest::Approx(delta * mesh.volume()).epsilon(1e-12));

  std::mt19937 rng(43);
  std::uniform_real_distribution<double> u(0.7, 1.3);
  NodalVectorField m(mesh.vertex_count());
  for (Index z = 0; z < mesh.vertex_count(); ++z) m.set(z, Vec3(u(rng), 0, 0));
  double oracle = 0.0;
  for (Index c = 0; c < mesh.cell_count(); ++c) {
    std::array<double, 4> f;
    for (int a = 0; a < 4; ++a) f[a] = m.at(mesh.cell(c)[a]).squaredNorm() - 1.0;
    oracle += abs_integral_oracle(f, mesh.cell_volume(c));
  }
  CHECK(constraint_violation_L1(m, mesh) == doctest::Approx(oracle).epsilon(1e-9));
}

TEST_CASE("energy law residual needs per-step records") {
  TimeSeries s;
  s.run.scheme.kind = SchemeKind::pf_tps1;
  s.run.lex = 1.0;
  s.run.alpha = 0.5;
  s.run.nominal_k = 0.1;
  CHECK(energy_law_residual(s).empty());
  s.run.lower_order_terms = true;
  CHECK_THROWS_AS(energy_law_residual(s), DiagnosticUnavailable);
}

TEST_CASE("surplus constant fit") {
  TimeSeries s;
  StepRecord r;
  r.k = 0.1;
  r.v_l2_sq = 4.0;
  s.steps = {r, r};
  // c·h⁻¹k²‖v‖² with h = 0.5: 0.08·c.
  CHECK(fit_surplus_constant(s, {-1.0, 0.04}, 0.5) == doctest::Approx(0.5));
  CHECK(fit_surplus_constant(s, {-1.0, -2.0}, 0.5) == 0.0);
}
