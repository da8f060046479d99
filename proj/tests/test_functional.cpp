#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "swlat/functional.hpp"
#include "swlat/identity.hpp"

using namespace swlat;
using namespace swlat::testing;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double fd_energy_derivative(const Configuration& c, const Cochain& theta, const SpinorField& v, double eps) {
  auto shifted = [&](double s) {
    Cochain a = c.a;
    for (std::int64_t e = 0; e < a.size(); ++e) a[e] += s * theta[e];
    SpinorField phi = c.phi;
    for (std::size_t i = 0; i < phi.values.size(); ++i) phi.values[i] += s * v.values[i];
    return sw_eval(Configuration(std::move(a), std::move(phi), c.bundle)).total;
  };
  return (shifted(eps) - shifted(-eps)) / (2.0 * eps);
}

// Smooth band-limited pair (a, phi) sampled from fixed continuum fields at
// physical size L = n h.
Configuration smooth_configuration(int n, double physical_size) {
  const double h = physical_size / n;
  const Lattice lat(n, h);
  const double u = kTwoPi / physical_size;
  Cochain a(lat, 1);
  SpinorField phi(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const auto xc = lat.site_coords(s);
    const double x0 = xc[0] * h, x1 = xc[1] * h, x2 = xc[2] * h, x3 = xc[3] * h;
    a[Lattice::edge_index(s, 0)] = 0.3 * std::sin(u * (x1 + x3));
    a[Lattice::edge_index(s, 1)] = -0.2 * std::cos(u * x2);
    a[Lattice::edge_index(s, 2)] = 0.15 * std::sin(u * (x0 - x1));
    a[Lattice::edge_index(s, 3)] = 0.25 * std::cos(u * (x0 + x2));
    phi.at(s)[0] = 0.6 * std::polar(1.0, u * x0) + cdouble{0.2, 0.1};
    phi.at(s)[1] = 0.5 * std::polar(1.0, u * (x1 - x2)) + cdouble{0.0, -0.3};
  }
  return Configuration(std::move(a), std::move(phi), BundleData::constant_kg(lat, {0, 0, 0, 0, 0, 0}, 0.0));
}

}  // namespace

TEST_CASE("sw_eval on closed-form configurations") {
  Lattice lat(2, 1.0);

  const Configuration zero(Cochain(lat, 1), SpinorField(lat, Chirality::plus),
                           BundleData::constant_kg(lat, {0, 0, 0, 0, 0, 0}, 0.0));
  CHECK(sw_eval(zero).total == 0.0);

  SpinorField unit(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) unit.at(s)[0] = 1.0;
  const Configuration cst(Cochain(lat, 1), unit, BundleData::constant_kg(lat, {0, 0, 0, 0, 0, 0}, 4.0));
  const EnergyBreakdown e = sw_eval(cst);
  CHECK(e.curvature_term == 0.0);
  CHECK(e.dirichlet_term == 0.0);
  CHECK(e.quartic_term == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(e.curvature_coupling_term == doctest::Approx(16.0).epsilon(1e-14));
  CHECK(e.topological_term == 0.0);
  CHECK(e.total == doctest::Approx(18.0).epsilon(1e-14));
  CHECK(e.total ==
        doctest::Approx(e.curvature_term + e.dirichlet_term + e.quartic_term + e.curvature_coupling_term +
                        e.topological_term)
            .epsilon(1e-12));

  // flux contributes the topological term and the twist curvature
  const Configuration twisted(Cochain(lat, 1), SpinorField(lat, Chirality::plus),
                              BundleData::constant_kg(lat, {1, 0, 0, 0, 0, 1}, 0.0));
  const EnergyBreakdown et = sw_eval(twisted);
  CHECK(et.topological_term == doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi));
  CHECK(et.curvature_term > 0.0);
}

TEST_CASE("sw_eval is gauge invariant") {
  Lattice lat(2, 0.75);
  auto gen = rng(53);
  const Configuration c = random_configuration(lat, gen, 1.0, {0, 1, 0, 0, 0, 0}, -0.5);
  const double total = sw_eval(c).total;
  for (int trial = 0; trial < 20; ++trial) {
    const GaugeTransform g = random_gauge(lat, gen, 2.0);
    CHECK(sw_eval(gauge_apply(g, c)).total == doctest::Approx(total).epsilon(1e-12));
  }
}

TEST_CASE("sigma form") {
  const cdouble e1[2] = {cdouble{1.0, 0.0}, cdouble{0.0, 0.0}};
  const auto m1 = sigma_form(e1);
  CHECK(m1[0] == cdouble{0.5, 0.0});
  CHECK(m1[3] == cdouble{-0.5, 0.0});
  CHECK(m1[1] == cdouble{0.0, 0.0});

  const cdouble z[2] = {cdouble{0.0, 0.0}, cdouble{0.0, 0.0}};
  for (const auto& v : sigma_form(z)) CHECK(std::abs(v) == 0.0);

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const cdouble mix[2] = {cdouble{inv_sqrt2, 0.0}, cdouble{0.0, inv_sqrt2}};
  const auto m2 = sigma_form(mix);
  CHECK(std::abs(m2[0] + m2[3]) <= 1e-14);                    // traceless
  CHECK(std::abs(m2[1] - std::conj(m2[2])) <= 1e-14);         // hermitian
  CHECK(std::abs(m2[1] - cdouble{0.0, -0.5}) <= 1e-14);
  CHECK(std::abs(m2[2] - cdouble{0.0, 0.5}) <= 1e-14);
  // eigenvalues +-|phi|^2/2 = +-1/2
  const double det = (m2[0] * m2[3] - m2[1] * m2[2]).real();
  CHECK(det == doctest::Approx(-0.25).epsilon(1e-14));

  auto gen = rng(59);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const cdouble phi[2] = {cdouble{dist(gen), dist(gen)}, cdouble{dist(gen), dist(gen)}};
    const auto m = sigma_form(phi);
    const double n2 = std::norm(phi[0]) + std::norm(phi[1]);
    CHECK(std::abs(m[0] + m[3]) <= 1e-14 * std::max(1.0, n2));
    CHECK(std::abs(m[1] - std::conj(m[2])) <= 1e-14 * std::max(1.0, n2));
    // pauli coefficients reconstruct sigma
    const auto s = pauli_expectations(phi);
    CHECK(std::abs(m[0] - cdouble{0.5 * s[2], 0.0}) <= 1e-13 * std::max(1.0, n2));
    CHECK(std::abs(m[1] - 0.5 * cdouble{s[0], -s[1]}) <= 1e-13 * std::max(1.0, n2));
  }
}

TEST_CASE("dirac operator: constants, plane waves, gauge covariance") {
  Lattice lat(4, 0.5);
  const BundleData bundle = BundleData::constant_kg(lat, {0, 0, 0, 0, 0, 0}, 0.0);

  SpinorField cst(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    cst.at(s)[0] = cdouble{0.3, 0.4};
    cst.at(s)[1] = cdouble{-1.0, 0.2};
  }
  const Configuration c0(Cochain(lat, 1), cst, bundle);
  CHECK(norm(dirac_plus(c0, c0.phi)) == 0.0);

  SpinorField wave(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    wave.at(s)[0] = std::polar(1.0, kTwoPi * lat.site_coords(s)[0] / lat.n());
  const Configuration c1(Cochain(lat, 1), wave, bundle);
  const SpinorField dw = dirac_plus(c1, c1.phi);
  const cdouble factor{0.0, std::sin(kTwoPi / lat.n()) / lat.h()};
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    CHECK(std::abs(dw.at(s)[0] - factor * wave.at(s)[0]) <= 1e-13);
    CHECK(std::abs(dw.at(s)[1]) <= 1e-14);
  }

  auto gen = rng(61);
  Lattice small(2, 1.0);
  const Configuration c = random_configuration(small, gen, 1.0, {0, 0, 1, 0, 0, 0});
  const GaugeTransform g(random_cochain(small, 0, gen), {1, 0, 0, 0});
  const Configuration cg = gauge_apply(g, c);
  const SpinorField lhs = dirac_plus(cg, cg.phi);
  const SpinorField rhs = dirac_plus(c, c.phi);
  double max_err = 0.0;
  for (std::int64_t s = 0; s < small.sites(); ++s) {
    const auto x = small.site_coords(s);
    const cdouble ph = std::polar(1.0, g.chi[s] + kTwoPi * g.winding[0] * x[0] / small.n());
    max_err = std::max(max_err, std::abs(lhs.at(s)[0] - ph * rhs.at(s)[0]));
    max_err = std::max(max_err, std::abs(lhs.at(s)[1] - ph * rhs.at(s)[1]));
  }
  CHECK(max_err <= 1e-12);
  CHECK_THROWS(dirac_plus(c, SpinorField(small, Chirality::minus)));
}

TEST_CASE("monopole residual") {
  Lattice lat(2, 1.0);
  const Configuration zero(Cochain(lat, 1), SpinorField(lat, Chirality::plus),
                           BundleData::constant_kg(lat, {0, 0, 0, 0, 0, 0}, 0.0));
  const auto [r1, r2] = monopole_residual(zero);
  CHECK(norm(r1) == 0.0);
  CHECK(norm(r2) == 0.0);

  // phi = (1,0): sigma = diag(1/2,-1/2), pauli (0,0,1), iota coefficient
  // -1/2 puts -+1/4 on the (03),(12) components; residual flips the sign.
  SpinorField unit(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) unit.at(s)[0] = 1.0;
  const Configuration cst(Cochain(lat, 1), unit, zero.bundle);
  const auto [c1, c2] = monopole_residual(cst);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    CHECK(c1[Lattice::plaq_index(s, 2)] == doctest::Approx(0.25));  // (03)
    CHECK(c1[Lattice::plaq_index(s, 3)] == doctest::Approx(0.25));  // (12)
    CHECK(c1[Lattice::plaq_index(s, 0)] == 0.0);
    CHECK(c1[Lattice::plaq_index(s, 1)] == 0.0);
  }
  CHECK(inner(c1, c1) == doctest::Approx(lat.volume() / 8.0).epsilon(1e-13));
  CHECK(norm(c2) == 0.0);

  auto gen = rng(67);
  const Configuration c = random_configuration(lat, gen, 1.0, {0, 1, 0, 0, 0, 0}, 0.0);
  const double rn = monopole_residual_norm(c);
  for (int trial = 0; trial < 20; ++trial) {
    const GaugeTransform g = random_gauge(lat, gen);
    CHECK(monopole_residual_norm(gauge_apply(g, c)) == doctest::Approx(rn).epsilon(1e-12));
  }
}

TEST_CASE("gradient: closed form at a constant configuration") {
  Lattice lat(2, 1.0);
  SpinorField unit(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) unit.at(s)[0] = 1.0;
  const Configuration c(Cochain(lat, 1), unit, BundleData::constant_kg(lat, {0, 0, 0, 0, 0, 0}, 4.0));
  const GradientPair g = sw_gradient(c);
  CHECK(norm(g.grad_a) <= 1e-14);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    CHECK(std::abs(g.grad_phi.at(s)[0] - cdouble{2.5, 0.0}) <= 1e-14);
    CHECK(std::abs(g.grad_phi.at(s)[1]) <= 1e-14);
  }
}

TEST_CASE("gradient matches central finite differences") {
  for (int n : {2, 3}) {
    Lattice lat(n, 1.0);
    auto gen = rng(1000 + n);
    for (int trial = 0; trial < 5; ++trial) {
      const Configuration c = random_configuration(lat, gen, 1.0, {0, 0, 0, 0, 0, 0}, 0.8);
      const GradientPair g = sw_gradient(c);
      const Cochain theta = random_cochain(lat, 1, gen);
      const SpinorField v = random_spinor(lat, gen);
      const double analytic = inner(g.grad_a, theta) + inner_re(g.grad_phi, v);
      const double fd = fd_energy_derivative(c, theta, v, 1e-5);
      CHECK(std::abs(fd - analytic) / std::max(1.0, std::abs(fd)) <= 1e-6);
    }
  }
}

TEST_CASE("gradient is gauge equivariant") {
  Lattice lat(2, 1.0);
  auto gen = rng(71);
  const Configuration c = random_configuration(lat, gen, 1.0, {0, 0, 0, 0, 0, 0}, 0.4);
  const GradientPair g = sw_gradient(c);
  const GaugeTransform gt = random_gauge(lat, gen);
  const Configuration cg = gauge_apply(gt, c);
  const GradientPair gg = sw_gradient(cg);
  // tangent transport: theta-part unchanged, spinor part rotated
  double max_err = 0.0;
  for (std::int64_t e = 0; e < lat.edges(); ++e) max_err = std::max(max_err, std::abs(gg.grad_a[e] - g.grad_a[e]));
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const cdouble ph = std::polar(1.0, gt.chi[s]);
    max_err = std::max(max_err, std::abs(gg.grad_phi.at(s)[0] - ph * g.grad_phi.at(s)[0]));
    max_err = std::max(max_err, std::abs(gg.grad_phi.at(s)[1] - ph * g.grad_phi.at(s)[1]));
  }
  CHECK(max_err <= 1e-12);
}

TEST_CASE("gradient vanishes at reducible harmonic points") {
  Lattice lat(3, 0.5);
  Cochain a(lat, 1);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    a[Lattice::edge_index(s, 0)] = 0.37;  // harmonic shift
    a[Lattice::edge_index(s, 2)] = -1.2;
  }
  const Configuration c(a, SpinorField(lat, Chirality::plus), BundleData::constant_kg(lat, {0, 0, 0, 0, 0, 0}, 2.0));
  CHECK(grad_norm(sw_gradient(c)) <= 1e-12);
}

TEST_CASE("phi operator and its adjoint") {
  Lattice lat(2, 1.0);
  auto gen = rng(73);
  const Configuration c = random_configuration(lat, gen);

  CHECK(norm(phi_operator(c, Cochain(lat, 1))) == 0.0);
  const Configuration reducible(c.a, SpinorField(lat, Chirality::plus), c.bundle);
  CHECK(norm(phi_operator(reducible, random_cochain(lat, 1, gen))) == 0.0);

  // single edge support
  Cochain theta(lat, 1);
  const std::int64_t e0 = Lattice::edge_index(5, 2);
  theta[e0] = 1.0;
  const EdgeSpinorField w = phi_operator(c, theta);
  CHECK(std::abs(w.at(e0)[0] - c.phi.at(5)[0]) == 0.0);
  CHECK(std::abs(w.at(e0)[1] - c.phi.at(5)[1]) == 0.0);
  double off = 0.0;
  for (std::int64_t e = 0; e < lat.edges(); ++e)
    if (e != e0) off += std::abs(w.at(e)[0]) + std::abs(w.at(e)[1]);
  CHECK(off == 0.0);

  for (int trial = 0; trial < 50; ++trial) {
    const Cochain t = random_cochain(lat, 1, gen);
    const EdgeSpinorField u = random_edge_spinor(lat, gen);
    const double lhs = inner_re(phi_operator(c, t), u);
    const double rhs = inner(t, phi_adjoint(c, u));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("phi adjoint of the covariant derivative converges to d|phi|^2 / 2") {
  // refinement study at fixed physical size; the error is O(h)
  double prev = 0.0;
  for (int level = 0; level < 3; ++level) {
    const int n = 4 << level;
    const Configuration c = smooth_configuration(n, 2.0);
    const Lattice& lat = c.lattice();

    const Cochain lhs = phi_adjoint(c, covariant_derivative(c, c.phi));
    Cochain n2(lat, 0);
    for (std::int64_t s = 0; s < lat.sites(); ++s)
      n2[s] = std::norm(c.phi.at(s)[0]) + std::norm(c.phi.at(s)[1]);
    Cochain rhs = d(n2);
    for (auto& v : rhs.values) v *= 0.5;

    Cochain diff(lat, 1);
    for (std::int64_t e = 0; e < lat.edges(); ++e) diff[e] = lhs[e] - rhs[e];
    const double err = norm(diff) / (norm(c.phi) * norm(c.phi));
    if (level > 0) CHECK(prev / err >= 1.5);
    prev = err;
  }

  // both sides vanish for constant sections at a = 0
  Lattice lat(2, 1.0);
  SpinorField cst(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) cst.at(s)[0] = cdouble{0.8, -0.1};
  const Configuration c(Cochain(lat, 1), cst, BundleData::constant_kg(lat, {0, 0, 0, 0, 0, 0}, 0.0));
  CHECK(norm(phi_adjoint(c, covariant_derivative(c, c.phi))) <= 1e-14);
}

TEST_CASE("energy identity defect shrinks under refinement") {
  const auto study = identity_refinement_study({4, 8}, 4.0);
  CHECK(study[1].factor >= 1.5);
  CHECK(study[0].defect > study[1].defect);
}
