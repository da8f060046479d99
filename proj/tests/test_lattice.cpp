#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "swlat/lattice.hpp"

using namespace swlat;
using swlat::testing::random_cochain;

TEST_CASE("site indexing is a bijection") {
  for (int n : {2, 3}) {
    Lattice lat(n, 0.5);
    for (std::int64_t s = 0; s < lat.sites(); ++s) CHECK(lat.site_index(lat.site_coords(s)) == s);
    CHECK(lat.sites() == static_cast<std::int64_t>(std::pow(n, 4)));
    CHECK(lat.edges() == 4 * lat.sites());
    CHECK(lat.plaquettes() == 6 * lat.sites());
  }
  CHECK_THROWS(Lattice(1, 1.0));
  CHECK_THROWS(Lattice(2, 0.0));
}

TEST_CASE("d of a constant 0-cochain vanishes") {
  Lattice lat(3, 0.7);
  Cochain c(lat, 0);
  for (auto& v : c.values) v = 2.5;
  const Cochain dc = d(c);
  for (std::int64_t e = 0; e < dc.size(); ++e) CHECK(dc[e] == 0.0);
}

TEST_CASE("d on the indicator of site 0, N=2") {
  Lattice lat(2, 1.0);
  Cochain c(lat, 0);
  c[0] = 1.0;
  const Cochain dc = d(c);
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) {
      const double v = dc[Lattice::edge_index(s, mu)];
      if (s == 0) CHECK(v == -1.0);                      // tail at site 0
      else if (lat.forward(s, mu) == 0) CHECK(v == 1.0); // head at site 0
      else CHECK(v == 0.0);
    }
}

TEST_CASE("d . d = 0 on 0-cochains") {
  Lattice lat(3, 0.5);
  auto gen = swlat::testing::rng(11);
  const Cochain chi = random_cochain(lat, 0, gen);
  const Cochain ddchi = d(d(chi));
  double maxabs = 0.0;
  for (double v : ddchi.values) maxabs = std::max(maxabs, std::abs(v));
  const double scale = norm(chi) / (lat.h() * lat.h());
  CHECK(maxabs <= 1e-13 * scale);
}

TEST_CASE("d_star of zero cochains vanishes") {
  Lattice lat(2, 0.5);
  CHECK(norm(d_star(Cochain(lat, 1))) == 0.0);
  CHECK(norm(d_star(Cochain(lat, 2))) == 0.0);
}

TEST_CASE("d degree errors") {
  Lattice lat(2, 1.0);
  CHECK_THROWS(d(Cochain(lat, 2)));
  CHECK_THROWS(d_star(Cochain(lat, 0)));
}

TEST_CASE("adjointness of d and d_star") {
  Lattice lat(2, 0.8);
  auto gen = swlat::testing::rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = trial % 2;  // 0-1 and 1-2 pairings
    const Cochain c = random_cochain(lat, k, gen);
    const Cochain e = random_cochain(lat, k + 1, gen);
    const double lhs = inner(d(c), e);
    const double rhs = inner(c, d_star(e));
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("inner product basics") {
  Lattice lat(2, 1.0);
  Cochain ones(lat, 0);
  for (auto& v : ones.values) v = 1.0;
  CHECK(inner(ones, ones) == doctest::Approx(16.0).epsilon(1e-14));

  Lattice lat2(2, 2.0);
  Cochain ones2(lat2, 0);
  for (auto& v : ones2.values) v = 1.0;
  CHECK(inner(ones2, ones2) == doctest::Approx(16.0 * 16.0).epsilon(1e-14));

  auto gen = swlat::testing::rng(3);
  const Cochain c = random_cochain(lat, 1, gen);
  CHECK(inner(c, c) > 0.0);
  Cochain zero(lat, 1);
  CHECK(inner(zero, zero) == 0.0);
  CHECK_THROWS(inner(c, zero = Cochain(lat, 2)));
}

TEST_CASE("Fourier eigenvalues of d_star d on 0-cochains, N=2") {
  Lattice lat(2, 1.0);
  const std::int64_t dim = lat.sites();
  Eigen::MatrixXd m(dim, dim);
  Cochain e(lat, 0);
  for (std::int64_t j = 0; j < dim; ++j) {
    e[j] = 1.0;
    const Cochain le = d_star(d(e));
    for (std::int64_t i = 0; i < dim; ++i) m(i, j) = le[i];
    e[j] = 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  // sum_i 4 sin^2(pi k_i / 2) over k in {0,1}^4: values 0,4,8,12,16 with
  // binomial multiplicities 1,4,6,4,1.
  std::vector<double> expected;
  for (int k0 = 0; k0 < 2; ++k0)
    for (int k1 = 0; k1 < 2; ++k1)
      for (int k2 = 0; k2 < 2; ++k2)
        for (int k3 = 0; k3 < 2; ++k3) expected.push_back(4.0 * (k0 + k1 + k2 + k3));
  std::sort(expected.begin(), expected.end());
  for (std::int64_t i = 0; i < dim; ++i) CHECK(solver.eigenvalues()(i) == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("self_dual projector") {
  Lattice lat(2, 1.0);
  auto gen = swlat::testing::rng(7);
  const Cochain f = random_cochain(lat, 2, gen);
  const Cochain fp = self_dual(f);
  const Cochain fpp = self_dual(fp);
  for (std::int64_t i = 0; i < f.size(); ++i) CHECK(std::abs(fpp[i] - fp[i]) <= 1e-14);

  Cochain anti(lat, 2);
  for (std::int64_t i = 0; i < f.size(); ++i) anti[i] = f[i] - fp[i];
  CHECK(std::abs(inner(anti, fp)) <= 1e-12 * std::max(1.0, norm(f) * norm(f)));
  CHECK(inner(f, f) == doctest::Approx(inner(fp, fp) + inner(anti, anti)).epsilon(1e-12));

  // single component F_01 = 1 at one plaquette
  Cochain g(lat, 2);
  g[Lattice::plaq_index(3, 0)] = 1.0;
  const Cochain gp = self_dual(g);
  CHECK(gp[Lattice::plaq_index(3, 0)] == doctest::Approx(0.5));
  CHECK(gp[Lattice::plaq_index(3, 5)] == doctest::Approx(0.5));
  CHECK(gp[Lattice::plaq_index(3, 1)] == 0.0);

  CHECK_THROWS(self_dual(Cochain(lat, 1)));
}

TEST_CASE("self_dual has rank 3 N^4 (dense)") {
  Lattice lat(2, 1.0);
  const std::int64_t dim = lat.plaquettes();
  Eigen::MatrixXd m(dim, dim);
  Cochain e(lat, 2);
  for (std::int64_t j = 0; j < dim; ++j) {
    e[j] = 1.0;
    const Cochain pe = self_dual(e);
    for (std::int64_t i = 0; i < dim; ++i) m(i, j) = pe[i];
    e[j] = 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()));
  int rank = 0;
  for (std::int64_t i = 0; i < dim; ++i) {
    const double ev = solver.eigenvalues()(i);
    CHECK((std::abs(ev) <= 1e-12 || std::abs(ev - 1.0) <= 1e-12));  // projector spectrum
    if (ev > 0.5) ++rank;
  }
  CHECK(rank == 3 * lat.sites());
}

TEST_CASE("Hodge Laplacians are positive semidefinite") {
  Lattice lat(2, 0.9);
  auto gen = swlat::testing::rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const Cochain c0 = random_cochain(lat, 0, gen);
    CHECK(inner(c0, d_star(d(c0))) >= -1e-12 * inner(c0, c0));
    const Cochain c1 = random_cochain(lat, 1, gen);
    const Cochain lap1_up = d_star(d(c1));
    const Cochain lap1_down = d(d_star(c1));
    double q = 0.0;
    for (std::int64_t i = 0; i < c1.size(); ++i) q += c1[i] * (lap1_up[i] + lap1_down[i]);
    CHECK(q * lat.cell_weight() >= -1e-12 * inner(c1, c1));
    const Cochain c2 = random_cochain(lat, 2, gen);
    CHECK(inner(c2, d(d_star(c2))) >= -1e-12 * inner(c2, c2));
  }
}
