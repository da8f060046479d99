#include "swlat/hodge.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "swlat/functional.hpp"

namespace swlat {

namespace {

void subtract_mean(Cochain& c) {
  double mean = 0.0;
  for (double v : c.values) mean += v;
  mean /= static_cast<double>(c.size());
  for (double& v : c.values) v -= mean;
}

}  // namespace

Cochain solve_poisson0(const Lattice& lat, const Cochain& rhs_in, double tol, int max_iters) {
  if (rhs_in.degree() != 0 || !rhs_in.lattice().same_as(lat))
    throw std::invalid_argument("solve_poisson0: 0-cochain on the given lattice required");

  Cochain rhs = rhs_in;
  subtract_mean(rhs);  // kernel of d*d is the constants
  const double rhs_norm = norm(rhs);
  Cochain chi(lat, 0);
  if (rhs_norm == 0.0) return chi;

  Cochain r = rhs;
  Cochain p = r;
  double rr = inner(r, r);
  for (int it = 0; it < max_iters; ++it) {
    Cochain ap = d_star(d(p));
    const double alpha = rr / inner(p, ap);
    for (std::int64_t i = 0; i < chi.size(); ++i) chi[i] += alpha * p[i];
    for (std::int64_t i = 0; i < r.size(); ++i) r[i] -= alpha * ap[i];
    const double rr_new = inner(r, r);
    if (std::sqrt(rr_new) <= tol * rhs_norm) {
      subtract_mean(chi);
      return chi;
    }
    const double beta = rr_new / rr;
    for (std::int64_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    rr = rr_new;
  }
  throw std::runtime_error("solve_poisson0: CG did not converge, residual " + std::to_string(std::sqrt(rr)) +
                           " after " + std::to_string(max_iters) + " iterations");
}

HodgeSplit hodge_split(const Cochain& a, double cg_tol) {
  if (a.degree() != 1) throw std::invalid_argument("hodge_split: 1-cochain required");
  const Lattice& lat = a.lattice();

  const Cochain chi = solve_poisson0(lat, d_star(a), cg_tol);
  Cochain exact = d(chi);

  // On the flat torus the harmonic projection is the per-direction mean.
  Cochain harmonic(lat, 1);
  std::array<double, 4> mean{0.0, 0.0, 0.0, 0.0};
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) mean[mu] += a[Lattice::edge_index(s, mu)];
  for (int mu = 0; mu < 4; ++mu) mean[mu] /= static_cast<double>(lat.sites());
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) harmonic[Lattice::edge_index(s, mu)] = mean[mu];

  Cochain coexact(lat, 1);
  for (std::int64_t e = 0; e < a.size(); ++e) coexact[e] = a[e] - exact[e] - harmonic[e];

  return HodgeSplit(std::move(exact), std::move(coexact), std::move(harmonic));
}

int betti_1(const Lattice& lat) {
  static std::mutex cache_mutex;
  static std::map<int, int> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    const auto it = cache.find(lat.n());
    if (it != cache.end()) return it->second;
  }

  const std::int64_t dim = lat.edges();
  if (dim > 4096) throw std::invalid_argument("betti_1: dense kernel computation capped at 4096 edges");

  Eigen::MatrixXd lap(dim, dim);
  Cochain e(lat, 1);
  for (std::int64_t j = 0; j < dim; ++j) {
    e[j] = 1.0;
    const Cochain up = d_star(d(e));
    const Cochain down = d(d_star(e));
    for (std::int64_t i = 0; i < dim; ++i) lap(i, j) = up[i] + down[i];
    e[j] = 0.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (lap + lap.transpose()));
  const double scale = std::max(1.0, std::abs(solver.eigenvalues()(dim - 1)));
  int kernel = 0;
  for (std::int64_t i = 0; i < dim; ++i)
    if (std::abs(solver.eigenvalues()(i)) <= 1e-8 * scale) ++kernel;

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache[lat.n()] = kernel;
  return kernel;
}

std::pair<Configuration, GaugeTransform> coulomb_gauge_fix(const Configuration& c, double cg_tol) {
  const Lattice& lat = c.lattice();
  Cochain chi = solve_poisson0(lat, d_star(c.a), cg_tol);
  for (double& v : chi.values) v = -v;  // a' = a - d chi_solution
  GaugeTransform g(std::move(chi));
  Configuration fixed = gauge_apply(g, c);
  return {std::move(fixed), std::move(g)};
}

JacobianPoint jacobian_coordinates(const Configuration& c) {
  const Lattice& lat = c.lattice();
  if (norm(c.phi) > 1e-12 * std::sqrt(lat.volume()))
    throw std::invalid_argument("jacobian_coordinates: configuration is not reducible");
  const GradientPair g = sw_gradient(c);
  if (grad_norm(g) > 1e-10 * std::max(1.0, std::sqrt(lat.volume())))
    throw std::invalid_argument("jacobian_coordinates: configuration is not a critical point");

  JacobianPoint pt{};
  for (int mu = 0; mu < 4; ++mu) {
    double mean = 0.0;
    for (std::int64_t s = 0; s < lat.sites(); ++s) mean += c.a[Lattice::edge_index(s, mu)];
    mean /= static_cast<double>(lat.sites());
    double coord = mean * lat.n() * lat.h() / (2.0 * std::numbers::pi);
    coord -= std::floor(coord);
    if (coord >= 1.0) coord -= 1.0;  // guard the floor rounding edge
    pt.coords[mu] = coord;
  }
  return pt;
}

}  // namespace swlat
