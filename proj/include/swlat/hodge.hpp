#pragma once

#include <array>
#include <utility>

#include "swlat/fields.hpp"

namespace swlat {

// Orthogonal decomposition of a 1-cochain: input = exact + coexact + harmonic.
struct HodgeSplit {
  HodgeSplit(Cochain e, Cochain c, Cochain h)
      : exact(std::move(e)), coexact(std::move(c)), harmonic(std::move(h)) {}
  Cochain exact;     // d(chi), chi zero-mean
  Cochain coexact;
  Cochain harmonic;  // per-direction mean (flat torus)
};

// Conjugate gradient for the 0-form Poisson problem d*d chi = rhs with the
// zero-mean convention. Throws on non-convergence, reporting the residual.
Cochain solve_poisson0(const Lattice& lat, const Cochain& rhs, double tol = 1e-12, int max_iters = 20000);

HodgeSplit hodge_split(const Cochain& a, double cg_tol = 1e-12);

// Kernel dimension of the 1-form Hodge Laplacian d d* + d* d (dense,
// rank-revealing; small lattices only). Equals 4 on the 4-torus.
int betti_1(const Lattice& lat);

// Gauge-equivalent configuration with d*(a') ~ 0, and the transform used.
std::pair<Configuration, GaugeTransform> coulomb_gauge_fix(const Configuration& c, double cg_tol = 1e-12);

// Holonomy angles of a reducible critical point around the four cycles,
// as coordinates on H^1(T^4,R)/H^1(T^4,Z): coords_mu = mean_mu(a) N h / 2pi mod 1.
struct JacobianPoint {
  std::array<double, 4> coords;  // each in [0,1)
};
JacobianPoint jacobian_coordinates(const Configuration& c);

}  // namespace swlat
