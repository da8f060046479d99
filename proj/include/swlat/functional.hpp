#pragma once

#include <array>
#include <utility>

#include "swlat/fields.hpp"

namespace swlat {

// The five summands of the energy. total is their sum.
struct EnergyBreakdown {
  double curvature_term = 0.0;          // 1/4 |F|^2, F = da + twist curvature
  double dirichlet_term = 0.0;          // |grad_A phi|^2
  double quartic_term = 0.0;            // 1/8 sum |phi|^4
  double curvature_coupling_term = 0.0; // sum (kg/4)|phi|^2
  double topological_term = 0.0;        // pi^2 alpha^2
  double total = 0.0;
};

EnergyBreakdown sw_eval(const Configuration& c);

// Traceless hermitian quadratic map sigma(phi) = phi phi* - (|phi|^2/2) I,
// returned row-major as a 2x2 complex matrix.
std::array<cdouble, 4> sigma_form(const cdouble phi[2]);

// Pauli coefficients of sigma(phi): sigma = (1/2) sum_i s_i sigma_i with
// s_i = phi^dag sigma_i phi.
std::array<double, 3> pauli_expectations(const cdouble phi[2]);

// Identification of traceless hermitian endomorphisms with self-dual
// 2-cochains: the Pauli coefficients (m1,m2,m3) of the endomorphism map to
// the self-dual basis coefficients -1/2 (m1,m2,m3), i.e. components
// (F01,F02,F03,F12,F13,F23) = -1/2 (m1, m2, m3, m3, -m2, m1).
// The -1/2 normalization makes |iota(sigma(phi))|^2 = |phi|^4/8 pointwise,
// so the quartic term of the energy identity is matched exactly.
Cochain iota_from_pauli(const Lattice& lat, const std::vector<std::array<double, 3>>& m);

// Chiral Dirac operator S+ -> S-: sum_mu gamma_mu (symmetric covariant
// difference along mu) with gamma_0 = I, gamma_k = -i sigma_k. The naive
// symmetric difference doubles fermions; D enters only the residual map
// and the convergence-tested energy identity, where smooth test fields
// avoid the doubler modes, and no spectral claims are made about it.
SpinorField dirac_plus(const Configuration& c, const SpinorField& psi);
SpinorField dirac_plus(const Configuration& c, const Transport& tr, const SpinorField& psi);

// Monopole residual (self_dual(F) - iota(sigma(phi)), D+_A phi). Zero at
// phi != 0 defines a lattice monopole.
std::pair<Cochain, SpinorField> monopole_residual(const Configuration& c);
double monopole_residual_norm(const Configuration& c);

struct GradientPair {
  GradientPair(Cochain a, SpinorField phi) : grad_a(std::move(a)), grad_phi(std::move(phi)) {}
  Cochain grad_a;        // degree 1
  SpinorField grad_phi;  // plus chirality
};

// Exact Riesz gradient of sw_eval under the h^4-weighted inner products:
//   grad_a,e   = 1/2 (d* F)_e - (2/h) Im(phi(x)^dag U_e phi(x+mu))
//   grad_phi   = 2 (Lap_A phi + ((|phi|^2 + kg)/4) phi)
GradientPair sw_gradient(const Configuration& c);

double grad_norm(const GradientPair& g);

// Edgewise multiplication by the spinor at the edge tail,
// (Phi(theta))_e = theta_e phi(tail e), and its exact adjoint under the
// real inner products, (Phi*(w))_e = Re(phi(tail e)^dag w_e). With this
// real pairing Phi*(grad_A phi) converges to (1/2) d|phi|^2.
EdgeSpinorField phi_operator(const Configuration& c, const Cochain& theta);
Cochain phi_adjoint(const Configuration& c, const EdgeSpinorField& w);

}  // namespace swlat
