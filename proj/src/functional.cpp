#include "swlat/functional.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swlat {

namespace {

Cochain field_strength(const Configuration& c) {
  Cochain f = d(c.a);
  const Cochain& tw = c.bundle.twist_curvature();
  for (std::int64_t i = 0; i < f.size(); ++i) f[i] += tw[i];
  return f;
}

double abs2(const cdouble& z) { return z.real() * z.real() + z.imag() * z.imag(); }

}  // namespace

EnergyBreakdown sw_eval(const Configuration& c) {
  const Lattice& lat = c.lattice();
  const double w = lat.cell_weight();
  EnergyBreakdown e;

  const Cochain f = field_strength(c);
  e.curvature_term = 0.25 * inner(f, f);

  const Transport tr(c);
  const EdgeSpinorField dphi = covariant_derivative(c, tr, c.phi);
  e.dirichlet_term = inner_re(dphi, dphi);

  double quartic = 0.0, coupling = 0.0;
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const double n2 = abs2(c.phi.at(s)[0]) + abs2(c.phi.at(s)[1]);
    quartic += n2 * n2;
    coupling += c.bundle.kg()[s] * n2;
  }
  e.quartic_term = 0.125 * w * quartic;
  e.curvature_coupling_term = 0.25 * w * coupling;

  e.topological_term = std::numbers::pi * std::numbers::pi * static_cast<double>(c.bundle.alpha_squared());
  e.total = e.curvature_term + e.dirichlet_term + e.quartic_term + e.curvature_coupling_term + e.topological_term;
  return e;
}

std::array<cdouble, 4> sigma_form(const cdouble phi[2]) {
  const double half_n2 = 0.5 * (abs2(phi[0]) + abs2(phi[1]));
  return {phi[0] * std::conj(phi[0]) - half_n2, phi[0] * std::conj(phi[1]),
          phi[1] * std::conj(phi[0]), phi[1] * std::conj(phi[1]) - half_n2};
}

std::array<double, 3> pauli_expectations(const cdouble phi[2]) {
  const cdouble cross = std::conj(phi[0]) * phi[1];
  return {2.0 * cross.real(), 2.0 * cross.imag(), abs2(phi[0]) - abs2(phi[1])};
}

Cochain iota_from_pauli(const Lattice& lat, const std::vector<std::array<double, 3>>& m) {
  if (static_cast<std::int64_t>(m.size()) != lat.sites())
    throw std::invalid_argument("iota_from_pauli: one coefficient triple per site required");
  Cochain out(lat, 2);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const double g1 = -0.5 * m[s][0];
    const double g2 = -0.5 * m[s][1];
    const double g3 = -0.5 * m[s][2];
    const std::int64_t b = 6 * s;
    out[b + 0] = g1;
    out[b + 5] = g1;
    out[b + 1] = g2;
    out[b + 4] = -g2;
    out[b + 2] = g3;
    out[b + 3] = g3;
  }
  return out;
}

SpinorField dirac_plus(const Configuration& c, const Transport& tr, const SpinorField& psi) {
  if (psi.chirality() != Chirality::plus) throw std::invalid_argument("dirac_plus: plus-chirality input required");
  const Lattice& lat = c.lattice();
  if (!psi.lattice().same_as(lat)) throw std::invalid_argument("dirac_plus: lattice mismatch");

  const double inv_2h = 0.5 / lat.h();
  const cdouble i_unit{0.0, 1.0};
  SpinorField out(lat, Chirality::minus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    cdouble diff[4][2];
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t sf = lat.forward(s, mu);
      const std::int64_t sb = lat.backward(s, mu);
      const cdouble uf = tr.u(Lattice::edge_index(s, mu));
      const cdouble ub = std::conj(tr.u(Lattice::edge_index(sb, mu)));
      diff[mu][0] = (uf * psi.at(sf)[0] - ub * psi.at(sb)[0]) * inv_2h;
      diff[mu][1] = (uf * psi.at(sf)[1] - ub * psi.at(sb)[1]) * inv_2h;
    }
    // gamma_0 = I, gamma_1 = -i sigma_1, gamma_2 = -i sigma_2, gamma_3 = -i sigma_3
    out.at(s)[0] = diff[0][0] - i_unit * diff[1][1] - diff[2][1] - i_unit * diff[3][0];
    out.at(s)[1] = diff[0][1] - i_unit * diff[1][0] + diff[2][0] + i_unit * diff[3][1];
  }
  return out;
}

SpinorField dirac_plus(const Configuration& c, const SpinorField& psi) {
  return dirac_plus(c, Transport(c), psi);
}

std::pair<Cochain, SpinorField> monopole_residual(const Configuration& c) {
  const Lattice& lat = c.lattice();
  const Cochain fplus = self_dual(field_strength(c));

  std::vector<std::array<double, 3>> pauli(lat.sites());
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const auto p = pauli_expectations(c.phi.at(s));
    pauli[s] = {0.5 * p[0], 0.5 * p[1], 0.5 * p[2]};  // sigma(phi) = 1/2 sum s_i sigma_i
  }
  Cochain curv = iota_from_pauli(lat, pauli);
  for (std::int64_t i = 0; i < curv.size(); ++i) curv[i] = fplus[i] - curv[i];

  return {std::move(curv), dirac_plus(c, c.phi)};
}

double monopole_residual_norm(const Configuration& c) {
  const auto [r1, r2] = monopole_residual(c);
  return std::sqrt(inner(r1, r1) + inner_re(r2, r2));
}

GradientPair sw_gradient(const Configuration& c) {
  const Lattice& lat = c.lattice();
  const Transport tr(c);

  Cochain grad_a = d_star(field_strength(c));
  for (std::int64_t e = 0; e < lat.edges(); ++e) grad_a[e] *= 0.5;
  const double two_over_h = 2.0 / lat.h();
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t e = Lattice::edge_index(s, mu);
      const cdouble* head = c.phi.at(lat.forward(s, mu));
      const cdouble* tail = c.phi.at(s);
      const cdouble z = (std::conj(tail[0]) * head[0] + std::conj(tail[1]) * head[1]) * tr.u(e);
      grad_a[e] -= two_over_h * z.imag();
    }

  SpinorField grad_phi = laplacian_A(c, tr, c.phi);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const double n2 = abs2(c.phi.at(s)[0]) + abs2(c.phi.at(s)[1]);
    const double pot = 0.25 * (n2 + c.bundle.kg()[s]);
    grad_phi.at(s)[0] = 2.0 * (grad_phi.at(s)[0] + pot * c.phi.at(s)[0]);
    grad_phi.at(s)[1] = 2.0 * (grad_phi.at(s)[1] + pot * c.phi.at(s)[1]);
  }

  return GradientPair(std::move(grad_a), std::move(grad_phi));
}

double grad_norm(const GradientPair& g) {
  return std::sqrt(inner(g.grad_a, g.grad_a) + inner_re(g.grad_phi, g.grad_phi));
}

EdgeSpinorField phi_operator(const Configuration& c, const Cochain& theta) {
  const Lattice& lat = c.lattice();
  if (theta.degree() != 1 || !theta.lattice().same_as(lat))
    throw std::invalid_argument("phi_operator: 1-cochain on the configuration lattice required");
  EdgeSpinorField out(lat);
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t e = Lattice::edge_index(s, mu);
      out.at(e)[0] = theta[e] * c.phi.at(s)[0];
      out.at(e)[1] = theta[e] * c.phi.at(s)[1];
    }
  return out;
}

Cochain phi_adjoint(const Configuration& c, const EdgeSpinorField& w) {
  const Lattice& lat = c.lattice();
  if (!w.lattice().same_as(lat)) throw std::invalid_argument("phi_adjoint: lattice mismatch");
  Cochain out(lat, 1);
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t e = Lattice::edge_index(s, mu);
      const cdouble z = std::conj(c.phi.at(s)[0]) * w.at(e)[0] + std::conj(c.phi.at(s)[1]) * w.at(e)[1];
      out[e] = z.real();
    }
  return out;
}

}  // namespace swlat
