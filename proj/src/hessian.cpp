#include "swlat/hessian.hpp"

#include <cmath>
#include <stdexcept>

namespace swlat {

namespace {
double abs2(const cdouble& z) { return z.real() * z.real() + z.imag() * z.imag(); }
}  // namespace

double inner(const TangentVector& s, const TangentVector& t) {
  return inner(s.theta, t.theta) + inner_re(s.v, t.v);
}

double norm(const TangentVector& t) { return std::sqrt(inner(t, t)); }

HessianOperator::HessianOperator(const Configuration& base) : base_(base), transport_(base) {
  const Lattice& lat = base_.lattice();
  phi_abs2_.resize(lat.sites());
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    phi_abs2_[s] = abs2(base_.phi.at(s)[0]) + abs2(base_.phi.at(s)[1]);

  re_overlap_.resize(lat.edges());
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t e = Lattice::edge_index(s, mu);
      const cdouble* head = base_.phi.at(lat.forward(s, mu));
      const cdouble* tail = base_.phi.at(s);
      const cdouble z = (std::conj(tail[0]) * head[0] + std::conj(tail[1]) * head[1]) * transport_.u(e);
      re_overlap_[e] = z.real();
    }
  phi_norm_ = norm(base_.phi);
}

Cochain HessianOperator::apply_aa(const Cochain& theta) const {
  const Lattice& lat = base_.lattice();
  if (theta.degree() != 1 || !theta.lattice().same_as(lat))
    throw std::invalid_argument("hessian: theta must be a 1-cochain on the base lattice");
  Cochain out = d_star(d(theta));
  for (std::int64_t e = 0; e < lat.edges(); ++e) out[e] += 4.0 * re_overlap_[e] * theta[e];
  return out;
}

Cochain HessianOperator::apply_av(const SpinorField& v) const {
  const Lattice& lat = base_.lattice();
  if (!v.lattice().same_as(lat)) throw std::invalid_argument("hessian: lattice mismatch");
  Cochain out(lat, 1);
  const double two_over_h = 2.0 / lat.h();
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t e = Lattice::edge_index(s, mu);
      const std::int64_t sf = lat.forward(s, mu);
      const cdouble u = transport_.u(e);
      const cdouble z1 = (std::conj(v.at(s)[0]) * base_.phi.at(sf)[0] + std::conj(v.at(s)[1]) * base_.phi.at(sf)[1]) * u;
      const cdouble z2 = (std::conj(base_.phi.at(s)[0]) * v.at(sf)[0] + std::conj(base_.phi.at(s)[1]) * v.at(sf)[1]) * u;
      out[e] = -two_over_h * (z1.imag() + z2.imag());
    }
  return out;
}

SpinorField HessianOperator::apply_va(const Cochain& theta) const {
  const Lattice& lat = base_.lattice();
  if (theta.degree() != 1 || !theta.lattice().same_as(lat))
    throw std::invalid_argument("hessian: theta must be a 1-cochain on the base lattice");
  SpinorField out(lat, Chirality::plus);
  const cdouble two_i_over_h{0.0, 2.0 / lat.h()};
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    cdouble acc0{0.0, 0.0}, acc1{0.0, 0.0};
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t ef = Lattice::edge_index(s, mu);
      const std::int64_t sb = lat.backward(s, mu);
      const std::int64_t eb = Lattice::edge_index(sb, mu);
      const std::int64_t sf = lat.forward(s, mu);
      const cdouble uf = transport_.u(ef);
      const cdouble ub = std::conj(transport_.u(eb));
      acc0 += theta[ef] * uf * base_.phi.at(sf)[0] - theta[eb] * ub * base_.phi.at(sb)[0];
      acc1 += theta[ef] * uf * base_.phi.at(sf)[1] - theta[eb] * ub * base_.phi.at(sb)[1];
    }
    out.at(s)[0] = two_i_over_h * acc0;
    out.at(s)[1] = two_i_over_h * acc1;
  }
  return out;
}

SpinorField HessianOperator::apply_vv(const SpinorField& v) const {
  const Lattice& lat = base_.lattice();
  if (!v.lattice().same_as(lat)) throw std::invalid_argument("hessian: lattice mismatch");
  SpinorField out = laplacian_A(base_, transport_, v);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const double pot = 0.25 * (base_.bundle.kg()[s] + phi_abs2_[s]);
    const cdouble* p = base_.phi.at(s);
    const double re = (std::conj(p[0]) * v.at(s)[0] + std::conj(p[1]) * v.at(s)[1]).real();
    out.at(s)[0] += pot * v.at(s)[0] + 0.5 * re * p[0];
    out.at(s)[1] += pot * v.at(s)[1] + 0.5 * re * p[1];
  }
  return out;
}

TangentVector HessianOperator::apply(const TangentVector& t) const {
  Cochain theta_out = apply_aa(t.theta);
  const Cochain cross_a = apply_av(t.v);
  for (std::int64_t e = 0; e < theta_out.size(); ++e) theta_out[e] += cross_a[e];

  SpinorField v_out = apply_vv(t.v);
  const SpinorField cross_v = apply_va(t.theta);
  for (std::size_t i = 0; i < v_out.values.size(); ++i) v_out.values[i] += cross_v.values[i];

  return TangentVector(std::move(theta_out), std::move(v_out));
}

double HessianOperator::quadratic_form(const TangentVector& t) const { return inner(t, apply(t)); }

ReducibleBlocks reducible_blocks(const HessianOperator& h, double phi_tol) {
  if (h.base_phi_norm() > phi_tol)
    throw std::invalid_argument("reducible_blocks: base has |phi| > tolerance, blocks do not decouple");
  ReducibleBlocks blocks;
  blocks.gauge_block = [&h](const Cochain& theta) { return h.apply_aa(theta); };
  blocks.spinor_block = [&h](const SpinorField& v) { return h.apply_vv(v); };
  return blocks;
}

}  // namespace swlat
