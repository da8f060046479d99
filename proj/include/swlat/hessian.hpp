#pragma once

#include <functional>
#include <utility>

#include "swlat/functional.hpp"

namespace swlat {

struct TangentVector {
  TangentVector(Cochain theta_in, SpinorField v_in) : theta(std::move(theta_in)), v(std::move(v_in)) {}
  static TangentVector zero(const Lattice& lat) {
    return TangentVector(Cochain(lat, 1), SpinorField(lat, Chirality::plus));
  }
  Cochain theta;  // degree 1
  SpinorField v;  // plus chirality
};

double inner(const TangentVector& s, const TangentVector& t);
double norm(const TangentVector& t);

// Second-variation operator at a base configuration, in the normalization
// where the quadratic form <t, H t> at a reducible point equals
// |d theta|^2 + |grad_A v|^2 + sum (kg/4)|v|^2, i.e. the reducible blocks
// are exactly (d*d, Lap_A + kg/4). Blocks (lattice-exact):
//   aa: d*d theta + 4 Re(phi(x)^dag U_e phi(x+mu)) theta_e
//   av: -(2/h) Im(v(x)^dag U_e phi(x+mu) + phi(x)^dag U_e v(x+mu))
//   va: (2i/h) sum_mu (theta_f U_f phi(x+mu) - theta_b conj(U_b) phi(x-mu))
//   vv: Lap_A v + ((kg+|phi|^2)/4) v + 1/2 Re(phi^dag v) phi
// The raw second differential of sw_eval is the diag(1/2, 2) congruence of
// this operator (gauge block halved, spinor block doubled, cross blocks
// unchanged); finite-difference tests against sw_gradient use exactly
// those factors. Both normalizations have the same inertia, so index
// counts are unaffected.
class HessianOperator {
public:
  explicit HessianOperator(const Configuration& base);

  const Configuration& base() const { return base_; }
  const Lattice& lattice() const { return base_.lattice(); }

  TangentVector apply(const TangentVector& t) const;
  double quadratic_form(const TangentVector& t) const;

  // Individual blocks (used by the finite-difference bookkeeping and the
  // reducible fast path).
  Cochain apply_aa(const Cochain& theta) const;
  Cochain apply_av(const SpinorField& v) const;
  SpinorField apply_va(const Cochain& theta) const;
  SpinorField apply_vv(const SpinorField& v) const;

  double base_phi_norm() const { return phi_norm_; }

private:
  Configuration base_;
  Transport transport_;
  std::vector<double> phi_abs2_;   // |phi|^2 per site
  std::vector<double> re_overlap_; // Re(phi(x)^dag U_e phi(x+mu)) per edge
  double phi_norm_;
};

// The decoupled block operators at a reducible point: the gauge block d*d
// and the spinor block L_A = Lap_A + kg/4. Rejects bases with |phi| > tol.
struct ReducibleBlocks {
  std::function<Cochain(const Cochain&)> gauge_block;
  std::function<SpinorField(const SpinorField&)> spinor_block;
};
ReducibleBlocks reducible_blocks(const HessianOperator& h, double phi_tol = 1e-12);

}  // namespace swlat
