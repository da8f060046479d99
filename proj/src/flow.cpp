#include "swlat/flow.hpp"

#include <cmath>
#include <stdexcept>

#include "swlat/hodge.hpp"
#include "swlat/spectral.hpp"

namespace swlat {

namespace {

Configuration step_along(const Configuration& c, const GradientPair& g, double s) {
  Cochain a = c.a;
  for (std::int64_t e = 0; e < a.size(); ++e) a[e] -= s * g.grad_a[e];
  SpinorField phi = c.phi;
  for (std::size_t i = 0; i < phi.values.size(); ++i) phi.values[i] -= s * g.grad_phi.values[i];
  return Configuration(std::move(a), std::move(phi), c.bundle);
}

}  // namespace

FlowTrace descend(const Configuration& c0, const FlowParams& p) {
  if (!(p.step > 0.0) || !(p.grad_tol > 0.0)) throw std::invalid_argument("descend: step and grad_tol must be positive");

  FlowTrace trace;
  Configuration c = c0;
  double energy = sw_eval(c).total;
  double last_step = p.step;

  trace.records.push_back({0, energy, grad_norm(sw_gradient(c)), norm(c.phi), 0.0, false});

  for (int iter = 1; iter <= p.max_iters; ++iter) {
    const GradientPair g = sw_gradient(c);
    const double gn = grad_norm(g);
    if (gn <= p.grad_tol) {
      trace.status = FlowStatus::converged;
      break;
    }

    const double gn2 = gn * gn;
    double s = std::min(p.step, 2.0 * last_step);
    bool accepted = false;
    for (int bt = 0; bt <= p.max_backtracks; ++bt) {
      const Configuration trial = step_along(c, g, s);
      const double trial_energy = sw_eval(trial).total;
      if (trial_energy <= energy - p.armijo_c1 * s * gn2) {
        c = trial;
        energy = trial_energy;
        last_step = s;
        accepted = true;
        break;
      }
      s *= p.shrink;
    }
    if (!accepted) {
      trace.status = FlowStatus::diverged;
      break;
    }

    bool regauged = false;
    if (p.regauge_every > 0 && iter % p.regauge_every == 0) {
      c = coulomb_gauge_fix(c).first;
      energy = sw_eval(c).total;
      regauged = true;
    }

    trace.records.push_back({iter, energy, gn, norm(c.phi), last_step, regauged});
    if (iter == p.max_iters) trace.status = FlowStatus::max_iters;
  }

  trace.terminal = std::move(c);
  return trace;
}

Classification classify_critical_point(const Configuration& c, double tau, double grad_tol, double phi_tol) {
  Classification out;
  out.grad_norm = grad_norm(sw_gradient(c));
  out.phi_norm = norm(c.phi);
  if (out.grad_norm > grad_tol) {
    out.kind = CriticalKind::not_critical;
    return out;
  }
  if (out.phi_norm > phi_tol) {
    out.kind = CriticalKind::irreducible;
    return out;
  }

  // Reducible: the index lives in the spinor block. Clear any tiny spinor
  // residue so the reducible preconditions hold exactly.
  Configuration reduced(c.a, SpinorField(c.lattice(), Chirality::plus), c.bundle);
  const SpectralReport rep = morse_index(reduced, tau);
  out.morse_index = rep.morse_index;
  out.spinor_kernel_dim = rep.kernel_dim;
  out.slice_kernel_dim = betti_1(c.lattice());
  out.kind = (rep.morse_index == 0 && rep.kernel_dim == 0) ? CriticalKind::reducible_morse_bott
                                                           : CriticalKind::reducible_indexed;
  return out;
}

}  // namespace swlat
