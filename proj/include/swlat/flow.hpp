#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swlat/functional.hpp"

namespace swlat {

struct FlowParams {
  double step = 0.25;        // initial/maximal trial step of the backtracking search
  int max_iters = 20000;
  double grad_tol = 1e-9;
  int regauge_every = 0;     // 0 disables Coulomb re-gauging
  std::uint64_t seed = 0;    // recorded in traces; batch drivers use it for starts
  double armijo_c1 = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 60;
};

enum class FlowStatus { converged, max_iters, diverged };

struct FlowRecord {
  int iter = 0;
  double energy = 0.0;
  double grad_norm = 0.0;
  double phi_norm = 0.0;
  double step = 0.0;         // accepted step (0 for the initial record)
  bool regauged = false;
};

struct FlowTrace {
  std::vector<FlowRecord> records;
  std::optional<Configuration> terminal;
  FlowStatus status = FlowStatus::max_iters;
};

// Backtracking (Armijo) gradient descent on (a, phi), with optional Coulomb
// re-gauging every regauge_every accepted steps. Energy is non-increasing
// across accepted steps; failure to decrease within the backtracking budget
// reports FlowStatus::diverged.
FlowTrace descend(const Configuration& c0, const FlowParams& p);

enum class CriticalKind { reducible_morse_bott, reducible_indexed, irreducible, not_critical };

struct Classification {
  CriticalKind kind = CriticalKind::not_critical;
  int morse_index = 0;        // real dimension, reducible kinds only
  int spinor_kernel_dim = 0;  // real dimension of ker L_A
  int slice_kernel_dim = 0;   // harmonic 1-forms: kernel of the gauge block on the Coulomb slice
  double grad_norm = 0.0;
  double phi_norm = 0.0;
};

// Checks the gradient norm, then |phi|, then dispatches to the Morse index
// of the spinor block. Morse-Bott means index 0 with the kernel exactly the
// harmonic directions (no spinor kernel).
Classification classify_critical_point(const Configuration& c, double tau = -1.0, double grad_tol = 1e-6,
                                       double phi_tol = 1e-6);

}  // namespace swlat
