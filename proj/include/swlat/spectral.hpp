#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "swlat/hessian.hpp"

namespace swlat {

// Symmetric linear operator on R^dim, matrix-free.
struct LinearOperator {
  std::int64_t dim = 0;
  std::function<void(const std::vector<double>&, std::vector<double>&)> apply;
};

// Eigenvalue report. All dimensions and multiplicities are real
// dimensions; a complex-linear operator therefore shows even counts.
struct SpectralReport {
  std::vector<double> eigenvalues;        // ascending, with multiplicity
  std::vector<double> residual_norms;     // per reported pair
  std::int64_t dim = 0;
  int morse_index = 0;                    // #{lambda < -tau}
  int kernel_dim = 0;                     // #{|lambda| <= tau}
  double zero_threshold = 0.0;            // tau
  std::string solver;                     // "dense" or "lanczos"
  int iterations = 0;
  bool full_spectrum = false;             // dense: all pairs reported
};

// Materializes the operator column by column, checks symmetry
// (asymmetry beyond 1e-10 of scale signals an upstream bug), symmetrizes
// and runs a full eigendecomposition. dim is capped at 4096.
// tau < 0 selects the default threshold 1e-8 * max(1, spectral scale).
SpectralReport dense_spectrum(const LinearOperator& op, double tau = -1.0);

// k lowest eigenvalues by Lanczos with full reorthogonalization and
// sequential deflation (recovers multiplicities). Deterministic for a
// fixed seed. Every reported pair is verified: |op x - lambda x| <= tol.
SpectralReport lanczos_lowest(const LinearOperator& op, int k, double tol = 1e-10, std::uint64_t seed = 1234);

// Real-coordinate packing of spinor fields (re0, im0, re1, im1 per site)
// and of tangent vectors (theta edges, then spinor coordinates).
LinearOperator spinor_operator(const Lattice& lat, std::function<SpinorField(const SpinorField&)> op);
LinearOperator tangent_operator(const Lattice& lat, std::function<TangentVector(const TangentVector&)> op);
LinearOperator cochain1_operator(const Lattice& lat, std::function<Cochain(const Cochain&)> op);

// Morse index of a reducible configuration: the real dimension of the
// negative eigenspace of L_A = Lap_A + kg/4. The gauge block d*d is
// checked positive semidefinite and excluded from the count. Eigenvalues
// inside [-2 tau, -tau/2] are refused as ambiguous rather than counted.
// tau < 0 selects the default threshold.
SpectralReport morse_index(const Configuration& c, double tau = -1.0);

// Certified lower bound min(kg)/4 for spec(L_A); asserts the lowest
// probe_count computed eigenvalues stay above bound - 1e-10.
double spectrum_bounded_below_check(const Configuration& c, int probe_count = 4);

}  // namespace swlat
