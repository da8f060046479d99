#include "swlat/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace swlat {

namespace {

double default_tau(double scale) { return 1e-8 * std::max(1.0, scale); }

void count_index(SpectralReport& rep) {
  rep.morse_index = 0;
  rep.kernel_dim = 0;
  for (double ev : rep.eigenvalues) {
    if (ev < -rep.zero_threshold) ++rep.morse_index;
    if (std::abs(ev) <= rep.zero_threshold) ++rep.kernel_dim;
  }
}

double vec_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// Twice-is-enough reorthogonalization against a set of unit vectors.
void orthogonalize(std::vector<double>& w, const std::vector<std::vector<double>>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) axpy(-dot(q, w), q, w);
}

}  // namespace

SpectralReport dense_spectrum(const LinearOperator& op, double tau) {
  if (op.dim > 4096) throw std::invalid_argument("dense_spectrum: dimension cap 4096 exceeded");
  const std::int64_t n = op.dim;

  Eigen::MatrixXd m(n, n);
  std::vector<double> e(n, 0.0), col(n);
  for (std::int64_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    for (std::int64_t i = 0; i < n; ++i) m(i, j) = col[i];
    e[j] = 0.0;
  }

  const double scale = m.cwiseAbs().maxCoeff();
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, scale))
    throw std::runtime_error("dense_spectrum: operator asymmetry " + std::to_string(asym) +
                             " beyond tolerance (upstream adjointness bug)");
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense_spectrum: eigendecomposition failed");

  SpectralReport rep;
  rep.dim = n;
  rep.solver = "dense";
  rep.full_spectrum = true;
  rep.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  rep.residual_norms.resize(n);
  std::vector<double> x(n), y(n);
  for (std::int64_t j = 0; j < n; ++j) {
    for (std::int64_t i = 0; i < n; ++i) x[i] = solver.eigenvectors()(i, j);
    op.apply(x, y);
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
      const double r = y[i] - rep.eigenvalues[j] * x[i];
      acc += r * r;
    }
    rep.residual_norms[j] = std::sqrt(acc);
  }

  const double spect_scale = n > 0 ? std::max(std::abs(rep.eigenvalues.front()), std::abs(rep.eigenvalues.back())) : 0.0;
  rep.zero_threshold = tau >= 0.0 ? tau : default_tau(spect_scale);
  count_index(rep);
  return rep;
}

SpectralReport lanczos_lowest(const LinearOperator& op, int k, double tol, std::uint64_t seed) {
  const std::int64_t n = op.dim;
  if (k > n) throw std::invalid_argument("lanczos_lowest: k exceeds operator dimension");

  SpectralReport rep;
  rep.dim = n;
  rep.solver = "lanczos";

  std::vector<std::vector<double>> deflation;  // converged eigenvectors, unit
  std::vector<double> found;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  while (static_cast<int>(found.size()) < k) {
    // Start vector orthogonal to everything already converged.
    std::vector<double> v(n);
    for (int attempt = 0; attempt < 64; ++attempt) {
      for (auto& x : v) x = gauss(rng);
      orthogonalize(v, deflation);
      if (vec_norm(v) > 1e-8) break;
    }
    const double v0n = vec_norm(v);
    if (v0n < 1e-12) throw std::runtime_error("lanczos_lowest: could not find a start vector outside the deflated space");
    for (auto& x : v) x /= v0n;

    std::vector<std::vector<double>> basis{v};
    std::vector<double> alpha, beta;  // beta[j] couples basis[j] and basis[j+1]
    std::vector<double> w(n);

    const std::int64_t remaining = n - static_cast<std::int64_t>(deflation.size());
    bool pair_done = false;
    for (std::int64_t j = 0; j < remaining && !pair_done; ++j) {
      op.apply(basis[j], w);
      ++rep.iterations;
      alpha.push_back(dot(basis[j], w));
      orthogonalize(w, deflation);
      orthogonalize(w, basis);
      const double b = vec_norm(w);

      // Tridiagonal Ritz values/vectors so far.
      const int m = static_cast<int>(alpha.size());
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
      for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tsolver(t);
      const double theta = tsolver.eigenvalues()(0);
      const double bound = b * std::abs(tsolver.eigenvectors()(m - 1, 0));

      if (bound <= 0.5 * tol * std::max(1.0, std::abs(theta)) || b < 1e-13 || j + 1 == remaining) {
        // Assemble the lowest Ritz vector and verify its true residual.
        std::vector<double> x(n, 0.0);
        for (int i = 0; i < m; ++i) axpy(tsolver.eigenvectors()(i, 0), basis[i], x);
        orthogonalize(x, deflation);
        const double xn = vec_norm(x);
        if (xn < 1e-12) throw std::runtime_error("lanczos_lowest: degenerate Ritz vector");
        for (auto& xi : x) xi /= xn;
        op.apply(x, w);
        const double lambda = dot(x, w);
        double racc = 0.0;
        for (std::int64_t i = 0; i < n; ++i) {
          const double r = w[i] - lambda * x[i];
          racc += r * r;
        }
        const double res = std::sqrt(racc);
        if (res <= tol * std::max(1.0, std::abs(lambda))) {
          deflation.push_back(std::move(x));
          found.push_back(lambda);
          rep.residual_norms.push_back(res);
          pair_done = true;
        } else if (b < 1e-13 || j + 1 == remaining) {
          throw std::runtime_error("lanczos_lowest: no convergence, residual " + std::to_string(res) +
                                   " after exhausting the Krylov space");
        }
      }
      if (!pair_done) {
        beta.push_back(b);
        for (auto& x : w) x /= b;
        basis.push_back(w);
      }
    }
    if (!pair_done) throw std::runtime_error("lanczos_lowest: no convergence within the iteration budget");
  }

  // Deflation returns eigenvalues lowest-first up to roundoff; sort pairs.
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return found[a] < found[b]; });
  for (std::size_t i : order) {
    rep.eigenvalues.push_back(found[i]);
  }
  std::vector<double> res_sorted;
  for (std::size_t i : order) res_sorted.push_back(rep.residual_norms[i]);
  rep.residual_norms = std::move(res_sorted);

  const double spect_scale = rep.eigenvalues.empty()
                                 ? 0.0
                                 : std::max(std::abs(rep.eigenvalues.front()), std::abs(rep.eigenvalues.back()));
  rep.zero_threshold = default_tau(spect_scale);
  count_index(rep);
  return rep;
}

LinearOperator spinor_operator(const Lattice& lat, std::function<SpinorField(const SpinorField&)> op) {
  LinearOperator lin;
  lin.dim = 4 * lat.sites();
  lin.apply = [lat, op = std::move(op)](const std::vector<double>& in, std::vector<double>& out) {
    SpinorField psi(lat, Chirality::plus);
    for (std::int64_t i = 0; i < 2 * lat.sites(); ++i) psi.values[i] = cdouble{in[2 * i], in[2 * i + 1]};
    const SpinorField res = op(psi);
    out.resize(in.size());
    for (std::int64_t i = 0; i < 2 * lat.sites(); ++i) {
      out[2 * i] = res.values[i].real();
      out[2 * i + 1] = res.values[i].imag();
    }
  };
  return lin;
}

LinearOperator cochain1_operator(const Lattice& lat, std::function<Cochain(const Cochain&)> op) {
  LinearOperator lin;
  lin.dim = lat.edges();
  lin.apply = [lat, op = std::move(op)](const std::vector<double>& in, std::vector<double>& out) {
    Cochain theta(lat, 1);
    theta.values = in;
    const Cochain res = op(theta);
    out = res.values;
  };
  return lin;
}

LinearOperator tangent_operator(const Lattice& lat, std::function<TangentVector(const TangentVector&)> op) {
  LinearOperator lin;
  const std::int64_t edges = lat.edges();
  lin.dim = edges + 4 * lat.sites();
  lin.apply = [lat, edges, op = std::move(op)](const std::vector<double>& in, std::vector<double>& out) {
    TangentVector t = TangentVector::zero(lat);
    for (std::int64_t e = 0; e < edges; ++e) t.theta[e] = in[e];
    for (std::int64_t i = 0; i < 2 * lat.sites(); ++i)
      t.v.values[i] = cdouble{in[edges + 2 * i], in[edges + 2 * i + 1]};
    const TangentVector res = op(t);
    out.resize(in.size());
    for (std::int64_t e = 0; e < edges; ++e) out[e] = res.theta[e];
    for (std::int64_t i = 0; i < 2 * lat.sites(); ++i) {
      out[edges + 2 * i] = res.v.values[i].real();
      out[edges + 2 * i + 1] = res.v.values[i].imag();
    }
  };
  return lin;
}

SpectralReport morse_index(const Configuration& c, double tau) {
  if (norm(c.phi) > 1e-12)
    throw std::invalid_argument("morse_index: configuration is not reducible (|phi| > 1e-12)");
  const Lattice& lat = c.lattice();
  const HessianOperator hess(c);
  const ReducibleBlocks blocks = reducible_blocks(hess);

  // The gauge block contributes nothing negative; check rather than assume.
  {
    const LinearOperator gauge_op = cochain1_operator(lat, blocks.gauge_block);
    const SpectralReport low = lanczos_lowest(gauge_op, 1, 1e-9, 7);
    if (low.eigenvalues.front() < -1e-10 * std::max(1.0, std::abs(low.eigenvalues.front())))
      throw std::runtime_error("morse_index: gauge block d*d is not positive semidefinite");
  }

  const LinearOperator spin_op = spinor_operator(lat, blocks.spinor_block);
  SpectralReport rep;
  if (spin_op.dim <= 2048) {
    rep = dense_spectrum(spin_op, tau);
  } else {
    // Lowest eigenvalues until safely past the counting threshold.
    int k = 16;
    for (;;) {
      rep = lanczos_lowest(spin_op, k, 1e-10, 99);
      if (tau >= 0.0) rep.zero_threshold = tau;
      count_index(rep);
      if (rep.eigenvalues.back() > rep.zero_threshold || k >= spin_op.dim) break;
      k = static_cast<int>(std::min<std::int64_t>(2 * k, spin_op.dim));
    }
  }
  if (tau >= 0.0) {
    rep.zero_threshold = tau;
    count_index(rep);
  }

  for (double ev : rep.eigenvalues)
    if (ev >= -2.0 * rep.zero_threshold && ev <= -0.5 * rep.zero_threshold)
      throw std::runtime_error("morse_index: ambiguous index, eigenvalue " + std::to_string(ev) +
                               " too close to threshold " + std::to_string(rep.zero_threshold));
  return rep;
}

double spectrum_bounded_below_check(const Configuration& c, int probe_count) {
  const Lattice& lat = c.lattice();
  double kmin = c.bundle.kg()[0];
  for (double v : c.bundle.kg().values) kmin = std::min(kmin, v);
  const double bound = 0.25 * kmin;  // Lap_A is a Gram form, so >= 0

  const HessianOperator hess(c);
  const ReducibleBlocks blocks = reducible_blocks(hess);
  const LinearOperator spin_op = spinor_operator(lat, blocks.spinor_block);
  const SpectralReport low = spin_op.dim <= 2048 ? dense_spectrum(spin_op)
                                                 : lanczos_lowest(spin_op, probe_count, 1e-10, 5);
  for (double ev : low.eigenvalues)
    if (ev < bound - 1e-10)
      throw std::runtime_error("spectrum_bounded_below_check: eigenvalue " + std::to_string(ev) +
                               " below the certified bound " + std::to_string(bound));
  return bound;
}

}  // namespace swlat
