#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "swlat/lattice.hpp"

namespace swlat {

using cdouble = std::complex<double>;

enum class Chirality { plus, minus };

// One complex 2-vector per site. Plus chirality holds sections of S+,
// minus chirality holds Dirac images.
class SpinorField {
public:
  SpinorField(const Lattice& lat, Chirality chi);

  const Lattice& lattice() const { return lat_; }
  Chirality chirality() const { return chirality_; }
  std::int64_t sites() const { return lat_.sites(); }

  cdouble* at(std::int64_t site) { return &values[2 * site]; }
  const cdouble* at(std::int64_t site) const { return &values[2 * site]; }

  bool finite() const;

  std::vector<cdouble> values;  // 2 per site

private:
  Lattice lat_;
  Chirality chirality_;
};

// Spinor-valued 1-cochain: one complex 2-vector per directed edge.
class EdgeSpinorField {
public:
  explicit EdgeSpinorField(const Lattice& lat);

  const Lattice& lattice() const { return lat_; }
  cdouble* at(std::int64_t edge) { return &values[2 * edge]; }
  const cdouble* at(std::int64_t edge) const { return &values[2 * edge]; }

  std::vector<cdouble> values;  // 2 per edge

private:
  Lattice lat_;
};

// Real inner products (h^4-weighted, real part of the hermitian pairing).
double inner_re(const SpinorField& a, const SpinorField& b);
double inner_re(const EdgeSpinorField& a, const EdgeSpinorField& b);
double norm(const SpinorField& a);
double norm(const EdgeSpinorField& a);

// Intersection pairing of the class with flux integers m against itself on
// T^4: 2(m01*m23 - m02*m13 + m03*m12). Flux indexed by plane.
std::int64_t alpha_pairing(const std::array<int, 6>& flux);

// Spin^c bundle data: flux integers per coordinate plane, the scalar
// potential field entering L_A, and the cached self-pairing.
//
// Flux is realized as a fixed background twist: per-edge phases giving
// every (mu,nu) plaquette the uniform angle 2*pi*m/(N^2). All fields stay
// periodic arrays; only the transport changes.
class BundleData {
public:
  BundleData(const Lattice& lat, const std::array<int, 6>& flux, Cochain kg_field);
  static BundleData constant_kg(const Lattice& lat, const std::array<int, 6>& flux, double kg);

  const Lattice& lattice() const { return lat_; }
  const std::array<int, 6>& flux() const { return flux_; }
  const Cochain& kg() const { return kg_; }
  std::int64_t alpha_squared() const { return alpha_squared_; }

  // Per-edge twist angle; the edge transport is exp(-i(h*a_e + angle_e)).
  const std::vector<double>& twist_angles() const { return twist_angles_; }
  // The constant curvature 2-cochain of the twist: 2*pi*m/(N*h)^2 per plane.
  const Cochain& twist_curvature() const { return twist_curvature_; }

private:
  Lattice lat_;
  std::array<int, 6> flux_;
  Cochain kg_;
  std::int64_t alpha_squared_;
  std::vector<double> twist_angles_;
  Cochain twist_curvature_;
};

// A point of the configuration space: gauge potential coefficient a
// (the connection is i*a), positive spinor phi, and bundle data.
struct Configuration {
  Configuration(Cochain a_in, SpinorField phi_in, BundleData bundle_in);

  const Lattice& lattice() const { return a.lattice(); }

  Cochain a;         // degree 1
  SpinorField phi;   // plus chirality
  BundleData bundle;
};

// Gauge map g(x) = exp(i(chi(x) + 2*pi*sum_mu winding[mu]*x[mu]/N)).
// The winding integers carry the large (multivalued-phase) part so that a
// shifts by the corresponding integral harmonic 1-cochain exactly.
//
// With the transport convention exp(-i h a), the shift a' = a + d chi is
// covariant for the spinor rotation phi' = exp(+i chi) phi; the rotation
// sign is fixed by that pairing.
struct GaugeTransform {
  explicit GaugeTransform(Cochain chi_in, std::array<int, 4> winding_in = {0, 0, 0, 0});

  Cochain chi;  // degree 0
  std::array<int, 4> winding;
};

// g.(a, phi) = (a + d chi_full, exp(+i chi_full) phi).
Configuration gauge_apply(const GaugeTransform& g, const Configuration& c);

// Cached per-edge transports U_e = exp(-i(h*a_e + twist_e)).
class Transport {
public:
  explicit Transport(const Configuration& c);
  cdouble u(std::int64_t edge) const { return u_[edge]; }

private:
  std::vector<cdouble> u_;
};

// Forward covariant difference per directed edge:
// (grad_A psi)_e = (U_e psi(x+mu) - psi(x)) / h.
EdgeSpinorField covariant_derivative(const Configuration& c, const SpinorField& psi);
EdgeSpinorField covariant_derivative(const Configuration& c, const Transport& tr, const SpinorField& psi);

// Adjoint of the covariant difference under the real inner products.
SpinorField covariant_divergence(const Configuration& c, const Transport& tr, const EdgeSpinorField& w);

// Covariant Laplacian (grad_A)* grad_A; symmetric positive semidefinite.
SpinorField laplacian_A(const Configuration& c, const SpinorField& psi);
SpinorField laplacian_A(const Configuration& c, const Transport& tr, const SpinorField& psi);

}  // namespace swlat
