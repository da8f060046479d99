#include "swlat/fields.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace swlat {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

SpinorField::SpinorField(const Lattice& lat, Chirality chi) : lat_(lat), chirality_(chi) {
  values.assign(2 * lat.sites(), cdouble{0.0, 0.0});
}

bool SpinorField::finite() const {
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

EdgeSpinorField::EdgeSpinorField(const Lattice& lat) : lat_(lat) {
  values.assign(2 * lat.edges(), cdouble{0.0, 0.0});
}

double inner_re(const SpinorField& a, const SpinorField& b) {
  if (!a.lattice().same_as(b.lattice())) throw std::invalid_argument("inner_re: lattice mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    acc += a.values[i].real() * b.values[i].real() + a.values[i].imag() * b.values[i].imag();
  return acc * a.lattice().cell_weight();
}

double inner_re(const EdgeSpinorField& a, const EdgeSpinorField& b) {
  if (!a.lattice().same_as(b.lattice())) throw std::invalid_argument("inner_re: lattice mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    acc += a.values[i].real() * b.values[i].real() + a.values[i].imag() * b.values[i].imag();
  return acc * a.lattice().cell_weight();
}

double norm(const SpinorField& a) { return std::sqrt(inner_re(a, a)); }
double norm(const EdgeSpinorField& a) { return std::sqrt(inner_re(a, a)); }

std::int64_t alpha_pairing(const std::array<int, 6>& m) {
  // plane order (01),(02),(03),(12),(13),(23)
  return 2 * (static_cast<std::int64_t>(m[0]) * m[5] - static_cast<std::int64_t>(m[1]) * m[4] +
              static_cast<std::int64_t>(m[2]) * m[3]);
}

BundleData::BundleData(const Lattice& lat, const std::array<int, 6>& flux, Cochain kg_field)
    : lat_(lat), flux_(flux), kg_(std::move(kg_field)), twist_curvature_(lat, 2) {
  if (kg_.degree() != 0 || !kg_.lattice().same_as(lat))
    throw std::invalid_argument("bundle: kg_field must be a 0-cochain on the same lattice");
  if (!kg_.finite()) throw std::invalid_argument("bundle: kg_field has non-finite entries");
  alpha_squared_ = alpha_pairing(flux_);

  const int n = lat.n();
  const double n2 = static_cast<double>(n) * n;
  for (int p = 0; p < 6; ++p) {
    // Uniform-curvature construction needs the per-plaquette angle inside
    // the principal branch.
    if (std::abs(kTwoPi * flux_[p] / n2) >= std::numbers::pi)
      throw std::invalid_argument("bundle: |flux| must be < N^2/2 per plane");
  }

  twist_angles_.assign(lat.edges(), 0.0);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const auto x = lat.site_coords(s);
    for (int p = 0; p < 6; ++p) {
      const int m = flux_[p];
      if (m == 0) continue;
      const auto [mu, nu] = Lattice::plane_dirs(p);
      // nu-edges carry (2 pi m / N^2) * x_mu; mu-edges on the x_mu = N-1
      // hyperplane carry the compensating boundary phase.
      twist_angles_[Lattice::edge_index(s, nu)] += kTwoPi * m * x[mu] / n2;
      if (x[mu] == n - 1) twist_angles_[Lattice::edge_index(s, mu)] += -kTwoPi * m * x[nu] / n;
    }
  }

  const double l2 = static_cast<double>(n) * lat.h() * static_cast<double>(n) * lat.h();
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int p = 0; p < 6; ++p) twist_curvature_[Lattice::plaq_index(s, p)] = kTwoPi * flux_[p] / l2;
}

BundleData BundleData::constant_kg(const Lattice& lat, const std::array<int, 6>& flux, double kg) {
  Cochain field(lat, 0);
  for (auto& v : field.values) v = kg;
  return BundleData(lat, flux, std::move(field));
}

Configuration::Configuration(Cochain a_in, SpinorField phi_in, BundleData bundle_in)
    : a(std::move(a_in)), phi(std::move(phi_in)), bundle(std::move(bundle_in)) {
  if (a.degree() != 1) throw std::invalid_argument("configuration: a must be a 1-cochain");
  if (phi.chirality() != Chirality::plus) throw std::invalid_argument("configuration: phi must be plus-chirality");
  if (!a.lattice().same_as(phi.lattice()) || !a.lattice().same_as(bundle.lattice()))
    throw std::invalid_argument("configuration: members must share one lattice");
}

GaugeTransform::GaugeTransform(Cochain chi_in, std::array<int, 4> winding_in)
    : chi(std::move(chi_in)), winding(winding_in) {
  if (chi.degree() != 0) throw std::invalid_argument("gauge transform: chi must be a 0-cochain");
}

Configuration gauge_apply(const GaugeTransform& g, const Configuration& c) {
  const Lattice& lat = c.lattice();
  if (!g.chi.lattice().same_as(lat)) throw std::invalid_argument("gauge_apply: lattice mismatch");

  Cochain a = c.a;
  const Cochain dchi = d(g.chi);
  for (std::int64_t e = 0; e < lat.edges(); ++e) a[e] += dchi[e];
  // The winding part is linear on the cover; its lattice derivative is the
  // uniform harmonic 1-cochain 2*pi*w_mu/(N*h) on direction-mu edges.
  for (int mu = 0; mu < 4; ++mu) {
    if (g.winding[mu] == 0) continue;
    const double shift = kTwoPi * g.winding[mu] / (lat.n() * lat.h());
    for (std::int64_t s = 0; s < lat.sites(); ++s) a[Lattice::edge_index(s, mu)] += shift;
  }

  SpinorField phi(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const auto x = lat.site_coords(s);
    double full = g.chi[s];
    for (int mu = 0; mu < 4; ++mu) full += kTwoPi * g.winding[mu] * x[mu] / lat.n();
    const cdouble ph = std::polar(1.0, full);
    phi.at(s)[0] = ph * c.phi.at(s)[0];
    phi.at(s)[1] = ph * c.phi.at(s)[1];
  }
  return Configuration(std::move(a), std::move(phi), c.bundle);
}

Transport::Transport(const Configuration& c) {
  const Lattice& lat = c.lattice();
  const auto& twist = c.bundle.twist_angles();
  u_.resize(lat.edges());
  for (std::int64_t e = 0; e < lat.edges(); ++e) u_[e] = std::polar(1.0, -(lat.h() * c.a[e] + twist[e]));
}

EdgeSpinorField covariant_derivative(const Configuration& c, const Transport& tr, const SpinorField& psi) {
  const Lattice& lat = c.lattice();
  if (!psi.lattice().same_as(lat)) throw std::invalid_argument("covariant_derivative: lattice mismatch");
  const double inv_h = 1.0 / lat.h();
  EdgeSpinorField out(lat);
  for (std::int64_t s = 0; s < lat.sites(); ++s)
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t e = Lattice::edge_index(s, mu);
      const cdouble u = tr.u(e);
      const cdouble* head = psi.at(lat.forward(s, mu));
      const cdouble* tail = psi.at(s);
      out.at(e)[0] = (u * head[0] - tail[0]) * inv_h;
      out.at(e)[1] = (u * head[1] - tail[1]) * inv_h;
    }
  return out;
}

EdgeSpinorField covariant_derivative(const Configuration& c, const SpinorField& psi) {
  return covariant_derivative(c, Transport(c), psi);
}

SpinorField covariant_divergence(const Configuration& c, const Transport& tr, const EdgeSpinorField& w) {
  const Lattice& lat = c.lattice();
  const double inv_h = 1.0 / lat.h();
  SpinorField out(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    cdouble acc0{0.0, 0.0}, acc1{0.0, 0.0};
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t eb = Lattice::edge_index(lat.backward(s, mu), mu);
      const std::int64_t ef = Lattice::edge_index(s, mu);
      const cdouble ub = std::conj(tr.u(eb));
      acc0 += ub * w.at(eb)[0] - w.at(ef)[0];
      acc1 += ub * w.at(eb)[1] - w.at(ef)[1];
    }
    out.at(s)[0] = acc0 * inv_h;
    out.at(s)[1] = acc1 * inv_h;
  }
  return out;
}

SpinorField laplacian_A(const Configuration& c, const Transport& tr, const SpinorField& psi) {
  const Lattice& lat = c.lattice();
  if (!psi.lattice().same_as(lat)) throw std::invalid_argument("laplacian_A: lattice mismatch");
  const double inv_h2 = 1.0 / (lat.h() * lat.h());
  SpinorField out(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    cdouble acc0 = 8.0 * psi.at(s)[0];
    cdouble acc1 = 8.0 * psi.at(s)[1];
    for (int mu = 0; mu < 4; ++mu) {
      const std::int64_t sb = lat.backward(s, mu);
      const std::int64_t sf = lat.forward(s, mu);
      const cdouble ub = std::conj(tr.u(Lattice::edge_index(sb, mu)));
      const cdouble uf = tr.u(Lattice::edge_index(s, mu));
      acc0 -= ub * psi.at(sb)[0] + uf * psi.at(sf)[0];
      acc1 -= ub * psi.at(sb)[1] + uf * psi.at(sf)[1];
    }
    out.at(s)[0] = acc0 * inv_h2;
    out.at(s)[1] = acc1 * inv_h2;
  }
  return out;
}

SpinorField laplacian_A(const Configuration& c, const SpinorField& psi) {
  return laplacian_A(c, Transport(c), psi);
}

}  // namespace swlat
