#include "swlat/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace swlat {

Lattice::Lattice(int n_per_axis, double spacing) : n_(n_per_axis), h_(spacing) {
  if (n_ < 2) throw std::invalid_argument("lattice: n_per_axis must be >= 2");
  if (!(h_ > 0.0)) throw std::invalid_argument("lattice: spacing must be positive");
  sites_ = 1;
  for (int i = 0; i < 4; ++i) sites_ *= n_;
  cell_weight_ = h_ * h_ * h_ * h_;

  auto fwd = std::make_shared<std::vector<std::int64_t>>(4 * sites_);
  auto bwd = std::make_shared<std::vector<std::int64_t>>(4 * sites_);
  for (std::int64_t s = 0; s < sites_; ++s) {
    const auto x = site_coords(s);
    for (int mu = 0; mu < 4; ++mu) {
      auto xp = x;
      auto xm = x;
      xp[mu] = (x[mu] + 1) % n_;
      xm[mu] = (x[mu] + n_ - 1) % n_;
      (*fwd)[4 * s + mu] = site_index(xp);
      (*bwd)[4 * s + mu] = site_index(xm);
    }
  }
  fwd_ = std::move(fwd);
  bwd_ = std::move(bwd);
}

std::array<int, 4> Lattice::site_coords(std::int64_t s) const {
  std::array<int, 4> x;
  x[3] = static_cast<int>(s % n_);
  s /= n_;
  x[2] = static_cast<int>(s % n_);
  s /= n_;
  x[1] = static_cast<int>(s % n_);
  s /= n_;
  x[0] = static_cast<int>(s);
  return x;
}

std::int64_t Lattice::site_index(const std::array<int, 4>& x) const {
  return ((static_cast<std::int64_t>(x[0]) * n_ + x[1]) * n_ + x[2]) * n_ + x[3];
}

int Lattice::plane_index(int mu, int nu) {
  static constexpr int table[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
  if (mu < 0 || nu > 3 || mu >= nu) throw std::invalid_argument("plane_index: need 0 <= mu < nu <= 3");
  return table[mu][nu];
}

std::pair<int, int> Lattice::plane_dirs(int plane) {
  static constexpr int mus[6] = {0, 0, 0, 1, 1, 2};
  static constexpr int nus[6] = {1, 2, 3, 2, 3, 3};
  if (plane < 0 || plane > 5) throw std::invalid_argument("plane_dirs: plane out of range");
  return {mus[plane], nus[plane]};
}

Cochain::Cochain(const Lattice& lat, int degree) : lat_(lat), degree_(degree) {
  std::int64_t len = 0;
  switch (degree) {
    case 0: len = lat.sites(); break;
    case 1: len = lat.edges(); break;
    case 2: len = lat.plaquettes(); break;
    default: throw std::invalid_argument("cochain: degree must be 0, 1 or 2");
  }
  values.assign(len, 0.0);
}

bool Cochain::finite() const {
  for (double v : values)
    if (!std::isfinite(v)) return false;
  return true;
}

Cochain d(const Cochain& c) {
  const Lattice& lat = c.lattice();
  const double inv_h = 1.0 / lat.h();
  if (c.degree() == 0) {
    Cochain out(lat, 1);
    for (std::int64_t s = 0; s < lat.sites(); ++s)
      for (int mu = 0; mu < 4; ++mu)
        out[Lattice::edge_index(s, mu)] = (c[lat.forward(s, mu)] - c[s]) * inv_h;
    return out;
  }
  if (c.degree() == 1) {
    Cochain out(lat, 2);
    for (std::int64_t s = 0; s < lat.sites(); ++s)
      for (int p = 0; p < 6; ++p) {
        const auto [mu, nu] = Lattice::plane_dirs(p);
        const double curl = c[Lattice::edge_index(lat.forward(s, mu), nu)] - c[Lattice::edge_index(s, nu)] -
                            c[Lattice::edge_index(lat.forward(s, nu), mu)] + c[Lattice::edge_index(s, mu)];
        out[Lattice::plaq_index(s, p)] = curl * inv_h;
      }
    return out;
  }
  throw std::invalid_argument("d: degree must be 0 or 1");
}

Cochain d_star(const Cochain& c) {
  const Lattice& lat = c.lattice();
  const double inv_h = 1.0 / lat.h();
  if (c.degree() == 1) {
    Cochain out(lat, 0);
    for (std::int64_t s = 0; s < lat.sites(); ++s) {
      double acc = 0.0;
      for (int mu = 0; mu < 4; ++mu)
        acc += c[Lattice::edge_index(lat.backward(s, mu), mu)] - c[Lattice::edge_index(s, mu)];
      out[s] = acc * inv_h;
    }
    return out;
  }
  if (c.degree() == 2) {
    Cochain out(lat, 1);
    for (std::int64_t s = 0; s < lat.sites(); ++s)
      for (int rho = 0; rho < 4; ++rho) {
        double acc = 0.0;
        for (int mu = 0; mu < rho; ++mu) {
          const int p = Lattice::plane_index(mu, rho);
          acc += c[Lattice::plaq_index(lat.backward(s, mu), p)] - c[Lattice::plaq_index(s, p)];
        }
        for (int nu = rho + 1; nu < 4; ++nu) {
          const int p = Lattice::plane_index(rho, nu);
          acc -= c[Lattice::plaq_index(lat.backward(s, nu), p)] - c[Lattice::plaq_index(s, p)];
        }
        out[Lattice::edge_index(s, rho)] = acc * inv_h;
      }
    return out;
  }
  throw std::invalid_argument("d_star: degree must be 1 or 2");
}

double inner(const Cochain& a, const Cochain& b) {
  if (a.degree() != b.degree() || !a.lattice().same_as(b.lattice()))
    throw std::invalid_argument("inner: cochain shape mismatch");
  double acc = 0.0;
  for (std::int64_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc * a.lattice().cell_weight();
}

double norm(const Cochain& a) { return std::sqrt(inner(a, a)); }

Cochain self_dual(const Cochain& f) {
  if (f.degree() != 2) throw std::invalid_argument("self_dual: degree-2 cochain required");
  const Lattice& lat = f.lattice();
  Cochain out(lat, 2);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const std::int64_t b = 6 * s;
    const double g1 = 0.5 * (f[b + 0] + f[b + 5]);
    const double g2 = 0.5 * (f[b + 1] - f[b + 4]);
    const double g3 = 0.5 * (f[b + 2] + f[b + 3]);
    out[b + 0] = g1;
    out[b + 5] = g1;
    out[b + 1] = g2;
    out[b + 4] = -g2;
    out[b + 2] = g3;
    out[b + 3] = g3;
  }
  return out;
}

}  // namespace swlat
