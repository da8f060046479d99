#include "swlat/identity.hpp"

#include <cmath>
#include <numbers>

namespace swlat {

double identity_defect(const Configuration& c) {
  const EnergyBreakdown e = sw_eval(c);
  const auto [r1, r2] = monopole_residual(c);
  const double rhs = inner_re(r2, r2) + inner(r1, r1) +
                     std::numbers::pi * std::numbers::pi * static_cast<double>(c.bundle.alpha_squared());
  return std::abs(e.total - rhs);
}

Configuration band_limited_configuration(int n, double physical_size) {
  const double h = physical_size / n;
  const Lattice lat(n, h);
  const double u = 2.0 * std::numbers::pi / physical_size;

  SpinorField phi(lat, Chirality::plus);
  for (std::int64_t s = 0; s < lat.sites(); ++s) {
    const auto xc = lat.site_coords(s);
    const double x0 = xc[0] * h, x1 = xc[1] * h, x2 = xc[2] * h, x3 = xc[3] * h;
    phi.at(s)[0] = 0.5 * std::polar(1.0, u * (x0 - x3)) + 0.3 * std::polar(1.0, u * x1);
    phi.at(s)[1] = 0.4 * std::polar(1.0, u * (x2 + x3)) + cdouble{0.2, 0.0};
  }
  return Configuration(Cochain(lat, 1), std::move(phi), BundleData::constant_kg(lat, {0, 0, 0, 0, 0, 0}, 0.0));
}

std::vector<IdentityLevel> identity_refinement_study(const std::vector<int>& levels, double physical_size) {
  std::vector<IdentityLevel> out;
  double prev = 0.0;
  for (int n : levels) {
    IdentityLevel lvl;
    lvl.n = n;
    lvl.defect = identity_defect(band_limited_configuration(n, physical_size));
    lvl.factor = out.empty() ? 0.0 : prev / lvl.defect;
    prev = lvl.defect;
    out.push_back(lvl);
  }
  return out;
}

}  // namespace swlat
