#pragma once

#include <random>

#include "swlat/fields.hpp"

namespace swlat::testing {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Cochain random_cochain(const Lattice& lat, int degree, std::mt19937_64& gen, double amp = 1.0) {
  std::uniform_real_distribution<double> dist(-amp, amp);
  Cochain c(lat, degree);
  for (auto& v : c.values) v = dist(gen);
  return c;
}

inline SpinorField random_spinor(const Lattice& lat, std::mt19937_64& gen, double amp = 1.0,
                                 Chirality chi = Chirality::plus) {
  std::uniform_real_distribution<double> dist(-amp, amp);
  SpinorField psi(lat, chi);
  for (auto& v : psi.values) v = cdouble{dist(gen), dist(gen)};
  return psi;
}

inline EdgeSpinorField random_edge_spinor(const Lattice& lat, std::mt19937_64& gen, double amp = 1.0) {
  std::uniform_real_distribution<double> dist(-amp, amp);
  EdgeSpinorField w(lat);
  for (auto& v : w.values) v = cdouble{dist(gen), dist(gen)};
  return w;
}

inline Configuration random_configuration(const Lattice& lat, std::mt19937_64& gen, double amp = 1.0,
                                          const std::array<int, 6>& flux = {0, 0, 0, 0, 0, 0},
                                          double kg = 0.0) {
  return Configuration(random_cochain(lat, 1, gen, amp), random_spinor(lat, gen, amp),
                       BundleData::constant_kg(lat, flux, kg));
}

inline GaugeTransform random_gauge(const Lattice& lat, std::mt19937_64& gen, double amp = 1.0) {
  return GaugeTransform(random_cochain(lat, 0, gen, amp));
}

}  // namespace swlat::testing
