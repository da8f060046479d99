#pragma once

#include <vector>

#include "swlat/functional.hpp"

namespace swlat {

// Defect of the energy identity
//   sw_eval = |D+ phi|^2 + |F+ - iota(sigma(phi))|^2 + pi^2 alpha^2.
// The identity holds in the continuum for configurations with a = 0,
// flux = 0 and kg = 0 (flat torus); the lattice defect is the
// discretization error of the two derivative terms and vanishes at O(h^2).
double identity_defect(const Configuration& c);

// Fixed band-limited spinor configuration at physical size L = n h, a = 0,
// flux = 0, kg = 0. The same continuum field is sampled on every
// refinement level, so defects are directly comparable.
Configuration band_limited_configuration(int n, double physical_size);

struct IdentityLevel {
  int n = 0;
  double defect = 0.0;
  double factor = 0.0;  // previous defect / this defect; 0 for the first level
};

std::vector<IdentityLevel> identity_refinement_study(const std::vector<int>& levels, double physical_size);

}  // namespace swlat
