#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

namespace swlat {

// Periodic 4-torus cell complex with uniform spacing h.
//
// Sites are enumerated lexicographically in (x0,x1,x2,x3) with x3 fastest;
// directed edges are (site, mu) with index site*4+mu; oriented plaquettes
// are (site, plane) with plane running over the direction pairs
// (01),(02),(03),(12),(13),(23) and index site*6+plane. This enumeration
// order is fixed: the snapshot format depends on it.
//
// Copies are cheap: the neighbor tables are shared and immutable, so fields
// own their lattice by value.
class Lattice {
public:
  Lattice(int n_per_axis, double spacing);

  int n() const { return n_; }
  double h() const { return h_; }
  std::int64_t sites() const { return sites_; }
  std::int64_t edges() const { return 4 * sites_; }
  std::int64_t plaquettes() const { return 6 * sites_; }
  double volume() const { return static_cast<double>(sites_) * cell_weight_; }
  // h^4, the weight of the pointwise inner products.
  double cell_weight() const { return cell_weight_; }

  std::array<int, 4> site_coords(std::int64_t s) const;
  std::int64_t site_index(const std::array<int, 4>& x) const;

  // Nearest neighbor of site s along axis mu (periodic wrap).
  std::int64_t forward(std::int64_t s, int mu) const { return (*fwd_)[4 * s + mu]; }
  std::int64_t backward(std::int64_t s, int mu) const { return (*bwd_)[4 * s + mu]; }

  static std::int64_t edge_index(std::int64_t site, int mu) { return 4 * site + mu; }
  static std::int64_t plaq_index(std::int64_t site, int plane) { return 6 * site + plane; }

  // Plane index of the ordered pair mu < nu.
  static int plane_index(int mu, int nu);
  static std::pair<int, int> plane_dirs(int plane);

  bool same_as(const Lattice& other) const { return n_ == other.n_ && h_ == other.h_; }

private:
  int n_;
  double h_;
  std::int64_t sites_;
  double cell_weight_;
  std::shared_ptr<const std::vector<std::int64_t>> fwd_, bwd_;
};

// Real k-cochain storing pointwise form components (not integrated values).
// Degree 0: one value per site; degree 1: per directed edge; degree 2: per
// oriented plaquette.
class Cochain {
public:
  Cochain(const Lattice& lat, int degree);

  int degree() const { return degree_; }
  const Lattice& lattice() const { return lat_; }
  std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }

  double& operator[](std::int64_t i) { return values[i]; }
  double operator[](std::int64_t i) const { return values[i]; }

  bool finite() const;

  std::vector<double> values;

private:
  Lattice lat_;
  int degree_;
};

// Coboundary: forward difference divided by h. Defined for degrees 0 and 1.
Cochain d(const Cochain& c);

// Codifferential: the exact adjoint of d under the h^4-weighted inner
// products (backward differences). Defined for degrees 1 and 2.
Cochain d_star(const Cochain& c);

// h^4-weighted componentwise inner product and norm.
double inner(const Cochain& a, const Cochain& b);
double norm(const Cochain& a);

// Orthogonal projection of a 2-cochain onto its self-dual part in the flat
// orthonormal frame: F+_{01}=F+_{23}=(F_{01}+F_{23})/2,
// F+_{02}=-F+_{13}=(F_{02}-F_{13})/2, F+_{03}=F+_{12}=(F_{03}+F_{12})/2.
Cochain self_dual(const Cochain& f);

}  // namespace swlat
