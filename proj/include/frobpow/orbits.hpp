#pragma once

// Orbits of a hyperplane-fixing group on (F_{q^m})^n by direct enumeration.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "frobpow/group.hpp"

namespace frobpow {

struct OrbitReport {
  GroupSpec spec;
  unsigned m = 0;
  std::uint64_t total_points = 0;
  std::uint64_t orbits = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // orbit size -> number of orbits
  std::uint64_t formula = 0;
  std::optional<std::int64_t> hilbert_sum;  // coefficient sum of the matching series
  std::uint64_t group_order = 0;
  bool singletons_on_hyperplane = false;  // every point with x_n = 0 is fixed
  bool free_off_hyperplane = false;       // every other orbit has size |G|

  bool pass() const;
};

/// Number of orbits predicted by the dimension formula:
/// q^{m(n-1)} + q^{m(n-1)} (q^m - 1) / |G| with |G| = e p^ell (resp. q^{n-1}(q-1)).
std::uint64_t orbit_count_formula(const GroupSpec& spec, unsigned m);

/// Union-find over the q^{mn} points, one merge per (point, generator).
/// Throws CapExceeded when q^{mn} exceeds max_points.
OrbitReport count_orbits_enum(const GroupSpec& spec, unsigned m, std::uint64_t max_points = 1'000'000);

struct ExploratoryOrbitReport {
  std::uint64_t q = 0;
  unsigned n = 0;
  unsigned m = 0;
  std::uint64_t orbits = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::uint64_t fixed_dimension = 0;  // total dimension of the invariants of S/(x_i^{q^m})
  bool equal() const { return orbits == fixed_dimension; }
};

/// Orbit count and brute-force invariant dimension for an arbitrary set of
/// matrices over F_q. Nothing is asserted about the relation between them.
ExploratoryOrbitReport explore_orbits(const Field& field, unsigned n, unsigned m, const std::vector<GroupElement>& gens,
                                      std::uint64_t max_points = 1'000'000, std::uint64_t max_monomials = 1'000'000);

}  // namespace frobpow
