#pragma once

// Normalized reflection groups fixing the hyperplane H = ker(x_n), and the
// full pointwise stabilizer of H in GL_n(F_q).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobpow/ff.hpp"
#include "frobpow/poly.hpp"

namespace frobpow {

struct GroupSpec {
  std::uint64_t p = 2;
  unsigned r = 1;
  unsigned n = 2;
  unsigned ell = 0;
  std::uint64_t e = 1;
  bool full_stabilizer = false;

  std::uint64_t q() const;
  /// Throws SpecError on any violated constraint. For full stabilizers ell
  /// and e are implied (n - 1 and q - 1) and overwritten.
  GroupSpec validated() const;
  /// e q^ell, or q^{n-1}(q-1) for the full stabilizer.
  std::uint64_t expected_order() const;
  /// Degree of the transvection invariants: p, or q for the stabilizer.
  std::uint64_t transvection_degree() const;
  /// True when ell = n - 1 (all of H is spanned by root vectors).
  bool maximal_root_space() const { return ell + 1 == n; }

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

using GroupElement = MatrixFq;

struct Group {
  GroupSpec spec;
  Field field;
  /// The chosen primitive e-th root of unity (1 when e = 1).
  FieldElem omega;
  std::vector<GroupElement> generators;
};

/// The normalized generators: diag(1, ..., 1, omega) (omitted when e = 1)
/// followed by transvections I + gamma E_{k,n}. Acting through the inverse
/// matrix, I + E_{k,n} sends x_k to x_k - x_n and the diagonal sends x_n to
/// omega^{-1} x_n.
Group build_group(const GroupSpec& spec);

/// Closure of the generators under multiplication, breadth first. Throws
/// CapExceeded beyond `cap` elements.
std::vector<GroupElement> enumerate(const Field& field, unsigned n, const std::vector<GroupElement>& gens,
                                    std::uint64_t cap = 10'000'000);

/// Every invertible n x n matrix over the field (tiny cases only).
std::vector<GroupElement> enumerate_gl(const Field& field, unsigned n, std::uint64_t cap = 100'000);

/// The alpha with g(v) = v + x_n(v) alpha, or nullopt for the identity.
/// Throws std::invalid_argument when g does not fix ker(x_n) pointwise.
std::optional<VectorFq> root_vector(const Field& field, const GroupElement& g);
bool is_transvection(const Field& field, const GroupElement& g);

/// Dimension over F_p of the span of the root vectors lying in H.
std::size_t transvection_rootspace_dim(const Field& field, const std::vector<GroupElement>& elements);

/// The contragredient action on polynomials: substitution by g^{-1}.
Polynomial act(const Polynomial& f, const GroupElement& g);

std::string to_json_string(const GroupSpec& spec);

}  // namespace frobpow
