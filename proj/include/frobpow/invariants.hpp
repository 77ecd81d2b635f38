#pragma once

// Basic invariants, the Groebner generators h_0, h_{1,a}, h_{2,a,b}, and
// brute-force linear algebra on the fixed space of S / (x_1^Q, ..., x_n^Q).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frobpow/group.hpp"
#include "frobpow/poly.hpp"
#include "frobpow/qseries.hpp"

namespace frobpow {

struct BasicInvariants {
  std::vector<Polynomial> polys;       // f_1 .. f_n in x-coordinates
  std::vector<std::uint64_t> weights;  // their degrees

  MonomialOrder order() const { return MonomialOrder(weights); }
  std::size_t size() const noexcept { return polys.size(); }
};

/// f_i = x_i^s - x_i x_n^{s-1} for i <= ell, f_i = x_i for ell < i < n and
/// f_n = x_n^e, with s = p (s = q, e = q - 1 for the full stabilizer). Each
/// f_i is checked against every generator; a failure throws std::logic_error.
BasicInvariants basic_invariants(const Group& group);

struct HGenerator {
  enum class Kind { H0, H1, H2 };
  Kind kind = Kind::H0;
  unsigned a = 0;  // 1-based, unused for h_0
  unsigned b = 0;  // 1-based, h_2 only
  Polynomial fpoly;  // in f_1 .. f_n
  Polynomial xpoly;  // expanded in x_1 .. x_n

  std::string label() const;
};

/// The generator list in its fixed order: h_0, then h_{1,a} for ascending a,
/// then h_{2,a,b} for a <= b in lex order.
struct HGenerators {
  std::uint64_t Q = 0;
  std::vector<HGenerator> list;

  std::vector<Polynomial> f_polys() const;
};

/// Requires a maximal root space (ell = n - 1) or the full stabilizer.
HGenerators h_generators(const Group& group, const BasicInvariants& basic, unsigned m);

/// Closed x-forms the generators must expand to: x_n^{Q+e-1},
/// x_a^Q x_n^e - x_a x_n^{Q+e-1} and the four-term product form.
Polynomial h_closed_form(const Group& group, const HGenerator& h, std::uint64_t Q);

struct HilbertFunction {
  std::vector<std::uint64_t> dims;  // index = degree

  std::uint64_t total() const;
  friend bool operator==(const HilbertFunction&, const HilbertFunction&) = default;
};

struct BruteForceOptions {
  std::uint64_t max_monomials = 1'000'000;
  unsigned jobs = 1;
};

/// Fixed-space dimensions, degree by degree, of the span of {x^a : a_i < Q}
/// under the given matrices (acting contragrediently).
HilbertFunction fixed_space_dims(const Field& field, unsigned n, std::uint64_t Q,
                                 const std::vector<GroupElement>& gens, const BruteForceOptions& opts = {});

/// Explicit fixed-space bases (one list per degree) for small cases.
std::vector<std::vector<Polynomial>> fixed_space_basis(const Field& field, unsigned n, std::uint64_t Q,
                                                       const std::vector<GroupElement>& gens,
                                                       const BruteForceOptions& opts = {});

HilbertFunction brute_force_hilbert(const GroupSpec& spec, unsigned m, const BruteForceOptions& opts = {});

HilbertFunction a_space_dims(const GroupSpec& spec, unsigned m, const BruteForceOptions& opts = {});
HilbertFunction b_space_dims(const GroupSpec& spec, unsigned m, const BruteForceOptions& opts = {});

struct DecompositionRow {
  std::size_t degree = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t stacked = 0;  // rank of the union of both spanning sets
  std::uint64_t brute = 0;
  bool ok() const { return a + b == brute && stacked == a + b; }
};

struct DecompositionReport {
  GroupSpec spec;
  unsigned m = 0;
  std::vector<DecompositionRow> rows;
  bool b_seeds_invariant = false;

  bool pass() const;
};

DecompositionReport verify_decomposition(const GroupSpec& spec, unsigned m, const BruteForceOptions& opts = {});

struct ExponentBoundReport {
  std::uint64_t q = 0;
  unsigned n = 0;
  unsigned m = 0;
  HilbertFunction hilbert;
  std::size_t monomials_checked = 0;
  std::vector<std::string> violations;
  bool top_degree_ok = false;       // HF at n(q^m - 1) is 1
  bool hilbert_bound_ok = false;    // HF <= HF of S/(x_i^{q^m-q+1}) elsewhere

  bool pass() const { return violations.empty() && top_degree_ok && hilbert_bound_ok; }
};

/// Invariants of S/(x_i^{q^m}) under all of GL_n(F_q), with every monomial
/// checked against the dichotomy "top monomial, or all exponents <= q^m - q".
ExponentBoundReport check_exponent_bound(std::uint64_t q, unsigned n, unsigned m, const BruteForceOptions& opts = {});

struct ConjectureReport {
  std::uint64_t q = 0;
  unsigned n = 0;
  unsigned m = 0;
  std::size_t D = 0;
  TruncatedSeries conjecture;
  std::optional<HilbertFunction> brute;  // absent outside n <= 2, q <= 3, m <= 2

  /// Empty when no brute force ran.
  std::optional<bool> match() const;
};

/// The conjectured series for invariants of S/(x_i^{q^m}) under GL_n(F_q),
/// compared against brute force over every element of GL_n(F_q) when small.
ConjectureReport check_lrs_conjecture(std::uint64_t q, unsigned n, unsigned m, std::optional<std::size_t> D = {},
                                      const BruteForceOptions& opts = {});

}  // namespace frobpow
