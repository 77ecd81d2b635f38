#pragma once

// Exact arithmetic in F_p and F_{p^r}, dense linear algebra over them, and
// Lucas-theorem binomials.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace frobpow {

/// An element of a finite field, encoded as sum_i c_i p^i where (c_0, ...,
/// c_{r-1}) are its coordinates in the power basis of the field's modulus.
/// The encoding is canonical, so equality is coefficient equality. The
/// ordering is the integer order of the code, used for deterministic scans.
struct FieldElem {
  std::uint32_t code = 0;

  friend constexpr bool operator==(FieldElem, FieldElem) = default;
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

namespace detail {
struct FieldImpl;
}

/// F_{p^r} = F_p[x]/(modulus). Cheap to copy; all copies share immutable
/// lookup tables.
class Field {
 public:
  /// The prime field F_2. Mostly useful as a placeholder.
  Field();

  std::uint64_t characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return r_; }
  /// q = p^r.
  std::uint64_t order() const noexcept { return q_; }
  /// Monic modulus, low-to-high, length r + 1. For r = 1 this is x - 0.
  const std::vector<std::uint64_t>& modulus() const noexcept;

  FieldElem zero() const noexcept { return {0}; }
  FieldElem one() const noexcept { return {1}; }
  /// Image of an integer in the prime subfield.
  FieldElem from_int(std::int64_t v) const noexcept;
  FieldElem from_coeffs(std::span<const std::uint64_t> coeffs) const;
  std::vector<std::uint64_t> coeffs(FieldElem a) const;
  /// The class of x in F_p[x]/(modulus); equals 0 when r = 1.
  FieldElem generator() const noexcept;
  /// Element with the given code; code < q is required.
  FieldElem element(std::uint64_t code) const;

  FieldElem add(FieldElem a, FieldElem b) const noexcept {
    if (r_ == 1) {
      const std::uint64_t s = std::uint64_t{a.code} + b.code;
      return {static_cast<std::uint32_t>(s >= p_ ? s - p_ : s)};
    }
    return add_ext(a, b);
  }
  FieldElem sub(FieldElem a, FieldElem b) const noexcept {
    if (r_ == 1) {
      return {static_cast<std::uint32_t>(a.code >= b.code ? a.code - b.code
                                                           : std::uint64_t{a.code} + p_ - b.code)};
    }
    return sub_ext(a, b);
  }
  FieldElem neg(FieldElem a) const noexcept { return sub(zero(), a); }
  FieldElem mul(FieldElem a, FieldElem b) const noexcept {
    if (r_ == 1) return {static_cast<std::uint32_t>((std::uint64_t{a.code} * b.code) % p_)};
    return mul_ext(a, b);
  }
  /// Throws std::domain_error on zero.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t k) const noexcept;
  /// Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(FieldElem a) const;

  bool in_prime_subfield(FieldElem a) const noexcept { return a.code < p_; }
  /// Residue of an element of the prime subfield.
  std::uint64_t residue(FieldElem a) const noexcept { return a.code; }

  /// `GF(p^r; modulus=[c0,c1,...])`.
  std::string describe() const;
  /// `[c0,...,c_{r-1}]`.
  std::string format(FieldElem a) const;

  friend bool operator==(const Field& a, const Field& b) noexcept;

 private:
  explicit Field(std::shared_ptr<const detail::FieldImpl> impl);
  friend Field make_field(std::uint64_t p, unsigned r);

  FieldElem add_ext(FieldElem a, FieldElem b) const noexcept;
  FieldElem sub_ext(FieldElem a, FieldElem b) const noexcept;
  FieldElem mul_ext(FieldElem a, FieldElem b) const noexcept;

  std::shared_ptr<const detail::FieldImpl> impl_;
  std::uint64_t p_ = 2;
  unsigned r_ = 1;
  std::uint64_t q_ = 2;
};

/// F_{p^r} with the lexicographically smallest monic irreducible modulus
/// (coefficients compared from the constant term upward). Throws SpecError
/// when p is not prime (naming a divisor) or r < 1.
Field make_field(std::uint64_t p, unsigned r);

/// Smallest element (by code, scanning 1, 2, 3, ...) of multiplicative order
/// exactly e. Throws SpecError when e does not divide q - 1.
FieldElem root_of_unity(const Field& field, std::uint64_t e);

/// Ring embedding F_{p^a} -> F_{p^b} for a | b. The generator of `src` is
/// sent to the smallest root (by code) of src's modulus in `dst`.
class FieldEmbedding {
 public:
  FieldEmbedding(const Field& src, const Field& dst);

  FieldElem operator()(FieldElem x) const;
  const Field& source() const noexcept { return src_; }
  const Field& target() const noexcept { return dst_; }

 private:
  Field src_;
  Field dst_;
  std::vector<FieldElem> basis_image_;  // images of 1, theta, theta^2, ...
};

FieldElem embed(const Field& src, const Field& dst, FieldElem x);

/// C(d, i) mod p by Lucas' theorem. Zero when i > d.
std::uint64_t binom_mod_p(std::uint64_t d, std::uint64_t i, std::uint64_t p);

/// Smallest prime factor of n (n itself when prime, 0/1 map to themselves).
std::uint64_t smallest_prime_factor(std::uint64_t n) noexcept;
bool is_prime(std::uint64_t n) noexcept;
/// Decomposes q = p^r; throws SpecError when q is not a prime power.
std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q);

// ---------------------------------------------------------------------------
// Dense linear algebra.

struct MatrixFq {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<FieldElem> entries;  // row-major

  MatrixFq() = default;
  MatrixFq(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

  FieldElem& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  FieldElem at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  std::span<FieldElem> row(std::size_t i) { return {entries.data() + i * cols, cols}; }
  std::span<const FieldElem> row(std::size_t i) const { return {entries.data() + i * cols, cols}; }

  static MatrixFq identity(std::size_t n);

  friend bool operator==(const MatrixFq&, const MatrixFq&) = default;
};

using VectorFq = std::vector<FieldElem>;

MatrixFq mat_mul(const Field& f, const MatrixFq& a, const MatrixFq& b);
VectorFq mat_vec(const Field& f, const MatrixFq& a, std::span<const FieldElem> v);
FieldElem determinant(const Field& f, MatrixFq m);
/// Throws std::domain_error when singular.
MatrixFq inverse(const Field& f, const MatrixFq& m);

struct RowEchelon {
  MatrixFq reduced;                  // reduced row-echelon form
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
RowEchelon rref(const Field& f, MatrixFq m);
std::size_t rank(const Field& f, MatrixFq m);
/// Basis of {v : m v = 0}: one vector per free column (left to right), with
/// a 1 in that column and zeros in the other free columns.
std::vector<VectorFq> nullspace(const Field& f, const MatrixFq& m);

/// Row space built one row at a time in semi-echelon form (each stored row
/// is normalised to a leading 1 at its pivot and has zeros before it).
/// Used when rows are generated lazily and only the rank is needed.
class EchelonBasis {
 public:
  EchelonBasis(Field f, std::size_t cols);

  /// Reduces `row` against the stored rows; stores it if independent.
  /// Returns true when the rank grew. The argument is clobbered.
  bool insert(std::vector<FieldElem>& row);
  /// Sparse convenience overload: (column, value) pairs, columns distinct.
  bool insert_sparse(std::span<const std::pair<std::size_t, FieldElem>> entries);

  std::size_t rank() const noexcept { return rank_; }
  std::size_t cols() const noexcept { return cols_; }
  /// Converts to reduced row-echelon form and returns the nullspace basis.
  std::vector<VectorFq> nullspace() const;

 private:
  Field field_;
  std::size_t cols_;
  std::size_t rank_ = 0;
  std::vector<std::int64_t> row_of_pivot_;  // pivot column -> stored row, or -1
  std::vector<std::vector<FieldElem>> rows_;
  std::vector<FieldElem> scratch_;
};

}  // namespace frobpow
