#pragma once

// Sparse multivariate polynomials over a Field, weighted graded-lex orders,
// multivariate division and reduction modulo (x_1^Q, ..., x_n^Q).

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frobpow/ff.hpp"

namespace frobpow {

struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exps(n, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  std::size_t arity() const noexcept { return exps.size(); }
  std::uint64_t degree() const noexcept;
  bool is_one() const noexcept;
  /// True when this monomial divides `other`.
  bool divides(const Monomial& other) const noexcept;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// Exact quotient; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b) noexcept;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Plain lexicographic comparison of exponent vectors (storage order, not
  /// a term order).
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Weighted graded-lex order: weighted degree first, ties broken
/// lexicographically with variable 1 largest.
class MonomialOrder {
 public:
  explicit MonomialOrder(std::vector<std::uint64_t> weights);
  static MonomialOrder grlex(std::size_t n) { return MonomialOrder(std::vector<std::uint64_t>(n, 1)); }

  const std::vector<std::uint64_t>& weights() const noexcept { return weights_; }
  std::uint64_t weighted_degree(const Monomial& u) const;
  std::strong_ordering compare(const Monomial& u, const Monomial& v) const;
  bool less(const Monomial& u, const Monomial& v) const { return compare(u, v) < 0; }

 private:
  std::vector<std::uint64_t> weights_;
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, FieldElem>;

  Polynomial() : n_(0) {}
  Polynomial(Field field, std::size_t n) : field_(std::move(field)), n_(n) {}

  static Polynomial constant(const Field& field, std::size_t n, FieldElem c);
  static Polynomial variable(const Field& field, std::size_t n, std::size_t i);
  static Polynomial term(const Field& field, Monomial m, FieldElem c);

  const Field& field() const noexcept { return field_; }
  std::size_t arity() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  FieldElem coeff(const Monomial& m) const;
  /// Maximum total (unweighted) degree; 0 for the zero polynomial.
  std::uint64_t degree() const noexcept;
  bool is_homogeneous() const noexcept;

  /// Adds c * m in place, dropping the term if it cancels.
  void add_term(const Monomial& m, FieldElem c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& b);
  Polynomial& operator-=(const Polynomial& b);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(FieldElem c) const;
  Polynomial times_term(const Monomial& m, FieldElem c) const;
  /// Binary powering; two-term polynomials are expanded by the binomial
  /// theorem with coefficients from binom_mod_p.
  Polynomial pow(std::uint64_t k) const;

  /// Maximal term under `order`. Throws std::domain_error("LM of zero").
  std::pair<Monomial, FieldElem> leading_term(const MonomialOrder& order) const;
  const Monomial& leading_monomial(const MonomialOrder& order) const;

  /// Terms sorted descending under `order`, rendered as
  /// `c*x1^a1*x3 - x2^2 + 1`. `var` names the variables.
  std::string to_string(const MonomialOrder& order, const std::string& var = "x") const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_compatible(const Polynomial& b) const;

  Field field_;
  std::size_t n_;
  TermMap terms_;
};

/// Drops every term with an exponent >= Q: the canonical representative of
/// f modulo (x_1^Q, ..., x_n^Q).
Polynomial reduce_mod_frobenius(const Polynomial& f, std::uint64_t Q);

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division. At each step the current leading term is reduced
/// by the first divisor (list order) whose leading monomial divides it, or
/// moved to the remainder.
DivisionResult divide(const Polynomial& f, std::span<const Polynomial> divisors, const MonomialOrder& order);

/// Right action by linear substitution: x_j -> sum_i g(j, i) x_i, so that
/// substitute_linear(f, g h) = substitute_linear(substitute_linear(f, g), h).
Polynomial substitute_linear(const Polynomial& f, const MatrixFq& g);

/// Replaces variable i of F by images[i] (all images share one ring).
Polynomial compose(const Polynomial& F, std::span<const Polynomial> images);

}  // namespace frobpow
