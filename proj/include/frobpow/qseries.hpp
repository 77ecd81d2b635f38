#pragma once

// Integer power series in t: q-integers, Gaussian and (q,t)-binomials, exact
// rational-series expansion, and the closed-form Hilbert series.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace frobpow {

/// Exact integer polynomial in t, low-to-high, no trailing zeros.
struct IntPoly {
  std::vector<std::int64_t> c;

  IntPoly() = default;
  explicit IntPoly(std::vector<std::int64_t> coeffs);
  static IntPoly constant(std::int64_t v);
  /// coef * t^exp.
  static IntPoly monomial(std::int64_t coef, std::uint64_t exp);
  /// 1 - t^w.
  static IntPoly one_minus(std::uint64_t w);
  /// [k]_{t^s} = 1 + t^s + ... + t^{s(k-1)}.
  static IntPoly q_integer(std::uint64_t k, std::uint64_t s = 1);

  bool is_zero() const noexcept { return c.empty(); }
  /// -1 for the zero polynomial.
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(c.size()) - 1; }
  std::int64_t coeff(std::size_t i) const noexcept { return i < c.size() ? c[i] : 0; }
  std::int64_t value_at_one() const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly pow(std::uint64_t k) const;
  IntPoly shifted(std::uint64_t k) const;
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  void trim();
};

/// Exact quotient num / den; throws std::domain_error when den does not
/// divide num.
IntPoly exact_divide(const IntPoly& num, const IntPoly& den);

/// Coefficients of t^0 .. t^D.
struct TruncatedSeries {
  std::vector<std::int64_t> coeffs;

  TruncatedSeries() = default;
  explicit TruncatedSeries(std::size_t D) : coeffs(D + 1, 0) {}
  TruncatedSeries(const IntPoly& p, std::size_t D);

  std::size_t truncation() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  std::int64_t operator[](std::size_t i) const noexcept { return i < coeffs.size() ? coeffs[i] : 0; }
  std::int64_t sum() const;
  bool nonnegative() const;
  /// Largest index with a nonzero coefficient, or -1.
  std::int64_t top_degree() const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;
};

/// numerator / prod_k (1 - t^{denominators[k]}).
struct RationalExpr {
  IntPoly numerator;
  std::vector<std::uint64_t> denominators;
};

/// Division-free expansion: each factor 1/(1 - t^w) is a strided prefix sum.
TruncatedSeries expand(const RationalExpr& expr, std::size_t D);

/// prod_{i<k} (q^m - q^i)/(q^k - q^i). Zero when k > m.
std::int64_t gaussian_binomial(unsigned m, unsigned k, std::uint64_t q);

/// prod_{i<k} (1 - t^{q^m - q^i})/(1 - t^{q^k - q^i}) as an exact polynomial.
IntPoly qt_binomial_poly(unsigned m, unsigned k, std::uint64_t q);
TruncatedSeries qt_binomial(unsigned m, unsigned k, std::uint64_t q, std::size_t D);

std::uint64_t ipow(std::uint64_t b, unsigned k);

/// Default truncation n(Q - 1), the top degree of S/(x_i^Q).
std::size_t default_truncation(unsigned n, std::uint64_t Q);

/// Hilbert series of the invariants of S/(x_i^{p^m}) under a group in
/// GL_n(F_p) fixing a hyperplane, with transvection root space of dimension
/// ell and maximal semisimple order e. The three equivalent closed forms are
/// expanded separately and checked against each other.
TruncatedSeries hilbert_main_fp(std::uint64_t p, unsigned n, unsigned m, unsigned ell, std::uint64_t e,
                                std::size_t D);
std::array<TruncatedSeries, 3> hilbert_main_fp_forms(std::uint64_t p, unsigned n, unsigned m, unsigned ell,
                                                     std::uint64_t e, std::size_t D);
std::string hilbert_main_fp_closed_form(std::uint64_t p, unsigned n, unsigned m, unsigned ell, std::uint64_t e);

/// Same for the full pointwise stabilizer of a hyperplane in GL_n(F_q).
TruncatedSeries hilbert_stabilizer_fq(std::uint64_t q, unsigned n, unsigned m, std::size_t D);
std::array<TruncatedSeries, 4> hilbert_stabilizer_fq_forms(std::uint64_t q, unsigned n, unsigned m, std::size_t D);
std::string hilbert_stabilizer_fq_closed_form(std::uint64_t q, unsigned n, unsigned m);

/// Series of A_G = (S^G + m^[Q]) / m^[Q] and of its complement B_G. Here s is
/// the degree of the transvection invariants (p, or q for the stabilizer),
/// e the degree of the last basic invariant and ell the number of
/// transvection generators; the other n - ell - 1 variables are inert.
TruncatedSeries hilbert_A(std::uint64_t s, unsigned n, unsigned m, unsigned ell, std::uint64_t e, std::size_t D);
TruncatedSeries hilbert_B(std::uint64_t s, unsigned n, unsigned m, unsigned ell, std::size_t D);
std::string hilbert_A_closed_form(std::uint64_t s, unsigned n, unsigned m, unsigned ell, std::uint64_t e);

/// Hilbert series of S^G = F[f_1..f_n] with the given weights.
TruncatedSeries hilbert_free_algebra(const std::vector<std::uint64_t>& weights, std::size_t D);

/// sum_{k=0}^{min(n,m)} t^{(n-k)(q^m-q^k)} [m k]_{q,t}. Conjectural for the
/// full general linear group.
TruncatedSeries lrs_conjecture(std::uint64_t q, unsigned n, unsigned m, std::size_t D);
std::string lrs_conjecture_closed_form(std::uint64_t q, unsigned n, unsigned m);

/// Orbit-count / dimension formulas.
std::uint64_t dimension_main_fp(std::uint64_t p, unsigned n, unsigned m, unsigned ell, std::uint64_t e);
std::uint64_t dimension_stabilizer_fq(std::uint64_t q, unsigned n, unsigned m);

}  // namespace frobpow
