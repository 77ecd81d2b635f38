#include "frobpow/qseries.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "frobpow/error.hpp"
#include "frobpow/ff.hpp"

namespace frobpow {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
  return r;
}

IntPoly truncate(IntPoly p, std::size_t D) {
  if (p.c.size() > D + 1) p.c.resize(D + 1);
  p.trim();
  return p;
}

}  // namespace

IntPoly::IntPoly(std::vector<std::int64_t> coeffs) : c(std::move(coeffs)) { trim(); }

void IntPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly IntPoly::constant(std::int64_t v) { return IntPoly({v}); }

IntPoly IntPoly::monomial(std::int64_t coef, std::uint64_t exp) {
  std::vector<std::int64_t> v(exp + 1, 0);
  v[exp] = coef;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::one_minus(std::uint64_t w) {
  if (w == 0) return IntPoly{};
  std::vector<std::int64_t> v(w + 1, 0);
  v[0] = 1;
  v[w] = -1;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::q_integer(std::uint64_t k, std::uint64_t s) {
  if (k == 0) return IntPoly{};
  std::vector<std::int64_t> v(s * (k - 1) + 1, 0);
  for (std::uint64_t i = 0; i < k; ++i) v[s * i] = 1;
  return IntPoly(std::move(v));
}

std::int64_t IntPoly::value_at_one() const {
  std::int64_t s = 0;
  for (auto x : c) s = checked_add(s, x);
  return s;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<std::int64_t> v(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = checked_add(a.coeff(i), b.coeff(i));
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<std::int64_t> v(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = checked_add(a.coeff(i), -b.coeff(i));
  return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly{};
  std::vector<std::int64_t> v(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      v[i + j] = checked_add(v[i + j], checked_mul(a.c[i], b.c[j]));
    }
  }
  return IntPoly(std::move(v));
}

IntPoly IntPoly::pow(std::uint64_t k) const {
  IntPoly r = constant(1);
  IntPoly b = *this;
  while (k != 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k != 0) b = b * b;
  }
  return r;
}

IntPoly IntPoly::shifted(std::uint64_t k) const {
  if (is_zero()) return {};
  std::vector<std::int64_t> v(k, 0);
  v.insert(v.end(), c.begin(), c.end());
  return IntPoly(std::move(v));
}

IntPoly exact_divide(const IntPoly& num, const IntPoly& den) {
  if (den.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (num.is_zero()) return {};
  if (num.c.size() < den.c.size()) throw std::domain_error("inexact polynomial division");
  const std::int64_t lead = den.c.back();
  std::vector<std::int64_t> rem = num.c;
  std::vector<std::int64_t> quo(num.c.size() - den.c.size() + 1, 0);
  for (std::size_t i = quo.size(); i-- > 0;) {
    const std::int64_t top = rem[i + den.c.size() - 1];
    if (top % lead != 0) throw std::domain_error("inexact polynomial division");
    const std::int64_t qc = top / lead;
    quo[i] = qc;
    if (qc == 0) continue;
    for (std::size_t j = 0; j < den.c.size(); ++j) rem[i + j] = checked_add(rem[i + j], -checked_mul(qc, den.c[j]));
  }
  if (std::any_of(rem.begin(), rem.end(), [](std::int64_t x) { return x != 0; })) {
    throw std::domain_error("inexact polynomial division");
  }
  return IntPoly(std::move(quo));
}

// ---------------------------------------------------------------------------

TruncatedSeries::TruncatedSeries(const IntPoly& p, std::size_t D) : coeffs(D + 1, 0) {
  for (std::size_t i = 0; i <= D && i < p.c.size(); ++i) coeffs[i] = p.c[i];
}

std::int64_t TruncatedSeries::sum() const {
  std::int64_t s = 0;
  for (auto x : coeffs) s = checked_add(s, x);
  return s;
}

bool TruncatedSeries::nonnegative() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t x) { return x >= 0; });
}

std::int64_t TruncatedSeries::top_degree() const {
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] != 0) return static_cast<std::int64_t>(i);
  }
  return -1;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out(std::min(a.truncation(), b.truncation()));
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = checked_add(a.coeffs[i], b.coeffs[i]);
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  TruncatedSeries out(std::min(a.truncation(), b.truncation()));
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = checked_add(a.coeffs[i], -b.coeffs[i]);
  return out;
}

TruncatedSeries expand(const RationalExpr& expr, std::size_t D) {
  TruncatedSeries out(expr.numerator, D);
  for (std::uint64_t w : expr.denominators) {
    if (w == 0) throw std::invalid_argument("denominator factor 1 - t^0");
    for (std::size_t i = w; i <= D; ++i) out.coeffs[i] = checked_add(out.coeffs[i], out.coeffs[i - w]);
  }
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned k) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (__builtin_mul_overflow(r, b, &r)) throw std::overflow_error("integer power overflow");
  }
  return r;
}

std::size_t default_truncation(unsigned n, std::uint64_t Q) { return static_cast<std::size_t>(n) * (Q - 1); }

std::int64_t gaussian_binomial(unsigned m, unsigned k, std::uint64_t q) {
  using boost::multiprecision::cpp_int;
  if (k > m) return 0;
  cpp_int num = 1, den = 1;
  const cpp_int Q = q;
  for (unsigned i = 0; i < k; ++i) {
    num *= boost::multiprecision::pow(Q, m) - boost::multiprecision::pow(Q, i);
    den *= boost::multiprecision::pow(Q, k) - boost::multiprecision::pow(Q, i);
  }
  if (num % den != 0) throw std::logic_error("Gaussian binomial is not an integer");
  const cpp_int r = num / den;
  if (r > cpp_int(std::numeric_limits<std::int64_t>::max())) throw std::overflow_error("Gaussian binomial overflow");
  return static_cast<std::int64_t>(r);
}

IntPoly qt_binomial_poly(unsigned m, unsigned k, std::uint64_t q) {
  if (k > m) return {};
  IntPoly num = IntPoly::constant(1), den = IntPoly::constant(1);
  for (unsigned i = 0; i < k; ++i) {
    num = num * IntPoly::one_minus(ipow(q, m) - ipow(q, i));
    den = den * IntPoly::one_minus(ipow(q, k) - ipow(q, i));
  }
  return exact_divide(num, den);
}

TruncatedSeries qt_binomial(unsigned m, unsigned k, std::uint64_t q, std::size_t D) {
  return TruncatedSeries(qt_binomial_poly(m, k, q), D);
}

// ---------------------------------------------------------------------------

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) {
    throw SpecError("p = " + std::to_string(p) + " is not prime (divisible by " +
                    std::to_string(smallest_prime_factor(p)) + ")");
  }
}

void check_main_params(std::uint64_t p, unsigned n, unsigned m, unsigned ell, std::uint64_t e) {
  require_prime(p);
  if (n < 1) throw SpecError("n must be >= 1");
  if (m < 1) throw SpecError("m must be >= 1");
  if (ell > n - 1) throw SpecError("ell must satisfy ell <= n - 1");
  if (e == 0 || (p - 1) % e != 0) {
    throw SpecError("e = " + std::to_string(e) + " does not divide p - 1 = " + std::to_string(p - 1));
  }
}

std::uint64_t check_prime_power(std::uint64_t q) { return prime_power(q).first; }

std::string frac(std::uint64_t a, std::uint64_t b) {
  std::ostringstream os;
  os << "(1-t^" << a << ")/(1-t";
  if (b != 1) os << '^' << b;
  os << ')';
  return os.str();
}

std::string powstr(const std::string& s, unsigned k) { return "(" + s + ")^" + std::to_string(k); }

}  // namespace

std::array<TruncatedSeries, 3> hilbert_main_fp_forms(std::uint64_t p, unsigned n, unsigned m, unsigned ell,
                                                     std::uint64_t e, std::size_t D) {
  check_main_params(p, n, m, ell, e);
  const std::uint64_t Q = ipow(p, m);
  const unsigned inert = n - ell - 1;

  // ([Q]_t)^{n-ell-1} ([Q/p]_{t^p})^ell ([(Q-1)/e]_{t^e} + t^{Q-1} [p]_t^ell)
  const IntPoly outer = IntPoly::q_integer(Q).pow(inert) * IntPoly::q_integer(Q / p, p).pow(ell);
  const IntPoly inner = IntPoly::q_integer((Q - 1) / e, e) + IntPoly::q_integer(p).pow(ell).shifted(Q - 1);
  TruncatedSeries form1(outer * inner, D);

  // Distributed form, each summand expanded as a rational series.
  RationalExpr first{IntPoly::one_minus(Q).pow(n - 1) * IntPoly::one_minus(Q - 1), {}};
  first.denominators.insert(first.denominators.end(), inert, 1);
  first.denominators.insert(first.denominators.end(), ell, p);
  first.denominators.push_back(e);
  RationalExpr second{IntPoly::one_minus(Q).pow(n - 1).shifted(Q - 1), std::vector<std::uint64_t>(n - 1, 1)};
  TruncatedSeries form2 = expand(first, D) + expand(second, D);

  // Hilb(S^G) (1-t^Q)^{n-1} ((1-t^{Q-1}) + t^{Q-1}(1-t^e)((1-t^p)/(1-t))^ell)
  RationalExpr third{IntPoly::one_minus(Q).pow(n - 1) *
                         (IntPoly::one_minus(Q - 1) +
                          (IntPoly::one_minus(e) * IntPoly::q_integer(p).pow(ell)).shifted(Q - 1)),
                     {}};
  third.denominators.insert(third.denominators.end(), inert, 1);
  third.denominators.insert(third.denominators.end(), ell, p);
  third.denominators.push_back(e);
  TruncatedSeries form3 = expand(third, D);

  return {std::move(form1), std::move(form2), std::move(form3)};
}

TruncatedSeries hilbert_main_fp(std::uint64_t p, unsigned n, unsigned m, unsigned ell, std::uint64_t e,
                                std::size_t D) {
  auto forms = hilbert_main_fp_forms(p, n, m, ell, e, D);
  if (!(forms[0] == forms[1]) || !(forms[0] == forms[2])) {
    throw std::logic_error("closed forms of the main Hilbert series disagree");
  }
  return std::move(forms[0]);
}

std::string hilbert_main_fp_closed_form(std::uint64_t p, unsigned n, unsigned m, unsigned ell, std::uint64_t e) {
  check_main_params(p, n, m, ell, e);
  const std::uint64_t Q = ipow(p, m);
  return powstr(frac(Q, 1), n - ell - 1) + "*" + powstr(frac(Q, p), ell) + "*(" + frac(Q - 1, e) + " + t^" +
         std::to_string(Q - 1) + "*" + powstr(frac(p, 1), ell) + ")";
}

std::array<TruncatedSeries, 4> hilbert_stabilizer_fq_forms(std::uint64_t q, unsigned n, unsigned m, std::size_t D) {
  check_prime_power(q);
  if (n < 1) throw SpecError("n must be >= 1");
  if (m < 1) throw SpecError("m must be >= 1");
  const std::uint64_t Q = ipow(q, m);

  const IntPoly first_poly =
      IntPoly::q_integer(Q / q, q).pow(n - 1) *
      (IntPoly::q_integer((Q - 1) / (q - 1), q - 1) + IntPoly::q_integer(q).pow(n - 1).shifted(Q - 1));
  TruncatedSeries f1(first_poly, D);

  RationalExpr r2{IntPoly::one_minus(Q).pow(n - 1) *
                      (IntPoly::one_minus(Q - 1) +
                       (IntPoly::one_minus(q - 1) * IntPoly::q_integer(q).pow(n - 1)).shifted(Q - 1)),
                  std::vector<std::uint64_t>(n - 1, q)};
  r2.denominators.push_back(q - 1);
  TruncatedSeries f2 = expand(r2, D);

  const IntPoly third = IntPoly::q_integer(ipow(q, m - 1), q).pow(n - 1) * qt_binomial_poly(m, 1, q) +
                        (IntPoly::q_integer(Q).pow(n - 1) * qt_binomial_poly(m, 0, q)).shifted(Q - 1);
  TruncatedSeries f3(third, D);

  // Ratio of invariant-ring series over F_q and over F_{q^m}, plus the
  // correction term t^{Q-1}(1-t) Hilb(S) / Hilb(S^{G'}).
  RationalExpr ratio{IntPoly::one_minus(Q).pow(n - 1) * IntPoly::one_minus(Q - 1),
                     std::vector<std::uint64_t>(n - 1, q)};
  ratio.denominators.push_back(q - 1);
  RationalExpr corr{(IntPoly::one_minus(1) * IntPoly::one_minus(Q).pow(n - 1)).shifted(Q - 1),
                    std::vector<std::uint64_t>(n, 1)};
  TruncatedSeries f4 = expand(ratio, D) + expand(corr, D);

  return {std::move(f1), std::move(f2), std::move(f3), std::move(f4)};
}

TruncatedSeries hilbert_stabilizer_fq(std::uint64_t q, unsigned n, unsigned m, std::size_t D) {
  auto forms = hilbert_stabilizer_fq_forms(q, n, m, D);
  for (std::size_t i = 1; i < forms.size(); ++i) {
    if (!(forms[0] == forms[i])) throw std::logic_error("closed forms of the stabilizer Hilbert series disagree");
  }
  return std::move(forms[0]);
}

std::string hilbert_stabilizer_fq_closed_form(std::uint64_t q, unsigned n, unsigned m) {
  check_prime_power(q);
  const std::uint64_t Q = ipow(q, m);
  return "([" + std::to_string(Q / q) + "]_{t^" + std::to_string(q) + "})^" + std::to_string(n - 1) + "*[" +
         std::to_string(m) + " 1]_{" + std::to_string(q) + ",t} + t^" + std::to_string(Q - 1) + "*([" +
         std::to_string(Q) + "]_t)^" + std::to_string(n - 1) + "*[" + std::to_string(m) + " 0]_{" +
         std::to_string(q) + ",t}";
}

TruncatedSeries hilbert_A(std::uint64_t s, unsigned n, unsigned m, unsigned ell, std::uint64_t e, std::size_t D) {
  if (n < 1 || ell > n - 1) throw SpecError("ell must satisfy ell <= n - 1");
  const std::uint64_t Q = ipow(s, m);
  if (e == 0 || (Q - 1) % e != 0) throw SpecError("e must divide Q - 1");
  RationalExpr r{IntPoly::one_minus(Q).pow(ell) *
                     (IntPoly::one_minus(Q + e - 1) +
                      (IntPoly::one_minus(e) * IntPoly::constant(static_cast<std::int64_t>(ell))).shifted(Q)),
                 std::vector<std::uint64_t>(ell, s)};
  r.denominators.push_back(e);
  const TruncatedSeries core = expand(r, D);
  const IntPoly inert = IntPoly::q_integer(Q).pow(n - ell - 1);
  IntPoly core_poly(core.coeffs);
  return TruncatedSeries(truncate(core_poly * inert, D), D);
}

TruncatedSeries hilbert_B(std::uint64_t s, unsigned n, unsigned m, unsigned ell, std::size_t D) {
  if (n < 1 || ell > n - 1) throw SpecError("ell must satisfy ell <= n - 1");
  const std::uint64_t Q = ipow(s, m);
  const IntPoly c = IntPoly::q_integer(s).pow(ell) - IntPoly::monomial(static_cast<std::int64_t>(ell), 1) -
                    IntPoly::constant(1);
  const IntPoly b =
      c.shifted(Q - 1) * IntPoly::q_integer(Q / s, s).pow(ell) * IntPoly::q_integer(Q).pow(n - ell - 1);
  return TruncatedSeries(b, D);
}

std::string hilbert_A_closed_form(std::uint64_t s, unsigned n, unsigned m, unsigned ell, std::uint64_t e) {
  const std::uint64_t Q = ipow(s, m);
  std::ostringstream os;
  os << powstr(frac(Q, 1), n - ell - 1) << "*" << powstr(frac(Q, s), ell) << "*(1-t^" << Q + e - 1 << " + " << ell
     << "*t^" << Q << "*(1-t^" << e << "))/(1-t^" << e << ")";
  return os.str();
}

TruncatedSeries hilbert_free_algebra(const std::vector<std::uint64_t>& weights, std::size_t D) {
  return expand(RationalExpr{IntPoly::constant(1), weights}, D);
}

TruncatedSeries lrs_conjecture(std::uint64_t q, unsigned n, unsigned m, std::size_t D) {
  check_prime_power(q);
  const std::uint64_t Q = ipow(q, m);
  IntPoly total;
  for (unsigned k = 0; k <= std::min(n, m); ++k) {
    total = total + qt_binomial_poly(m, k, q).shifted((n - k) * (Q - ipow(q, k)));
  }
  return TruncatedSeries(total, D);
}

std::string lrs_conjecture_closed_form(std::uint64_t q, unsigned n, unsigned m) {
  const std::uint64_t Q = ipow(q, m);
  std::ostringstream os;
  for (unsigned k = 0; k <= std::min(n, m); ++k) {
    if (k) os << " + ";
    os << "t^" << (n - k) * (Q - ipow(q, k)) << "*[" << m << ' ' << k << "]_{" << q << ",t}";
  }
  return os.str();
}

std::uint64_t dimension_main_fp(std::uint64_t p, unsigned n, unsigned m, unsigned ell, std::uint64_t e) {
  check_main_params(p, n, m, ell, e);
  const std::uint64_t Q = ipow(p, m);
  return ipow(p, m * (n - 1)) + ipow(p, m * (n - 1) - ell) * ((Q - 1) / e);
}

std::uint64_t dimension_stabilizer_fq(std::uint64_t q, unsigned n, unsigned m) {
  check_prime_power(q);
  const std::uint64_t Q = ipow(q, m);
  return ipow(q, m * (n - 1)) + ipow(q, (m - 1) * (n - 1)) * ((Q - 1) / (q - 1));
}

}  // namespace frobpow
