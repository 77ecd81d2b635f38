#include <doctest.h>

#include "frobpow/error.hpp"
#include "frobpow/ff.hpp"
#include "frobpow/qseries.hpp"

using namespace frobpow;

namespace {

using Coeffs = std::vector<std::int64_t>;

// Oracle: power-series long division num / prod (1 - t^w), one coefficient at
// a time against the multiplied-out denominator.
Coeffs series_div(const Coeffs& num, const std::vector<std::uint64_t>& den_ws, std::size_t D) {
  Coeffs den{1};
  for (auto w : den_ws) {
    Coeffs next(den.size() + w, 0);
    for (std::size_t i = 0; i < den.size(); ++i) {
      next[i] += den[i];
      next[i + w] -= den[i];
    }
    den = std::move(next);
  }
  Coeffs out(D + 1, 0);
  for (std::size_t k = 0; k <= D; ++k) {
    std::int64_t v = k < num.size() ? num[k] : 0;
    for (std::size_t j = 1; j < den.size() && j <= k; ++j) v -= den[j] * out[k - j];
    out[k] = v;
  }
  return out;
}

Coeffs pmul(const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Coeffs padd(Coeffs a, const Coeffs& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

Coeffs one_minus(std::uint64_t w) {
  Coeffs c(w + 1, 0);
  c[0] += 1;
  c[w] -= 1;
  return c;
}

Coeffs ppow(const Coeffs& a, unsigned k) {
  Coeffs r{1};
  for (unsigned i = 0; i < k; ++i) r = pmul(r, a);
  return r;
}

Coeffs shift(const Coeffs& a, std::uint64_t k) {
  Coeffs r(k, 0);
  r.insert(r.end(), a.begin(), a.end());
  return r;
}

Coeffs fit(Coeffs a, std::size_t D) {
  a.resize(D + 1, 0);
  return a;
}

}  // namespace

TEST_CASE("expand examples") {
  CHECK(expand({IntPoly::constant(1), {1}}, 3).coeffs == Coeffs{1, 1, 1, 1});
  CHECK(expand({IntPoly::one_minus(2), {1}}, 3).coeffs == Coeffs{1, 1, 0, 0});
  const RationalExpr arch{IntPoly::one_minus(5).pow(2), {5, 5, 4}};
  CHECK(expand(arch, 8).coeffs == series_div(ppow(one_minus(5), 2), {5, 5, 4}, 8));
  CHECK(expand(arch, 8).coeffs == Coeffs{1, 0, 0, 0, 1, 0, 0, 0, 1});
}

TEST_CASE("expand is exact against re-multiplication") {
  const std::vector<std::vector<std::uint64_t>> dens = {{1}, {2, 3}, {1, 1, 4}, {5, 5, 4}, {3, 7}};
  const IntPoly nums[] = {IntPoly({1, -2, 0, 5}), IntPoly::one_minus(9).pow(2), IntPoly({0, 0, 3, -1, 4, 7})};
  for (const auto& d : dens) {
    for (const auto& num : nums) {
      const std::size_t D = 30;
      const auto s = expand({num, d}, D);
      CHECK(s.coeffs == series_div(num.c, d, D));
      IntPoly back(s.coeffs);
      for (auto w : d) back = back * IntPoly::one_minus(w);
      for (std::size_t k = 0; k <= D; ++k) CHECK(back.coeff(k) == num.coeff(k));
    }
  }
}

TEST_CASE("gaussian binomials") {
  CHECK(gaussian_binomial(4, 0, 3) == 1);
  CHECK(gaussian_binomial(2, 1, 7) == 8);
  for (std::uint64_t q : {2, 3, 4, 5}) {
    for (unsigned m = 1; m <= 4; ++m) {
      CHECK(gaussian_binomial(m, 1, q) == static_cast<std::int64_t>((ipow(q, m) - 1) / (q - 1)));
    }
  }
  CHECK(gaussian_binomial(2, 3, 2) == 0);
  // Number of 2-dimensional subspaces of F_2^4.
  CHECK(gaussian_binomial(4, 2, 2) == 35);
}

TEST_CASE("qt binomials") {
  CHECK(qt_binomial(3, 0, 2, 4).coeffs == Coeffs{1, 0, 0, 0, 0});
  CHECK(qt_binomial(1, 1, 3, 2).coeffs == Coeffs{1, 0, 0});
  CHECK(qt_binomial(2, 1, 2, 3).coeffs == Coeffs{1, 1, 1, 0});
  for (std::uint64_t q : {2, 3, 4}) {
    for (unsigned m = 0; m <= 3; ++m) {
      for (unsigned k = 0; k <= m; ++k) {
        CHECK(qt_binomial_poly(m, k, q).value_at_one() == gaussian_binomial(m, k, q));
      }
    }
  }
  CHECK_THROWS_AS(exact_divide(IntPoly({1, 1}), IntPoly({1, 0, 1})), std::domain_error);
}

TEST_CASE("main series examples") {
  CHECK(hilbert_main_fp(2, 2, 1, 1, 1, 2).coeffs == Coeffs{1, 1, 1});
  CHECK_THROWS_AS(hilbert_main_fp(5, 2, 1, 1, 3, 8), SpecError);
  CHECK_THROWS_AS(hilbert_main_fp(4, 2, 1, 1, 1, 8), SpecError);
  CHECK(hilbert_main_fp_closed_form(2, 2, 1, 1, 1) == "((1-t^2)/(1-t))^0*((1-t^2)/(1-t^2))^1*((1-t^1)/(1-t) + t^1*((1-t^2)/(1-t))^1)");
}

TEST_CASE("main series forms agree with an independent expansion") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned m : {1u, 2u}) {
        for (unsigned ell = 0; ell < n; ++ell) {
          for (std::uint64_t e = 1; e < p || e == 1; ++e) {
            if ((p - 1) % e != 0) continue;
            const std::uint64_t Q = ipow(p, m);
            const std::size_t D = default_truncation(n, Q);
            const auto forms = hilbert_main_fp_forms(p, n, m, ell, e, D);
            CHECK(forms[0] == forms[1]);
            CHECK(forms[0] == forms[2]);
            // ((1-t^Q)/(1-t))^{n-l-1} ((1-t^Q)/(1-t^p))^l ((1-t^{Q-1})/(1-t^e) + t^{Q-1}((1-t^p)/(1-t))^l)
            std::vector<std::uint64_t> den(n - ell - 1, 1);
            den.insert(den.end(), ell, p);
            Coeffs outer = ppow(one_minus(Q), n - 1);
            Coeffs a = series_div(pmul(outer, one_minus(Q - 1)), [&] { auto d = den; d.push_back(e); return d; }(), D);
            Coeffs b = series_div(shift(pmul(outer, ppow(one_minus(p), ell)), Q - 1), [&] {
              auto d = den;
              d.insert(d.end(), ell, 1);
              return d;
            }(), D);
            const auto h = hilbert_main_fp(p, n, m, ell, e, D);
            CHECK(h.coeffs == fit(padd(a, b), D));
            CHECK(h.nonnegative());
            CHECK(h.top_degree() <= static_cast<std::int64_t>(D));
            CHECK(h.sum() == static_cast<std::int64_t>(dimension_main_fp(p, n, m, ell, e)));
            // The whole series fits below the default truncation.
            CHECK(hilbert_main_fp(p, n, m, ell, e, D + 5).sum() == h.sum());
            if (ell == 0) {
              // Nonmodular form (1-t^Q)^{n-1}(1-t^{Q+e-1}) / ((1-t)^{n-1}(1-t^e)).
              std::vector<std::uint64_t> d2(n - 1, 1);
              d2.push_back(e);
              CHECK(h.coeffs == series_div(pmul(outer, one_minus(Q + e - 1)), d2, D));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("stabilizer series") {
  CHECK(hilbert_stabilizer_fq(2, 2, 1, 2).coeffs == Coeffs{1, 1, 1});
  CHECK(hilbert_stabilizer_fq(4, 2, 1, 6).sum() == 5);
  CHECK(dimension_stabilizer_fq(4, 2, 1) == 5);
  CHECK_THROWS_AS(hilbert_stabilizer_fq(6, 2, 1, 6), SpecError);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned m : {1u, 2u}) {
        const std::uint64_t Q = ipow(q, m);
        const std::size_t D = default_truncation(n, Q);
        if (D > 400) continue;
        const auto forms = hilbert_stabilizer_fq_forms(q, n, m, D);
        for (const auto& f : forms) CHECK(f == forms[0]);
        CHECK(forms[0].nonnegative());
        CHECK(forms[0].sum() == static_cast<std::int64_t>(dimension_stabilizer_fq(q, n, m)));
        if (is_prime(q)) CHECK(forms[0] == hilbert_main_fp(q, n, m, n - 1, q - 1, D));
        // Fuss-Catalan reformulation: t^{Q-1} Cat^{(Q-1)}(trivial on H) + Cat^{((Q-q)/(q-1))}(G).
        const Coeffs k0 = shift(series_div(ppow(one_minus(Q), n - 1), std::vector<std::uint64_t>(n - 1, 1), D), Q - 1);
        std::vector<std::uint64_t> degs(n - 1, q);
        degs.push_back(q - 1);
        const std::uint64_t c1 = (Q - q) / (q - 1);
        Coeffs num{1};
        for (auto d : degs) num = pmul(num, one_minus(d + c1 * (q - 1)));
        const Coeffs k1 = series_div(num, degs, D);
        CHECK(forms[0].coeffs == fit(padd(fit(k0, D), k1), D));
      }
    }
  }
}

TEST_CASE("A and B series") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned m : {1u, 2u}) {
        for (std::uint64_t e = 1; e < p || e == 1; ++e) {
          if ((p - 1) % e != 0) continue;
          const std::size_t D = default_truncation(n, ipow(p, m));
          const auto sum = hilbert_A(p, n, m, n - 1, e, D) + hilbert_B(p, n, m, n - 1, D);
          CHECK(sum == hilbert_main_fp(p, n, m, n - 1, e, D));
        }
      }
    }
  }
  // B vanishes for n = 2, p = 2.
  for (unsigned m : {1u, 2u, 3u}) CHECK(hilbert_B(2, 2, m, 1, 20).sum() == 0);
  // Archetype: (1-t^Q)^2 (1 - t^{Q+e-1} + 2 t^Q (1-t^e)) / ((1-t^5)^2 (1-t^e)).
  for (unsigned m : {1u, 2u}) {
    for (std::uint64_t e : {1, 2, 4}) {
      const std::uint64_t Q = ipow(5, m);
      const std::size_t D = 3 * (Q - 1);
      const Coeffs num = pmul(ppow(one_minus(Q), 2), padd(one_minus(Q + e - 1), shift(pmul({2}, one_minus(e)), Q)));
      CHECK(hilbert_A(5, 3, m, 2, e, D).coeffs == series_div(num, {5, 5, e}, D));
    }
  }
  CHECK(hilbert_A_closed_form(5, 3, 1, 2, 4) == "((1-t^5)/(1-t))^0*((1-t^5)/(1-t^5))^2*(1-t^8 + 2*t^5*(1-t^4))/(1-t^4)");
}

TEST_CASE("conjecture series") {
  CHECK(lrs_conjecture(2, 1, 1, 1).coeffs == Coeffs{1, 1});
  for (std::uint64_t q : {2, 3, 4}) {
    for (unsigned n : {1u, 2u, 3u}) {
      for (unsigned m : {1u, 2u, 3u}) {
        const std::size_t D = default_truncation(n, ipow(q, m));
        if (D > 500) continue;
        std::int64_t expected = 0;
        for (unsigned k = 0; k <= std::min(n, m); ++k) expected += gaussian_binomial(m, k, q);
        const auto s = lrs_conjecture(q, n, m, D);
        CHECK(s.sum() == expected);
        CHECK(s.nonnegative());
      }
    }
  }
  CHECK(lrs_conjecture_closed_form(2, 1, 1) == "t^1*[1 0]_{2,t} + t^0*[1 1]_{2,t}");
}

TEST_CASE("IntPoly helpers") {
  CHECK(IntPoly::q_integer(3, 2).c == Coeffs{1, 0, 1, 0, 1});
  CHECK(IntPoly::monomial(0, 5).is_zero());
  CHECK(IntPoly({1, 2, 0, 0}).degree() == 1);
  CHECK((IntPoly({1, 1}) - IntPoly({1, 1})).is_zero());
  CHECK(exact_divide(IntPoly::one_minus(6), IntPoly::one_minus(2)) == IntPoly({1, 0, 1, 0, 1}));
  CHECK(TruncatedSeries(IntPoly({1, 2, 3}), 1).coeffs == Coeffs{1, 2});
  CHECK(TruncatedSeries(2).top_degree() == -1);
}
