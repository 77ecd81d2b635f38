#include <doctest.h>

#include "frobpow/groebner.hpp"
#include "gen.hpp"

using namespace frobpow;

namespace {

const GroupSpec kSpecs[] = {
    {2, 1, 2, 1, 1, false}, {3, 1, 2, 1, 2, false}, {5, 1, 3, 2, 4, false},
    {2, 1, 3, 2, 1, false}, {2, 2, 2, 0, 0, true},  {5, 1, 2, 0, 2, false},
};

// Random f-polynomial whose terms have weighted degree at most max_wdeg.
Polynomial fpoly(const Field& f, const MonomialOrder& order, std::size_t n, std::uint64_t max_wdeg,
                 std::size_t max_terms, gen::Rng& rng) {
  Polynomial out(f, n);
  const std::size_t terms = rng.range(1, max_terms);
  for (std::size_t k = 0; k < terms; ++k) {
    Monomial m = gen::monomial(n, 6, rng);
    while (order.weighted_degree(m) > max_wdeg) {
      std::size_t i = rng.below(n);
      while (m.exps[i] == 0) i = (i + 1) % n;
      --m.exps[i];
    }
    out.add_term(m, gen::nonzero(f, rng));
  }
  return out;
}

}  // namespace

TEST_SUITE("subduction round-trip") {
  TEST_CASE("subduct inverts expand") {
    gen::Rng rng(301);
    std::size_t lm_checks = 0;
    for (const auto& spec : kSpecs) {
      const Group g = build_group(spec);
      const BasicInvariants basic = basic_invariants(g);
      const MonomialOrder order = basic.order();
      for (int t = 0; t < 40; ++t) {
        const FPoly F{fpoly(g.field, order, spec.n, 30, 4, rng), order};
        const Polynomial x = expand(F, basic);
        const FPoly back = subduct(x, basic);
        CHECK(back.poly == F.poly);
        // LM(expand F) is LM(F) with f_i replaced by x_i^{w_i}.
        if (!F.poly.is_zero()) {
          const Monomial lf = F.poly.leading_monomial(order);
          Monomial lx(spec.n);
          for (std::size_t i = 0; i < spec.n; ++i) {
            lx.exps[i] = lf.exps[i] * static_cast<std::uint32_t>(basic.weights[i]);
          }
          CHECK(x.leading_monomial(MonomialOrder::grlex(spec.n)) == lx);
          ++lm_checks;
        }
      }
    }
    CHECK(lm_checks >= 100);
  }

  TEST_CASE("non-invariants and arity mismatches are rejected") {
    const Group g = build_group({3, 1, 2, 1, 2, false});
    const BasicInvariants basic = basic_invariants(g);
    const auto x1 = Polynomial::variable(g.field, 2, 0);
    CHECK_THROWS_AS(subduct(x1, basic), std::domain_error);
    CHECK_THROWS_AS(subduct(x1 * x1 + Polynomial::variable(g.field, 2, 1), basic), std::domain_error);
    CHECK_THROWS_AS(subduct(Polynomial::variable(g.field, 3, 0), basic), std::invalid_argument);
    CHECK(subduct(Polynomial(g.field, 2), basic).poly.is_zero());
    const FPoly bad{Polynomial::variable(g.field, 3, 0), MonomialOrder::grlex(3)};
    CHECK_THROWS_AS(expand(bad, basic), std::invalid_argument);
  }
}

TEST_SUITE("ideal membership") {
  TEST_CASE("in_h_ideal agrees with the Frobenius kernel test") {
    gen::Rng rng(303);
    std::size_t members = 0, non_members = 0;
    for (const auto& spec : kSpecs) {
      if (spec.validated().ell + 1 != spec.n && !spec.full_stabilizer) continue;
      for (unsigned m : {1u, 2u}) {
        const Group g = build_group(spec);
        const BasicInvariants basic = basic_invariants(g);
        const MonomialOrder order = basic.order();
        const HGenerators h = h_generators(g, basic, m);
        for (int t = 0; t < 40; ++t) {
          Polynomial F(g.field, spec.n);
          for (const auto& hg : h.list) {
            if (rng.coin()) F += hg.fpoly * fpoly(g.field, order, spec.n, 12, 2, rng);
          }
          CHECK(in_h_ideal(F, h, order));
          CHECK(reduce_mod_frobenius(expand({F, order}, basic), h.Q).is_zero());
          ++members;

          const Polynomial G = fpoly(g.field, order, spec.n, 3 * h.Q, 3, rng);
          const bool kernel = reduce_mod_frobenius(expand({G, order}, basic), h.Q).is_zero();
          CHECK(in_h_ideal(G, h, order) == kernel);
          if (!kernel) ++non_members;
        }
      }
    }
    CHECK(members >= 200);
    CHECK(non_members >= 200);
  }
}
