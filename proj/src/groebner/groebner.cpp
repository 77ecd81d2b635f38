#include "frobpow/groebner.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "../common/parallel.hpp"
#include "frobpow/error.hpp"

namespace frobpow {

namespace {

class PowerCache {
 public:
  explicit PowerCache(const std::vector<Polynomial>& base) : base_(base), cache_(base.size()) {}

  const Polynomial& get(std::size_t i, std::uint32_t k) {
    auto it = cache_[i].find(k);
    if (it == cache_[i].end()) it = cache_[i].emplace(k, base_[i].pow(k)).first;
    return it->second;
  }

  Polynomial monomial(const Monomial& c, FieldElem coef) {
    const Field& f = base_.front().field();
    Polynomial t = Polynomial::constant(f, base_.front().arity(), coef);
    for (std::size_t i = 0; i < c.exps.size(); ++i) {
      if (c.exps[i] != 0) t = t * get(i, c.exps[i]);
    }
    return t;
  }

 private:
  const std::vector<Polynomial>& base_;
  std::vector<std::map<std::uint32_t, Polynomial>> cache_;
};

Polynomial s_polynomial(const Polynomial& a, const Polynomial& b, const MonomialOrder& order) {
  const Field& f = a.field();
  const auto [ma, ca] = a.leading_term(order);
  const auto [mb, cb] = b.leading_term(order);
  const Monomial L = lcm(ma, mb);
  return a.times_term(L / ma, f.inv(ca)) - b.times_term(L / mb, f.inv(cb));
}

Polynomial monic(const Polynomial& p, const MonomialOrder& order) {
  return p.scaled(p.field().inv(p.leading_term(order).second));
}

Polynomial fmono(const Field& f, std::vector<std::uint32_t> c, std::int64_t coef = 1) {
  return Polynomial::term(f, Monomial(std::move(c)), f.from_int(coef));
}

Polynomial dot(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b) {
  Polynomial out(b.front().field(), b.front().arity());
  for (std::size_t i = 0; i < a.size(); ++i) out += a[i] * b[i];
  return out;
}

}  // namespace

FPoly subduct(const Polynomial& f, const BasicInvariants& basic) {
  const std::size_t n = basic.size();
  if (f.arity() != n) throw std::invalid_argument("subduct: arity mismatch");
  const MonomialOrder xorder = MonomialOrder::grlex(n);
  PowerCache powers(basic.polys);
  Polynomial F(f.field(), n);
  Polynomial rest = f;
  while (!rest.is_zero()) {
    const auto [M, c] = rest.leading_term(xorder);
    Monomial cexp(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (M.exps[i] % basic.weights[i] != 0) {
        throw std::domain_error("not in S^G: leading monomial " +
                                Polynomial::term(f.field(), M, f.field().one()).to_string(xorder) +
                                " is not a product of leading monomials of the f_i");
      }
      cexp.exps[i] = static_cast<std::uint32_t>(M.exps[i] / basic.weights[i]);
    }
    rest -= powers.monomial(cexp, c);
    F.add_term(cexp, c);
  }
  return FPoly{std::move(F), basic.order()};
}

Polynomial expand(const FPoly& F, const BasicInvariants& basic) { return compose(F.poly, basic.polys); }

bool GroebnerCertificate::pass() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairCertificate& c) { return c.remainder.is_zero(); }) &&
         std::all_of(in_frobenius.begin(), in_frobenius.end(), [](bool b) { return b; }) &&
         std::all_of(closed_form.begin(), closed_form.end(), [](bool b) { return b; });
}

GroebnerCertificate buchberger_check(const Group& group, const BasicInvariants& basic, const HGenerators& hgens,
                                     unsigned jobs) {
  const MonomialOrder order = basic.order();
  const std::vector<Polynomial> fpolys = hgens.f_polys();
  GroebnerCertificate cert;
  for (const auto& h : hgens.list) {
    cert.labels.push_back(h.label());
    cert.in_frobenius.push_back(reduce_mod_frobenius(h.xpoly, hgens.Q).is_zero());
    cert.closed_form.push_back(h.xpoly == h_closed_form(group, h, hgens.Q));
  }
  for (std::size_t i = 0; i < fpolys.size(); ++i) {
    for (std::size_t j = i + 1; j < fpolys.size(); ++j) {
      PairCertificate c;
      c.i = i;
      c.j = j;
      c.coprime_leading = coprime(fpolys[i].leading_monomial(order), fpolys[j].leading_monomial(order));
      cert.pairs.push_back(std::move(c));
    }
  }
  detail::parallel_for(cert.pairs.size(), jobs, [&](std::size_t k) {
    auto& c = cert.pairs[k];
    c.remainder = divide(s_polynomial(fpolys[c.i], fpolys[c.j], order), fpolys, order).remainder;
  });
  return cert;
}

bool in_h_ideal(const Polynomial& F, const HGenerators& hgens, const MonomialOrder& order) {
  const auto fpolys = hgens.f_polys();
  return divide(F, fpolys, order).remainder.is_zero();
}

std::vector<Polynomial> reduced_groebner_basis(std::vector<Polynomial> gens, const MonomialOrder& order) {
  std::vector<Polynomial> G;
  for (auto& g : gens) {
    if (!g.is_zero()) G.push_back(monic(g, order));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < G.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  }
  while (!pairs.empty()) {
    const auto [i, j] = pairs.back();
    pairs.pop_back();
    if (coprime(G[i].leading_monomial(order), G[j].leading_monomial(order))) continue;
    Polynomial r = divide(s_polynomial(G[i], G[j], order), G, order).remainder;
    if (r.is_zero()) continue;
    G.push_back(monic(r, order));
    for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.emplace_back(k, G.size() - 1);
  }
  // Minimalize: drop elements whose leading monomial is a multiple of another's.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const Monomial lm = G[i].leading_monomial(order);
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial other = G[j].leading_monomial(order);
      if (other.divides(lm) && (other != lm || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    const auto [lm, lc] = minimal[i].leading_term(order);
    Polynomial tail = minimal[i];
    tail -= Polynomial::term(tail.field(), lm, lc);
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    Polynomial reduced = others.empty() ? tail : divide(tail, others, order).remainder;
    reduced += Polynomial::term(tail.field(), lm, lc);
    minimal[i] = std::move(reduced);
  }
  std::sort(minimal.begin(), minimal.end(), [&order](const Polynomial& a, const Polynomial& b) {
    return order.less(b.leading_monomial(order), a.leading_monomial(order));
  });
  return minimal;
}

CompletionReport buchberger_complete(const Group& group, const BasicInvariants& basic, const HGenerators& hgens,
                                     std::uint64_t max_fmonomials) {
  const MonomialOrder order = basic.order();
  const Field& field = group.field;
  const std::size_t n = basic.size();
  std::uint64_t top = 0;
  for (const auto& h : hgens.list) top = std::max(top, order.weighted_degree(h.fpoly.leading_monomial(order)));

  // f-monomials of weighted degree 1 .. top, bucketed by degree.
  std::vector<std::vector<Monomial>> buckets(top + 1);
  std::uint64_t count = 0;
  Monomial c(n);
  while (true) {
    const std::uint64_t d = order.weighted_degree(c);
    if (d <= top) {
      if (d > 0) {
        if (++count > max_fmonomials) {
          throw CapExceeded("kernel enumeration exceeds the f-monomial cap", count, max_fmonomials);
        }
        buckets[d].push_back(c);
      }
    }
    std::size_t i = 0;
    for (; i < n; ++i) {
      ++c.exps[i];
      if (order.weighted_degree(c) <= top) break;
      c.exps[i] = 0;
    }
    if (i == n) break;
  }

  PowerCache powers(basic.polys);
  CompletionReport rep;
  std::vector<Polynomial> kernel;
  for (std::size_t d = 1; d <= top; ++d) {
    const auto& monos = buckets[d];
    if (monos.empty()) continue;
    std::vector<Polynomial> images;
    std::map<Monomial, std::size_t> rows;
    for (const auto& mono : monos) {
      images.push_back(reduce_mod_frobenius(powers.monomial(mono, field.one()), hgens.Q));
      for (const auto& [xm, v] : images.back().terms()) rows.emplace(xm, 0);
    }
    std::size_t next = 0;
    for (auto& [xm, r] : rows) r = next++;
    MatrixFq mat(rows.size(), monos.size());
    for (std::size_t k = 0; k < monos.size(); ++k) {
      for (const auto& [xm, v] : images[k].terms()) mat.at(rows[xm], k) = v;
    }
    const auto null = rows.empty() ? std::vector<VectorFq>{} : nullspace(field, mat);
    if (rows.empty()) {
      for (const auto& mono : monos) kernel.push_back(Polynomial::term(field, mono, field.one()));
    }
    for (const auto& v : null) {
      Polynomial k(field, n);
      for (std::size_t j = 0; j < monos.size(); ++j) k.add_term(monos[j], v[j]);
      kernel.push_back(std::move(k));
    }
  }
  rep.kernel_generators = kernel.size();
  rep.from_kernel = reduced_groebner_basis(std::move(kernel), order);
  rep.from_h = reduced_groebner_basis(hgens.f_polys(), order);
  return rep;
}

TruncatedSeries initial_ideal_hilbert(const std::vector<Monomial>& lms, const std::vector<std::uint64_t>& weights,
                                      std::size_t D) {
  if (lms.size() > 24) throw std::invalid_argument("initial_ideal_hilbert: too many generators");
  const MonomialOrder order(weights);
  IntPoly num;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << lms.size()); ++mask) {
    Monomial L(weights.size());
    int sign = 1;
    for (std::size_t i = 0; i < lms.size(); ++i) {
      if (mask >> i & 1) {
        L = lcm(L, lms[i]);
        sign = -sign;
      }
    }
    const std::uint64_t deg = order.weighted_degree(L);
    if (deg <= D) num = num + IntPoly::monomial(sign, deg);
  }
  return expand(RationalExpr{num, weights}, D);
}

bool ResolutionReport::pass() const {
  const bool syz = std::all_of(syzygies.begin(), syzygies.end(), [](const SyzygyCheck& s) { return s.vanishes; });
  const bool closed = ell != 0 || closed_form == ideal;
  return syz && redundancy_ok && resolution == ideal && closed;
}

ResolutionReport resolution_2d(std::uint64_t p, unsigned m, std::uint64_t e, unsigned ell,
                               const BruteForceOptions& opts) {
  if (ell > 1) throw SpecError("resolution2d needs ell = 0 or ell = 1");
  if (m < 1) throw SpecError("m must be >= 1");
  const GroupSpec spec{p, 1, 2, ell, e, false};
  const Group group = build_group(spec);
  const BasicInvariants basic = basic_invariants(group);
  const MonomialOrder order = basic.order();
  const Field& f = group.field;
  const std::uint64_t Q = ipow(p, m);
  const std::uint64_t E = (Q - 1) / e;
  const auto u32 = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };

  ResolutionReport rep;
  rep.p = p;
  rep.m = m;
  rep.e = e;
  rep.ell = ell;
  rep.D = 2 * Q + e;
  const Polynomial zero(f, 2);

  // Shifts of F_0 and F_1, read off from the actual generator and syzygy degrees.
  std::vector<std::uint64_t> f0, f1;
  auto syzygy_degree = [&](const std::vector<Polynomial>& tau) {
    for (std::size_t i = 0; i < tau.size(); ++i) {
      if (!tau[i].is_zero()) {
        return order.weighted_degree(tau[i].leading_monomial(order)) +
               order.weighted_degree(rep.generators[i].leading_monomial(order));
      }
    }
    throw std::logic_error("zero syzygy");
  };
  auto add_syzygy = [&](std::string label, std::vector<Polynomial> tau, bool in_resolution) {
    const bool vanishes = dot(tau, rep.generators).is_zero();
    if (in_resolution) f1.push_back(syzygy_degree(tau));
    rep.syzygies.push_back({std::move(label), std::move(tau), vanishes});
  };

  if (ell == 1) {
    const HGenerators hg = h_generators(group, basic, m);
    for (const auto& h : hg.list) {
      rep.generator_labels.push_back(h.label());
      rep.generators.push_back(h.fpoly);
    }
    std::vector<Polynomial> A;
    for (unsigned k = 0; k < m; ++k) A.push_back(fmono(f, {u32(ipow(p, m - k - 1)), u32((Q - ipow(p, m - k)) / e)}));
    Polynomial R(f, 2);
    for (unsigned k = 1; k < m; ++k) R += A[k];
    const Polynomial fE = fmono(f, {0, u32(E)});
    const auto div = divide(R * R, std::vector<Polynomial>{fE}, order);
    if (!div.remainder.is_zero()) throw std::logic_error("R^2 is not divisible by f_2^{(Q-1)/e}");
    const std::vector<Polynomial> tau01{-(A[0] + R), fE, zero};
    const std::vector<Polynomial> tau12{-div.quotients[0], R - A[0], fmono(f, {0, 1})};
    const std::vector<Polynomial> tau02{rep.generators[2], zero, -rep.generators[0]};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!((R - A[0]) * tau01[i] - fE * tau12[i] == tau02[i])) rep.redundancy_ok = false;
    }
    add_syzygy("tau_0_1", tau01, true);
    add_syzygy("tau_1_2", tau12, true);
    add_syzygy("tau_0_2", tau02, false);
  } else {
    rep.generator_labels = {"h", "h'"};
    rep.generators = {fmono(f, {u32(Q), 0}), fmono(f, {0, u32(1 + E)})};
    add_syzygy("tau", {rep.generators[1], -rep.generators[0]}, true);
    IntPoly num = IntPoly::monomial(1, Q) + IntPoly::monomial(1, Q + e - 1) - IntPoly::monomial(1, 2 * Q + e - 1);
    rep.closed_form = expand(RationalExpr{num, {e, 1}}, rep.D);
  }
  for (const auto& g : rep.generators) f0.push_back(order.weighted_degree(g.leading_monomial(order)));

  IntPoly num;
  for (auto d : f0) num = num + IntPoly::monomial(1, d);
  for (auto d : f1) num = num - IntPoly::monomial(1, d);
  rep.resolution = expand(RationalExpr{num, basic.weights}, rep.D);

  const HilbertFunction a = a_space_dims(spec, m, opts);
  TruncatedSeries ideal = expand(RationalExpr{IntPoly::constant(1), basic.weights}, rep.D);
  for (std::size_t d = 0; d < a.dims.size() && d <= rep.D; ++d) ideal.coeffs[d] -= static_cast<std::int64_t>(a.dims[d]);
  rep.ideal = std::move(ideal);
  return rep;
}

}  // namespace frobpow
