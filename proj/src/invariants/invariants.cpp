#include "frobpow/invariants.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "../common/parallel.hpp"
#include "frobpow/error.hpp"
#include "frobpow/qseries.hpp"

namespace frobpow {

namespace {

using SparseVec = std::vector<std::pair<std::uint32_t, FieldElem>>;

// Dense mixed-radix index of the monomials x^a with all a_i < Q. The code
// of a is sum_i a_i Q^{n-1-i}, so ascending codes are lex order with x_1
// most significant.
class QuotientIndex {
 public:
  QuotientIndex(unsigned n, std::uint64_t Q, std::uint64_t cap) : n_(n), Q_(Q) {
    std::uint64_t total = 1;
    for (unsigned i = 0; i < n; ++i) {
      if (__builtin_mul_overflow(total, Q, &total)) total = UINT64_MAX;
    }
    if (total > cap) throw CapExceeded("quotient basis exceeds the monomial cap", total, cap);
    total_ = total;
    radix_.assign(n, 1);
    for (unsigned i = n; i-- > 1;) radix_[i - 1] = radix_[i] * Q;
    exps_.assign(total_ * n, 0);
    local_.assign(total_, 0);
    by_degree_.assign(static_cast<std::size_t>(n) * (Q - 1) + 1, {});
    std::vector<std::uint32_t> digits(n, 0);
    std::uint64_t deg = 0;
    for (std::uint64_t code = 0; code < total_; ++code) {
      std::copy(digits.begin(), digits.end(), exps_.begin() + static_cast<std::ptrdiff_t>(code * n));
      local_[code] = static_cast<std::uint32_t>(by_degree_[deg].size());
      by_degree_[deg].push_back(static_cast<std::uint32_t>(code));
      for (unsigned i = n; i-- > 0;) {
        if (++digits[i] < Q) {
          ++deg;
          break;
        }
        deg -= digits[i] - 1;
        digits[i] = 0;
      }
    }
  }

  unsigned n() const noexcept { return n_; }
  std::uint64_t Q() const noexcept { return Q_; }
  std::uint64_t total() const noexcept { return total_; }
  std::size_t max_degree() const noexcept { return by_degree_.size() - 1; }
  const std::uint32_t* exps(std::uint32_t code) const noexcept { return exps_.data() + std::size_t{code} * n_; }
  std::uint32_t local(std::uint32_t code) const noexcept { return local_[code]; }
  const std::vector<std::uint32_t>& degree(std::size_t d) const { return by_degree_.at(d); }
  std::uint64_t radix(unsigned i) const noexcept { return radix_[i]; }

  /// Code of a monomial given by exponents, or -1 when some exponent >= Q.
  std::int64_t code_of(const std::vector<std::uint32_t>& e) const {
    std::uint64_t c = 0;
    for (unsigned i = 0; i < n_; ++i) {
      if (e[i] >= Q_) return -1;
      c += e[i] * radix_[i];
    }
    return static_cast<std::int64_t>(c);
  }

  Monomial monomial(std::uint32_t code) const {
    const auto* e = exps(code);
    return Monomial(std::vector<std::uint32_t>(e, e + n_));
  }

 private:
  unsigned n_;
  std::uint64_t Q_;
  std::uint64_t total_ = 0;
  std::vector<std::uint64_t> radix_;
  std::vector<std::uint32_t> exps_;
  std::vector<std::uint32_t> local_;
  std::vector<std::vector<std::uint32_t>> by_degree_;
};

// Scatter-gather accumulator over codes.
class Accumulator {
 public:
  explicit Accumulator(std::uint64_t total) : dense_(total), mark_(total, 0) {}

  void add(const Field& f, std::uint32_t code, FieldElem c) {
    if (!mark_[code]) {
      mark_[code] = 1;
      touched_.push_back(code);
    }
    dense_[code] = f.add(dense_[code], c);
  }

  SparseVec extract() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec out;
    out.reserve(touched_.size());
    for (auto code : touched_) {
      if (dense_[code].code != 0) out.emplace_back(code, dense_[code]);
      dense_[code] = FieldElem{};
      mark_[code] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<FieldElem> dense_;
  std::vector<std::uint8_t> mark_;
  std::vector<std::uint32_t> touched_;
};

SparseVec mul_reduce(const Field& f, const QuotientIndex& idx, const SparseVec& a, const SparseVec& b,
                     Accumulator& acc) {
  const unsigned n = idx.n();
  const std::uint64_t Q = idx.Q();
  for (const auto& [ca, va] : a) {
    const auto* ea = idx.exps(ca);
    for (const auto& [cb, vb] : b) {
      const auto* eb = idx.exps(cb);
      bool fits = true;
      for (unsigned i = 0; i < n; ++i) {
        if (ea[i] + eb[i] >= Q) {
          fits = false;
          break;
        }
      }
      if (fits) acc.add(f, ca + cb, f.mul(va, vb));
    }
  }
  return acc.extract();
}

// How one matrix acts on the monomial basis, through its inverse.
struct Action {
  bool identity = false;
  bool diagonal = false;
  std::vector<FieldElem> diag;                 // diagonal of g^{-1}
  std::vector<bool> plain;                     // row j of g^{-1} is a multiple of e_j
  std::vector<std::vector<SparseVec>> powers;  // [j][a] = (row j of g^{-1} . x)^a, non-plain rows only
  std::vector<std::vector<FieldElem>> diag_pow;  // [j][a] = diag[j]^a
};

Action make_action(const Field& f, const QuotientIndex& idx, const MatrixFq& g) {
  const unsigned n = idx.n();
  const std::uint64_t Q = idx.Q();
  const MatrixFq ginv = inverse(f, g);
  Action act;
  act.identity = ginv == MatrixFq::identity(n);
  act.diag.resize(n);
  act.plain.assign(n, true);
  act.diagonal = true;
  for (unsigned j = 0; j < n; ++j) {
    act.diag[j] = ginv.at(j, j);
    for (unsigned i = 0; i < n; ++i) {
      if (i != j && ginv.at(j, i).code != 0) {
        act.plain[j] = false;
        act.diagonal = false;
      }
    }
  }
  act.diag_pow.assign(n, {});
  for (unsigned j = 0; j < n; ++j) {
    act.diag_pow[j].resize(Q);
    FieldElem c = f.one();
    for (std::uint64_t a = 0; a < Q; ++a) {
      act.diag_pow[j][a] = c;
      c = f.mul(c, act.diag[j]);
    }
  }
  act.powers.assign(n, {});
  Accumulator acc(idx.total());
  for (unsigned j = 0; j < n; ++j) {
    if (act.plain[j]) continue;
    SparseVec lin;
    for (unsigned i = 0; i < n; ++i) {
      if (ginv.at(j, i).code != 0) lin.emplace_back(static_cast<std::uint32_t>(idx.radix(i)), ginv.at(j, i));
    }
    std::sort(lin.begin(), lin.end());
    auto& pw = act.powers[j];
    pw.reserve(Q);
    pw.push_back(SparseVec{{0u, f.one()}});
    for (std::uint64_t a = 1; a < Q; ++a) pw.push_back(mul_reduce(f, idx, pw.back(), lin, acc));
  }
  return act;
}

// g . x^a, reduced.
SparseVec apply(const Field& f, const QuotientIndex& idx, const Action& act, std::uint32_t code, Accumulator& acc) {
  const unsigned n = idx.n();
  const auto* e = idx.exps(code);
  std::uint32_t base = 0;
  FieldElem coef = f.one();
  for (unsigned j = 0; j < n; ++j) {
    if (!act.plain[j]) continue;
    base += static_cast<std::uint32_t>(e[j] * idx.radix(j));
    coef = f.mul(coef, act.diag_pow[j][e[j]]);
  }
  SparseVec cur{{base, coef}};
  for (unsigned j = 0; j < n; ++j) {
    if (act.plain[j] || e[j] == 0) continue;
    cur = mul_reduce(f, idx, cur, act.powers[j][e[j]], acc);
    if (cur.empty()) break;
  }
  return cur;
}

struct FixedSpaceSetup {
  std::vector<Action> diagonal;
  std::vector<Action> general;
  std::vector<bool> inert;  // exponent preserved by every generator
};

FixedSpaceSetup setup_actions(const Field& f, const QuotientIndex& idx, const std::vector<GroupElement>& gens) {
  FixedSpaceSetup s;
  const unsigned n = idx.n();
  s.inert.assign(n, true);
  for (const auto& g : gens) {
    if (g.rows != n || g.cols != n) throw std::invalid_argument("generator has the wrong dimension");
    Action a = make_action(f, idx, g);
    if (a.identity) continue;
    if (a.diagonal) {
      s.diagonal.push_back(std::move(a));
      continue;
    }
    const MatrixFq ginv = inverse(f, g);
    for (unsigned j = 0; j < n; ++j) {
      for (unsigned i = 0; i < n; ++i) {
        if (i != j && (ginv.at(j, i).code != 0 || ginv.at(i, j).code != 0)) s.inert[j] = false;
      }
    }
    s.general.push_back(std::move(a));
  }
  return s;
}

bool diag_fixed(const Field& f, const QuotientIndex& idx, const FixedSpaceSetup& s, std::uint32_t code) {
  const auto* e = idx.exps(code);
  for (const auto& a : s.diagonal) {
    FieldElem c = f.one();
    for (unsigned j = 0; j < idx.n(); ++j) c = f.mul(c, a.diag_pow[j][e[j]]);
    if (c != f.one()) return false;
  }
  return true;
}

std::uint64_t inert_key(const QuotientIndex& idx, const FixedSpaceSetup& s, std::uint32_t code) {
  const auto* e = idx.exps(code);
  std::uint64_t key = 0;
  for (unsigned j = 0; j < idx.n(); ++j) {
    if (s.inert[j]) key = key * idx.Q() + e[j];
  }
  return key;
}

// Nullity of the stacked (g - 1) maps restricted to the given columns, all of
// one degree and one inert block.
std::uint64_t block_nullity(const Field& f, const QuotientIndex& idx, const FixedSpaceSetup& s,
                            const std::vector<std::uint32_t>& cols, Accumulator& acc) {
  const std::size_t G = s.general.size();
  std::vector<std::vector<SparseVec>> images(cols.size(), std::vector<SparseVec>(G));
  std::map<std::uint32_t, std::uint32_t> pos;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t g = 0; g < G; ++g) {
      SparseVec img = apply(f, idx, s.general[g], cols[c], acc);
      // Subtract x^a itself.
      auto it = std::lower_bound(img.begin(), img.end(), std::make_pair(cols[c], FieldElem{}),
                                 [](const auto& x, const auto& y) { return x.first < y.first; });
      if (it != img.end() && it->first == cols[c]) {
        it->second = f.sub(it->second, f.one());
        if (it->second.code == 0) img.erase(it);
      } else {
        img.insert(it, {cols[c], f.neg(f.one())});
      }
      for (const auto& t : img) pos.emplace(t.first, 0);
      images[c][g] = std::move(img);
    }
  }
  std::uint32_t next = 0;
  for (auto& [code, p] : pos) p = next++;
  const std::size_t W = pos.size();
  if (W == 0) return cols.size();
  EchelonBasis eb(f, G * W);
  std::vector<std::pair<std::size_t, FieldElem>> entries;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    entries.clear();
    for (std::size_t g = 0; g < G; ++g) {
      for (const auto& [code, v] : images[c][g]) entries.emplace_back(g * W + pos[code], v);
    }
    eb.insert_sparse(entries);
  }
  return cols.size() - eb.rank();
}

// Reduced expansions of successive powers of a polynomial, up to the first
// power that vanishes modulo (x_i^Q). The list always holds the 0th power.
std::vector<SparseVec> power_table(const Field& f, const QuotientIndex& idx, const Polynomial& p, Accumulator& acc) {
  SparseVec base;
  for (const auto& [m, c] : p.terms()) {
    const std::int64_t code = idx.code_of(m.exps);
    if (code >= 0) base.emplace_back(static_cast<std::uint32_t>(code), c);
  }
  std::sort(base.begin(), base.end());
  std::vector<SparseVec> out{SparseVec{{0u, f.one()}}};
  while (out.size() <= idx.Q()) {
    SparseVec next = mul_reduce(f, idx, out.back(), base, acc);
    if (next.empty()) break;
    out.push_back(std::move(next));
  }
  return out;
}

// Spanning vectors of A_G and B_G, bucketed by degree.
class SpanningSets {
 public:
  SpanningSets(const GroupSpec& spec, unsigned m, const BruteForceOptions& opts)
      : group_(build_group(spec)),
        basic_(basic_invariants(group_)),
        idx_(group_.spec.n, ipow(group_.spec.q(), m), opts.max_monomials) {
    Accumulator acc(idx_.total());
    for (const auto& fpoly : basic_.polys) powers_.push_back(power_table(group_.field, idx_, fpoly, acc));
  }

  const Group& group() const noexcept { return group_; }
  const QuotientIndex& index() const noexcept { return idx_; }

  /// Exponent tuples c of f-monomials whose expansion is nonzero, by degree.
  /// `last` selects whether f_n takes part.
  std::vector<std::vector<std::vector<std::uint32_t>>> f_tuples(bool last) const {
    const unsigned n = idx_.n();
    const unsigned k = last ? n : n - 1;
    std::vector<std::vector<std::vector<std::uint32_t>>> out(idx_.max_degree() + 1);
    std::vector<std::uint32_t> c(n, 0);
    while (true) {
      std::uint64_t d = 0;
      for (unsigned i = 0; i < k; ++i) d += basic_.weights[i] * c[i];
      if (d <= idx_.max_degree()) out[d].push_back(c);
      unsigned i = 0;
      for (; i < k; ++i) {
        if (++c[i] < powers_[i].size()) break;
        c[i] = 0;
      }
      if (i == k) break;
    }
    return out;
  }

  SparseVec f_monomial(const std::vector<std::uint32_t>& c, Accumulator& acc) const {
    const Field& f = group_.field;
    SparseVec cur{{0u, f.one()}};
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      cur = mul_reduce(f, idx_, cur, powers_[i][c[i]], acc);
      if (cur.empty()) break;
    }
    return cur;
  }

  /// Seeds x_1^{a_1} .. x_ell^{a_ell} x_n^{Q-1} with a_i < s and sum >= 2,
  /// as (degree, code).
  std::vector<std::pair<std::size_t, std::uint32_t>> b_seeds() const {
    const unsigned n = idx_.n();
    const unsigned ell = group_.spec.ell;
    const std::uint64_t s = group_.spec.transvection_degree();
    std::vector<std::pair<std::size_t, std::uint32_t>> out;
    std::vector<std::uint32_t> a(n, 0);
    a[n - 1] = static_cast<std::uint32_t>(idx_.Q() - 1);
    if (ell == 0) return out;
    while (true) {
      std::uint64_t sum = 0;
      for (unsigned i = 0; i < ell; ++i) sum += a[i];
      if (sum >= 2) {
        out.emplace_back(sum + idx_.Q() - 1, static_cast<std::uint32_t>(idx_.code_of(a)));
      }
      unsigned i = 0;
      for (; i < ell; ++i) {
        if (++a[i] < s) break;
        a[i] = 0;
      }
      if (i == ell) break;
    }
    return out;
  }

  std::vector<SparseVec> a_vectors(std::size_t d, const std::vector<std::vector<std::uint32_t>>& tuples,
                                   Accumulator& acc) const {
    (void)d;
    std::vector<SparseVec> out;
    for (const auto& c : tuples) {
      SparseVec v = f_monomial(c, acc);
      if (!v.empty()) out.push_back(std::move(v));
    }
    return out;
  }

  std::vector<SparseVec> b_vectors(std::size_t d, const std::vector<std::vector<std::vector<std::uint32_t>>>& tuples,
                                   const std::vector<std::pair<std::size_t, std::uint32_t>>& seeds,
                                   Accumulator& acc) const {
    std::vector<SparseVec> out;
    const Field& f = group_.field;
    for (const auto& [sd, code] : seeds) {
      if (sd > d) continue;
      const std::size_t rest = d - sd;
      if (rest >= tuples.size()) continue;
      const SparseVec seed{{code, f.one()}};
      for (const auto& c : tuples[rest]) {
        SparseVec v = mul_reduce(f, idx_, f_monomial(c, acc), seed, acc);
        if (!v.empty()) out.push_back(std::move(v));
      }
    }
    return out;
  }

  bool seeds_invariant() const {
    const Field& f = group_.field;
    Accumulator acc(idx_.total());
    for (const auto& g : group_.generators) {
      const Action act = make_action(f, idx_, g);
      for (const auto& [d, code] : b_seeds()) {
        const SparseVec img = apply(f, idx_, act, code, acc);
        if (img.size() != 1 || img[0].first != code || img[0].second != f.one()) return false;
      }
    }
    return true;
  }

 private:
  Group group_;
  BasicInvariants basic_;
  QuotientIndex idx_;
  std::vector<std::vector<SparseVec>> powers_;
};

std::size_t rank_of(const Field& f, const QuotientIndex& idx, std::size_t d, const std::vector<SparseVec>& vecs,
                    EchelonBasis& eb) {
  std::vector<std::pair<std::size_t, FieldElem>> entries;
  for (const auto& v : vecs) {
    entries.clear();
    for (const auto& [code, c] : v) entries.emplace_back(idx.local(code), c);
    eb.insert_sparse(entries);
  }
  (void)f;
  (void)d;
  return eb.rank();
}

Polynomial monomial_power(const Field& f, unsigned n, unsigned i, std::uint64_t k) {
  Monomial m(n);
  m.exps[i] = static_cast<std::uint32_t>(k);
  return Polynomial::term(f, std::move(m), f.one());
}

}  // namespace

// ---------------------------------------------------------------------------

BasicInvariants basic_invariants(const Group& group) {
  const GroupSpec& spec = group.spec;
  const Field& f = group.field;
  const unsigned n = spec.n;
  const std::uint64_t s = spec.transvection_degree();
  BasicInvariants out;
  for (unsigned i = 0; i + 1 < n; ++i) {
    if (i < spec.ell) {
      Monomial lower(n);
      lower.exps[i] = 1;
      lower.exps[n - 1] = static_cast<std::uint32_t>(s - 1);
      Polynomial fi = monomial_power(f, n, i, s);
      fi.add_term(lower, f.neg(f.one()));
      out.polys.push_back(std::move(fi));
      out.weights.push_back(s);
    } else {
      out.polys.push_back(Polynomial::variable(f, n, i));
      out.weights.push_back(1);
    }
  }
  out.polys.push_back(monomial_power(f, n, n - 1, spec.e));
  out.weights.push_back(spec.e);
  for (const auto& g : group.generators) {
    for (std::size_t i = 0; i < out.polys.size(); ++i) {
      if (!(act(out.polys[i], g) == out.polys[i])) {
        throw std::logic_error("basic invariant f_" + std::to_string(i + 1) + " is not fixed by a generator");
      }
    }
  }
  return out;
}

std::string HGenerator::label() const {
  switch (kind) {
    case Kind::H0:
      return "h0";
    case Kind::H1:
      return "h1_" + std::to_string(a);
    case Kind::H2:
      return "h2_" + std::to_string(a) + "_" + std::to_string(b);
  }
  return "?";
}

std::vector<Polynomial> HGenerators::f_polys() const {
  std::vector<Polynomial> out;
  out.reserve(list.size());
  for (const auto& h : list) out.push_back(h.fpoly);
  return out;
}

HGenerators h_generators(const Group& group, const BasicInvariants& basic, unsigned m) {
  const GroupSpec& spec = group.spec;
  if (!spec.maximal_root_space()) {
    throw SpecError("h-generators need a maximal transvection root space (ell = n - 1) or the full stabilizer");
  }
  if (m < 1) throw SpecError("m must be >= 1");
  const Field& f = group.field;
  const unsigned n = spec.n;
  const std::uint64_t s = spec.transvection_degree();
  const std::uint64_t e = spec.e;
  const std::uint64_t Q = ipow(s, m);
  auto exact = [e](std::uint64_t v) {
    if (v % e != 0) throw std::logic_error("non-exact division by e in an h-generator exponent");
    return v / e;
  };
  auto fmono = [&](std::vector<std::uint32_t> c) { return Polynomial::term(f, Monomial(std::move(c)), f.one()); };

  HGenerators out;
  out.Q = Q;
  {
    std::vector<std::uint32_t> c(n, 0);
    c[n - 1] = static_cast<std::uint32_t>(1 + exact(Q - 1));
    out.list.push_back({HGenerator::Kind::H0, 0, 0, fmono(c), Polynomial(f, n)});
  }
  for (unsigned a = 1; a < n; ++a) {
    Polynomial h(f, n);
    for (unsigned k = 0; k < m; ++k) {
      std::vector<std::uint32_t> c(n, 0);
      c[n - 1] = static_cast<std::uint32_t>(1 + exact(Q - ipow(s, m - k)));
      c[a - 1] = static_cast<std::uint32_t>(ipow(s, m - k - 1));
      h += fmono(c);
    }
    out.list.push_back({HGenerator::Kind::H1, a, 0, std::move(h), Polynomial(f, n)});
  }
  for (unsigned a = 1; a < n; ++a) {
    for (unsigned b = a; b < n; ++b) {
      std::vector<std::uint32_t> c(n, 0);
      c[a - 1] += static_cast<std::uint32_t>(Q / s);
      c[b - 1] += static_cast<std::uint32_t>(Q / s);
      out.list.push_back({HGenerator::Kind::H2, a, b, fmono(c), Polynomial(f, n)});
    }
  }
  for (auto& h : out.list) h.xpoly = compose(h.fpoly, basic.polys);
  return out;
}

Polynomial h_closed_form(const Group& group, const HGenerator& h, std::uint64_t Q) {
  const Field& f = group.field;
  const unsigned n = group.spec.n;
  const std::uint64_t e = group.spec.e;
  const std::uint64_t s = group.spec.transvection_degree();
  auto mono = [&](std::vector<std::pair<unsigned, std::uint64_t>> parts, std::int64_t c) {
    Monomial m(n);
    for (auto [i, k] : parts) m.exps[i] += static_cast<std::uint32_t>(k);
    return Polynomial::term(f, std::move(m), f.from_int(c));
  };
  const unsigned last = n - 1;
  switch (h.kind) {
    case HGenerator::Kind::H0:
      return mono({{last, Q + e - 1}}, 1);
    case HGenerator::Kind::H1:
      return mono({{h.a - 1, Q}, {last, e}}, 1) + mono({{h.a - 1, 1}, {last, Q + e - 1}}, -1);
    case HGenerator::Kind::H2: {
      auto factor = [&](unsigned i) { return mono({{i, Q}}, 1) + mono({{i, Q / s}, {last, Q - Q / s}}, -1); };
      return factor(h.a - 1) * factor(h.b - 1);
    }
  }
  return Polynomial(f, n);
}

std::uint64_t HilbertFunction::total() const { return std::accumulate(dims.begin(), dims.end(), std::uint64_t{0}); }

HilbertFunction fixed_space_dims(const Field& field, unsigned n, std::uint64_t Q, const std::vector<GroupElement>& gens,
                                 const BruteForceOptions& opts) {
  const QuotientIndex idx(n, Q, opts.max_monomials);
  const FixedSpaceSetup setup = setup_actions(field, idx, gens);
  HilbertFunction hf;
  hf.dims.assign(idx.max_degree() + 1, 0);
  detail::parallel_for(hf.dims.size(), opts.jobs, [&](std::size_t d) {
    std::map<std::uint64_t, std::vector<std::uint32_t>> blocks;
    for (auto code : idx.degree(d)) {
      if (diag_fixed(field, idx, setup, code)) blocks[inert_key(idx, setup, code)].push_back(code);
    }
    if (setup.general.empty()) {
      std::uint64_t count = 0;
      for (const auto& [k, cols] : blocks) count += cols.size();
      hf.dims[d] = count;
      return;
    }
    Accumulator acc(idx.total());
    std::uint64_t nullity = 0;
    for (const auto& [k, cols] : blocks) nullity += block_nullity(field, idx, setup, cols, acc);
    hf.dims[d] = nullity;
  });
  return hf;
}

std::vector<std::vector<Polynomial>> fixed_space_basis(const Field& field, unsigned n, std::uint64_t Q,
                                                       const std::vector<GroupElement>& gens,
                                                       const BruteForceOptions& opts) {
  const QuotientIndex idx(n, Q, opts.max_monomials);
  std::vector<Action> actions;
  for (const auto& g : gens) {
    Action a = make_action(field, idx, g);
    if (!a.identity) actions.push_back(std::move(a));
  }
  std::vector<std::vector<Polynomial>> out(idx.max_degree() + 1);
  detail::parallel_for(out.size(), opts.jobs, [&](std::size_t d) {
    const auto& codes = idx.degree(d);
    const std::size_t N = codes.size();
    Accumulator acc(idx.total());
    MatrixFq m(actions.size() * N, N);
    for (std::size_t c = 0; c < N; ++c) {
      for (std::size_t g = 0; g < actions.size(); ++g) {
        for (const auto& [code, v] : apply(field, idx, actions[g], codes[c], acc)) {
          auto& slot = m.at(g * N + idx.local(code), c);
          slot = field.add(slot, v);
        }
        auto& diag = m.at(g * N + c, c);
        diag = field.sub(diag, field.one());
      }
    }
    for (const auto& v : nullspace(field, m)) {
      Polynomial p(field, n);
      for (std::size_t c = 0; c < N; ++c) p.add_term(idx.monomial(codes[c]), v[c]);
      out[d].push_back(std::move(p));
    }
  });
  return out;
}

HilbertFunction brute_force_hilbert(const GroupSpec& spec, unsigned m, const BruteForceOptions& opts) {
  if (m < 1) throw SpecError("m must be >= 1");
  const Group g = build_group(spec);
  return fixed_space_dims(g.field, g.spec.n, ipow(g.spec.q(), m), g.generators, opts);
}

HilbertFunction a_space_dims(const GroupSpec& spec, unsigned m, const BruteForceOptions& opts) {
  if (m < 1) throw SpecError("m must be >= 1");
  const SpanningSets sets(spec, m, opts);
  const auto& idx = sets.index();
  const Field& f = sets.group().field;
  const auto tuples = sets.f_tuples(true);
  HilbertFunction hf;
  hf.dims.assign(idx.max_degree() + 1, 0);
  detail::parallel_for(hf.dims.size(), opts.jobs, [&](std::size_t d) {
    Accumulator acc(idx.total());
    EchelonBasis eb(f, idx.degree(d).size());
    hf.dims[d] = rank_of(f, idx, d, sets.a_vectors(d, tuples[d], acc), eb);
  });
  return hf;
}

HilbertFunction b_space_dims(const GroupSpec& spec, unsigned m, const BruteForceOptions& opts) {
  if (m < 1) throw SpecError("m must be >= 1");
  const SpanningSets sets(spec, m, opts);
  const auto& idx = sets.index();
  const Field& f = sets.group().field;
  const auto tuples = sets.f_tuples(false);
  const auto seeds = sets.b_seeds();
  HilbertFunction hf;
  hf.dims.assign(idx.max_degree() + 1, 0);
  detail::parallel_for(hf.dims.size(), opts.jobs, [&](std::size_t d) {
    Accumulator acc(idx.total());
    EchelonBasis eb(f, idx.degree(d).size());
    hf.dims[d] = rank_of(f, idx, d, sets.b_vectors(d, tuples, seeds, acc), eb);
  });
  return hf;
}

bool DecompositionReport::pass() const {
  return b_seeds_invariant && !rows.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const DecompositionRow& r) { return r.ok(); });
}

DecompositionReport verify_decomposition(const GroupSpec& spec, unsigned m, const BruteForceOptions& opts) {
  if (m < 1) throw SpecError("m must be >= 1");
  const SpanningSets sets(spec, m, opts);
  const auto& idx = sets.index();
  const Field& f = sets.group().field;
  const HilbertFunction brute = fixed_space_dims(f, idx.n(), idx.Q(), sets.group().generators, opts);
  const auto a_tuples = sets.f_tuples(true);
  const auto b_tuples = sets.f_tuples(false);
  const auto seeds = sets.b_seeds();
  DecompositionReport rep;
  rep.spec = sets.group().spec;
  rep.m = m;
  rep.rows.resize(idx.max_degree() + 1);
  detail::parallel_for(rep.rows.size(), opts.jobs, [&](std::size_t d) {
    Accumulator acc(idx.total());
    const std::size_t N = idx.degree(d).size();
    EchelonBasis ea(f, N), eb(f, N);
    const auto av = sets.a_vectors(d, a_tuples[d], acc);
    const auto bv = sets.b_vectors(d, b_tuples, seeds, acc);
    DecompositionRow row;
    row.degree = d;
    row.a = rank_of(f, idx, d, av, ea);
    row.b = rank_of(f, idx, d, bv, eb);
    EchelonBasis stacked = ea;
    row.stacked = rank_of(f, idx, d, bv, stacked);
    row.brute = brute.dims[d];
    rep.rows[d] = row;
  });
  rep.b_seeds_invariant = sets.seeds_invariant();
  return rep;
}

ExponentBoundReport check_exponent_bound(std::uint64_t q, unsigned n, unsigned m, const BruteForceOptions& opts) {
  const auto [p, r] = prime_power(q);
  if (n < 1 || m < 1) throw SpecError("n and m must be >= 1");
  const Field field = make_field(p, r);
  const std::uint64_t Q = ipow(q, m);
  const auto gl = enumerate_gl(field, n);
  const auto basis = fixed_space_basis(field, n, Q, gl, opts);
  ExponentBoundReport rep;
  rep.q = q;
  rep.n = n;
  rep.m = m;
  const std::size_t top = static_cast<std::size_t>(n) * (Q - 1);
  for (const auto& per_degree : basis) rep.hilbert.dims.push_back(per_degree.size());
  for (const auto& per_degree : basis) {
    for (const auto& v : per_degree) {
      for (const auto& [mono, c] : v.terms()) {
        ++rep.monomials_checked;
        const bool is_top = std::all_of(mono.exps.begin(), mono.exps.end(), [Q](std::uint32_t x) { return x == Q - 1; });
        const bool bounded =
            std::all_of(mono.exps.begin(), mono.exps.end(), [Q, q](std::uint32_t x) { return x <= Q - q; });
        if (!is_top && !bounded) {
          rep.violations.push_back(Polynomial::term(field, mono, field.one()).to_string(MonomialOrder::grlex(n)));
        }
      }
    }
  }
  rep.top_degree_ok = rep.hilbert.dims.size() == top + 1 && rep.hilbert.dims[top] == 1;
  // HF of S/(x_i^{Q-q+1}) by expanding ((1-t^{Q-q+1})/(1-t))^n.
  const IntPoly bound = IntPoly::q_integer(Q - q + 1).pow(n);
  rep.hilbert_bound_ok = true;
  for (std::size_t i = 0; i < rep.hilbert.dims.size(); ++i) {
    if (i == top) continue;
    if (static_cast<std::int64_t>(rep.hilbert.dims[i]) > bound.coeff(i)) rep.hilbert_bound_ok = false;
  }
  return rep;
}

std::optional<bool> ConjectureReport::match() const {
  if (!brute) return std::nullopt;
  for (std::size_t d = 0; d <= D; ++d) {
    const std::int64_t b = d < brute->dims.size() ? static_cast<std::int64_t>(brute->dims[d]) : 0;
    if (b != conjecture[d]) return false;
  }
  return true;
}

ConjectureReport check_lrs_conjecture(std::uint64_t q, unsigned n, unsigned m, std::optional<std::size_t> D,
                                      const BruteForceOptions& opts) {
  const auto [p, r] = prime_power(q);
  if (n < 1 || m < 1) throw SpecError("n and m must be >= 1");
  const std::uint64_t Q = ipow(q, m);
  ConjectureReport rep;
  rep.q = q;
  rep.n = n;
  rep.m = m;
  rep.D = D.value_or(static_cast<std::size_t>(n) * (Q - 1));
  rep.conjecture = lrs_conjecture(q, n, m, rep.D);
  if (n <= 2 && q <= 3 && m <= 2) {
    const Field field = make_field(p, r);
    rep.brute = fixed_space_dims(field, n, Q, enumerate_gl(field, n), opts);
  }
  return rep;
}

}  // namespace frobpow
