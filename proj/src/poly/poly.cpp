#include "frobpow/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace frobpow {

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (auto e : exps) d += e;
  return d;
}

bool Monomial::is_one() const noexcept {
  return std::all_of(exps.begin(), exps.end(), [](std::uint32_t e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > other.exps[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial c(a.exps);
  for (std::size_t i = 0; i < c.exps.size(); ++i) c.exps[i] += b.exps[i];
  return c;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial c(a.exps);
  for (std::size_t i = 0; i < c.exps.size(); ++i) {
    if (b.exps[i] > c.exps[i]) throw std::invalid_argument("monomial quotient is not exact");
    c.exps[i] -= b.exps[i];
  }
  return c;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial c(a.exps);
  for (std::size_t i = 0; i < c.exps.size(); ++i) c.exps[i] = std::max(c.exps[i], b.exps[i]);
  return c;
}

bool coprime(const Monomial& a, const Monomial& b) noexcept {
  for (std::size_t i = 0; i < a.exps.size(); ++i) {
    if (a.exps[i] != 0 && b.exps[i] != 0) return false;
  }
  return true;
}

MonomialOrder::MonomialOrder(std::vector<std::uint64_t> weights) : weights_(std::move(weights)) {
  for (auto w : weights_) {
    if (w == 0) throw std::invalid_argument("monomial order weights must be positive");
  }
}

std::uint64_t MonomialOrder::weighted_degree(const Monomial& u) const {
  if (u.arity() != weights_.size()) throw std::invalid_argument("monomial arity does not match order");
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) d += weights_[i] * u.exps[i];
  return d;
}

std::strong_ordering MonomialOrder::compare(const Monomial& u, const Monomial& v) const {
  const auto du = weighted_degree(u);
  const auto dv = weighted_degree(v);
  if (du != dv) return du < dv ? std::strong_ordering::less : std::strong_ordering::greater;
  for (std::size_t i = 0; i < u.exps.size(); ++i) {
    if (u.exps[i] != v.exps[i]) return u.exps[i] < v.exps[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(const Field& field, std::size_t n, FieldElem c) {
  Polynomial p(field, n);
  p.add_term(Monomial(n), c);
  return p;
}

Polynomial Polynomial::variable(const Field& field, std::size_t n, std::size_t i) {
  if (i >= n) throw std::out_of_range("variable index out of range");
  Monomial m(n);
  m.exps[i] = 1;
  return term(field, std::move(m), field.one());
}

Polynomial Polynomial::term(const Field& field, Monomial m, FieldElem c) {
  Polynomial p(field, m.arity());
  p.add_term(m, c);
  return p;
}

FieldElem Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? FieldElem{} : it->second;
}

std::uint64_t Polynomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool Polynomial::is_homogeneous() const noexcept {
  if (terms_.empty()) return true;
  const auto d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return t.first.degree() == d; });
}

void Polynomial::add_term(const Monomial& m, FieldElem c) {
  if (m.arity() != n_) throw std::invalid_argument("ring mismatch: monomial arity");
  if (c.code == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second = field_.add(it->second, c);
  if (it->second.code == 0) terms_.erase(it);
}

void Polynomial::check_compatible(const Polynomial& b) const {
  if (n_ != b.n_ || !(field_ == b.field_)) throw std::invalid_argument("ring mismatch");
}

Polynomial Polynomial::operator-() const {
  Polynomial out(field_, n_);
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, field_.neg(c));
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& b) {
  check_compatible(b);
  for (const auto& [m, c] : b.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& b) {
  check_compatible(b);
  for (const auto& [m, c] : b.terms_) add_term(m, field_.neg(c));
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial out(a.field_, a.n_);
  const Field& f = a.field_;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, f.mul(ca, cb));
  }
  return out;
}

Polynomial Polynomial::scaled(FieldElem c) const {
  Polynomial out(field_, n_);
  if (c.code == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, field_.mul(v, c));
  return out;
}

Polynomial Polynomial::times_term(const Monomial& m, FieldElem c) const {
  Polynomial out(field_, n_);
  if (c.code == 0) return out;
  for (const auto& [mm, v] : terms_) out.terms_.emplace(mm * m, field_.mul(v, c));
  return out;
}

Polynomial Polynomial::pow(std::uint64_t k) const {
  if (k == 0) return constant(field_, n_, field_.one());
  if (terms_.size() == 2) {
    // (a + b)^k = sum_j C(k, j) a^j b^(k-j).
    const auto& [ma, ca] = *terms_.begin();
    const auto& [mb, cb] = *std::next(terms_.begin());
    Polynomial out(field_, n_);
    const std::uint64_t p = field_.characteristic();
    for (std::uint64_t j = 0; j <= k; ++j) {
      const std::uint64_t b = binom_mod_p(k, j, p);
      if (b == 0) continue;
      Monomial m(n_);
      for (std::size_t i = 0; i < n_; ++i) {
        m.exps[i] = static_cast<std::uint32_t>(ma.exps[i] * j + mb.exps[i] * (k - j));
      }
      const FieldElem c = field_.mul(field_.from_int(static_cast<std::int64_t>(b)),
                                     field_.mul(field_.pow(ca, j), field_.pow(cb, k - j)));
      out.add_term(m, c);
    }
    return out;
  }
  Polynomial result = constant(field_, n_, field_.one());
  Polynomial base = *this;
  while (true) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k == 0) break;
    base = base * base;
  }
  return result;
}

std::pair<Monomial, FieldElem> Polynomial::leading_term(const MonomialOrder& order) const {
  const auto& m = leading_monomial(order);
  return {m, terms_.at(m)};
}

const Monomial& Polynomial::leading_monomial(const MonomialOrder& order) const {
  if (terms_.empty()) throw std::domain_error("LM of zero");
  auto best = terms_.begin();
  for (auto it = std::next(best); it != terms_.end(); ++it) {
    if (order.less(best->first, it->first)) best = it;
  }
  return best->first;
}

std::string Polynomial::to_string(const MonomialOrder& order, const std::string& var) const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> sorted;
  sorted.reserve(terms_.size());
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [&](const auto* a, const auto* b) { return order.less(b->first, a->first); });
  std::ostringstream os;
  const bool prime = field_.degree() == 1;
  const std::uint64_t p = field_.characteristic();
  bool first = true;
  for (const auto* t : sorted) {
    const auto& [m, c] = *t;
    bool negative = false;
    std::string coef;
    if (prime) {
      std::uint64_t v = field_.residue(c);
      if (p > 2 && v > p / 2) {
        negative = true;
        v = p - v;
      }
      coef = std::to_string(v);
    } else {
      coef = field_.format(c);
    }
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += var + std::to_string(i + 1);
      if (m.exps[i] != 1) mono += '^' + std::to_string(m.exps[i]);
    }
    if (mono.empty()) {
      os << coef;
    } else if (coef == "1") {
      os << mono;
    } else {
      os << coef << '*' << mono;
    }
  }
  return os.str();
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.n_ == b.n_ && a.field_ == b.field_ && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------------------

Polynomial reduce_mod_frobenius(const Polynomial& f, std::uint64_t Q) {
  Polynomial out(f.field(), f.arity());
  for (const auto& [m, c] : f.terms()) {
    if (std::all_of(m.exps.begin(), m.exps.end(), [Q](std::uint32_t e) { return e < Q; })) {
      out.add_term(m, c);
    }
  }
  return out;
}

DivisionResult divide(const Polynomial& f, std::span<const Polynomial> divisors, const MonomialOrder& order) {
  std::vector<std::pair<Monomial, FieldElem>> leads;
  leads.reserve(divisors.size());
  for (const auto& d : divisors) leads.push_back(d.leading_term(order));
  const Field& field = f.field();
  DivisionResult out{std::vector<Polynomial>(divisors.size(), Polynomial(field, f.arity())),
                     Polynomial(field, f.arity())};
  Polynomial rest = f;
  while (!rest.is_zero()) {
    const auto [lm, lc] = rest.leading_term(order);
    bool reduced = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (!leads[i].first.divides(lm)) continue;
      const Monomial q = lm / leads[i].first;
      const FieldElem c = field.div(lc, leads[i].second);
      out.quotients[i].add_term(q, c);
      rest -= divisors[i].times_term(q, c);
      reduced = true;
      break;
    }
    if (!reduced) {
      out.remainder.add_term(lm, lc);
      rest.add_term(lm, field.neg(lc));
    }
  }
  return out;
}

Polynomial compose(const Polynomial& F, std::span<const Polynomial> images) {
  if (images.size() != F.arity()) throw std::invalid_argument("compose: wrong number of images");
  if (images.empty()) throw std::invalid_argument("compose: no images");
  const Field& field = images[0].field();
  const std::size_t n = images[0].arity();
  // Cache powers of each image, since the same exponents recur across terms.
  std::vector<std::map<std::uint32_t, Polynomial>> cache(images.size());
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto it = cache[i].find(k);
    if (it == cache[i].end()) it = cache[i].emplace(k, images[i].pow(k)).first;
    return it->second;
  };
  Polynomial out(field, n);
  for (const auto& [m, c] : F.terms()) {
    Polynomial t = Polynomial::constant(field, n, c);
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] != 0) t = t * power(i, m.exps[i]);
    }
    out += t;
  }
  return out;
}

Polynomial substitute_linear(const Polynomial& f, const MatrixFq& g) {
  const std::size_t n = f.arity();
  if (g.rows != n || g.cols != n) throw std::invalid_argument("substitute_linear: dimension mismatch");
  const Field& field = f.field();
  std::vector<Polynomial> images;
  images.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    Polynomial lin(field, n);
    for (std::size_t i = 0; i < n; ++i) {
      Monomial m(n);
      m.exps[i] = 1;
      lin.add_term(m, g.at(j, i));
    }
    images.push_back(std::move(lin));
  }
  return compose(f, images);
}

}  // namespace frobpow
