#include "frobpow/ff.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "frobpow/error.hpp"

namespace frobpow {

namespace detail {

struct FieldImpl {
  std::uint64_t p = 2;
  unsigned r = 1;
  std::uint64_t q = 2;
  std::vector<std::uint64_t> modulus;  // monic, low-to-high
  std::vector<std::uint64_t> p_pow;    // p^0 .. p^r

  // Log/antilog tables over a primitive element, built when r > 1 and q is
  // small enough. exp_table has length 2(q - 1) so that log sums need no
  // reduction.
  std::vector<std::uint32_t> exp_table;
  std::vector<std::uint32_t> log_table;
  std::vector<std::uint64_t> q_minus_1_factors;
};

}  // namespace detail

namespace {

constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (k != 0) {
    if (k & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    k >>= 1;
  }
  return r;
}

// Dense polynomials over F_p, low-to-high, used for modulus selection and for
// extension-field multiplication when no tables are built.
using Fpx = std::vector<std::uint64_t>;

void trim(Fpx& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Fpx fpx_mul(const Fpx& a, const Fpx& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Fpx c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  trim(c);
  return c;
}

// Remainder of a modulo a monic or general nonzero polynomial m.
Fpx fpx_mod(Fpx a, const Fpx& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() >= m.size()) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t j = 0; j <= dm; ++j) {
      a[shift + j] = (a[shift + j] + p - mulmod(c, m[j], p)) % p;
    }
    trim(a);
  }
  return a;
}

Fpx fpx_gcd(Fpx a, Fpx b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Fpx r = fpx_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Fpx fpx_powmod(Fpx base, std::uint64_t k, const Fpx& m, std::uint64_t p) {
  Fpx result{1};
  base = fpx_mod(base, m, p);
  while (k != 0) {
    if (k & 1) result = fpx_mod(fpx_mul(result, base, p), m, p);
    base = fpx_mod(fpx_mul(base, base, p), m, p);
    k >>= 1;
  }
  return result;
}

// x^(p^k) mod m by k successive p-th powers.
Fpx frobenius_x(std::uint64_t k, const Fpx& m, std::uint64_t p) {
  Fpx cur{0, 1};
  for (std::uint64_t i = 0; i < k; ++i) cur = fpx_powmod(cur, p, m, p);
  return cur;
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's test: m of degree r is irreducible iff x^(p^r) = x mod m and
// gcd(x^(p^(r/d)) - x, m) = 1 for every prime d | r.
bool is_irreducible(const Fpx& m, std::uint64_t p) {
  const std::size_t r = m.size() - 1;
  if (r == 1) return true;
  Fpx xr = frobenius_x(r, m, p);
  Fpx x{0, 1};
  if (xr != fpx_mod(x, m, p)) return false;
  for (std::uint64_t d : distinct_prime_factors(r)) {
    Fpx t = frobenius_x(r / d, m, p);
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = (t[1] + p - 1) % p;
    trim(t);
    if (t.empty()) return false;
    Fpx g = fpx_gcd(m, t, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Fpx decode(const detail::FieldImpl& f, std::uint32_t code) {
  Fpx c(f.r);
  std::uint64_t v = code;
  for (unsigned i = 0; i < f.r; ++i) {
    c[i] = v % f.p;
    v /= f.p;
  }
  return c;
}

std::uint32_t encode(const detail::FieldImpl& f, const Fpx& c) {
  std::uint64_t v = 0;
  for (std::size_t i = std::min<std::size_t>(c.size(), f.r); i-- > 0;) v = v * f.p + c[i];
  return static_cast<std::uint32_t>(v);
}

std::uint32_t slow_mul(const detail::FieldImpl& f, std::uint32_t a, std::uint32_t b) {
  Fpx pa = decode(f, a);
  Fpx pb = decode(f, b);
  trim(pa);
  trim(pb);
  return encode(f, fpx_mod(fpx_mul(pa, pb, f.p), f.modulus, f.p));
}

std::uint32_t slow_pow(const detail::FieldImpl& f, std::uint32_t a, std::uint64_t k) {
  std::uint32_t r = 1;
  while (k != 0) {
    if (k & 1) r = slow_mul(f, r, a);
    a = slow_mul(f, a, a);
    k >>= 1;
  }
  return r;
}

bool has_order(const detail::FieldImpl& f, std::uint32_t a, std::uint64_t ord,
               const std::vector<std::uint64_t>& ord_primes) {
  if (slow_pow(f, a, ord) != 1) return false;
  for (std::uint64_t l : ord_primes) {
    if (slow_pow(f, a, ord / l) == 1) return false;
  }
  return true;
}

void build_tables(detail::FieldImpl& f) {
  const std::uint64_t n = f.q - 1;
  std::uint32_t g = 0;
  for (std::uint64_t c = 2; c < f.q; ++c) {
    if (has_order(f, static_cast<std::uint32_t>(c), n, f.q_minus_1_factors)) {
      g = static_cast<std::uint32_t>(c);
      break;
    }
  }
  if (g == 0) throw std::logic_error("no primitive element found");
  f.exp_table.assign(2 * n, 0);
  f.log_table.assign(f.q, 0);
  std::uint32_t cur = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    f.exp_table[i] = cur;
    f.exp_table[i + n] = cur;
    f.log_table[cur] = static_cast<std::uint32_t>(i);
    cur = slow_mul(f, cur, g);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::uint64_t smallest_prime_factor(std::uint64_t n) noexcept {
  if (n < 2) return n;
  if (n % 2 == 0) return 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return d;
  }
  return n;
}

bool is_prime(std::uint64_t n) noexcept { return n >= 2 && smallest_prime_factor(n) == n; }

std::pair<std::uint64_t, unsigned> prime_power(std::uint64_t q) {
  if (q < 2) throw SpecError("q = " + std::to_string(q) + " is not a prime power");
  const std::uint64_t p = smallest_prime_factor(q);
  unsigned r = 0;
  std::uint64_t v = q;
  while (v % p == 0) {
    v /= p;
    ++r;
  }
  if (v != 1) throw SpecError("q = " + std::to_string(q) + " is not a prime power");
  return {p, r};
}

Field::Field() : Field(make_field(2, 1)) {}

Field::Field(std::shared_ptr<const detail::FieldImpl> impl)
    : impl_(std::move(impl)), p_(impl_->p), r_(impl_->r), q_(impl_->q) {}

Field make_field(std::uint64_t p, unsigned r) {
  if (r < 1) throw SpecError("field degree r must be >= 1, got " + std::to_string(r));
  if (p < 2) throw SpecError("characteristic " + std::to_string(p) + " is not prime");
  const std::uint64_t d = smallest_prime_factor(p);
  if (d != p) {
    throw SpecError("characteristic " + std::to_string(p) + " is not prime (divisible by " +
                    std::to_string(d) + ")");
  }
  if (p > (std::uint64_t{1} << 31)) throw SpecError("characteristic exceeds 2^31");

  auto impl = std::make_shared<detail::FieldImpl>();
  impl->p = p;
  impl->r = r;
  impl->p_pow.assign(r + 1, 1);
  for (unsigned i = 1; i <= r; ++i) {
    if (impl->p_pow[i - 1] > (std::uint64_t{1} << 32) / p) {
      throw SpecError("field order " + std::to_string(p) + "^" + std::to_string(r) +
                      " does not fit the 32-bit element encoding");
    }
    impl->p_pow[i] = impl->p_pow[i - 1] * p;
  }
  impl->q = impl->p_pow[r];
  impl->q_minus_1_factors = distinct_prime_factors(impl->q - 1);

  if (r == 1) {
    impl->modulus = {0, 1};
  } else {
    // Candidates in lex order of (c0, c1, ..., c_{r-1}); c0 = 0 is divisible
    // by x, so the scan starts at c0 = 1.
    const std::uint64_t total = impl->p_pow[r];
    for (std::uint64_t t = impl->p_pow[r - 1]; t < total; ++t) {
      Fpx m(r + 1, 0);
      std::uint64_t v = t;
      for (unsigned i = r; i-- > 0;) {
        m[i] = v % p;
        v /= p;
      }
      m[r] = 1;
      if (is_irreducible(m, p)) {
        impl->modulus = std::move(m);
        break;
      }
    }
    if (impl->modulus.empty()) throw std::logic_error("no irreducible modulus found");
    if (impl->q <= kTableLimit) build_tables(*impl);
  }
  return Field(std::move(impl));
}

const std::vector<std::uint64_t>& Field::modulus() const noexcept { return impl_->modulus; }

FieldElem Field::from_int(std::int64_t v) const noexcept {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return {static_cast<std::uint32_t>(r)};
}

FieldElem Field::from_coeffs(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() > r_) throw std::invalid_argument("too many coefficients for field degree");
  Fpx c(coeffs.begin(), coeffs.end());
  for (auto& x : c) x %= p_;
  return {encode(*impl_, c)};
}

std::vector<std::uint64_t> Field::coeffs(FieldElem a) const { return decode(*impl_, a.code); }

FieldElem Field::generator() const noexcept {
  return {static_cast<std::uint32_t>(r_ == 1 ? 0 : p_)};
}

FieldElem Field::element(std::uint64_t code) const {
  if (code >= q_) throw std::out_of_range("element code out of range");
  return {static_cast<std::uint32_t>(code)};
}

FieldElem Field::add_ext(FieldElem a, FieldElem b) const noexcept {
  std::uint64_t x = a.code, y = b.code, out = 0;
  for (unsigned i = 0; i < r_; ++i) {
    std::uint64_t s = x % p_ + y % p_;
    if (s >= p_) s -= p_;
    out += s * impl_->p_pow[i];
    x /= p_;
    y /= p_;
  }
  return {static_cast<std::uint32_t>(out)};
}

FieldElem Field::sub_ext(FieldElem a, FieldElem b) const noexcept {
  std::uint64_t x = a.code, y = b.code, out = 0;
  for (unsigned i = 0; i < r_; ++i) {
    const std::uint64_t xa = x % p_, yb = y % p_;
    out += (xa >= yb ? xa - yb : xa + p_ - yb) * impl_->p_pow[i];
    x /= p_;
    y /= p_;
  }
  return {static_cast<std::uint32_t>(out)};
}

FieldElem Field::mul_ext(FieldElem a, FieldElem b) const noexcept {
  if (a.code == 0 || b.code == 0) return {0};
  if (!impl_->log_table.empty()) {
    return {impl_->exp_table[impl_->log_table[a.code] + impl_->log_table[b.code]]};
  }
  return {slow_mul(*impl_, a.code, b.code)};
}

FieldElem Field::inv(FieldElem a) const {
  if (a.code == 0) throw std::domain_error("inverse of zero");
  if (r_ == 1) return {static_cast<std::uint32_t>(powmod(a.code, p_ - 2, p_))};
  if (!impl_->log_table.empty()) {
    const std::uint64_t n = q_ - 1;
    return {impl_->exp_table[(n - impl_->log_table[a.code]) % n]};
  }
  return {slow_pow(*impl_, a.code, q_ - 2)};
}

FieldElem Field::pow(FieldElem a, std::uint64_t k) const noexcept {
  FieldElem r = one();
  while (k != 0) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

std::uint64_t Field::multiplicative_order(FieldElem a) const {
  if (a.code == 0) throw std::domain_error("order of zero");
  std::uint64_t ord = q_ - 1;
  for (std::uint64_t l : impl_->q_minus_1_factors) {
    while (ord % l == 0 && pow(a, ord / l) == one()) ord /= l;
  }
  return ord;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF(" << p_ << '^' << r_ << "; modulus=[";
  for (std::size_t i = 0; i < impl_->modulus.size(); ++i) {
    if (i) os << ',';
    os << impl_->modulus[i];
  }
  os << "])";
  return os.str();
}

std::string Field::format(FieldElem a) const {
  std::ostringstream os;
  os << '[';
  const auto c = coeffs(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ']';
  return os.str();
}

bool operator==(const Field& a, const Field& b) noexcept {
  return a.impl_ == b.impl_ || (a.p_ == b.p_ && a.r_ == b.r_ && a.modulus() == b.modulus());
}

FieldElem root_of_unity(const Field& field, std::uint64_t e) {
  const std::uint64_t n = field.order() - 1;
  if (e == 0 || n % e != 0) {
    throw SpecError("no primitive " + std::to_string(e) + "-th root of unity in F_{" +
                    std::to_string(field.characteristic()) + "^" + std::to_string(field.degree()) +
                    "}");
  }
  if (e == 1) return field.one();
  for (std::uint64_t c = 2; c <= n; ++c) {
    const FieldElem a = field.element(c);
    if (field.pow(a, e) == field.one() && field.multiplicative_order(a) == e) return a;
  }
  throw std::logic_error("root of unity scan exhausted the field");
}

FieldEmbedding::FieldEmbedding(const Field& src, const Field& dst) : src_(src), dst_(dst) {
  if (src.characteristic() != dst.characteristic()) {
    throw SpecError("embedding between fields of different characteristic");
  }
  if (dst.degree() % src.degree() != 0) {
    throw SpecError("embedding needs the source degree to divide the target degree");
  }
  FieldElem theta = dst.one();
  if (src.degree() > 1) {
    const auto& m = src.modulus();
    bool found = false;
    for (std::uint64_t c = 0; c < dst.order() && !found; ++c) {
      const FieldElem y = dst.element(c);
      // Horner evaluation of src's modulus at y.
      FieldElem acc = dst.zero();
      for (std::size_t i = m.size(); i-- > 0;) acc = dst.add(dst.mul(acc, y), dst.from_int(static_cast<std::int64_t>(m[i])));
      if (acc == dst.zero()) {
        theta = y;
        found = true;
      }
    }
    if (!found) throw std::logic_error("source modulus has no root in target field");
  }
  FieldElem cur = dst.one();
  for (unsigned i = 0; i < src.degree(); ++i) {
    basis_image_.push_back(cur);
    cur = dst.mul(cur, theta);
  }
}

FieldElem FieldEmbedding::operator()(FieldElem x) const {
  const auto c = src_.coeffs(x);
  FieldElem out = dst_.zero();
  for (std::size_t i = 0; i < c.size(); ++i) {
    out = dst_.add(out, dst_.mul(dst_.from_int(static_cast<std::int64_t>(c[i])), basis_image_[i]));
  }
  return out;
}

FieldElem embed(const Field& src, const Field& dst, FieldElem x) {
  return FieldEmbedding(src, dst)(x);
}

std::uint64_t binom_mod_p(std::uint64_t d, std::uint64_t i, std::uint64_t p) {
  if (i > d) return 0;
  std::uint64_t result = 1;
  while (i != 0 || d != 0) {
    const std::uint64_t dd = d % p, ii = i % p;
    if (ii > dd) return 0;
    // C(dd, ii) mod p with dd < p via multiplicative formula.
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t k = 0; k < ii; ++k) {
      num = mulmod(num, dd - k, p);
      den = mulmod(den, k + 1, p);
    }
    result = mulmod(result, mulmod(num, powmod(den, p - 2, p), p), p);
    d /= p;
    i /= p;
  }
  return result;
}

}  // namespace frobpow
