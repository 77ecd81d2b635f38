#include "frobpow/group.hpp"

#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "frobpow/error.hpp"
#include "frobpow/qseries.hpp"

namespace frobpow {

std::uint64_t GroupSpec::q() const { return ipow(p, r); }

GroupSpec GroupSpec::validated() const {
  if (!is_prime(p)) {
    throw SpecError("p = " + std::to_string(p) + " is not prime (divisible by " +
                    std::to_string(smallest_prime_factor(p)) + ")");
  }
  if (r < 1) throw SpecError("r must be >= 1");
  if (n < 2) throw SpecError("n must be >= 2");
  GroupSpec s = *this;
  const std::uint64_t qq = q();
  if (full_stabilizer) {
    s.ell = n - 1;
    s.e = qq - 1;
    return s;
  }
  if (ell > n - 1) {
    throw SpecError("ell = " + std::to_string(ell) + " exceeds n - 1 = " + std::to_string(n - 1));
  }
  if (e == 0 || (qq - 1) % e != 0) {
    throw SpecError("e = " + std::to_string(e) + " does not divide q - 1 = " + std::to_string(qq - 1));
  }
  if (r > 1 && ell != 0) {
    throw SpecError("over F_{p^r} with r > 1 only ell = 0 or the full stabilizer is supported");
  }
  return s;
}

std::uint64_t GroupSpec::expected_order() const {
  const GroupSpec s = validated();
  if (s.full_stabilizer) return ipow(s.q(), n - 1) * (s.q() - 1);
  return s.e * ipow(s.q(), s.ell);
}

std::uint64_t GroupSpec::transvection_degree() const { return full_stabilizer ? q() : p; }

Group build_group(const GroupSpec& spec_in) {
  const GroupSpec spec = spec_in.validated();
  Group g{spec, make_field(spec.p, spec.r), FieldElem{1}, {}};
  const unsigned n = spec.n;
  g.omega = root_of_unity(g.field, spec.e);
  if (spec.e > 1) {
    MatrixFq d = MatrixFq::identity(n);
    d.at(n - 1, n - 1) = g.omega;
    g.generators.push_back(std::move(d));
  }
  // A basis of F_q over F_p: 1, theta, theta^2, ...
  std::vector<FieldElem> gammas{g.field.one()};
  if (spec.full_stabilizer) {
    const FieldElem theta = g.field.generator();
    for (unsigned i = 1; i < spec.r; ++i) gammas.push_back(g.field.mul(gammas.back(), theta));
  }
  for (unsigned k = 0; k < spec.ell; ++k) {
    for (const FieldElem gamma : gammas) {
      MatrixFq t = MatrixFq::identity(n);
      t.at(k, n - 1) = gamma;
      g.generators.push_back(std::move(t));
    }
  }
  return g;
}

namespace {

struct MatrixHash {
  std::size_t operator()(const MatrixFq& m) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const auto& x : m.entries) h = (h ^ x.code) * 1099511628211ull;
    return h;
  }
};

}  // namespace

std::vector<GroupElement> enumerate(const Field& field, unsigned n, const std::vector<GroupElement>& gens,
                                    std::uint64_t cap) {
  std::unordered_set<MatrixFq, MatrixHash> seen;
  std::vector<GroupElement> out;
  std::deque<std::size_t> queue;
  const MatrixFq id = MatrixFq::identity(n);
  seen.insert(id);
  out.push_back(id);
  queue.push_back(0);
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      if (g.rows != n || g.cols != n) throw std::invalid_argument("generator has the wrong dimension");
      MatrixFq h = mat_mul(field, out[i], g);
      if (seen.insert(h).second) {
        if (out.size() >= cap) throw CapExceeded("group enumeration exceeds the element cap", out.size() + 1, cap);
        out.push_back(std::move(h));
        queue.push_back(out.size() - 1);
      }
    }
  }
  return out;
}

std::vector<GroupElement> enumerate_gl(const Field& field, unsigned n, std::uint64_t cap) {
  const std::uint64_t q = field.order();
  const std::uint64_t total = ipow(q, n * n);
  if (total > cap) throw CapExceeded("GL_n enumeration exceeds the matrix cap", total, cap);
  std::vector<GroupElement> out;
  for (std::uint64_t code = 0; code < total; ++code) {
    MatrixFq m(n, n);
    std::uint64_t v = code;
    for (auto& x : m.entries) {
      x = field.element(v % q);
      v /= q;
    }
    if (determinant(field, m).code != 0) out.push_back(std::move(m));
  }
  return out;
}

std::optional<VectorFq> root_vector(const Field& field, const GroupElement& g) {
  const std::size_t n = g.rows;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const FieldElem want = i == j ? field.one() : field.zero();
      if (g.at(i, j) != want) throw std::invalid_argument("element does not fix the hyperplane pointwise");
    }
  }
  VectorFq alpha(n);
  bool zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = g.at(i, n - 1);
    if (i == n - 1) alpha[i] = field.sub(alpha[i], field.one());
    if (alpha[i].code != 0) zero = false;
  }
  if (zero) return std::nullopt;
  return alpha;
}

bool is_transvection(const Field& field, const GroupElement& g) {
  const auto alpha = root_vector(field, g);
  return alpha.has_value() && alpha->back().code == 0;
}

std::size_t transvection_rootspace_dim(const Field& field, const std::vector<GroupElement>& elements) {
  if (elements.empty()) return 0;
  const std::size_t n = elements.front().rows;
  const unsigned r = field.degree();
  const Field prime = make_field(field.characteristic(), 1);
  std::vector<std::vector<FieldElem>> rows;
  for (const auto& g : elements) {
    const auto alpha = root_vector(field, g);
    if (!alpha || alpha->back().code != 0) continue;
    std::vector<FieldElem> row;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (auto c : field.coeffs((*alpha)[i])) row.push_back(prime.element(c));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return 0;
  MatrixFq m(rows.size(), (n - 1) * r);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return rank(prime, std::move(m));
}

Polynomial act(const Polynomial& f, const GroupElement& g) { return substitute_linear(f, inverse(f.field(), g)); }

std::string to_json_string(const GroupSpec& s) {
  std::ostringstream os;
  os << "{\"p\":" << s.p << ",\"r\":" << s.r << ",\"n\":" << s.n << ",\"ell\":" << s.ell << ",\"e\":" << s.e
     << ",\"full_stabilizer\":" << (s.full_stabilizer ? "true" : "false") << '}';
  return os.str();
}

}  // namespace frobpow
