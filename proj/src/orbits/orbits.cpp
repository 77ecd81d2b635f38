#include "frobpow/orbits.hpp"

#include <numeric>

#include "frobpow/error.hpp"
#include "frobpow/invariants.hpp"
#include "frobpow/qseries.hpp"

namespace frobpow {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::uint64_t size(std::uint32_t root) const { return size_[root]; }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint64_t> size_;
};

struct Enumeration {
  std::uint64_t Q = 0;  // size of the big field
  std::uint64_t points = 0;
  std::vector<std::uint32_t> root;  // root of each point
  UnionFind uf{0};
};

// Points are coordinate vectors over F_{q^m}, encoded with x_1 most significant.
Enumeration enumerate_orbits(const Field& base, unsigned n, unsigned m, const std::vector<GroupElement>& gens,
                             std::uint64_t max_points) {
  const Field big = make_field(base.characteristic(), base.degree() * m);
  const FieldEmbedding emb(base, big);
  Enumeration en;
  en.Q = big.order();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (__builtin_mul_overflow(total, en.Q, &total)) total = UINT64_MAX;
  }
  if (total > max_points) throw CapExceeded("point enumeration exceeds the point cap", total, max_points);
  en.points = total;
  en.uf = UnionFind(total);
  std::vector<MatrixFq> big_gens;
  for (const auto& g : gens) {
    if (g.rows != n || g.cols != n) throw std::invalid_argument("generator has the wrong dimension");
    MatrixFq h(n, n);
    for (std::size_t k = 0; k < g.entries.size(); ++k) h.entries[k] = emb(g.entries[k]);
    big_gens.push_back(std::move(h));
  }
  std::vector<FieldElem> v(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned i = n; i-- > 0;) {
      v[i] = FieldElem{static_cast<std::uint32_t>(c % en.Q)};
      c /= en.Q;
    }
    for (const auto& g : big_gens) {
      std::uint64_t image = 0;
      for (unsigned i = 0; i < n; ++i) {
        FieldElem s = big.zero();
        for (unsigned j = 0; j < n; ++j) s = big.add(s, big.mul(g.at(i, j), v[j]));
        image = image * en.Q + s.code;
      }
      en.uf.unite(static_cast<std::uint32_t>(code), static_cast<std::uint32_t>(image));
    }
  }
  en.root.resize(total);
  for (std::uint64_t code = 0; code < total; ++code) en.root[code] = en.uf.find(static_cast<std::uint32_t>(code));
  return en;
}

std::map<std::uint64_t, std::uint64_t> histogram_of(Enumeration& en, std::uint64_t& orbits) {
  std::map<std::uint64_t, std::uint64_t> hist;
  orbits = 0;
  for (std::uint64_t code = 0; code < en.points; ++code) {
    if (en.root[code] == code) {
      ++orbits;
      ++hist[en.uf.size(static_cast<std::uint32_t>(code))];
    }
  }
  return hist;
}

}  // namespace

bool OrbitReport::pass() const {
  const bool sum_ok = !hilbert_sum || *hilbert_sum == static_cast<std::int64_t>(orbits);
  return orbits == formula && sum_ok && singletons_on_hyperplane && free_off_hyperplane;
}

std::uint64_t orbit_count_formula(const GroupSpec& spec_in, unsigned m) {
  const GroupSpec spec = spec_in.validated();
  if (m < 1) throw SpecError("m must be >= 1");
  const std::uint64_t q = spec.q();
  if (spec.full_stabilizer) return dimension_stabilizer_fq(q, spec.n, m);
  if (spec.r == 1) return dimension_main_fp(spec.p, spec.n, m, spec.ell, spec.e);
  // ell = 0 over F_{p^r}: a cyclic group of order e acting on x_n alone.
  const std::uint64_t hyper = ipow(q, m * (spec.n - 1));
  return hyper + hyper * (ipow(q, m) - 1) / spec.e;
}

OrbitReport count_orbits_enum(const GroupSpec& spec_in, unsigned m, std::uint64_t max_points) {
  const GroupSpec spec = spec_in.validated();
  if (m < 1) throw SpecError("m must be >= 1");
  const Group group = build_group(spec);
  Enumeration en = enumerate_orbits(group.field, spec.n, m, group.generators, max_points);
  OrbitReport rep;
  rep.spec = spec;
  rep.m = m;
  rep.total_points = en.points;
  rep.histogram = histogram_of(en, rep.orbits);
  rep.formula = orbit_count_formula(spec, m);
  rep.group_order = spec.expected_order();
  const std::size_t D = spec.n * (ipow(spec.q(), m) - 1);
  if (spec.full_stabilizer) {
    rep.hilbert_sum = hilbert_stabilizer_fq(spec.q(), spec.n, m, D).sum();
  } else if (spec.r == 1) {
    rep.hilbert_sum = hilbert_main_fp(spec.p, spec.n, m, spec.ell, spec.e, D).sum();
  }
  rep.singletons_on_hyperplane = true;
  rep.free_off_hyperplane = true;
  for (std::uint64_t code = 0; code < en.points; ++code) {
    const bool on_hyperplane = code % en.Q == 0;  // last coordinate is zero
    const std::uint64_t size = en.uf.size(en.root[code]);
    if (on_hyperplane && size != 1) rep.singletons_on_hyperplane = false;
    if (!on_hyperplane && size != rep.group_order) rep.free_off_hyperplane = false;
  }
  return rep;
}

ExploratoryOrbitReport explore_orbits(const Field& field, unsigned n, unsigned m, const std::vector<GroupElement>& gens,
                                      std::uint64_t max_points, std::uint64_t max_monomials) {
  if (m < 1) throw SpecError("m must be >= 1");
  Enumeration en = enumerate_orbits(field, n, m, gens, max_points);
  ExploratoryOrbitReport rep;
  rep.q = field.order();
  rep.n = n;
  rep.m = m;
  rep.histogram = histogram_of(en, rep.orbits);
  BruteForceOptions opts;
  opts.max_monomials = max_monomials;
  rep.fixed_dimension = fixed_space_dims(field, n, ipow(rep.q, m), gens, opts).total();
  return rep;
}

}  // namespace frobpow
