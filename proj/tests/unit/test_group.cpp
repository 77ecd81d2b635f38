#include <doctest.h>

#include "frobpow/error.hpp"
#include "frobpow/group.hpp"

using namespace frobpow;

namespace {

MatrixFq transvection(std::size_t n, std::size_t k, FieldElem gamma) {
  MatrixFq t = MatrixFq::identity(n);
  t.at(k, n - 1) = gamma;
  return t;
}

std::vector<GroupSpec> desk_specs() {
  std::vector<GroupSpec> out;
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned ell = 0; ell < n; ++ell) {
        for (std::uint64_t e = 1; e < p; ++e) {
          if ((p - 1) % e == 0) out.push_back({p, 1, n, ell, e, false});
        }
      }
    }
  }
  for (auto [p, r] : {std::pair<std::uint64_t, unsigned>{2, 1}, {3, 1}, {2, 2}, {2, 3}, {3, 2}}) {
    out.push_back({p, r, 2, 0, 0, true});
  }
  out.push_back({2, 2, 3, 0, 3, false});
  return out;
}

}  // namespace

TEST_CASE("archetype generators") {
  const Group g = build_group({5, 1, 3, 2, 4, false});
  const Field& f = g.field;
  REQUIRE(g.generators.size() == 3);
  MatrixFq d = MatrixFq::identity(3);
  d.at(2, 2) = f.from_int(2);
  CHECK(g.omega == f.from_int(2));
  CHECK(g.generators[0] == d);
  CHECK(g.generators[1] == transvection(3, 0, f.one()));
  CHECK(g.generators[2] == transvection(3, 1, f.one()));

  CHECK(build_group({5, 1, 3, 1, 2, false}).generators.size() == 2);
  CHECK(build_group({5, 1, 3, 0, 1, false}).generators.empty());
}

TEST_CASE("spec validation") {
  CHECK_THROWS_WITH_AS(GroupSpec({6, 1, 2, 1, 1, false}).validated(), doctest::Contains("not prime"), SpecError);
  CHECK_THROWS_WITH_AS(GroupSpec({5, 1, 2, 1, 3, false}).validated(), doctest::Contains("does not divide"),
                       SpecError);
  CHECK_THROWS_AS(GroupSpec({5, 1, 2, 2, 1, false}).validated(), SpecError);
  CHECK_THROWS_AS(GroupSpec({5, 1, 1, 0, 1, false}).validated(), SpecError);
  CHECK_THROWS_AS(GroupSpec({2, 2, 2, 1, 1, false}).validated(), SpecError);
  const GroupSpec full = GroupSpec{2, 2, 3, 0, 0, true}.validated();
  CHECK(full.ell == 2);
  CHECK(full.e == 3);
  CHECK(to_json_string({5, 1, 3, 2, 4, false}) == R"({"p":5,"r":1,"n":3,"ell":2,"e":4,"full_stabilizer":false})");
}

TEST_CASE("enumeration orders") {
  const Group arch = build_group({5, 1, 3, 2, 4, false});
  CHECK(enumerate(arch.field, 3, arch.generators).size() == 100);

  const Group triv = build_group({3, 1, 2, 0, 1, false});
  const auto one = enumerate(triv.field, 2, triv.generators);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == MatrixFq::identity(2));

  const Group st = build_group({2, 1, 2, 0, 0, true});
  CHECK(enumerate(st.field, 2, st.generators).size() == 2);

  CHECK_THROWS_AS(enumerate(arch.field, 3, arch.generators, 50), CapExceeded);
  CHECK(enumerate_gl(make_field(3, 1), 2).size() == 48);
  CHECK_THROWS_AS(enumerate_gl(make_field(5, 1), 3), CapExceeded);
}

TEST_CASE("root vectors classify the reflections") {
  const Group arch = build_group({5, 1, 3, 2, 4, false});
  const Field& f = arch.field;
  const auto a1 = root_vector(f, arch.generators[1]);
  REQUIRE(a1.has_value());
  CHECK(*a1 == VectorFq{f.one(), f.zero(), f.zero()});
  CHECK(is_transvection(f, arch.generators[1]));
  const auto an = root_vector(f, arch.generators[0]);
  REQUIRE(an.has_value());
  CHECK(an->back() != f.zero());
  CHECK_FALSE(is_transvection(f, arch.generators[0]));
  CHECK_FALSE(root_vector(f, MatrixFq::identity(3)).has_value());

  MatrixFq bad = MatrixFq::identity(3);
  bad.at(1, 0) = f.one();
  CHECK_THROWS_AS(root_vector(f, bad), std::invalid_argument);
}

TEST_CASE("root space dimensions") {
  const Group arch = build_group({5, 1, 3, 2, 4, false});
  CHECK(transvection_rootspace_dim(arch.field, enumerate(arch.field, 3, arch.generators)) == 2);
  const Group triv = build_group({5, 1, 3, 0, 1, false});
  CHECK(transvection_rootspace_dim(triv.field, enumerate(triv.field, 3, triv.generators)) == 0);
  const Group st = build_group({2, 2, 2, 0, 0, true});
  CHECK(transvection_rootspace_dim(st.field, enumerate(st.field, 2, st.generators)) == 2);
}

TEST_CASE("action examples") {
  const Group arch = build_group({5, 1, 3, 2, 4, false});
  const Field& f = arch.field;
  const auto x = [&](std::size_t i) { return Polynomial::variable(f, 3, i); };
  // g_1 sends x_1 to x_1 - x_3 and fixes the others.
  CHECK(act(x(0), arch.generators[1]) == x(0) - x(2));
  CHECK(act(x(1), arch.generators[1]) == x(1));
  CHECK(act(x(2), arch.generators[1]) == x(2));
  // g_n sends x_n to omega^{-1} x_n.
  CHECK(act(x(2), arch.generators[0]) == x(2).scaled(f.inv(arch.omega)));
  CHECK(act(x(0), arch.generators[0]) == x(0));
}

TEST_CASE("group structure over the desk grid") {
  for (const GroupSpec& spec : desk_specs()) {
    CAPTURE(to_json_string(spec));
    const Group g = build_group(spec);
    const Field& f = g.field;
    const auto elems = enumerate(f, spec.n, g.generators);
    CHECK(elems.size() == spec.expected_order());
    std::size_t det_one = 0;
    for (const auto& a : elems) {
      const FieldElem det = determinant(f, a);
      CHECK(det != f.zero());
      if (det == f.one()) ++det_one;
      // Fixes the hyperplane pointwise; every non-identity element is a reflection.
      for (std::size_t j = 0; j + 1 < spec.n; ++j) {
        for (std::size_t i = 0; i < spec.n; ++i) CHECK(a.at(i, j) == (i == j ? f.one() : f.zero()));
      }
      const auto alpha = root_vector(f, a);
      if (alpha && is_transvection(f, a)) CHECK(det == f.one());
    }
    const GroupSpec v = spec.validated();
    CHECK(det_one * v.e == elems.size());
    CHECK(transvection_rootspace_dim(f, elems) == v.ell * (spec.full_stabilizer ? spec.r : 1));
    const auto closure = enumerate(f, spec.n, elems);
    CHECK(closure.size() == elems.size());
  }
}
