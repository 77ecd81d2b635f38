// Acceptance gate: one PASS/FAIL line per criterion, zero tolerance.

#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "frobpow/error.hpp"
#include "frobpow/groebner.hpp"
#include "frobpow/orbits.hpp"

using namespace frobpow;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      pass = false;
      if (failures.size() < 8) failures.push_back(what);
    }
  }
};

std::string label(const GroupSpec& s, unsigned m) {
  std::ostringstream o;
  if (s.full_stabilizer) {
    o << "q=" << s.q() << " n=" << s.n << " m=" << m << " stabilizer";
  } else {
    o << "p=" << s.p << " n=" << s.n << " m=" << m << " ell=" << s.ell << " e=" << s.e;
  }
  return o.str();
}

// p in {2,3,5}, n in {2,3}, m in {1,2}, 0 <= ell < n, e | p - 1.
std::vector<std::pair<GroupSpec, unsigned>> main_grid() {
  std::vector<std::pair<GroupSpec, unsigned>> out;
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned n : {2u, 3u}) {
      for (unsigned m : {1u, 2u}) {
        if (ipow(ipow(p, m), n) > 1'000'000) continue;
        for (unsigned ell = 0; ell < n; ++ell) {
          for (std::uint64_t e = 1; e < p; ++e) {
            if ((p - 1) % e == 0) out.push_back({GroupSpec{p, 1, n, ell, e, false}, m});
          }
        }
      }
    }
  }
  return out;
}

std::vector<std::pair<GroupSpec, unsigned>> stabilizer_grid(std::initializer_list<std::uint64_t> qs) {
  std::vector<std::pair<GroupSpec, unsigned>> out;
  for (std::uint64_t q : qs) {
    const auto [p, r] = prime_power(q);
    for (unsigned m : {1u, 2u}) out.push_back({GroupSpec{p, r, 2, 0, 0, true}, m});
  }
  return out;
}

std::int64_t dim_at(const HilbertFunction& h, std::size_t d) {
  return d < h.dims.size() ? static_cast<std::int64_t>(h.dims[d]) : 0;
}

bool same(const HilbertFunction& h, const TruncatedSeries& s) {
  const std::size_t top = std::max(h.dims.size(), s.coeffs.size());
  for (std::size_t d = 0; d < top; ++d) {
    if (dim_at(h, d) != s[d]) return false;
  }
  return true;
}

// Dimension formulas written out directly.
std::uint64_t expected_dimension(const GroupSpec& s, unsigned m) {
  const std::uint64_t q = s.q();
  const std::uint64_t base = ipow(q, m * (s.n - 1));
  if (s.full_stabilizer) return base + base * (ipow(q, m) - 1) / (ipow(q, s.n - 1) * (q - 1));
  return base + ipow(s.p, m * (s.n - 1) - s.ell) * (ipow(s.p, m) - 1) / s.e;
}

Outcome criterion1() {
  Outcome o;
  for (const auto& [spec, m] : main_grid()) {
    const std::size_t D = default_truncation(spec.n, ipow(spec.p, m));
    const auto brute = brute_force_hilbert(spec, m);
    const auto series = hilbert_main_fp(spec.p, spec.n, m, spec.ell, spec.e, D);
    o.expect(same(brute, series), label(spec, m));
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto grid = main_grid();
  for (auto& c : stabilizer_grid({4, 8, 9})) grid.push_back(c);
  for (const auto& [spec, m] : grid) {
    const std::uint64_t Q = ipow(spec.q(), m);
    const std::size_t D = default_truncation(spec.n, Q);
    const auto series = spec.full_stabilizer ? hilbert_stabilizer_fq(spec.q(), spec.n, m, D)
                                             : hilbert_main_fp(spec.p, spec.n, m, spec.ell, spec.e, D);
    const auto brute = brute_force_hilbert(spec, m);
    const std::uint64_t want = expected_dimension(spec, m);
    o.expect(series.sum() == static_cast<std::int64_t>(want) && brute.total() == want, label(spec, m));
  }
  return o;
}

std::vector<std::pair<GroupSpec, unsigned>> groebner_grid() {
  std::vector<std::pair<GroupSpec, unsigned>> out;
  for (const auto& [spec, m] : main_grid()) {
    if (spec.ell + 1 == spec.n) out.push_back({spec, m});
  }
  for (auto& c : stabilizer_grid({4})) out.push_back(c);
  return out;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& [spec, m] : groebner_grid()) {
    const Group g = build_group(spec);
    const BasicInvariants basic = basic_invariants(g);
    const HGenerators h = h_generators(g, basic, m);
    const auto cert = buchberger_check(g, basic, h);
    bool remainders = true;
    for (const auto& pc : cert.pairs) remainders = remainders && pc.remainder.is_zero();
    bool expansions = true;
    for (std::size_t i = 0; i < h.list.size(); ++i) expansions = expansions && cert.in_frobenius[i] && cert.closed_form[i];
    o.expect(remainders, label(spec, m) + " S-pair remainder");
    o.expect(expansions, label(spec, m) + " x-expansion");
    o.expect(buchberger_complete(g, basic, h).pass(), label(spec, m) + " completion");
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const auto& [spec, m] : main_grid()) o.expect(verify_decomposition(spec, m).pass(), label(spec, m));
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const auto& [spec, m] : groebner_grid()) {
    const Group g = build_group(spec);
    const BasicInvariants basic = basic_invariants(g);
    const HGenerators h = h_generators(g, basic, m);
    const std::uint64_t Q = ipow(spec.q(), m);
    const std::size_t D = default_truncation(spec.n, Q);
    std::vector<Monomial> lms;
    for (const auto& hg : h.list) lms.push_back(hg.fpoly.leading_monomial(basic.order()));
    const auto initial = initial_ideal_hilbert(lms, basic.weights, D);
    const GroupSpec v = spec.validated();
    const std::uint64_t s = spec.full_stabilizer ? spec.q() : spec.p;
    const auto A = hilbert_A(s, spec.n, m, v.ell, v.e, D);
    const auto B = hilbert_B(s, spec.n, m, v.ell, D);
    const auto main = spec.full_stabilizer ? hilbert_stabilizer_fq(spec.q(), spec.n, m, D)
                                           : hilbert_main_fp(spec.p, spec.n, m, spec.ell, spec.e, D);
    o.expect(initial == A, label(spec, m) + " initial ideal");
    o.expect(A + B == main, label(spec, m) + " A + B");
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto grid = main_grid();
  for (auto& c : stabilizer_grid({4, 8, 9})) grid.push_back(c);
  for (const auto& [spec, m] : grid) {
    if (ipow(ipow(spec.q(), m), spec.n) > 1'000'000) continue;
    const auto rep = count_orbits_enum(spec, m);
    const GroupSpec v = spec.validated();
    const std::uint64_t G = spec.full_stabilizer ? ipow(spec.q(), spec.n - 1) * (spec.q() - 1) : ipow(spec.p, v.ell) * v.e;
    const std::uint64_t hyper = ipow(spec.q(), m * (spec.n - 1));
    std::map<std::uint64_t, std::uint64_t> hist{{1, hyper}};
    if (rep.total_points > hyper) hist[G] += (rep.total_points - hyper) / G;
    o.expect(rep.orbits == expected_dimension(spec, m) && rep.orbits == rep.formula, label(spec, m) + " formula");
    o.expect(rep.hilbert_sum && *rep.hilbert_sum == static_cast<std::int64_t>(rep.orbits), label(spec, m) + " series");
    o.expect(rep.group_order == G && rep.histogram == hist, label(spec, m) + " histogram");
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned m : {1u, 2u}) {
      for (std::uint64_t e = 1; e < p; ++e) {
        if ((p - 1) % e) continue;
        std::ostringstream name;
        name << "p=" << p << " m=" << m << " e=" << e;
        const std::uint64_t Q = ipow(p, m);
        const auto r = resolution_2d(p, m, e);
        bool vanish = r.syzygies.size() == 3;
        for (const auto& syz : r.syzygies) vanish = vanish && syz.vanishes;
        o.expect(vanish && r.redundancy_ok, name.str() + " syzygies");
        o.expect(r.D == 2 * Q + e && r.resolution == r.ideal, name.str() + " series");

        const auto nm = resolution_2d(p, m, e, 0);
        IntPoly num = IntPoly::monomial(1, Q) + IntPoly::monomial(1, Q + e - 1) - IntPoly::monomial(1, 2 * Q + e - 1);
        const auto closed = expand(RationalExpr{num, {e, 1}}, nm.D);
        bool nvanish = nm.syzygies.size() == 1;
        for (const auto& syz : nm.syzygies) nvanish = nvanish && syz.vanishes;
        o.expect(nvanish && nm.resolution == nm.ideal && nm.ideal == closed, name.str() + " nonmodular");
      }
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (std::uint64_t q : {2, 3}) {
    for (unsigned m : {1u, 2u}) {
      const auto rep = check_exponent_bound(q, 2, m);
      const std::size_t top = 2 * (ipow(q, m) - 1);
      std::ostringstream name;
      name << "q=" << q << " m=" << m;
      o.expect(rep.violations.empty() && rep.monomials_checked > 0, name.str() + " dichotomy");
      o.expect(dim_at(rep.hilbert, top) == 1, name.str() + " top degree");
    }
  }
  return o;
}

Outcome criterion9() {
  Outcome o;
  const std::tuple<std::uint64_t, unsigned, unsigned> cases[] = {{2, 1, 1}, {2, 1, 2}, {3, 1, 1},
                                                                 {2, 2, 1}, {2, 2, 2}, {3, 2, 1}};
  for (const auto& [q, n, m] : cases) {
    const auto rep = check_lrs_conjecture(q, n, m);
    std::ostringstream name;
    name << "q=" << q << " n=" << n << " m=" << m;
    o.expect(rep.brute && same(*rep.brute, rep.conjecture), name.str());
  }
  return o;
}

// Branch coverage of each property suite over its module's core operations,
// read back from gcov after running the instrumented suite alone.
struct Suite {
  std::string name;
  std::vector<std::string> core;  // demangled-name prefixes
};

std::vector<fs::path> object_dirs() {
  std::vector<fs::path> out;
  std::stringstream ss(FROBPOW_COV_OBJDIRS);
  std::string part;
  while (std::getline(ss, part, ':')) out.emplace_back(part);
  return out;
}

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  char buf[1 << 16];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

std::string quote(const std::string& s) { return "'" + s + "'"; }

struct BranchTally {
  std::size_t total = 0;
  std::size_t taken = 0;
  std::vector<std::string> missed;
};

BranchTally suite_coverage(const Suite& suite, std::string& error) {
  BranchTally tally;
  const auto dirs = object_dirs();
  for (const auto& dir : dirs) {
    if (!fs::exists(dir)) continue;
    for (const auto& ent : fs::recursive_directory_iterator(dir)) {
      if (ent.path().extension() == ".gcda") fs::remove(ent.path());
    }
  }
  const std::string run = quote(FROBPOW_PROPERTY_BIN) + " --test-suite=" + quote(suite.name) + " >/dev/null 2>&1";
  if (std::system(run.c_str()) != 0) {
    error = "property suite failed";
    return tally;
  }
  const fs::path work = FROBPOW_COV_WORKDIR;
  fs::create_directories(work);

  // (file, line, function, index) -> taken in some translation unit
  std::map<std::tuple<std::string, std::int64_t, std::string, std::size_t>, bool> branches;
  for (const auto& dir : dirs) {
    if (!fs::exists(dir)) continue;
    for (const auto& ent : fs::recursive_directory_iterator(dir)) {
      if (ent.path().extension() != ".gcda") continue;
      const std::string cmd = "cd " + quote(work.string()) + " && " + quote(FROBPOW_GCOV) +
                              " -b -t --json-format -o " + quote(ent.path().parent_path().string()) + " " +
                              quote(ent.path().string()) + " 2>/dev/null";
      const std::string text = capture(cmd);
      std::stringstream lines(text);
      std::string doc;
      while (std::getline(lines, doc)) {
        if (doc.empty() || doc[0] != '{') continue;
        const auto j = nlohmann::json::parse(doc, nullptr, false);
        if (j.is_discarded()) continue;
        for (const auto& file : j.value("files", nlohmann::json::array())) {
          std::map<std::string, std::string> demangled;
          for (const auto& fn : file.value("functions", nlohmann::json::array())) {
            demangled[fn.value("name", "")] = fn.value("demangled_name", fn.value("name", ""));
          }
          const std::string path = file.value("file", "");
          for (const auto& line : file.value("lines", nlohmann::json::array())) {
            const std::string mangled = line.value("function_name", "");
            const auto it = demangled.find(mangled);
            const std::string fn = it == demangled.end() ? mangled : it->second;
            bool core = false;
            for (const auto& prefix : suite.core) core = core || fn.rfind(prefix, 0) == 0;
            if (!core) continue;
            const auto& br = line.value("branches", nlohmann::json::array());
            for (std::size_t k = 0; k < br.size(); ++k) {
              if (br[k].value("throw", false)) continue;
              auto& taken = branches[{path, line.value("line_number", std::int64_t{0}), fn, k}];
              taken = taken || br[k].value("count", std::int64_t{0}) > 0;
            }
          }
        }
      }
    }
  }
  for (const auto& [key, taken] : branches) {
    ++tally.total;
    if (taken) {
      ++tally.taken;
    } else if (tally.missed.size() < 6) {
      tally.missed.push_back(fs::path(std::get<0>(key)).filename().string() + ":" + std::to_string(std::get<1>(key)));
    }
  }
  if (tally.total == 0) error = "no branch data for the core functions";
  return tally;
}

Outcome criterion10(std::string& detail) {
  Outcome o;
  const std::vector<std::string> field_core = {
      "frobpow::Field::add(",     "frobpow::Field::sub(",     "frobpow::Field::mul(",
      "frobpow::Field::add_ext(", "frobpow::Field::sub_ext(", "frobpow::Field::mul_ext(",
      "frobpow::Field::inv(",     "frobpow::Field::neg(",     "frobpow::Field::div("};
  const std::vector<Suite> suites = {
      {"field axioms", field_core},
      {"Frobenius identity",
       {"frobpow::Field::pow(", "frobpow::Field::add(", "frobpow::Field::mul(", "frobpow::Field::add_ext(",
        "frobpow::Field::mul_ext("}},
      {"Lucas binomials", {"frobpow::binom_mod_p("}},
      {"order multiplicativity",
       {"frobpow::MonomialOrder::compare(", "frobpow::MonomialOrder::weighted_degree(",
        "frobpow::operator*(frobpow::Monomial const&"}},
      {"division identity",
       {"frobpow::divide(", "frobpow::Monomial::divides(", "frobpow::operator/(frobpow::Monomial const&"}},
      {"subduction round-trip",
       {"frobpow::subduct(", "frobpow::expand(frobpow::FPoly", "frobpow::(anonymous namespace)::PowerCache::"}},
      {"action composition", {"frobpow::substitute_linear(", "frobpow::compose(", "frobpow::act("}},
  };
  std::ostringstream d;
  for (const auto& suite : suites) {
    std::string error;
    const BranchTally t = suite_coverage(suite, error);
    const double pct = t.total ? 100.0 * static_cast<double>(t.taken) / static_cast<double>(t.total) : 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1f%% (%zu/%zu)", pct, t.taken, t.total);
    d << "\n    " << suite.name << ": " << (error.empty() ? buf : error);
    for (const auto& m : t.missed) d << " " << m;
    o.expect(error.empty() && t.taken * 100 >= t.total * 95, suite.name);
  }
  detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9},
  };
  bool all = true;
  auto report = [&](int id, const Outcome& o, const std::string& extra) {
    all = all && o.pass;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.checked << " checks)";
    for (const auto& f : o.failures) std::cout << "\n    failed: " << f;
    std::cout << extra << std::endl;
  };
  for (const auto& [id, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o.expect(false, std::string("exception: ") + ex.what());
    }
    report(id, o, "");
  }
  std::string detail;
  Outcome o10;
  try {
    o10 = criterion10(detail);
  } catch (const std::exception& ex) {
    o10.expect(false, std::string("exception: ") + ex.what());
  }
  report(10, o10, detail);
  return all ? 0 : 1;
}
