#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "../../src/common/parallel.hpp"
#include "frobpow/error.hpp"
#include "frobpow/groebner.hpp"
#include "frobpow/invariants.hpp"
#include "frobpow/orbits.hpp"
#include "frobpow/qseries.hpp"

namespace frobpow::cli {

using ojson = nlohmann::ordered_json;

namespace {

BruteForceOptions brute_opts(const Options& o) {
  BruteForceOptions b;
  b.max_monomials = o.max_monomials;
  b.jobs = std::max(1u, o.jobs);
  return b;
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

ojson hilbert_json(const HilbertFunction& h) {
  ojson j;
  j["dims"] = h.dims;
  j["total"] = h.total();
  return j;
}

std::string poly_string(const Polynomial& p, const MonomialOrder& order, const std::string& var) {
  return p.is_zero() ? "0" : p.to_string(order, var);
}

std::int64_t dim_at(const HilbertFunction& h, std::size_t d) {
  return d < h.dims.size() ? static_cast<std::int64_t>(h.dims[d]) : 0;
}

}  // namespace

GroupSpec spec_from(const Options& o) {
  GroupSpec s;
  if (o.q) {
    const auto [p, r] = prime_power(*o.q);
    if (o.p && *o.p != p) throw SpecError("--p " + std::to_string(*o.p) + " conflicts with --q " + std::to_string(*o.q));
    if (o.r && *o.r != r) throw SpecError("--r " + std::to_string(*o.r) + " conflicts with --q " + std::to_string(*o.q));
    s.p = p;
    s.r = r;
  } else if (o.p) {
    s.p = *o.p;
    s.r = o.r.value_or(1);
  } else {
    throw SpecError("one of --p or --q is required");
  }
  if (o.n < 1) throw SpecError("n must be >= 1");
  s.n = o.n;
  s.ell = o.ell.value_or(o.n - 1);
  s.e = o.e;
  s.full_stabilizer = o.full_stabilizer;
  return s;
}

ojson spec_json(const GroupSpec& s) {
  ojson j;
  j["p"] = s.p;
  j["r"] = s.r;
  j["n"] = s.n;
  j["ell"] = s.ell;
  j["e"] = s.e;
  j["full_stabilizer"] = s.full_stabilizer;
  return j;
}

Result cmd_hilbert(const Options& o) {
  const GroupSpec spec = spec_from(o).validated();
  if (o.m < 1) throw SpecError("m must be >= 1");
  if (o.mode != "formula" && o.mode != "brute" && o.mode != "both") {
    throw SpecError("--mode must be formula, brute or both");
  }
  const bool want_formula = o.mode != "brute";
  const bool want_brute = o.mode != "formula";
  const std::uint64_t Q = ipow(spec.q(), o.m);
  const std::size_t D = o.D.value_or(default_truncation(spec.n, Q));

  Result res;
  auto& j = res.report;
  j["command"] = "hilbert";
  j["spec"] = spec_json(spec);
  j["m"] = o.m;
  j["Q"] = Q;
  j["D"] = D;
  j["mode"] = o.mode;

  TruncatedSeries formula;
  if (want_formula) {
    std::string closed;
    if (spec.full_stabilizer) {
      formula = hilbert_stabilizer_fq(spec.q(), spec.n, o.m, D);
      closed = hilbert_stabilizer_fq_closed_form(spec.q(), spec.n, o.m);
    } else if (spec.r == 1) {
      formula = hilbert_main_fp(spec.p, spec.n, o.m, spec.ell, spec.e, D);
      closed = hilbert_main_fp_closed_form(spec.p, spec.n, o.m, spec.ell, spec.e);
    } else {
      throw SpecError("closed forms cover groups over F_p and full stabilizers; use --mode brute");
    }
    j["formula"] = {{"coeffs", formula.coeffs}, {"truncation", D}, {"closed_form", closed}, {"total", formula.sum()}};
  }
  HilbertFunction brute;
  if (want_brute) {
    brute = brute_force_hilbert(spec, o.m, brute_opts(o));
    j["brute"] = hilbert_json(brute);
  }

  bool match = true;
  res.table.header.push_back("degree");
  if (want_formula) res.table.header.push_back("formula");
  if (want_brute) res.table.header.push_back("brute");
  if (want_formula && want_brute) res.table.header.push_back("equal");
  for (std::size_t d = 0; d <= D; ++d) {
    std::vector<std::string> row{std::to_string(d)};
    if (want_formula) row.push_back(std::to_string(formula[d]));
    if (want_brute) row.push_back(std::to_string(dim_at(brute, d)));
    if (want_formula && want_brute) {
      const bool eq = formula[d] == dim_at(brute, d);
      match = match && eq;
      row.push_back(yes_no(eq));
    }
    res.table.rows.push_back(std::move(row));
  }
  std::ostringstream sum;
  sum << "hilbert:";
  if (want_formula) sum << " formula total " << formula.sum();
  if (want_brute) sum << " brute total " << brute.total();
  if (want_formula && want_brute) {
    j["match"] = match;
    sum << (match ? ", match" : ", MISMATCH");
    if (!match) res.exit_code = exit_code::mismatch;
  }
  res.summary = sum.str();
  return res;
}

Result cmd_gbcheck(const Options& o) {
  const GroupSpec spec = spec_from(o).validated();
  if (o.m < 1) throw SpecError("m must be >= 1");
  const Group group = build_group(spec);
  const BasicInvariants basic = basic_invariants(group);
  const HGenerators hg = h_generators(group, basic, o.m);
  const GroebnerCertificate cert = buchberger_check(group, basic, hg, std::max(1u, o.jobs));
  const MonomialOrder forder = basic.order();
  const MonomialOrder xorder = MonomialOrder::grlex(spec.n);

  Result res;
  auto& j = res.report;
  j["command"] = "gbcheck";
  j["spec"] = spec_json(spec);
  j["field"] = group.field.describe();
  j["m"] = o.m;
  j["Q"] = hg.Q;
  ojson basics = ojson::array();
  for (std::size_t i = 0; i < basic.size(); ++i) {
    basics.push_back({{"name", "f" + std::to_string(i + 1)},
                      {"degree", basic.weights[i]},
                      {"x", poly_string(basic.polys[i], xorder, "x")}});
  }
  j["basic_invariants"] = basics;
  ojson gens = ojson::array();
  for (std::size_t i = 0; i < hg.list.size(); ++i) {
    gens.push_back({{"label", cert.labels[i]},
                    {"f", poly_string(hg.list[i].fpoly, forder, "f")},
                    {"x", poly_string(hg.list[i].xpoly, xorder, "x")},
                    {"in_frobenius", static_cast<bool>(cert.in_frobenius[i])},
                    {"closed_form", static_cast<bool>(cert.closed_form[i])}});
  }
  j["generators"] = gens;
  ojson pairs = ojson::array();
  res.table.header = {"i", "j", "pair", "coprime_leading", "remainder"};
  for (const auto& c : cert.pairs) {
    const std::string rem = poly_string(c.remainder, forder, "f");
    pairs.push_back({{"pair", {c.i, c.j}}, {"coprime_leading", c.coprime_leading}, {"remainder", rem}});
    res.table.rows.push_back({std::to_string(c.i), std::to_string(c.j), cert.labels[c.i] + "," + cert.labels[c.j],
                              yes_no(c.coprime_leading), rem});
  }
  j["pairs"] = pairs;
  bool pass = cert.pass();
  if (o.complete) {
    const CompletionReport comp = buchberger_complete(group, basic, hg);
    j["completion"] = {{"kernel_generators", comp.kernel_generators},
                       {"reduced_basis_size", comp.from_kernel.size()},
                       {"match", comp.pass()}};
    pass = pass && comp.pass();
  }
  j["pass"] = pass;
  if (!pass) res.exit_code = exit_code::mismatch;
  res.summary = "gbcheck: " + std::to_string(cert.pairs.size()) + " S-pairs, " + (pass ? "all reduce to 0" : "FAILED");
  return res;
}

Result cmd_decompose(const Options& o) {
  const GroupSpec spec = spec_from(o).validated();
  const DecompositionReport rep = verify_decomposition(spec, o.m, brute_opts(o));
  Result res;
  auto& j = res.report;
  j["command"] = "decompose";
  j["spec"] = spec_json(spec);
  j["m"] = o.m;
  ojson rows = ojson::array();
  res.table.header = {"degree", "A", "B", "total", "brute"};
  for (const auto& r : rep.rows) {
    rows.push_back({{"degree", r.degree},
                    {"A", r.a},
                    {"B", r.b},
                    {"total", r.a + r.b},
                    {"brute", r.brute},
                    {"stacked", r.stacked}});
    res.table.rows.push_back({std::to_string(r.degree), std::to_string(r.a), std::to_string(r.b),
                              std::to_string(r.a + r.b), std::to_string(r.brute)});
  }
  j["rows"] = rows;
  j["b_seeds_invariant"] = rep.b_seeds_invariant;
  j["pass"] = rep.pass();
  if (!rep.pass()) res.exit_code = exit_code::mismatch;
  res.summary = std::string("decompose: ") + (rep.pass() ? "A + B = brute in every degree" : "FAILED");
  return res;
}

namespace {

Result exploratory_orbits(const Options& o) {
  std::ifstream in(o.generators);
  if (!in) throw SpecError("cannot open generator file " + o.generators);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& ex) {
    throw SpecError(std::string("generator file is not valid JSON: ") + ex.what());
  }
  if (!doc.contains("q") || !doc.contains("generators")) throw SpecError("generator file needs \"q\" and \"generators\"");
  const auto [p, r] = prime_power(doc["q"].get<std::uint64_t>());
  const Field field = make_field(p, r);
  std::vector<GroupElement> gens;
  unsigned n = 0;
  for (const auto& mat : doc["generators"]) {
    const std::size_t rows = mat.size();
    if (n == 0) n = static_cast<unsigned>(rows);
    if (rows != n) throw SpecError("generators have different sizes");
    MatrixFq g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (mat[i].size() != n) throw SpecError("generator is not square");
      for (std::size_t k = 0; k < n; ++k) g.at(i, k) = field.element(mat[i][k].get<std::uint64_t>());
    }
    if (determinant(field, g).code == 0) throw SpecError("generator is singular");
    gens.push_back(std::move(g));
  }
  if (n == 0) throw SpecError("generator file lists no matrices");
  const ExploratoryOrbitReport rep = explore_orbits(field, n, o.m, gens, o.max_points, o.max_monomials);
  Result res;
  auto& j = res.report;
  j["command"] = "orbits";
  j["exploratory"] = true;
  j["q"] = rep.q;
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["orbits"] = rep.orbits;
  ojson hist = ojson::array();
  res.table.header = {"size", "count"};
  for (const auto& [size, count] : rep.histogram) {
    hist.push_back({{"size", size}, {"count", count}});
    res.table.rows.push_back({std::to_string(size), std::to_string(count)});
  }
  j["histogram"] = hist;
  j["fixed_dimension"] = rep.fixed_dimension;
  j["equal"] = rep.equal();
  res.summary = "orbits (exploratory): " + std::to_string(rep.orbits) + " orbits, invariant dimension " +
                std::to_string(rep.fixed_dimension);
  return res;
}

}  // namespace

Result cmd_orbits(const Options& o) {
  if (!o.generators.empty()) return exploratory_orbits(o);
  const GroupSpec spec = spec_from(o).validated();
  const OrbitReport rep = count_orbits_enum(spec, o.m, o.max_points);
  Result res;
  auto& j = res.report;
  j["command"] = "orbits";
  j["spec"] = spec_json(spec);
  j["m"] = o.m;
  j["points"] = rep.total_points;
  j["orbits"] = rep.orbits;
  j["formula"] = rep.formula;
  if (rep.hilbert_sum) {
    j["hilbert_sum"] = *rep.hilbert_sum;
  } else {
    j["hilbert_sum"] = nullptr;
  }
  j["group_order"] = rep.group_order;
  ojson hist = ojson::array();
  res.table.header = {"size", "count"};
  for (const auto& [size, count] : rep.histogram) {
    hist.push_back({{"size", size}, {"count", count}});
    res.table.rows.push_back({std::to_string(size), std::to_string(count)});
  }
  j["histogram"] = hist;
  j["singletons_on_hyperplane"] = rep.singletons_on_hyperplane;
  j["free_off_hyperplane"] = rep.free_off_hyperplane;
  j["pass"] = rep.pass();
  if (!rep.pass()) res.exit_code = exit_code::mismatch;
  res.summary = "orbits: " + std::to_string(rep.orbits) + " by enumeration, " + std::to_string(rep.formula) +
                " by formula" + (rep.pass() ? "" : ", FAILED");
  return res;
}

Result cmd_resolution2d(const Options& o) {
  if (!o.p && !o.q) throw SpecError("--p is required");
  const GroupSpec base = spec_from(o);
  if (base.r != 1 || base.full_stabilizer) throw SpecError("resolution2d works over F_p only");
  const unsigned ell = o.ell.value_or(1);
  const ResolutionReport rep = resolution_2d(base.p, o.m, o.e, ell, brute_opts(o));
  const MonomialOrder forder(std::vector<std::uint64_t>{ell == 1 ? base.p : 1, o.e});
  Result res;
  auto& j = res.report;
  j["command"] = "resolution2d";
  j["p"] = rep.p;
  j["m"] = rep.m;
  j["e"] = rep.e;
  j["ell"] = rep.ell;
  j["D"] = rep.D;
  ojson gens = ojson::array();
  for (std::size_t i = 0; i < rep.generators.size(); ++i) {
    gens.push_back({{"label", rep.generator_labels[i]}, {"f", poly_string(rep.generators[i], forder, "f")}});
  }
  j["generators"] = gens;
  ojson syz = ojson::array();
  for (const auto& s : rep.syzygies) {
    ojson coeffs = ojson::array();
    for (const auto& c : s.coeffs) coeffs.push_back(poly_string(c, forder, "f"));
    syz.push_back({{"label", s.label}, {"coeffs", coeffs}, {"vanishes", s.vanishes}});
  }
  j["syzygies"] = syz;
  if (ell == 1) j["redundancy_ok"] = rep.redundancy_ok;
  ojson series = ojson::array();
  res.table.header = {"degree", "resolution", "ideal"};
  if (ell == 0) res.table.header.push_back("closed_form");
  for (std::size_t d = 0; d <= rep.D; ++d) {
    ojson row{{"degree", d}, {"resolution", rep.resolution[d]}, {"ideal", rep.ideal[d]}};
    std::vector<std::string> trow{std::to_string(d), std::to_string(rep.resolution[d]), std::to_string(rep.ideal[d])};
    if (ell == 0) {
      row["closed_form"] = rep.closed_form[d];
      trow.push_back(std::to_string(rep.closed_form[d]));
    }
    series.push_back(row);
    res.table.rows.push_back(std::move(trow));
  }
  j["series"] = series;
  j["pass"] = rep.pass();
  if (!rep.pass()) res.exit_code = exit_code::mismatch;
  res.summary = std::string("resolution2d: ") + (rep.pass() ? "syzygies vanish and series agree" : "FAILED");
  return res;
}

Result cmd_conjecture(const Options& o) {
  const GroupSpec base = spec_from(o);
  if (base.full_stabilizer) throw SpecError("conjecture takes --q, --n and --m only");
  const ConjectureReport rep = check_lrs_conjecture(base.q(), o.n, o.m, o.D, brute_opts(o));
  Result res;
  auto& j = res.report;
  j["command"] = "conjecture";
  j["q"] = rep.q;
  j["n"] = rep.n;
  j["m"] = rep.m;
  j["D"] = rep.D;
  j["conjecture"] = {{"coeffs", rep.conjecture.coeffs},
                      {"truncation", rep.D},
                      {"closed_form", lrs_conjecture_closed_form(rep.q, rep.n, rep.m)},
                      {"conjectural", true}};
  const auto match = rep.match();
  if (rep.brute) {
    j["brute"] = hilbert_json(*rep.brute);
    j["match"] = *match;
  } else {
    j["brute"] = nullptr;
    j["match"] = nullptr;
  }
  res.table.header = {"degree", "conjecture"};
  if (rep.brute) res.table.header.insert(res.table.header.end(), {"brute", "equal"});
  for (std::size_t d = 0; d <= rep.D; ++d) {
    std::vector<std::string> row{std::to_string(d), std::to_string(rep.conjecture[d])};
    if (rep.brute) {
      row.push_back(std::to_string(dim_at(*rep.brute, d)));
      row.push_back(yes_no(dim_at(*rep.brute, d) == rep.conjecture[d]));
    }
    res.table.rows.push_back(std::move(row));
  }
  if (match && !*match) res.exit_code = exit_code::conjecture_mismatch;
  res.summary = !rep.brute ? "conjecture: series only (brute force runs for n <= 2, q <= 3, m <= 2)"
                : *match  ? "conjecture: matches brute force"
                          : "conjecture: MISMATCH with brute force";
  return res;
}

namespace {

std::vector<std::uint64_t> int_list(const nlohmann::json& grid, const char* key, std::vector<std::uint64_t> dflt) {
  if (!grid.contains(key)) return dflt;
  const auto& v = grid[key];
  if (v.is_number_unsigned()) return {v.get<std::uint64_t>()};
  if (!v.is_array()) throw SpecError(std::string("manifest grid entry \"") + key + "\" must be a list");
  return v.get<std::vector<std::uint64_t>>();
}

using CommandFn = Result (*)(const Options&);

CommandFn lookup(const std::string& name) {
  static const std::map<std::string, CommandFn> table{
      {"hilbert", cmd_hilbert},   {"gbcheck", cmd_gbcheck},           {"decompose", cmd_decompose},
      {"orbits", cmd_orbits},     {"resolution2d", cmd_resolution2d}, {"conjecture", cmd_conjecture}};
  const auto it = table.find(name);
  if (it == table.end()) throw SpecError("unknown manifest command \"" + name + "\"");
  return it->second;
}

ojson point_json(const Options& o) {
  return {{"p", o.p.value_or(0)}, {"r", o.r.value_or(1)},  {"n", o.n},
          {"m", o.m},             {"ell", o.ell.value_or(0)}, {"e", o.e},
          {"full_stabilizer", o.full_stabilizer}};
}

}  // namespace

Result run_manifest(const nlohmann::json& manifest, unsigned jobs) {
  if (!manifest.is_object() || !manifest.contains("grid") || !manifest.contains("commands")) {
    throw SpecError("manifest needs \"grid\" and \"commands\"");
  }
  const auto& grid = manifest["grid"];
  Options base;
  if (manifest.contains("mode")) base.mode = manifest["mode"].get<std::string>();
  if (manifest.contains("caps")) {
    const auto& caps = manifest["caps"];
    base.max_points = caps.value("max_points", base.max_points);
    base.max_monomials = caps.value("max_monomials", base.max_monomials);
  }
  const auto commands = manifest["commands"].get<std::vector<std::string>>();
  for (const auto& c : commands) lookup(c);

  const auto ps = int_list(grid, "p", {});
  const auto rs = int_list(grid, "r", {1});
  const auto ns = int_list(grid, "n", {2});
  const auto ms = int_list(grid, "m", {1});
  std::vector<bool> stabs{false};
  if (grid.contains("full_stabilizer")) stabs = grid["full_stabilizer"].get<std::vector<bool>>();
  if (ps.empty()) throw SpecError("manifest grid needs a list of p");

  // Expand the grid in a fixed order: p, r, n, m, full_stabilizer, ell, e.
  std::vector<Options> points;
  for (auto p : ps) {
    for (auto r : rs) {
      for (auto n : ns) {
        for (auto m : ms) {
          for (bool stab : stabs) {
            Options o = base;
            o.p = p;
            o.r = static_cast<unsigned>(r);
            o.n = static_cast<unsigned>(n);
            o.m = static_cast<unsigned>(m);
            o.full_stabilizer = stab;
            if (stab) {
              points.push_back(o);
              continue;
            }
            std::vector<std::uint64_t> ells, es;
            if (grid.contains("ell") && grid["ell"].is_string()) {
              if (grid["ell"] != "all") throw SpecError("manifest ell must be a list or \"all\"");
              for (std::uint64_t l = 0; l < n; ++l) ells.push_back(l);
            } else {
              ells = int_list(grid, "ell", {n - 1});
            }
            if (grid.contains("e") && grid["e"].is_string()) {
              if (grid["e"] != "divisors") throw SpecError("manifest e must be a list or \"divisors\"");
              const std::uint64_t q = is_prime(p) ? ipow(p, static_cast<unsigned>(r)) : 2;
              for (std::uint64_t e = 1; e < q; ++e) {
                if ((q - 1) % e == 0) es.push_back(e);
              }
            } else {
              es = int_list(grid, "e", {1});
            }
            for (auto l : ells) {
              for (auto e : es) {
                o.ell = static_cast<unsigned>(l);
                o.e = e;
                points.push_back(o);
              }
            }
          }
        }
      }
    }
  }

  struct Job {
    std::string command;
    Options opts;
  };
  std::vector<Job> work;
  for (const auto& o : points) {
    for (const auto& c : commands) work.push_back({c, o});
  }
  struct Outcome {
    bool skipped = false;
    std::string reason;
    Result result;
  };
  std::vector<Outcome> outcomes(work.size());
  detail::parallel_for(work.size(), std::max(1u, jobs), [&](std::size_t i) {
    Options o = work[i].opts;
    o.jobs = 1;
    try {
      if (work[i].command == "resolution2d" && o.n != 2) throw SpecError("resolution2d needs n = 2");
      outcomes[i].result = lookup(work[i].command)(o);
    } catch (const SpecError& ex) {
      outcomes[i].skipped = true;
      outcomes[i].reason = ex.what();
    } catch (const CapExceeded& ex) {
      outcomes[i].result.exit_code = exit_code::cap_exceeded;
      outcomes[i].result.report = {{"error", ex.what()}, {"required", ex.required()}, {"cap", ex.cap()}};
    }
  });

  Result res;
  auto& j = res.report;
  j["command"] = "sweep";
  ojson runs = ojson::array();
  ojson skipped = ojson::array();
  std::size_t passed = 0;
  bool any_mismatch = false, any_conjecture = false, any_cap = false;
  for (std::size_t i = 0; i < work.size(); ++i) {
    const auto& out = outcomes[i];
    if (out.skipped) {
      skipped.push_back({{"command", work[i].command}, {"point", point_json(work[i].opts)}, {"reason", out.reason}});
      continue;
    }
    const int code = out.result.exit_code;
    passed += code == exit_code::ok;
    any_mismatch = any_mismatch || code == exit_code::mismatch;
    any_conjecture = any_conjecture || code == exit_code::conjecture_mismatch;
    any_cap = any_cap || code == exit_code::cap_exceeded;
    runs.push_back({{"command", work[i].command},
                    {"point", point_json(work[i].opts)},
                    {"exit", code},
                    {"report", out.result.report}});
    res.table.rows.push_back({work[i].command, point_json(work[i].opts).dump(), std::to_string(code)});
  }
  res.table.header = {"command", "point", "exit"};
  j["runs"] = runs;
  j["skipped"] = skipped;
  j["summary"] = {{"runs", runs.size()}, {"passed", passed}, {"failed", runs.size() - passed}, {"skipped", skipped.size()}};
  res.exit_code = any_mismatch     ? exit_code::mismatch
                  : any_conjecture ? exit_code::conjecture_mismatch
                  : any_cap        ? exit_code::cap_exceeded
                                   : exit_code::ok;
  res.summary = "sweep: " + std::to_string(passed) + "/" + std::to_string(runs.size()) + " runs passed, " +
                std::to_string(skipped.size()) + " invalid grid points skipped";
  return res;
}

Result cmd_sweep(const Options& o) {
  std::ifstream in(o.manifest);
  if (!in) throw SpecError("cannot open manifest " + o.manifest);
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& ex) {
    throw SpecError(std::string("manifest is not valid JSON: ") + ex.what());
  }
  Result res = run_manifest(manifest, o.jobs);
  if (manifest.contains("output")) {
    const auto path = manifest["output"].get<std::string>();
    std::ofstream file(path);
    if (!file) throw SpecError("cannot write " + path);
    file << res.report.dump(2) << '\n';
    res.report = {{"command", "sweep"}, {"output", path}, {"summary", res.report["summary"]}};
  }
  return res;
}

void emit(const Result& r, Format f, std::ostream& out) {
  switch (f) {
    case Format::Json:
      out << r.report.dump(2) << '\n';
      return;
    case Format::Csv: {
      auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          const bool quote = cells[i].find_first_of(",\"") != std::string::npos;
          if (i) out << ',';
          if (quote) {
            out << '"';
            for (char c : cells[i]) out << (c == '"' ? "\"\"" : std::string(1, c));
            out << '"';
          } else {
            out << cells[i];
          }
        }
        out << '\n';
      };
      line(r.table.header);
      for (const auto& row : r.table.rows) line(row);
      return;
    }
    case Format::Pretty: {
      for (const auto& [key, value] : r.report.items()) {
        if (value.is_primitive()) out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
      std::vector<std::size_t> width(r.table.header.size(), 0);
      for (std::size_t i = 0; i < width.size(); ++i) width[i] = r.table.header[i].size();
      for (const auto& row : r.table.rows) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          out << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
        }
        out << '\n';
      };
      if (!r.table.header.empty()) {
        out << '\n';
        line(r.table.header);
        for (const auto& row : r.table.rows) line(row);
      }
      return;
    }
  }
}

namespace {

void add_spec_options(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "characteristic");
  sub->add_option("--q", o.q, "field size p^r (alternative to --p/--r)");
  sub->add_option("--r", o.r, "extension degree");
  sub->add_option("--n", o.n, "number of variables")->capture_default_str();
  sub->add_option("--m", o.m, "Frobenius exponent")->capture_default_str();
  sub->add_option("--ell", o.ell, "transvection root space dimension (default n - 1)");
  sub->add_option("--e", o.e, "order of the diagonal part, dividing q - 1")->capture_default_str();
  sub->add_flag("--full-stabilizer", o.full_stabilizer, "pointwise stabilizer of the hyperplane in GL_n(F_q)");
}

void add_common_options(CLI::App* sub, Options& o) {
  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}, {"pretty", Format::Pretty}};
  sub->add_option("--format", o.format, "json, csv or pretty")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->option_text("json|csv|pretty [json]");
  sub->add_option("--max-points", o.max_points, "cap on enumerated points")->capture_default_str();
  sub->add_option("--max-monomials", o.max_monomials, "cap on quotient monomials")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "worker threads")->envname("FROBPOW_JOBS")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Invariants of hyperplane-fixing groups modulo Frobenius powers"};
  app.require_subcommand(1);
  app.name("frobpow");

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function: closed form against brute force");
  add_spec_options(hilbert, o);
  hilbert->add_option("--mode", o.mode, "formula, brute or both")
      ->check(CLI::IsMember({"formula", "brute", "both"}))
      ->capture_default_str();
  hilbert->add_option("--D", o.D, "truncation degree (default n(q^m - 1))");

  auto* gbcheck = app.add_subcommand("gbcheck", "Groebner certificate for the h-generators");
  add_spec_options(gbcheck, o);
  gbcheck->add_flag("--complete", o.complete, "also complete the kernel from scratch and compare");

  auto* decompose = app.add_subcommand("decompose", "A_G + B_G against the brute-force fixed space");
  add_spec_options(decompose, o);

  auto* orbits = app.add_subcommand("orbits", "orbit count on (F_{q^m})^n");
  add_spec_options(orbits, o);
  orbits->add_option("--generators", o.generators, "JSON file of matrices (exploratory, nothing asserted)");

  auto* resolution = app.add_subcommand("resolution2d", "free resolution for n = 2");
  add_spec_options(resolution, o);

  auto* conjecture = app.add_subcommand("conjecture", "conjectured series for GL_n(F_q)");
  add_spec_options(conjecture, o);
  conjecture->add_option("--D", o.D, "truncation degree (default n(q^m - 1))");

  auto* sweep = app.add_subcommand("sweep", "run a manifest over a parameter grid");
  sweep->add_option("--manifest", o.manifest, "manifest JSON file")->required();

  for (auto* sub : {hilbert, gbcheck, decompose, orbits, resolution, conjecture, sweep}) add_common_options(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return exit_code::invalid_spec;
  }

  try {
    Result r;
    if (hilbert->parsed()) r = cmd_hilbert(o);
    else if (gbcheck->parsed()) r = cmd_gbcheck(o);
    else if (decompose->parsed()) r = cmd_decompose(o);
    else if (orbits->parsed()) r = cmd_orbits(o);
    else if (resolution->parsed()) r = cmd_resolution2d(o);
    else if (conjecture->parsed()) r = cmd_conjecture(o);
    else r = cmd_sweep(o);
    emit(r, o.format, out);
    if (!r.summary.empty()) err << r.summary << '\n';
    return r.exit_code;
  } catch (const SpecError& ex) {
    err << "invalid parameters: " << ex.what() << '\n';
    return exit_code::invalid_spec;
  } catch (const CapExceeded& ex) {
    err << "cap exceeded: " << ex.what() << "; raise --max-points or --max-monomials\n";
    return exit_code::cap_exceeded;
  } catch (const std::exception& ex) {
    err << "check failed: " << ex.what() << '\n';
    return exit_code::mismatch;
  }
}

}  // namespace frobpow::cli
