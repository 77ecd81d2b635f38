#pragma once

// Command implementations behind the frobpow executable. Each command returns
// its report as JSON plus a table for the csv and pretty formats.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobpow/group.hpp"

namespace frobpow::cli {

enum class Format { Json, Csv, Pretty };

namespace exit_code {
constexpr int ok = 0;
constexpr int mismatch = 1;
constexpr int invalid_spec = 2;
constexpr int cap_exceeded = 3;
constexpr int conjecture_mismatch = 10;
}  // namespace exit_code

struct Options {
  std::optional<std::uint64_t> p;
  std::optional<std::uint64_t> q;
  std::optional<unsigned> r;
  unsigned n = 2;
  unsigned m = 1;
  std::optional<unsigned> ell;  // defaults to n - 1
  std::uint64_t e = 1;
  bool full_stabilizer = false;
  std::string mode = "both";
  std::optional<std::size_t> D;
  Format format = Format::Json;
  std::uint64_t max_points = 1'000'000;
  std::uint64_t max_monomials = 1'000'000;
  unsigned jobs = 1;
  bool complete = false;   // gbcheck: also run the from-scratch completion
  std::string generators;  // orbits: JSON file of matrices for exploratory runs
  std::string manifest;    // sweep
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Result {
  int exit_code = exit_code::ok;
  nlohmann::ordered_json report;
  Table table;
  std::string summary;  // one line for stderr
};

/// Resolves --p/--q/--r and the remaining fields. Throws SpecError on
/// inconsistent input; the result is not yet validated.
GroupSpec spec_from(const Options& o);
nlohmann::ordered_json spec_json(const GroupSpec& s);

Result cmd_hilbert(const Options& o);
Result cmd_gbcheck(const Options& o);
Result cmd_decompose(const Options& o);
Result cmd_orbits(const Options& o);
Result cmd_resolution2d(const Options& o);
Result cmd_conjecture(const Options& o);
Result cmd_sweep(const Options& o);

/// Runs every command of a manifest over its grid. Invalid grid points are
/// skipped and listed; runs are merged in grid order.
Result run_manifest(const nlohmann::json& manifest, unsigned jobs);

void emit(const Result& r, Format f, std::ostream& out);

/// Full command line handling, including the exit-code mapping for errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frobpow::cli
