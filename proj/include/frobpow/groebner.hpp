#pragma once

// Polynomials in the basic invariants f_1 .. f_n: subduction, the Groebner
// certificate for the h-generators, initial-ideal Hilbert series and the
// two-variable free resolution.

#include <cstdint>
#include <string>
#include <vector>

#include "frobpow/invariants.hpp"
#include "frobpow/qseries.hpp"

namespace frobpow {

/// A polynomial in f_1 .. f_n together with the weighted order on S^G.
struct FPoly {
  Polynomial poly;
  MonomialOrder order;
};

/// Rewrites an invariant f in f-coordinates by leading-term matching against
/// LM(f_i) = x_i^{w_i}. Throws std::domain_error("not in S^G ...") when a
/// leading monomial is not of the form prod x_i^{w_i c_i}.
FPoly subduct(const Polynomial& f, const BasicInvariants& basic);

/// Expansion of an f-polynomial in x-coordinates.
Polynomial expand(const FPoly& F, const BasicInvariants& basic);

struct PairCertificate {
  std::size_t i = 0;
  std::size_t j = 0;
  bool coprime_leading = false;  // first criterion applies
  Polynomial remainder;
};

struct GroebnerCertificate {
  std::vector<std::string> labels;
  std::vector<PairCertificate> pairs;
  std::vector<bool> in_frobenius;  // x-expansion vanishes mod (x_i^Q)
  std::vector<bool> closed_form;   // x-expansion equals the closed form
  bool pass() const;
};

/// Reduces every S-polynomial of the h-list by the list (in order) and checks
/// both membership directions for each generator.
GroebnerCertificate buchberger_check(const Group& group, const BasicInvariants& basic, const HGenerators& hgens,
                                     unsigned jobs = 1);

/// True when F reduces to 0 modulo the h-list.
bool in_h_ideal(const Polynomial& F, const HGenerators& hgens, const MonomialOrder& order);

/// Reduced Groebner basis (monic, sorted by descending leading monomial).
std::vector<Polynomial> reduced_groebner_basis(std::vector<Polynomial> gens, const MonomialOrder& order);

struct CompletionReport {
  std::size_t kernel_generators = 0;  // linearly independent kernel elements used
  std::vector<Polynomial> from_kernel;
  std::vector<Polynomial> from_h;
  bool pass() const { return from_kernel == from_h; }
};

/// Second oracle: spans the kernel of S^G -> S/(x_i^Q) degree by degree up to
/// the top h-degree, completes it with Buchberger's algorithm and compares the
/// reduced basis with the reduced h-list. Throws CapExceeded when more than
/// `max_fmonomials` f-monomials would be expanded.
CompletionReport buchberger_complete(const Group& group, const BasicInvariants& basic, const HGenerators& hgens,
                                     std::uint64_t max_fmonomials = 20'000);

/// Hilbert series of the polynomial ring on variables of the given weights
/// modulo the monomial ideal generated by `lms`, by inclusion-exclusion over
/// subsets of generators.
TruncatedSeries initial_ideal_hilbert(const std::vector<Monomial>& lms, const std::vector<std::uint64_t>& weights,
                                      std::size_t D);

struct SyzygyCheck {
  std::string label;
  std::vector<Polynomial> coeffs;  // one per generator
  bool vanishes = false;
};

struct ResolutionReport {
  std::uint64_t p = 0;
  unsigned m = 0;
  std::uint64_t e = 1;
  unsigned ell = 1;
  std::size_t D = 0;
  std::vector<std::string> generator_labels;
  std::vector<Polynomial> generators;  // in f-coordinates
  std::vector<SyzygyCheck> syzygies;
  bool redundancy_ok = true;      // tau_{0,2} = (R - A_0) tau_{0,1} - f_2^{(Q-1)/e} tau_{1,2}
  TruncatedSeries resolution;     // Hilb(F_0) - Hilb(F_1)
  TruncatedSeries ideal;          // Hilb(S^G) - Hilb(A_G)
  TruncatedSeries closed_form;    // nonmodular branch only
  bool pass() const;
};

/// n = 2. ell = 1 builds the three-generator resolution; ell = 0 the
/// nonmodular two-generator one. D defaults to 2Q + e.
ResolutionReport resolution_2d(std::uint64_t p, unsigned m, std::uint64_t e, unsigned ell = 1,
                               const BruteForceOptions& opts = {});

}  // namespace frobpow
