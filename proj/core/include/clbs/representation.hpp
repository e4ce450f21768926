#pragma once

// The representation π induced by a branching system, realized on finitely
// supported functions X → Q. A basis vector δ_p is moved by generators as
//   π(v) δ_p  = δ_p          if p ∈ D_v,
//   π(e) δ_p  = δ_{f_e(p)}   if p ∈ D_{r(e)},
//   π(e*) δ_p = δ_{f_e⁻¹(p)} if p ∈ R_e,
// and is sent to 0 otherwise. Monomials therefore act as partial injective
// piecewise-affine maps, and π(x) = 0 is decidable exactly.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clbs/algebra.hpp"
#include "clbs/branching.hpp"
#include "clbs/graph.hpp"
#include "clbs/interval.hpp"

namespace clbs {

/// Finitely supported function X → Q, stored without zero coefficients.
class DeltaVector {
 public:
  DeltaVector() = default;
  static DeltaVector delta(const Rational& p, const Rational& c = 1);

  void add(const Rational& p, const Rational& c);
  [[nodiscard]] const std::map<Rational, Rational>& support() const {
    return support_;
  }
  [[nodiscard]] bool is_zero() const { return support_.empty(); }
  [[nodiscard]] Rational at(const Rational& p) const;

  DeltaVector& operator+=(const DeltaVector& o);
  DeltaVector& operator*=(const Rational& s);
  friend DeltaVector operator+(DeltaVector a, const DeltaVector& b) {
    return a += b;
  }
  friend DeltaVector operator*(const Rational& s, DeltaVector a) {
    return a *= s;
  }

  /// "c*d(p) + ..." with exact rationals; "0" when empty.
  [[nodiscard]] std::string str() const;
  /// Parses "p=c,p=c" (a bare "p" means coefficient 1).
  static DeltaVector parse(std::string_view text);

  friend bool operator==(const DeltaVector&, const DeltaVector&) = default;

 private:
  std::map<Rational, Rational> support_;
};

/// Action of one word: δ_p ↦ δ_{map(p)} for p in defined_domain, else 0.
struct MonomialAction {
  PiecewiseLinearMap map;
  IntervalUnion defined_domain;
};

struct ZeroDecision {
  bool zero = true;
  Rational witness;     // meaningful when !zero
  DeltaVector image;    // π(x) δ_witness
};

class Representation {
 public:
  explicit Representation(BranchingSystem bs);

  [[nodiscard]] const BranchingSystem& system() const { return bs_; }

  [[nodiscard]] std::optional<Rational> act(const Generator& gen,
                                            const Rational& p) const;
  [[nodiscard]] DeltaVector apply(const Element& x,
                                  const DeltaVector& phi) const;
  [[nodiscard]] MonomialAction action(const Word& w) const;

  /// Exact decision of π(x) = 0. Samples every domain breakpoint of every
  /// monomial action, every point where two actions that are affine on a
  /// common cell cross, and a midpoint of every gap between consecutive
  /// sample points; between these the set of coinciding images is constant,
  /// so no other point can behave differently. The witness is the smallest
  /// sampled point with non-zero image.
  [[nodiscard]] ZeroDecision is_zero(const Element& x) const;

  /// Sample points that decide every combination of the given words.
  [[nodiscard]] std::vector<Rational> sample_points(
      const std::vector<Word>& words) const;

  /// Rank of {π(w)} as operators, by exact elimination on the matrix of
  /// (p, image) incidences over sample_points(words).
  [[nodiscard]] std::size_t operator_rank(const std::vector<Word>& words) const;

 private:
  BranchingSystem bs_;
  std::vector<PiecewiseLinearMap> inverse_maps_;
};

/// Rank of a dense rational matrix by fraction-exact Gaussian elimination.
std::size_t exact_rank(std::vector<std::vector<Rational>> rows);

struct RelationVerdict {
  std::string name;
  std::string element;   // formatted element that was tested
  bool expect_zero = true;
  bool passed = false;
  std::string witness;   // set when the decision was NONZERO
};

struct RelationReport {
  std::vector<RelationVerdict> verdicts;
  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::size_t failures() const;
};

/// Every instance of the defining relations (vertex idempotence and
/// orthogonality, s(e)e = e = e r(e), r(e)e* = e* = e* s(e), e*f = δ r(e)
/// within groups, v = Σ_X ee* for X ∈ S) must be ZERO under π.
RelationReport relation_check(const SeparatedGraph& g,
                              const Representation& rep);

/// Non-vanishing consequences: π(e) ≠ 0, π(v) ≠ 0, π(e*f) ≠ 0 for e in an
/// earlier and f in a later group of one vertex, Σ_X ee* ≠ v for X ∉ S
/// (while Σ_X ee* v = Σ_X ee* = v Σ_X ee*),
/// and Σ_X ee* ≠ Σ_Y ff* for distinct groups outside S. Witnesses for the
/// Σ_X ee* ≠ v cases are recorded in the verdict.
RelationReport consequence_suite(const SeparatedGraph& g,
                               const Representation& rep);

struct FaithfulnessReport {
  std::size_t trials = 0;
  std::size_t nonzero = 0;
  std::size_t converse_trials = 0;
  std::size_t converse_zero = 0;
  std::size_t redraws = 0;
  std::vector<std::string> counterexamples;
  [[nodiscard]] bool passed() const {
    return nonzero == trials && converse_trials == trials &&
           converse_zero == converse_trials;
  }
};

/// Random non-zero combinations of spanning-set words must be NONZERO under
/// π, and random elements that reduce to 0 must be ZERO. Throws
/// PreconditionError unless the graph has a common source, injective range
/// and no loops.
FaithfulnessReport faithfulness_trial(const SeparatedGraph& g,
                                      const Representation& rep,
                                      const SelectedEdges& sel,
                                      std::size_t length_bound,
                                      std::size_t trials, std::uint64_t seed);

}  // namespace clbs
