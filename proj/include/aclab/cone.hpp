#pragma once

#include <optional>

#include "aclab/period.hpp"

namespace aclab {

// Numerical exceptional curve class: alpha^2 = alpha.K = -1.
struct NumExcClass {
    ClassVec cls;

    NumExcClass() = default;
    explicit NumExcClass(ClassVec c) : cls(std::move(c)) {}
};

enum class EffMode { NotNegSemidef, StrictlySemidef, NegDef };

// Decision data for "is this numerical exceptional class effective?".
// Components that are themselves exceptional curves are contracted first at
// the lattice level; the test class then realizes the case split of the
// effectiveness criterion:
//   (i)  not negative semidefinite: pair against a component with d_i >= 0
//   (ii) strictly semidefinite:     pair against [D]
//   (iii) negative definite:        pair against a nef y in Lambda_Q, off
//         every wall up to the certification bound
class EffectivenessContext {
  public:
    static EffectivenessContext build(const AnticanonicalPair& p, long bound);

    bool is_effective(const NumExcClass& alpha) const;
    bool is_numexc(const ClassVec& alpha) const;

    EffMode mode() const { return mode_; }
    std::size_t mode_component() const { return mode_component_; }  // for NotNegSemidef
    long certified_bound() const { return bound_; }
    const RatVec& test_class() const { return test_; }
    const AnticanonicalPair& pair() const { return *pair_; }

    // Projection into the reduced lattice (contracting exceptional cycle
    // components).
    ClassVec reduce(const ClassVec& v) const;

  private:
    const AnticanonicalPair* pair_ = nullptr;
    EffMode mode_ = EffMode::NotNegSemidef;
    std::size_t mode_component_ = 0;
    long bound_ = 0;
    std::vector<ClassVec> contracted_;     // classes of contracted components, in order
    std::vector<ClassVec> reduced_cycle_;  // cycle classes after contraction
    RatVec test_;                          // ambient-coordinates test class
};

// All numerical exceptional classes with |coordinates| <= height_bound, in
// lexicographic coordinate order. No effectiveness filter.
std::vector<NumExcClass> enumerate_numexc(const AnticanonicalPair& p, long height_bound);

// The effective ones among them.
std::vector<NumExcClass> enumerate_exceptional(const AnticanonicalPair& p,
                                               const EffectivenessContext& ctx,
                                               long height_bound);

// All beta in Lambda with beta^2 = -2 and |coordinates| <= height_bound (in
// ambient coordinates), lexicographic.
std::vector<ClassVec> enumerate_lambda_roots(const AnticanonicalPair& p, long height_bound);

struct ConeMembership {
    bool inside = false;
    long bound = 0;
    std::optional<ClassVec> violating;  // failing wall class, when outside
    std::string reason;
};

// x in the closed generic ample cone: x^2 > 0, x in the ample component,
// x.[D_i] >= 0, and x.alpha >= 0 for every enumerated effective class.
ConeMembership in_generic_ample_cone(const AnticanonicalPair& p, const EffectivenessContext& ctx,
                                     const RatVec& x, long height_bound);

struct RootClass {
    ClassVec cls;
    std::optional<std::pair<NumExcClass, NumExcClass>> witness;  // cls = E1 - E2
};

// Witness search for the root criterion: beta = [E1] - [E2] with disjoint
// effective exceptional classes meeting the same components. The minimal
// F0/F2 pairs are the rank-one special case. A nullopt is
// "not-found-within-bound", not a certified negative.
std::optional<RootClass> is_root(const AnticanonicalPair& p, const EffectivenessContext& ctx,
                                 const ClassVec& beta, long height_bound);

struct ReflectionTestResult {
    bool preserved = true;
    std::optional<ClassVec> violated;  // effective class reflected outside the effective set
};

// Independent oracle: r_beta must map the effective set into itself. A
// violation is a definitive negative certificate.
ReflectionTestResult reflection_root_test(const AnticanonicalPair& p,
                                          const EffectivenessContext& ctx, const ClassVec& beta,
                                          long height_bound);

ClassVec reflect(const ClassVec& x, const ClassVec& beta);
RatVec reflect(const RatVec& x, const ClassVec& beta);

struct WeylReduction {
    std::vector<ClassVec> word;  // reflections applied, in order
    RatVec reduced;
};

// Chamber reduction: reflect in nodal classes with x.beta < 0 until none
// remain. Terminates by reflection-group descent; the iteration cap guards
// against inconsistent nodal sets.
WeylReduction weyl_reduce(const AnticanonicalPair& p, const std::vector<RootClass>& nodal,
                          const RatVec& x);

struct AdmissibilityVerdict {
    bool admissible = false;
    bool shortcut = false;  // granted by the non-negative-definite / D^2 = -1 theorem
    long bound = 0;
    std::optional<ClassVec> violating;
};

// gamma must fix each [D_i]; verdicts in the negative definite case (other
// than D^2 = -1) are certified only up to the height bound.
AdmissibilityVerdict is_admissible(const IntIsometry& gamma, const AnticanonicalPair& p,
                                   const EffectivenessContext& ctx, long height_bound);

}  // namespace aclab
