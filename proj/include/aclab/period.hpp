#pragma once

#include <optional>

#include "aclab/cycle.hpp"

namespace aclab {

// Marked interior points p_i, one per component, pinning down a lift of the
// period homomorphism to all of H^2.
struct Rigidification {
    std::vector<CyclePoint> points;

    explicit Rigidification(std::vector<CyclePoint> pts);
    static Rigidification standard(std::size_t r);  // all points at 1
    const Rat& coord(std::size_t component) const { return points.at(component - 1).coord; }
};

// Period homomorphism phi: Lambda -> G_m, recorded by values on a Z-basis.
struct PeriodHom {
    std::vector<ClassVec> basis;
    std::vector<Rat> values;

    PeriodHom(std::vector<ClassVec> b, std::vector<Rat> v);

    // Multiplicative evaluation on any integer combination of the basis.
    Rat evaluate(const ClassVec& alpha) const;
    bool same_hom(const PeriodHom& o) const;
};

// Extended period phi-hat: values on the full ambient basis, together with
// the rigidification that produced it.
struct ExtendedPeriod {
    LatticePtr ambient;
    std::vector<Rat> values;  // one per ambient basis vector
    Rigidification rig;

    Rat evaluate(const ClassVec& alpha) const;
};

// Computes phi-hat_{Y;p} for a log-backed pair. Pairs over a toric minimal
// model use the normalized base chart (value 1 on every base generator when
// the marked points sit at 1); other minimal models need caller-supplied
// base values, one per minimal-model generator, since their base periods
// depend on actual curve geometry.
ExtendedPeriod extended_period(const AnticanonicalPair& p, const Rigidification& rig,
                               const std::optional<std::vector<Rat>>& base_values = std::nullopt);

// Restriction of an extended period to Lambda; independent of the
// rigidification.
PeriodHom restrict_to_lambda(const ExtendedPeriod& ep, const AnticanonicalPair& p);

PeriodHom period_of(const AnticanonicalPair& p,
                    const std::optional<std::vector<Rat>>& base_values = std::nullopt);

// phi(beta) == 1 test for beta in Lambda with beta^2 = -2. The caller
// combines this with the root test for full nodal-class semantics.
bool is_nodal_class(const PeriodHom& ph, const ClassVec& beta);

// Moving blowup points in the family: step_index identifies the log entry
// whose point moves to new_point.
struct PointMove {
    std::size_t step_index = 0;  // 1-based into the log
    Rat new_point;
};

// phi_{Y_t}(alpha) = phi_Y(alpha) * psi(O_D(sum n_k (p_k - q_k))) with n_k
// the exceptional multiplicities of alpha.
PeriodHom blowup_period_update(const PeriodHom& base, const AnticanonicalPair& p,
                               const std::vector<PointMove>& moves);

struct LiftComparison {
    std::optional<CycleAut> witness;      // the unique phi in K when lifts agree
    std::vector<Rat> discrepancy;         // f(phi) values on the ambient basis otherwise
};

// Lemma on lifts: two extended periods with equal restriction agree iff the
// automorphism moving one rigidification to the other lies in K(Y,D).
LiftComparison lift_equivalence(const ExtendedPeriod& ep1, const ExtendedPeriod& ep2,
                                const AnticanonicalPair& p);

// Intersection matrix f: H^2 -> Z^r, alpha -> (alpha . D_i); rows indexed by
// components.
IMat intersection_map(const AnticanonicalPair& p);

}  // namespace aclab
