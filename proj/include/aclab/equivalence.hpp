#pragma once

#include "aclab/cone.hpp"

namespace aclab {

// Solves prod_i x_i^(M(i,j)) = target_j over G_m(Q) for every column j, via
// the Smith decomposition. Fails when the system is inconsistent or needs
// roots that do not exist in Q*.
std::optional<std::vector<Rat>> solve_multiplicative(const IMat& m, const std::vector<Rat>& target);

// K(Y,D) = Hom(F, G_m) where F = coker(intersection map). The returned
// structure lists F's invariants: its torsion survives in K and its free
// rank becomes a G_m-factor rank.
AbelianGroupStructure K_group(const AnticanonicalPair& p);

// Admissibility for an isometry between two pairs (gamma: H^2(Y') -> H^2(Y)
// carrying [D_i'] to [D_i]).
AdmissibilityVerdict is_admissible_between(const IntIsometry& gamma, const AnticanonicalPair& p1,
                                           const EffectivenessContext& ctx1,
                                           const AnticanonicalPair& p2,
                                           const EffectivenessContext& ctx2, long height_bound);

// Bounded backtracking search for an admissible isometry carrying the
// labeled cycle of p2 to that of p1. nullopt = not-found-within-bound.
std::optional<IntIsometry> deformation_equivalent(const AnticanonicalPair& p1,
                                                  const AnticanonicalPair& p2, long height_bound);

struct MatchVerdict {
    enum class Status { Matched, MatchedAfterWeyl, NoMatch };
    Status status = Status::NoMatch;
    std::string reason;                    // NoMatch: which condition failed
    std::optional<ClassVec> violating;     // NoMatch(period): a violating class
    std::vector<ClassVec> weyl_word;       // w with rho* = w o gamma
    std::optional<CycleAut> k_witness;     // phi in K moving the points
    std::vector<std::pair<Rat, Rat>> correspondence;  // q_k of p1 -> transported q'_k

    bool matched() const { return status != Status::NoMatch; }
};

// Combinatorial Torelli matching: gamma must carry [D_i'] to [D_i], be
// admissible, and intertwine the periods; the verdict then reconstructs the
// unique Weyl twist and the blowup-point correspondence q' = phi(q) with
// phi in K.
MatchVerdict torelli_match(const AnticanonicalPair& p1, const AnticanonicalPair& p2,
                           const IntIsometry& gamma, long height_bound);

struct HodgeReport {
    std::vector<RootClass> nodal_generators;  // roots with phi = 1, up to bound
    std::size_t aut_candidates_checked = 0;
    std::size_t aut_witnesses = 0;  // self-isometries realized by automorphisms
    std::string structure_note;
};

HodgeReport hodge_group_report(const AnticanonicalPair& p, long height_bound);

// Deformation-type key of the blowdown along an effective exceptional class:
// the self-intersection sequence with d_i incremented at the component the
// class meets. Equal keys mark Gamma-equivalence candidates.
std::string gamma_orbit_signature(const AnticanonicalPair& p, const NumExcClass& e);

}  // namespace aclab
