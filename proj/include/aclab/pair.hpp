#pragma once

#include <optional>
#include <vector>

#include "aclab/lattice.hpp"

namespace aclab {

// Minimal models, exactly the cases of the classification of minimal
// anticanonical pairs. The F0/F2 ambiguity in the last two kinds is kept
// explicit through the n parameter (0 or 2): the two surfaces carry the same
// sequences but are not isomorphic.
enum class MinimalKind {
    P2_111,                // P^2, three lines: (1,1,1)
    P2_14,                 // P^2, line + conic: (1,4)
    P2_9,                  // P^2, nodal cubic: (9)
    FN_N0N0,               // F_N, s0 + f1 + s + f2: (-N,0,N,0)
    FN_N_Np2_0,            // F_N, s0 + s + f: (-N,N+2,0)
    FN_N_Np4,              // F_N, s0 + s: (-N,N+4)
    F0orF2_Bisection8,     // F_0 or F_2, nodal bisection: (8)
    F0orF2_TwoSections22,  // F_0 or F_2, two sections: (2,2)
};

struct MinimalModel {
    MinimalKind kind;
    long n = 0;  // N for the FN kinds; 0 or 2 for the F0orF2 kinds

    bool operator==(const MinimalModel& o) const { return kind == o.kind && n == o.n; }
    bool uses_n() const;
    void validate() const;
    std::vector<Int> sequence() const;
    long charge() const;
    bool toric() const { return kind == MinimalKind::P2_111 || kind == MinimalKind::FN_N0N0; }
};

// A point of D_i^int ~ G_m: component index (1-based) plus a nonzero
// rational coordinate. (Defined here rather than in the cycle module so the
// blowup log can carry points without a dependency cycle.)
struct CyclePoint {
    std::size_t component = 0;
    Rat coord;

    CyclePoint() = default;
    CyclePoint(std::size_t comp, Rat c) : component(comp), coord(std::move(c)) {
        if (coord == 0) throw error("CyclePoint: coordinate must be nonzero");
    }
    bool operator==(const CyclePoint& o) const {
        return component == o.component && coord == o.coord;
    }
};

struct BlowupStep {
    enum class Kind { Interior, InteriorNear, Corner };
    Kind kind = Kind::Interior;
    std::size_t component = 0;  // Interior: component index when the step was applied
    Rat point;                  // Interior: G_m coordinate of the blown-up point
    std::size_t parent = 0;     // InteriorNear: 1-based index of the parent log entry
    std::size_t edge = 0;       // Corner: edge index when the step was applied

    static BlowupStep interior(std::size_t component, Rat point) {
        BlowupStep s;
        s.kind = Kind::Interior;
        s.component = component;
        s.point = std::move(point);
        return s;
    }
    static BlowupStep interior_near(std::size_t parent) {
        BlowupStep s;
        s.kind = Kind::InteriorNear;
        s.parent = parent;
        return s;
    }
    static BlowupStep corner(std::size_t edge) {
        BlowupStep s;
        s.kind = Kind::Corner;
        s.edge = edge;
        return s;
    }
    bool is_interior() const { return kind != Kind::Corner; }
    bool operator==(const BlowupStep& o) const {
        return kind == o.kind && component == o.component && point == o.point &&
               parent == o.parent && edge == o.edge;
    }
};

// Cyclic integer sequence, compared up to rotation (and optionally
// reflection, when the orientation is ignored).
struct SelfIntSeq {
    std::vector<Int> entries;

    bool same_up_to_rotation(const SelfIntSeq& o, bool allow_reflection = false) const;
    std::vector<Int> canonical_rotation() const;
};

// State of one log entry after application.
struct StepRecord {
    BlowupStep step;
    std::size_t basis_index = 0;  // position of this step's e_k in the ambient basis
    int component_id = 0;         // interior: stable id of the carrying component
    Rat point;                    // interior: effective point (near steps inherit it)
};

// Anticanonical pair, represented constructively as a minimal model plus a
// blowup log. Values are immutable; blowups return new pairs.
class AnticanonicalPair {
  public:
    static AnticanonicalPair make(MinimalModel minimal, bool orientation = true);
    static AnticanonicalPair from_log(MinimalModel minimal, bool orientation,
                                      const std::vector<BlowupStep>& log);

    AnticanonicalPair interior_blowup(std::size_t component, const CyclePoint& pt) const;
    AnticanonicalPair interior_blowup_near(std::size_t parent_step) const;
    AnticanonicalPair corner_blowup(std::size_t edge) const;

    // Inverse of the final log entry; e must be that entry's exceptional
    // class (for a corner step this is the -1 cycle component it created).
    AnticanonicalPair blow_down(const ClassVec& e) const;

    std::size_t r() const { return cycle_.size(); }
    const LatticePtr& ambient() const { return ambient_; }
    const MinimalModel& minimal() const { return minimal_; }
    bool orientation() const { return orientation_; }
    const std::vector<StepRecord>& log() const { return log_; }

    const ClassVec& cycle_class(std::size_t i) const { return cycle_.at(i - 1).cls; }
    std::vector<ClassVec> cycle_classes() const;
    int component_id(std::size_t i) const { return cycle_.at(i - 1).id; }
    std::size_t component_index_of(int id) const;  // 1-based
    SelfIntSeq sequence() const;

    ClassVec anticanonical_class() const;  // -K = sum of cycle classes
    ClassVec canonical_class() const;
    Int dsquare() const;
    long charge() const;  // cross-checked against 2 + b2 - r
    bool is_toric() const { return charge() == 0; }

    // Lambda = [D_1..D_r]^perp, with the rank identity rank = Q - 2 + s
    // verified on every call.
    SublatticeResult lambda_lattice() const;
    std::size_t kernel_rank_s() const;
    std::pair<std::size_t, std::size_t> deformation_dims() const;  // (moduli, aut)

    // Ample-ish reference class built from the log; lies in the positive
    // cone component that contains the ample classes.
    ClassVec ample_reference() const;

    // The basis vector e_k of a log entry, as a ClassVec.
    ClassVec step_class(std::size_t step_index) const;

    bool operator==(const AnticanonicalPair& o) const;

    struct Reduction {
        std::vector<BlowupStep> blowdowns;  // reversed log
        MinimalModel endpoint;
    };
    Reduction minimal_model_search() const;

  private:
    struct Component {
        int id;
        ClassVec cls;
    };

    AnticanonicalPair() = default;
    void extend_ambient();
    void check_invariants() const;

    MinimalModel minimal_{MinimalKind::P2_111, 0};
    bool orientation_ = true;
    LatticePtr ambient_;
    std::vector<Component> cycle_;
    std::vector<Int> tracked_seq_;  // maintained by the blowup rules
    std::vector<StepRecord> log_;
    int next_id_ = 1;
};

// One combinatorial corner move on a self-intersection sequence.
struct CornerMove {
    bool blowup = true;     // otherwise blowdown
    std::size_t index = 0;  // 1-based: edge for a blowup, component for a blowdown
};

std::vector<Int> apply_corner_move(const std::vector<Int>& seq, const CornerMove& mv);
long sequence_charge(const std::vector<Int>& seq);

// Explicit zig-zag of corner blowups/blowdowns taking a charge-zero sequence
// to (0,0,0,0). Errors when Q != 0 or when the sequence is combinatorially
// inconsistent.
std::vector<CornerMove> toric_reduction(const std::vector<Int>& seq);

}  // namespace aclab
