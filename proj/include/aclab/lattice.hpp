#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aclab/normal_form.hpp"

namespace aclab {

// Free Z-lattice with a symmetric integer Gram form and labeled basis.
// Instances are immutable after construction and shared by pointer.
struct GramLattice {
    std::size_t rank = 0;
    IMat gram;
    std::vector<std::string> labels;

    GramLattice(IMat g, std::vector<std::string> names);

    bool is_even() const;
    bool same_as(const GramLattice& o) const {
        return rank == o.rank && gram == o.gram && labels == o.labels;
    }
};

using LatticePtr = std::shared_ptr<const GramLattice>;

LatticePtr make_lattice(IMat gram, std::vector<std::string> labels);

// Vector in a fixed ambient lattice, stored in basis coordinates.
struct ClassVec {
    std::vector<Int> coords;
    LatticePtr ambient;

    ClassVec() = default;
    ClassVec(std::vector<Int> c, LatticePtr l);

    bool operator==(const ClassVec& o) const { return coords == o.coords; }
    ClassVec operator+(const ClassVec& o) const;
    ClassVec operator-(const ClassVec& o) const;
    ClassVec operator-() const;
    ClassVec scaled(const Int& c) const;
    bool is_zero() const;
};

Int inner(const ClassVec& x, const ClassVec& y);
inline Int square(const ClassVec& x) { return inner(x, x); }

// Rational vector in an ambient lattice; used for cone membership and the
// nef test classes of the negative definite effectiveness criterion.
struct RatVec {
    std::vector<Rat> coords;
    LatticePtr ambient;

    RatVec() = default;
    RatVec(std::vector<Rat> c, LatticePtr l);
    explicit RatVec(const ClassVec& v);
};

Rat inner(const RatVec& x, const RatVec& y);
Rat inner(const RatVec& x, const ClassVec& y);
inline Rat square(const RatVec& x) { return inner(x, x); }

// Integer isometry between (possibly equal) lattices: matrix columns are the
// images of the source basis, expressed in the target basis.
struct IntIsometry {
    IMat matrix;
    LatticePtr source, target;

    IntIsometry() = default;
    IntIsometry(IMat m, LatticePtr src, LatticePtr tgt);

    ClassVec apply(const ClassVec& v) const;
    RatVec apply(const RatVec& v) const;
    bool is_isometry() const;
    IntIsometry inverse() const;
    IntIsometry compose(const IntIsometry& first) const;  // this o first
};

IntIsometry identity_isometry(const LatticePtr& l);

// Finitely generated abelian group: free rank plus invariant factor chain
// d_1 | d_2 | ... with every d_i > 1.
struct AbelianGroupStructure {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;

    bool operator==(const AbelianGroupStructure& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool trivial() const { return free_rank == 0 && torsion.empty(); }
    std::string to_string() const;
};

// Structure of coker(Z^cols -> Z^rows) for the given matrix.
AbelianGroupStructure cokernel_structure(const IMat& m);

struct SublatticeResult {
    std::vector<ClassVec> basis;  // in ambient coordinates
    LatticePtr lattice;           // induced Gram on that basis
};

// Basis of {x : x . s = 0 for all s in spans}, with its induced Gram form.
// The result is a primitive (saturated) sublattice.
SublatticeResult orthogonal_complement(const LatticePtr& l, const std::vector<ClassVec>& spans);

enum class Definiteness { NegativeDefinite, StrictlyNegativeSemidefinite, IndefiniteOrOther };

// Exact sign classification of the Gram form via rational symmetric
// elimination (no floating point).
Definiteness definiteness(const GramLattice& l);

struct Inertia {
    std::size_t positive = 0, negative = 0, zero = 0;
};
Inertia inertia(const IMat& gram);

struct HyperbolicSplit {
    ClassVec e, f;         // e^2 = f^2 = 0, e.f = 1
    SublatticeResult complement;
};

// For an even lattice of signature (1, rank-1): finds a hyperbolic pair with
// |e| coordinates bounded by search_bound and returns {e,f}^perp. The paper
// guarantees existence for its examples but gives no algorithm, so the
// search is bounded and reports not-found past the bound.
std::optional<HyperbolicSplit> hyperbolic_splitting(const LatticePtr& l, long search_bound);

// Coordinates of v in the given sublattice basis, if v lies in it.
std::optional<std::vector<Int>> coordinates_in(const std::vector<ClassVec>& basis, const ClassVec& v);

}  // namespace aclab
