#include "aclab/period.hpp"

namespace aclab {

Rigidification::Rigidification(std::vector<CyclePoint> pts) : points(std::move(pts)) {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].component != i + 1)
            throw error("Rigidification: point i must lie on component i");
}

Rigidification Rigidification::standard(std::size_t r) {
    std::vector<CyclePoint> pts;
    for (std::size_t i = 1; i <= r; ++i) pts.emplace_back(i, Rat(1));
    return Rigidification(std::move(pts));
}

PeriodHom::PeriodHom(std::vector<ClassVec> b, std::vector<Rat> v)
    : basis(std::move(b)), values(std::move(v)) {
    if (basis.size() != values.size()) throw error("PeriodHom: basis/value count mismatch");
    for (const Rat& x : values)
        if (x == 0) throw error("PeriodHom: values must lie in G_m");
}

namespace {
Rat power(const Rat& base, const Int& e) {
    if (e == 0) return Rat(1);
    Rat b = base;
    Int n = e;
    if (n < 0) {
        if (b == 0) throw error("power: zero base");
        b = 1 / b;
        n = -n;
    }
    Rat acc(1);
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}
}  // namespace

Rat PeriodHom::evaluate(const ClassVec& alpha) const {
    auto coords = coordinates_in(basis, alpha);
    if (!coords) throw error("PeriodHom::evaluate: class is not in Lambda");
    Rat v(1);
    for (std::size_t i = 0; i < coords->size(); ++i) v *= power(values[i], (*coords)[i]);
    return v;
}

bool PeriodHom::same_hom(const PeriodHom& o) const {
    // compare by evaluating o on this basis
    if (basis.size() != o.basis.size()) return false;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (o.evaluate(basis[i]) != values[i]) return false;
    return true;
}

Rat ExtendedPeriod::evaluate(const ClassVec& alpha) const {
    if (!alpha.ambient->same_as(*ambient)) throw error("ExtendedPeriod: class in wrong lattice");
    Rat v(1);
    for (std::size_t i = 0; i < alpha.coords.size(); ++i) v *= power(values[i], alpha.coords[i]);
    return v;
}

IMat intersection_map(const AnticanonicalPair& p) {
    std::size_t n = p.ambient()->rank;
    IMat m(p.r(), n);
    for (std::size_t i = 1; i <= p.r(); ++i) {
        std::vector<Int> row = p.ambient()->gram * p.cycle_class(i).coords;
        for (std::size_t j = 0; j < n; ++j) m(i - 1, j) = row[j];
    }
    return m;
}

ExtendedPeriod extended_period(const AnticanonicalPair& p, const Rigidification& rig,
                               const std::optional<std::vector<Rat>>& base_values) {
    if (rig.points.size() != p.r()) throw error("extended_period: rigidification size != r");
    std::size_t n = p.ambient()->rank;
    std::size_t head = n - p.log().size();
    std::vector<Rat> base(head, Rat(1));
    if (base_values) {
        if (base_values->size() != head)
            throw error("extended_period: need one base value per minimal-model generator");
        base = *base_values;
    } else if (!p.minimal().toric()) {
        throw error("extended_period: non-toric minimal model requires caller-supplied base "
                    "values for the minimal-model generators");
    }

    // phi-hat_{Y;p}(b) = phi-hat_{Y;1}(b) * prod_i p_i^(b . D_i), where the
    // normalized lift phi-hat_{Y;1} is 1 on base generators and corner
    // classes and 1/q_k on the k-th interior exceptional class.
    IMat f = intersection_map(p);
    std::vector<Rat> values(n, Rat(1));
    for (std::size_t b = 0; b < n; ++b) {
        Rat v = b < head ? base[b] : Rat(1);
        for (std::size_t i = 0; i < p.r(); ++i) v *= power(rig.coord(i + 1), f(i, b));
        values[b] = v;
    }
    for (const auto& rec : p.log()) {
        if (!rec.step.is_interior()) continue;
        values[rec.basis_index] /= rec.point;
    }
    if (!p.orientation())
        for (Rat& v : values) v = 1 / v;  // reversing the orientation inverts psi
    return ExtendedPeriod{p.ambient(), std::move(values), rig};
}

PeriodHom restrict_to_lambda(const ExtendedPeriod& ep, const AnticanonicalPair& p) {
    SublatticeResult lambda = p.lambda_lattice();
    std::vector<Rat> vals;
    vals.reserve(lambda.basis.size());
    for (const auto& b : lambda.basis) vals.push_back(ep.evaluate(b));
    return PeriodHom(std::move(lambda.basis), std::move(vals));
}

PeriodHom period_of(const AnticanonicalPair& p,
                    const std::optional<std::vector<Rat>>& base_values) {
    return restrict_to_lambda(extended_period(p, Rigidification::standard(p.r()), base_values), p);
}

bool is_nodal_class(const PeriodHom& ph, const ClassVec& beta) {
    if (square(beta) != -2) throw error("is_nodal_class: beta^2 != -2");
    auto coords = coordinates_in(ph.basis, beta);
    if (!coords) throw error("is_nodal_class: beta is not in Lambda");
    Rat v(1);
    for (std::size_t i = 0; i < coords->size(); ++i) v *= power(ph.values[i], (*coords)[i]);
    return v == 1;
}

PeriodHom blowup_period_update(const PeriodHom& base, const AnticanonicalPair& p,
                               const std::vector<PointMove>& moves) {
    std::vector<Rat> vals = base.values;
    for (const auto& mv : moves) {
        if (mv.step_index < 1 || mv.step_index > p.log().size())
            throw error("blowup_period_update: bad step index");
        const StepRecord& rec = p.log()[mv.step_index - 1];
        if (!rec.step.is_interior())
            throw error("blowup_period_update: step is not an interior blowup");
        if (mv.new_point == 0) throw error("blowup_period_update: point must be nonzero");
        // psi(O(p_new - q_old)) = q_old / p_new, applied with each basis
        // vector's multiplicity n_k at the moved exceptional class.
        Rat factor = rec.point / mv.new_point;
        for (std::size_t j = 0; j < base.basis.size(); ++j) {
            const Int& mult = base.basis[j].coords[rec.basis_index];
            vals[j] *= power(factor, mult);
        }
    }
    return PeriodHom(base.basis, std::move(vals));
}

LiftComparison lift_equivalence(const ExtendedPeriod& ep1, const ExtendedPeriod& ep2,
                                const AnticanonicalPair& p) {
    PeriodHom r1 = restrict_to_lambda(ep1, p);
    PeriodHom r2 = restrict_to_lambda(ep2, p);
    if (!r1.same_hom(r2))
        throw error("lift_equivalence: extended periods restrict to different period "
                    "homomorphisms");
    // The automorphism moving rig1 to rig2.
    std::vector<Rat> scales;
    for (std::size_t i = 1; i <= p.r(); ++i)
        scales.push_back(ep2.rig.coord(i) / ep1.rig.coord(i));
    CycleAut phi(std::move(scales));
    // f(phi) on the ambient basis; phi lies in K exactly when this is
    // trivial, which happens exactly when the two lifts coincide.
    IMat f = intersection_map(p);
    std::size_t n = p.ambient()->rank;
    std::vector<Rat> fphi(n, Rat(1));
    bool trivial = true;
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t i = 0; i < p.r(); ++i) fphi[b] *= power(phi.scales[i], f(i, b));
        if (fphi[b] != 1) trivial = false;
    }
    // cross-check against the lift values themselves
    for (std::size_t b = 0; b < n; ++b) {
        Rat ratio = ep2.values[b] / ep1.values[b];
        Rat expect = p.orientation() ? fphi[b] : 1 / fphi[b];
        if (ratio != expect)
            throw invariant_error("lift_equivalence: lift ratio is not f(phi)");
    }
    LiftComparison out;
    if (trivial)
        out.witness = phi;
    else
        out.discrepancy = std::move(fphi);
    return out;
}

}  // namespace aclab
