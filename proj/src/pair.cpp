#include "aclab/pair.hpp"

#include <algorithm>
#include <sstream>

namespace aclab {

bool MinimalModel::uses_n() const {
    return kind == MinimalKind::FN_N0N0 || kind == MinimalKind::FN_N_Np2_0 ||
           kind == MinimalKind::FN_N_Np4 || kind == MinimalKind::F0orF2_Bisection8 ||
           kind == MinimalKind::F0orF2_TwoSections22;
}

void MinimalModel::validate() const {
    switch (kind) {
        case MinimalKind::P2_111:
        case MinimalKind::P2_14:
        case MinimalKind::P2_9:
            if (n != 0) throw error("MinimalModel: P2 kinds take no N parameter");
            return;
        case MinimalKind::FN_N0N0:
        case MinimalKind::FN_N_Np2_0:
        case MinimalKind::FN_N_Np4:
            if (n < 0 || n == 1) throw error("MinimalModel: F_N requires N >= 0, N != 1");
            return;
        case MinimalKind::F0orF2_Bisection8:
        case MinimalKind::F0orF2_TwoSections22:
            if (n != 0 && n != 2) throw error("MinimalModel: this kind requires N in {0,2}");
            return;
    }
    throw error("MinimalModel: unknown kind");
}

std::vector<Int> MinimalModel::sequence() const {
    switch (kind) {
        case MinimalKind::P2_111: return {1, 1, 1};
        case MinimalKind::P2_14: return {1, 4};
        case MinimalKind::P2_9: return {9};
        case MinimalKind::FN_N0N0: return {Int(-n), Int(0), Int(n), Int(0)};
        case MinimalKind::FN_N_Np2_0: return {Int(-n), Int(n + 2), Int(0)};
        case MinimalKind::FN_N_Np4: return {Int(-n), Int(n + 4)};
        case MinimalKind::F0orF2_Bisection8: return {8};
        case MinimalKind::F0orF2_TwoSections22: return {2, 2};
    }
    throw error("MinimalModel: unknown kind");
}

long MinimalModel::charge() const {
    switch (kind) {
        case MinimalKind::P2_111: return 0;
        case MinimalKind::P2_14: return 1;
        case MinimalKind::P2_9: return 2;
        case MinimalKind::FN_N0N0: return 0;
        case MinimalKind::FN_N_Np2_0: return 1;
        case MinimalKind::FN_N_Np4: return 2;
        case MinimalKind::F0orF2_Bisection8: return 3;
        case MinimalKind::F0orF2_TwoSections22: return 2;
    }
    throw error("MinimalModel: unknown kind");
}

bool SelfIntSeq::same_up_to_rotation(const SelfIntSeq& o, bool allow_reflection) const {
    if (entries.size() != o.entries.size()) return false;
    std::size_t r = entries.size();
    for (std::size_t s = 0; s < r; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < r && ok; ++i) ok = entries[(i + s) % r] == o.entries[i];
        if (ok) return true;
    }
    if (allow_reflection) {
        SelfIntSeq rev{std::vector<Int>(o.entries.rbegin(), o.entries.rend())};
        return same_up_to_rotation(rev, false);
    }
    return false;
}

std::vector<Int> SelfIntSeq::canonical_rotation() const {
    std::size_t r = entries.size();
    std::vector<Int> best = entries;
    for (std::size_t s = 1; s < r; ++s) {
        std::vector<Int> rot(r);
        for (std::size_t i = 0; i < r; ++i) rot[i] = entries[(i + s) % r];
        if (rot < best) best = rot;
    }
    return best;
}

namespace {

LatticePtr minimal_lattice(const MinimalModel& m) {
    switch (m.kind) {
        case MinimalKind::P2_111:
        case MinimalKind::P2_14:
        case MinimalKind::P2_9:
            return make_lattice(IMat{{1}}, {"h"});
        default: {
            IMat g(2, 2);
            g(0, 0) = -m.n;
            g(0, 1) = 1;
            g(1, 0) = 1;
            g(1, 1) = 0;
            return make_lattice(std::move(g), {"s0", "f"});
        }
    }
}

std::vector<std::vector<Int>> minimal_cycle_coords(const MinimalModel& m) {
    long n = m.n;
    switch (m.kind) {
        case MinimalKind::P2_111: return {{1}, {1}, {1}};
        case MinimalKind::P2_14: return {{1}, {2}};
        case MinimalKind::P2_9: return {{3}};
        case MinimalKind::FN_N0N0: return {{1, 0}, {0, 1}, {1, Int(n)}, {0, 1}};
        case MinimalKind::FN_N_Np2_0: return {{1, 0}, {1, Int(n + 1)}, {0, 1}};
        case MinimalKind::FN_N_Np4: return {{1, 0}, {1, Int(n + 2)}};
        case MinimalKind::F0orF2_Bisection8: return {{2, Int(n + 2)}};
        case MinimalKind::F0orF2_TwoSections22:
            return {{1, Int(n / 2 + 1)}, {1, Int(n / 2 + 1)}};
    }
    throw error("MinimalModel: unknown kind");
}

std::vector<Int> minimal_anticanonical(const MinimalModel& m) {
    switch (m.kind) {
        case MinimalKind::P2_111:
        case MinimalKind::P2_14:
        case MinimalKind::P2_9:
            return {3};
        default:
            return {2, Int(m.n + 2)};
    }
}

std::vector<Int> minimal_ample(const MinimalModel& m) {
    switch (m.kind) {
        case MinimalKind::P2_111:
        case MinimalKind::P2_14:
        case MinimalKind::P2_9:
            return {1};
        default:
            return {1, Int(m.n + 1)};  // s0 + (N+1) f is ample on F_N
    }
}

}  // namespace

AnticanonicalPair AnticanonicalPair::make(MinimalModel minimal, bool orientation) {
    minimal.validate();
    AnticanonicalPair p;
    p.minimal_ = minimal;
    p.orientation_ = orientation;
    p.ambient_ = minimal_lattice(minimal);
    for (auto& c : minimal_cycle_coords(minimal))
        p.cycle_.push_back({p.next_id_++, ClassVec(std::move(c), p.ambient_)});
    p.tracked_seq_ = minimal.sequence();
    p.check_invariants();
    return p;
}

AnticanonicalPair AnticanonicalPair::from_log(MinimalModel minimal, bool orientation,
                                              const std::vector<BlowupStep>& log) {
    AnticanonicalPair p = make(minimal, orientation);
    for (const auto& s : log) {
        switch (s.kind) {
            case BlowupStep::Kind::Interior:
                p = p.interior_blowup(s.component, CyclePoint(s.component, s.point));
                break;
            case BlowupStep::Kind::InteriorNear:
                p = p.interior_blowup_near(s.parent);
                break;
            case BlowupStep::Kind::Corner:
                p = p.corner_blowup(s.edge);
                break;
        }
    }
    return p;
}

void AnticanonicalPair::extend_ambient() {
    std::size_t n = ambient_->rank;
    IMat g(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = ambient_->gram(i, j);
    g(n, n) = -1;
    std::vector<std::string> labels = ambient_->labels;
    labels.push_back("e" + std::to_string(log_.size() + 1));
    ambient_ = make_lattice(std::move(g), std::move(labels));
    for (auto& c : cycle_) {
        std::vector<Int> coords = c.cls.coords;
        coords.emplace_back(0);
        c.cls = ClassVec(std::move(coords), ambient_);
    }
}

AnticanonicalPair AnticanonicalPair::interior_blowup(std::size_t component,
                                                     const CyclePoint& pt) const {
    if (component < 1 || component > r()) throw error("interior_blowup: bad component index");
    if (pt.component != component) throw error("interior_blowup: point is on a different component");
    AnticanonicalPair p = *this;
    p.extend_ambient();
    std::size_t n = p.ambient_->rank;
    std::vector<Int> e(n, Int(0));
    e[n - 1] = 1;
    ClassVec ev(std::move(e), p.ambient_);
    p.cycle_[component - 1].cls = p.cycle_[component - 1].cls - ev;
    p.tracked_seq_[component - 1] -= 1;
    StepRecord rec;
    rec.step = BlowupStep::interior(component, pt.coord);
    rec.basis_index = n - 1;
    rec.component_id = p.cycle_[component - 1].id;
    rec.point = pt.coord;
    p.log_.push_back(std::move(rec));
    p.check_invariants();
    return p;
}

AnticanonicalPair AnticanonicalPair::interior_blowup_near(std::size_t parent_step) const {
    if (parent_step < 1 || parent_step > log_.size())
        throw error("interior_blowup_near: bad parent step index");
    const StepRecord& parent = log_[parent_step - 1];
    if (!parent.step.is_interior())
        throw error("interior_blowup_near: parent is not an interior step");
    AnticanonicalPair p = *this;
    p.extend_ambient();
    std::size_t n = p.ambient_->rank;
    std::vector<Int> e(n, Int(0));
    e[n - 1] = 1;
    ClassVec ev(std::move(e), p.ambient_);
    std::size_t comp = p.component_index_of(parent.component_id);
    p.cycle_[comp - 1].cls = p.cycle_[comp - 1].cls - ev;
    p.tracked_seq_[comp - 1] -= 1;
    StepRecord rec;
    rec.step = BlowupStep::interior_near(parent_step);
    rec.basis_index = n - 1;
    rec.component_id = parent.component_id;
    rec.point = parent.point;  // infinitely near points share the parent's point
    p.log_.push_back(std::move(rec));
    p.check_invariants();
    return p;
}

AnticanonicalPair AnticanonicalPair::corner_blowup(std::size_t edge) const {
    if (edge < 1 || edge > r()) throw error("corner_blowup: bad edge index");
    AnticanonicalPair p = *this;
    p.extend_ambient();
    std::size_t n = p.ambient_->rank;
    std::vector<Int> e(n, Int(0));
    e[n - 1] = 1;
    ClassVec ev(std::move(e), p.ambient_);
    Component fresh{p.next_id_++, ev};
    if (r() == 1) {
        // nodal case: the curve passes through its node with multiplicity two
        p.cycle_[0].cls = p.cycle_[0].cls - ev.scaled(Int(2));
        p.tracked_seq_[0] -= 4;
        p.cycle_.push_back(fresh);
        p.tracked_seq_.push_back(-1);
    } else {
        std::size_t i = edge - 1;            // left component
        std::size_t j = (edge % r());        // right component (wraps)
        p.cycle_[i].cls = p.cycle_[i].cls - ev;
        p.cycle_[j].cls = p.cycle_[j].cls - ev;
        p.tracked_seq_[i] -= 1;
        p.tracked_seq_[j] -= 1;
        p.cycle_.insert(p.cycle_.begin() + edge, fresh);
        p.tracked_seq_.insert(p.tracked_seq_.begin() + edge, Int(-1));
    }
    StepRecord rec;
    rec.step = BlowupStep::corner(edge);
    rec.basis_index = n - 1;
    rec.component_id = fresh.id;
    p.log_.push_back(std::move(rec));
    p.check_invariants();
    return p;
}

ClassVec AnticanonicalPair::step_class(std::size_t step_index) const {
    const StepRecord& rec = log_.at(step_index - 1);
    std::vector<Int> e(ambient_->rank, Int(0));
    e[rec.basis_index] = 1;
    return ClassVec(std::move(e), ambient_);
}

AnticanonicalPair AnticanonicalPair::blow_down(const ClassVec& e) const {
    if (log_.empty()) throw error("blow_down: pair is minimal");
    if (!e.ambient->same_as(*ambient_)) throw error("blow_down: class in wrong lattice");
    ClassVec last = step_class(log_.size());
    bool contractible = (e == last);
    if (!contractible && log_.back().step.kind == BlowupStep::Kind::Corner) {
        // the -1 cycle component created by the final corner step
        std::size_t idx = component_index_of(log_.back().component_id);
        contractible = (e == cycle_[idx - 1].cls);
    }
    if (!contractible)
        throw error("blow_down: class is not the final log entry's exceptional class; "
                    "log-backed pairs only contract in reverse order");
    std::vector<BlowupStep> steps;
    for (std::size_t i = 0; i + 1 < log_.size(); ++i) steps.push_back(log_[i].step);
    return from_log(minimal_, orientation_, steps);
}

std::vector<ClassVec> AnticanonicalPair::cycle_classes() const {
    std::vector<ClassVec> out;
    out.reserve(cycle_.size());
    for (const auto& c : cycle_) out.push_back(c.cls);
    return out;
}

std::size_t AnticanonicalPair::component_index_of(int id) const {
    for (std::size_t i = 0; i < cycle_.size(); ++i)
        if (cycle_[i].id == id) return i + 1;
    throw error("component_index_of: unknown component id");
}

SelfIntSeq AnticanonicalPair::sequence() const { return SelfIntSeq{tracked_seq_}; }

ClassVec AnticanonicalPair::anticanonical_class() const {
    ClassVec s = cycle_[0].cls;
    for (std::size_t i = 1; i < cycle_.size(); ++i) s = s + cycle_[i].cls;
    return s;
}

ClassVec AnticanonicalPair::canonical_class() const { return -anticanonical_class(); }

Int AnticanonicalPair::dsquare() const { return square(anticanonical_class()); }

long AnticanonicalPair::charge() const {
    Int d2 = dsquare();
    Int q = 12 - d2 - Int(r());
    Int q2 = 2 + Int(ambient_->rank) - Int(r());  // b_2 = rank of H^2
    if (q != q2)
        throw invariant_error("charge: 12 - D^2 - r disagrees with 2 + b2 - r");
    return static_cast<long>(q.get_si());
}

std::size_t AnticanonicalPair::kernel_rank_s() const {
    IMat m(ambient_->rank, cycle_.size());
    for (std::size_t j = 0; j < cycle_.size(); ++j)
        for (std::size_t i = 0; i < ambient_->rank; ++i) m(i, j) = cycle_[j].cls.coords[i];
    return cycle_.size() - integer_rank(m);
}

SublatticeResult AnticanonicalPair::lambda_lattice() const {
    SublatticeResult res = orthogonal_complement(ambient_, cycle_classes());
    long q = charge();
    std::size_t s = kernel_rank_s();
    if (Int(res.lattice->rank) != Int(q) - 2 + Int(s))
        throw invariant_error("lambda_lattice: rank != Q - 2 + s");
    return res;
}

std::pair<std::size_t, std::size_t> AnticanonicalPair::deformation_dims() const {
    return {lambda_lattice().lattice->rank, kernel_rank_s()};
}

ClassVec AnticanonicalPair::ample_reference() const {
    // 3^N * (pullback of an ample class on the minimal model) - sum 3^(N-k) e_k.
    // Strictly decreasing weights keep it positive on every class in the log,
    // including infinitely near chains.
    std::size_t head = minimal_lattice(minimal_)->rank;
    std::size_t nsteps = log_.size();
    std::vector<Int> coords(ambient_->rank, Int(0));
    Int scale = 1;
    for (std::size_t k = 0; k < nsteps; ++k) scale *= 3;
    std::vector<Int> amp = minimal_ample(minimal_);
    for (std::size_t i = 0; i < head; ++i) coords[i] = amp[i] * scale;
    Int w = scale;
    for (std::size_t k = 0; k < nsteps; ++k) {
        w /= 3;
        coords[log_[k].basis_index] = -w;
    }
    return ClassVec(std::move(coords), ambient_);
}

bool AnticanonicalPair::operator==(const AnticanonicalPair& o) const {
    if (!(minimal_ == o.minimal_) || orientation_ != o.orientation_ ||
        log_.size() != o.log_.size())
        return false;
    for (std::size_t i = 0; i < log_.size(); ++i)
        if (!(log_[i].step == o.log_[i].step)) return false;
    return true;
}

AnticanonicalPair::Reduction AnticanonicalPair::minimal_model_search() const {
    Reduction red;
    red.endpoint = minimal_;
    for (auto it = log_.rbegin(); it != log_.rend(); ++it) red.blowdowns.push_back(it->step);
    // the log is its own witness; verify the endpoint really is the declared
    // minimal model
    AnticanonicalPair base = make(minimal_, orientation_);
    SelfIntSeq expect{minimal_.sequence()};
    if (!base.sequence().same_up_to_rotation(expect))
        throw invariant_error("minimal_model_search: endpoint sequence mismatch");
    return red;
}

void AnticanonicalPair::check_invariants() const {
    std::size_t rr = cycle_.size();
    if (rr == 0) throw invariant_error("pair: empty cycle");
    // tracked sequence vs Gram
    for (std::size_t i = 0; i < rr; ++i)
        if (square(cycle_[i].cls) != tracked_seq_[i])
            throw invariant_error("pair: tracked sequence disagrees with Gram");
    // adjacency pattern
    if (rr == 2) {
        if (inner(cycle_[0].cls, cycle_[1].cls) != 2)
            throw invariant_error("pair: r=2 components must meet twice");
    } else if (rr >= 3) {
        for (std::size_t i = 0; i < rr; ++i)
            for (std::size_t j = i + 1; j < rr; ++j) {
                bool adjacent = (j == i + 1) || (i == 0 && j == rr - 1);
                Int expect = adjacent ? 1 : 0;
                if (inner(cycle_[i].cls, cycle_[j].cls) != expect)
                    throw invariant_error("pair: cycle adjacency pattern violated");
            }
    }
    // sum of cycle classes = -K of the blowup bookkeeping
    std::size_t head = minimal_lattice(minimal_)->rank;
    std::vector<Int> mk = minimal_anticanonical(minimal_);
    std::vector<Int> expect(ambient_->rank, Int(0));
    for (std::size_t i = 0; i < head; ++i) expect[i] = mk[i];
    for (const auto& rec : log_) expect[rec.basis_index] = -1;
    ClassVec ak = anticanonical_class();
    // corner steps in the r=1 situation subtract 2e from the nodal curve but
    // add e back as a component, so the expected coefficient is still -1
    if (ak.coords != expect)
        throw invariant_error("pair: sum of cycle classes is not the anticanonical class");
    charge();  // runs the two-route charge consistency check
}

long sequence_charge(const std::vector<Int>& seq) {
    Int sum = 0;
    for (const Int& d : seq) sum += d;
    Int d2 = seq.size() == 1 ? seq[0] : sum + 2 * Int(seq.size());
    Int q = 12 - d2 - Int(seq.size());
    return static_cast<long>(q.get_si());
}

std::vector<Int> apply_corner_move(const std::vector<Int>& seq, const CornerMove& mv) {
    std::size_t r = seq.size();
    std::vector<Int> out;
    if (mv.blowup) {
        if (mv.index < 1 || mv.index > r) throw error("apply_corner_move: bad edge");
        if (r == 1) return {seq[0] - 4, Int(-1)};
        out = seq;
        std::size_t i = mv.index - 1, j = mv.index % r;
        out[i] -= 1;
        out[j] -= 1;
        out.insert(out.begin() + mv.index, Int(-1));
    } else {
        if (mv.index < 1 || mv.index > r) throw error("apply_corner_move: bad component");
        if (seq[mv.index - 1] != -1) throw error("apply_corner_move: component is not a -1-curve");
        if (r == 1) throw error("apply_corner_move: cannot contract the whole cycle");
        if (r == 2) return {seq[mv.index == 1 ? 1 : 0] + 4};
        out = seq;
        std::size_t i = (mv.index + r - 2) % r, j = mv.index % r;
        out[i] += 1;
        out[j] += 1;
        out.erase(out.begin() + (mv.index - 1));
    }
    return out;
}

namespace {

std::optional<std::size_t> find_minus_one(const std::vector<Int>& seq) {
    for (std::size_t i = 0; i < seq.size(); ++i)
        if (seq[i] == -1) return i + 1;
    return std::nullopt;
}

bool all_zero(const std::vector<Int>& seq) {
    return std::all_of(seq.begin(), seq.end(), [](const Int& d) { return d == 0; });
}

// Locates a rotation matching (-N, 0, N, 0) and returns the index (1-based)
// of the -N entry.
std::optional<std::size_t> fn_form(const std::vector<Int>& seq, Int& n_out) {
    if (seq.size() != 4) return std::nullopt;
    for (std::size_t s = 0; s < 4; ++s) {
        const Int& a = seq[s];
        if (a > 0) continue;
        if (seq[(s + 1) % 4] == 0 && seq[(s + 2) % 4] == -a && seq[(s + 3) % 4] == 0) {
            n_out = -a;
            return s + 1;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<CornerMove> toric_reduction(const std::vector<Int>& seq) {
    if (seq.empty()) throw error("toric_reduction: empty sequence");
    if (sequence_charge(seq) != 0) throw error("toric_reduction: charge is nonzero");
    Int maxabs = Int(seq.size());
    for (const Int& d : seq)
        if (abs(d) > maxabs) maxabs = abs(d);
    const Int clamp = maxabs + 10;
    std::vector<CornerMove> moves;
    std::vector<Int> cur = seq;
    auto push = [&](const CornerMove& mv) {
        cur = apply_corner_move(cur, mv);
        for (const Int& d : cur)
            if (d < -clamp || d > clamp)
                throw error("toric_reduction: sequence left the clamp window; "
                            "input is not combinatorially toric");
        moves.push_back(mv);
        if (moves.size() > 10000) throw error("toric_reduction: move budget exhausted");
    };

    while (!all_zero(cur)) {
        // Elementary transformation (-N,0,N,0) -> (-(N-1),0,N-1,0): blow up
        // the edge between the 0 following -N and the N entry, then contract
        // what used to be that 0 component. Checked before the -1 sweep so
        // the F_1 form (-1,0,1,0) resolves forward instead of cycling back
        // through (1,1,1).
        Int n = 0;
        if (auto pos = fn_form(cur, n); pos && n > 0) {
            std::size_t zero_pos = (*pos % 4) + 1;
            push({true, zero_pos});
            push({false, zero_pos});
            continue;
        }
        // Contract -1 components; genuine toric sequences stay realizable
        // throughout and end at (1,1,1) or (-N,0,N,0).
        if (auto i = find_minus_one(cur)) {
            if (cur.size() < 2) throw error("toric_reduction: stuck at r=1");
            push({false, *i});
            continue;
        }
        // (1,1,1) -> F_1 form.
        if (cur.size() == 3 && cur[0] == 1 && cur[1] == 1 && cur[2] == 1) {
            push({true, 1});
            continue;
        }
        throw error("toric_reduction: sequence is not combinatorially toric");
    }
    if (cur.size() != 4)
        throw error("toric_reduction: terminated at an all-zero sequence of length != 4");
    return moves;
}

}  // namespace aclab
