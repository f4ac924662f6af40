#include "aclab/equivalence.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace aclab {

namespace {
Rat rat_power(const Rat& base, const Int& e) {
    if (e == 0) return Rat(1);
    Rat b = base;
    Int n = e;
    if (n < 0) {
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

std::optional<std::vector<Rat>> solve_multiplicative(const IMat& m, const std::vector<Rat>& target) {
    if (target.size() != m.cols()) throw error("solve_multiplicative: target size mismatch");
    // additive form: A xi = tau with A = M^T (n x k, k = rows of M)
    IMat a = m.transpose();
    SmithDecomposition d = smith_decomposition(a);
    std::size_t n = a.rows(), k = a.cols();
    // sigma = U tau, computed multiplicatively
    std::vector<Rat> sigma(n, Rat(1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (target[j] != 1) sigma[i] *= rat_power(target[j], d.u(i, j));
    std::vector<Rat> eta(k, Rat(1));
    for (std::size_t i = 0; i < n; ++i) {
        if (i < d.rank) {
            Int s = d.s(i, i);
            if (s == 1) {
                eta[i] = sigma[i];
                continue;
            }
            auto root = exact_root(sigma[i], s.get_ui());
            if (!root) return std::nullopt;  // needs a root not available in Q*
            eta[i] = *root;
        } else if (sigma[i] != 1) {
            return std::nullopt;  // inconsistent system
        }
    }
    std::vector<Rat> x(k, Rat(1));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (eta[j] != 1) x[i] *= rat_power(eta[j], d.v(i, j));
    return x;
}

AbelianGroupStructure K_group(const AnticanonicalPair& p) {
    return cokernel_structure(intersection_map(p));
}

namespace {

bool modes_share_shortcut(const AnticanonicalPair& p1, const EffectivenessContext& ctx1,
                          const AnticanonicalPair& p2, const EffectivenessContext& ctx2) {
    if (ctx1.mode() != ctx2.mode()) return false;
    if (ctx1.mode() != EffMode::NegDef) return true;
    return p1.dsquare() == -1 && p2.dsquare() == -1;
}

}  // namespace

AdmissibilityVerdict is_admissible_between(const IntIsometry& gamma, const AnticanonicalPair& p1,
                                           const EffectivenessContext& ctx1,
                                           const AnticanonicalPair& p2,
                                           const EffectivenessContext& ctx2, long height_bound) {
    if (!gamma.is_isometry()) throw error("is_admissible_between: not an isometry");
    if (!gamma.source->same_as(*p2.ambient()) || !gamma.target->same_as(*p1.ambient()))
        throw error("is_admissible_between: lattice mismatch");
    if (p1.r() != p2.r()) throw error("is_admissible_between: cycle lengths differ");
    for (std::size_t i = 1; i <= p1.r(); ++i)
        if (!(gamma.apply(p2.cycle_class(i)) == p1.cycle_class(i)))
            throw error("is_admissible_between: gamma does not carry [D_i'] to [D_i]");
    AdmissibilityVerdict v;
    v.bound = height_bound;
    if (inner(gamma.apply(p2.ample_reference()), p1.ample_reference()) <= 0) {
        v.admissible = false;
        v.violating = p2.ample_reference();
        return v;
    }
    if (modes_share_shortcut(p1, ctx1, p2, ctx2)) {
        // the effectiveness tests on both sides use gamma-matched data, so
        // gamma carries one effective set onto the other
        v.admissible = true;
        v.shortcut = true;
        return v;
    }
    IntIsometry inv = gamma.inverse();
    for (const auto& alpha : enumerate_exceptional(p2, ctx2, height_bound))
        if (!ctx1.is_effective(NumExcClass(gamma.apply(alpha.cls)))) {
            v.admissible = false;
            v.violating = gamma.apply(alpha.cls);
            return v;
        }
    for (const auto& alpha : enumerate_exceptional(p1, ctx1, height_bound))
        if (!ctx2.is_effective(NumExcClass(inv.apply(alpha.cls)))) {
            v.admissible = false;
            v.violating = alpha.cls;
            return v;
        }
    v.admissible = true;
    return v;
}

namespace {

// Backtracking assignment of the exceptional basis classes of p2 to
// effective classes on p1, completed by solving for the minimal-model
// generators.
struct IsometrySearch {
    const AnticanonicalPair& p1;
    const AnticanonicalPair& p2;
    const EffectivenessContext& ctx1;
    const EffectivenessContext& ctx2;
    long bound;
    std::vector<NumExcClass> pool;     // effective classes on p1, lex order
    std::vector<ClassVec> assigned;    // images of p2's e-basis, in order
    std::vector<ClassVec> e2;          // p2's e-basis classes
    std::optional<IntIsometry> found;

    void run() {
        e2.clear();
        for (std::size_t k = 1; k <= p2.log().size(); ++k) e2.push_back(p2.step_class(k));
        assigned.clear();
        descend();
    }

    void descend() {
        if (found) return;
        if (assigned.size() == e2.size()) {
            complete();
            return;
        }
        std::size_t k = assigned.size();
        for (const auto& cand : pool) {
            if (found) return;
            bool ok = true;
            for (std::size_t i = 1; i <= p1.r() && ok; ++i)
                ok = inner(cand.cls, p1.cycle_class(i)) == inner(e2[k], p2.cycle_class(i));
            for (std::size_t j = 0; j < k && ok; ++j)
                ok = inner(cand.cls, assigned[j]) == 0;
            if (!ok) continue;
            assigned.push_back(cand.cls);
            descend();
            assigned.pop_back();
        }
    }

    void complete() {
        std::size_t n = p1.ambient()->rank;
        std::size_t head = n - p2.log().size();
        // unknown images x_g of the head generators; the cycle condition
        // gamma([D_i']) = [D_i] gives, per component, a linear equation
        // sum_g c_{i,g} x_g = [D_i] - (e-part image).
        IMat c(p2.r(), head);
        std::vector<ClassVec> rhs;
        for (std::size_t i = 1; i <= p2.r(); ++i) {
            const ClassVec& d2 = p2.cycle_class(i);
            ClassVec w = p1.cycle_class(i);
            for (std::size_t k = 0; k < e2.size(); ++k)
                w = w - assigned[k].scaled(d2.coords[head + k]);
            for (std::size_t g = 0; g < head; ++g) c(i - 1, g) = d2.coords[g];
            rhs.push_back(w);
        }
        std::vector<std::vector<Int>> head_images(head);
        if (integer_rank(c) == head) {
            // solve coordinatewise over Q, demanding integrality
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < c.rows() && rows.size() < head; ++i) {
                std::vector<std::size_t> trial = rows;
                trial.push_back(i);
                IMat sub(trial.size(), head);
                for (std::size_t a = 0; a < trial.size(); ++a)
                    for (std::size_t g = 0; g < head; ++g) sub(a, g) = c(trial[a], g);
                if (integer_rank(sub) == trial.size()) rows = trial;
            }
            for (std::size_t coord = 0; coord < n; ++coord) {
                std::vector<std::vector<Rat>> g(head, std::vector<Rat>(head));
                std::vector<Rat> b(head);
                for (std::size_t a = 0; a < head; ++a) {
                    for (std::size_t gg = 0; gg < head; ++gg) g[a][gg] = Rat(c(rows[a], gg));
                    b[a] = Rat(rhs[rows[a]].coords[coord]);
                }
                std::vector<Rat> x;
                try {
                    x = [&] {
                        std::vector<std::vector<Rat>> gc = g;
                        std::vector<Rat> bc = b;
                        // small Gaussian solve
                        std::size_t m = head;
                        for (std::size_t kk = 0; kk < m; ++kk) {
                            std::size_t piv = kk;
                            while (piv < m && gc[piv][kk] == 0) ++piv;
                            if (piv == m) throw error("singular");
                            std::swap(gc[piv], gc[kk]);
                            std::swap(bc[piv], bc[kk]);
                            for (std::size_t ii = 0; ii < m; ++ii) {
                                if (ii == kk || gc[ii][kk] == 0) continue;
                                Rat f = gc[ii][kk] / gc[kk][kk];
                                for (std::size_t jj = kk; jj < m; ++jj) gc[ii][jj] -= f * gc[kk][jj];
                                bc[ii] -= f * bc[kk];
                            }
                        }
                        std::vector<Rat> out(m);
                        for (std::size_t kk = 0; kk < m; ++kk) out[kk] = bc[kk] / gc[kk][kk];
                        return out;
                    }();
                } catch (const error&) {
                    return;
                }
                for (std::size_t gidx = 0; gidx < head; ++gidx) {
                    if (x[gidx].get_den() != 1) return;  // non-integral image
                    head_images[gidx].push_back(Int(x[gidx].get_num()));
                }
            }
        } else {
            // underdetermined head (the minimal F0/F2 kinds): bounded box
            // search over images of the head generators
            if (head > 2 || n > 4) return;
            if (!box_search_heads(c, rhs, head_images)) return;
        }
        build_and_check(head_images);
    }

    bool box_search_heads(const IMat& c, const std::vector<ClassVec>& rhs,
                          std::vector<std::vector<Int>>& head_images) {
        std::size_t n = p1.ambient()->rank;
        std::size_t head = head_images.size();
        std::vector<std::vector<Int>> current(head, std::vector<Int>(n, Int(0)));
        return box_rec(c, rhs, current, 0, 0, head_images);
    }

    bool box_rec(const IMat& c, const std::vector<ClassVec>& rhs,
                 std::vector<std::vector<Int>>& current, std::size_t g, std::size_t coord,
                 std::vector<std::vector<Int>>& head_images) {
        std::size_t n = p1.ambient()->rank;
        std::size_t head = current.size();
        if (g == head) {
            for (std::size_t i = 0; i < c.rows(); ++i) {
                std::vector<Int> acc(n, Int(0));
                for (std::size_t gg = 0; gg < head; ++gg)
                    for (std::size_t t = 0; t < n; ++t) acc[t] += c(i, gg) * current[gg][t];
                if (acc != rhs[i].coords) return false;
            }
            head_images = current;
            return true;
        }
        if (coord == n) return box_rec(c, rhs, current, g + 1, 0, head_images);
        for (long v = -bound; v <= bound; ++v) {
            current[g][coord] = v;
            std::vector<std::vector<Int>> snapshot = current;
            if (box_rec(c, rhs, current, g, coord + 1, head_images)) {
                // verify Gram conditions later in build_and_check via caller
                if (check_candidate(head_images)) return true;
                head_images.clear();
            }
            current = snapshot;
        }
        return false;
    }

    bool check_candidate(const std::vector<std::vector<Int>>& head_images) {
        std::size_t head = head_images.size();
        for (std::size_t a = 0; a < head; ++a)
            for (std::size_t b = 0; b < head; ++b) {
                ClassVec xa(head_images[a], p1.ambient());
                ClassVec xb(head_images[b], p1.ambient());
                if (inner(xa, xb) != p2.ambient()->gram(a, b)) return false;
            }
        return true;
    }

    void build_and_check(const std::vector<std::vector<Int>>& head_images) {
        std::size_t n = p1.ambient()->rank;
        std::size_t head = head_images.size();
        if (head_images.empty() || head_images[0].size() != n) return;
        IMat m(n, n);
        for (std::size_t g = 0; g < head; ++g)
            for (std::size_t i = 0; i < n; ++i) m(i, g) = head_images[g][i];
        for (std::size_t k = 0; k < assigned.size(); ++k)
            for (std::size_t i = 0; i < n; ++i) m(i, head + k) = assigned[k].coords[i];
        IntIsometry gamma(std::move(m), p2.ambient(), p1.ambient());
        if (!gamma.is_isometry()) return;
        for (std::size_t i = 1; i <= p1.r(); ++i)
            if (!(gamma.apply(p2.cycle_class(i)) == p1.cycle_class(i))) return;
        AdmissibilityVerdict v =
            is_admissible_between(gamma, p1, ctx1, p2, ctx2, bound);
        if (v.admissible) found = gamma;
    }
};

}  // namespace

std::optional<IntIsometry> deformation_equivalent(const AnticanonicalPair& p1,
                                                  const AnticanonicalPair& p2, long height_bound) {
    if (p1.r() != p2.r()) return std::nullopt;
    if (p1.ambient()->rank != p2.ambient()->rank) return std::nullopt;
    if (p1.charge() != p2.charge()) return std::nullopt;
    if (p1.sequence().entries != p2.sequence().entries) return std::nullopt;  // labeled pairs
    if (p1.log().size() != p2.log().size()) return std::nullopt;
    EffectivenessContext ctx1 = EffectivenessContext::build(p1, height_bound);
    EffectivenessContext ctx2 = EffectivenessContext::build(p2, height_bound);
    IsometrySearch s{p1, p2, ctx1, ctx2, height_bound};
    s.pool = enumerate_exceptional(p1, ctx1, height_bound);
    s.run();
    return s.found;
}

MatchVerdict torelli_match(const AnticanonicalPair& p1, const AnticanonicalPair& p2,
                           const IntIsometry& gamma, long height_bound) {
    MatchVerdict verdict;
    if (p1.r() != p2.r()) {
        verdict.reason = "cycle lengths differ";
        return verdict;
    }
    EffectivenessContext ctx1 = EffectivenessContext::build(p1, height_bound);
    EffectivenessContext ctx2 = EffectivenessContext::build(p2, height_bound);
    AdmissibilityVerdict adm = is_admissible_between(gamma, p1, ctx1, p2, ctx2, height_bound);
    if (!adm.admissible) {
        verdict.reason = "gamma is not admissible";
        verdict.violating = adm.violating;
        return verdict;
    }

    ExtendedPeriod ep1 = extended_period(p1, Rigidification::standard(p1.r()));
    ExtendedPeriod ep2 = extended_period(p2, Rigidification::standard(p2.r()));

    // period condition phi_1 o gamma = phi_2 on a basis of Lambda(p2)
    SublatticeResult lambda2 = p2.lambda_lattice();
    for (const auto& b : lambda2.basis) {
        if (ep1.evaluate(gamma.apply(b)) != ep2.evaluate(b)) {
            verdict.reason = "period mismatch";
            verdict.violating = b;
            return verdict;
        }
    }

    // unique Weyl twist: move gamma(ample cone of p2) into the chamber of p1
    std::vector<RootClass> nodal;
    {
        PeriodHom phi1 = restrict_to_lambda(ep1, p1);
        for (const auto& beta : enumerate_lambda_roots(p1, height_bound)) {
            if (!is_nodal_class(phi1, beta)) continue;
            auto rc = is_root(p1, ctx1, beta, height_bound);
            if (rc) nodal.push_back(*rc);
        }
    }
    WeylReduction wr = weyl_reduce(p1, nodal, RatVec(gamma.apply(p2.ample_reference())));
    IntIsometry gprime = gamma;
    for (const auto& beta : wr.word) {
        // compose the reflection on the target side
        std::size_t n = p1.ambient()->rank;
        IMat rm(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Int> ej(n, Int(0));
            ej[j] = 1;
            ClassVec img = reflect(ClassVec(ej, p1.ambient()), beta);
            for (std::size_t i = 0; i < n; ++i) rm(i, j) = img.coords[i];
        }
        gprime = IntIsometry(rm, p1.ambient(), p1.ambient()).compose(gprime);
    }

    // chi = phi-hat_2 pulled to p1's basis through gprime^-1; a lift of phi_1
    IntIsometry ginv = gprime.inverse();
    std::size_t n = p1.ambient()->rank;
    std::vector<Rat> chi(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> ej(n, Int(0));
        ej[j] = 1;
        chi[j] = ep2.evaluate(ginv.apply(ClassVec(ej, p1.ambient())));
    }
    std::vector<Rat> delta(n);
    for (std::size_t j = 0; j < n; ++j) delta[j] = chi[j] / ep1.values[j];

    // delta must be trivial on Lambda(p1)
    SublatticeResult lambda1 = p1.lambda_lattice();
    for (const auto& b : lambda1.basis) {
        Rat v(1);
        for (std::size_t j = 0; j < n; ++j) v *= rat_power(delta[j], b.coords[j]);
        if (v != 1) {
            verdict.reason = "twisted period mismatch on Lambda";
            verdict.violating = b;
            return verdict;
        }
    }

    // find lambda with f(lambda) = delta, i.e. chi = phi-hat_{Y1; lambda}
    auto lambda_pts = solve_multiplicative(intersection_map(p1), delta);
    if (!lambda_pts) {
        verdict.reason = "lift correction not solvable over Q*";
        return verdict;
    }

    // transported blowup points via the tau recovery
    std::map<std::size_t, Rat> mu;  // component -> scale
    std::vector<std::pair<Rat, Rat>> corr;
    for (std::size_t k = 0; k < p1.log().size(); ++k) {
        const StepRecord& rec = p1.log()[k];
        if (!rec.step.is_interior()) continue;
        std::size_t comp = p1.component_index_of(rec.component_id);
        Rat pstar = (*lambda_pts)[comp - 1];
        Rat qhat = pstar / chi[rec.basis_index];
        corr.emplace_back(rec.point, qhat);
        Rat scale = qhat / rec.point;
        auto it = mu.find(comp);
        if (it == mu.end())
            mu.emplace(comp, scale);
        else if (it->second != scale) {
            verdict.reason = "blowup points not related by a single cycle automorphism";
            return verdict;
        }
    }

    // complete mu on components without blowups so that f(mu) = 1, i.e. the
    // automorphism lies in K
    IMat f = intersection_map(p1);
    std::vector<std::size_t> free_comps;
    std::vector<Rat> target(n, Rat(1));
    for (std::size_t b = 0; b < n; ++b) {
        Rat acc(1);
        for (std::size_t i = 1; i <= p1.r(); ++i) {
            auto it = mu.find(i);
            if (it != mu.end()) acc *= rat_power(it->second, f(i - 1, b));
        }
        target[b] = 1 / acc;
    }
    for (std::size_t i = 1; i <= p1.r(); ++i)
        if (!mu.count(i)) free_comps.push_back(i);
    if (!free_comps.empty()) {
        IMat sub(free_comps.size(), n);
        for (std::size_t a = 0; a < free_comps.size(); ++a)
            for (std::size_t b = 0; b < n; ++b) sub(a, b) = f(free_comps[a] - 1, b);
        auto fill = solve_multiplicative(sub, target);
        if (!fill) {
            verdict.reason = "no K-witness: free components cannot absorb the discrepancy";
            return verdict;
        }
        for (std::size_t a = 0; a < free_comps.size(); ++a) mu.emplace(free_comps[a], (*fill)[a]);
    } else {
        for (std::size_t b = 0; b < n; ++b)
            if (target[b] != 1) {
                verdict.reason = "no K-witness: point scales do not lie in K";
                return verdict;
            }
    }

    // final verification: f(mu) = 1
    std::vector<Rat> scales;
    for (std::size_t i = 1; i <= p1.r(); ++i) scales.push_back(mu.at(i));
    for (std::size_t b = 0; b < n; ++b) {
        Rat acc(1);
        for (std::size_t i = 0; i < p1.r(); ++i) acc *= rat_power(scales[i], f(i, b));
        if (acc != 1) {
            verdict.reason = "no K-witness: point scales do not lie in K";
            return verdict;
        }
    }

    verdict.status = wr.word.empty() ? MatchVerdict::Status::Matched
                                     : MatchVerdict::Status::MatchedAfterWeyl;
    verdict.weyl_word = wr.word;
    verdict.k_witness = CycleAut(std::move(scales));
    verdict.correspondence = std::move(corr);
    verdict.reason = "matched";
    return verdict;
}

HodgeReport hodge_group_report(const AnticanonicalPair& p, long height_bound) {
    HodgeReport rep;
    EffectivenessContext ctx = EffectivenessContext::build(p, height_bound);
    PeriodHom phi = period_of(p);
    ClassVec a = p.ample_reference();
    for (const auto& beta : enumerate_lambda_roots(p, height_bound)) {
        // +-beta generate the same reflection; keep the ample-positive one
        Int s = inner(a, beta);
        if (s < 0 || (s == 0 && beta.coords < (-beta).coords)) continue;
        if (!is_nodal_class(phi, beta)) continue;
        auto rc = is_root(p, ctx, beta, height_bound);
        if (rc) rep.nodal_generators.push_back(*rc);
    }
    // probe the Aut^+/K factor: does some self-isometry fixing the cycle
    // match the pair with itself?
    auto self = deformation_equivalent(p, p, height_bound);
    if (self) {
        ++rep.aut_candidates_checked;
        MatchVerdict v = torelli_match(p, p, *self, height_bound);
        if (v.matched()) ++rep.aut_witnesses;
    }
    std::ostringstream os;
    os << "Hodge(Y,D) = W(Delta) x| (Aut+/K); " << rep.nodal_generators.size()
       << " nodal generators at bound " << height_bound;
    rep.structure_note = os.str();
    return rep;
}

std::string gamma_orbit_signature(const AnticanonicalPair& p, const NumExcClass& e) {
    // the unique component the class meets once determines the blowndown
    // sequence (d_1, ..., d_i + 1, ..., d_r)
    std::optional<std::size_t> comp;
    for (std::size_t i = 1; i <= p.r(); ++i) {
        Int d = inner(e.cls, p.cycle_class(i));
        if (d == 0) continue;
        if (d == 1 && !comp)
            comp = i;
        else
            throw error("gamma_orbit_signature: class does not meet the cycle in a single "
                        "transverse point");
    }
    if (!comp) throw error("gamma_orbit_signature: class is disjoint from the cycle");
    std::vector<Int> seq = p.sequence().entries;
    seq[*comp - 1] += 1;
    std::vector<Int> canon = SelfIntSeq{seq}.canonical_rotation();
    std::ostringstream os;
    os << "r=" << canon.size() << ";seq=";
    for (std::size_t i = 0; i < canon.size(); ++i) os << (i ? "," : "") << canon[i].get_str();
    return os.str();
}

}  // namespace aclab
