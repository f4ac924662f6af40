#include "aclab/cone.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace aclab {

namespace {

// Rational linear solve G c = b for symmetric nonsingular G (sizes <= r).
std::vector<Rat> solve_rational(std::vector<std::vector<Rat>> g, std::vector<Rat> b) {
    std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && g[piv][k] == 0) ++piv;
        if (piv == n) throw error("solve_rational: singular matrix");
        std::swap(g[piv], g[k]);
        std::swap(b[piv], b[k]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || g[i][k] == 0) continue;
            Rat f = g[i][k] / g[k][k];
            for (std::size_t j = k; j < n; ++j) g[i][j] -= f * g[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = b[k] / g[k][k];
    return x;
}

bool in_rational_span(const std::vector<ClassVec>& span, const ClassVec& v) {
    if (v.is_zero()) return true;
    if (span.empty()) return false;
    std::size_t n = v.coords.size();
    IMat m(n, span.size());
    for (std::size_t j = 0; j < span.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = span[j].coords[i];
    IMat aug(n, span.size() + 1);
    for (std::size_t j = 0; j < span.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) aug(i, j) = span[j].coords[i];
    for (std::size_t i = 0; i < n; ++i) aug(i, span.size()) = v.coords[i];
    return integer_rank(m) == integer_rank(aug);
}

std::size_t env_threads() {
    const char* s = std::getenv("ACLAB_THREADS");
    if (!s) return 1;
    long v = std::strtol(s, nullptr, 10);
    if (v < 1) return 1;
    return static_cast<std::size_t>(v);
}

}  // namespace

ClassVec EffectivenessContext::reduce(const ClassVec& v) const {
    ClassVec w = v;
    for (const auto& e : contracted_) w = w + e.scaled(inner(w, e));
    return w;
}

EffectivenessContext EffectivenessContext::build(const AnticanonicalPair& p, long bound) {
    EffectivenessContext ctx;
    ctx.pair_ = &p;
    ctx.bound_ = bound;
    ctx.reduced_cycle_ = p.cycle_classes();

    // Contract cycle components that are exceptional curves (d_i = -1); the
    // effectiveness case split needs them gone, and the generic ample cone
    // is determined by the contracted pair. The pushforward of a neighbor
    // class is exactly its projection off the contracted class.
    bool changed = true;
    while (changed && ctx.reduced_cycle_.size() >= 2) {
        changed = false;
        for (std::size_t i = 0; i < ctx.reduced_cycle_.size(); ++i) {
            if (square(ctx.reduced_cycle_[i]) != -1) continue;
            ClassVec e = ctx.reduced_cycle_[i];
            std::vector<ClassVec> next;
            for (std::size_t j = 0; j < ctx.reduced_cycle_.size(); ++j) {
                if (j == i) continue;
                const ClassVec& c = ctx.reduced_cycle_[j];
                next.push_back(c + e.scaled(inner(c, e)));
            }
            ctx.contracted_.push_back(e);
            ctx.reduced_cycle_ = std::move(next);
            changed = true;
            break;
        }
    }

    std::size_t rr = ctx.reduced_cycle_.size();
    IMat g(rr, rr);
    for (std::size_t i = 0; i < rr; ++i)
        for (std::size_t j = 0; j < rr; ++j) g(i, j) = inner(ctx.reduced_cycle_[i], ctx.reduced_cycle_[j]);
    Inertia in = inertia(g);

    if (in.positive > 0) {
        ctx.mode_ = EffMode::NotNegSemidef;
        // pair against the most positive component (the irreducible case has
        // rr = 1 and the test class [D] itself)
        std::size_t best = 0;
        for (std::size_t i = 1; i < rr; ++i)
            if (g(i, i) > g(best, best)) best = i;
        if (g(best, best) < 0)
            throw invariant_error("effectiveness_context: not semidefinite but every d_i < 0");
        ctx.mode_component_ = best + 1;
        ctx.test_ = RatVec(ctx.reduced_cycle_[best]);
        return ctx;
    }
    if (in.zero > 0) {
        ctx.mode_ = EffMode::StrictlySemidef;
        ClassVec d = ctx.reduced_cycle_[0];
        for (std::size_t i = 1; i < rr; ++i) d = d + ctx.reduced_cycle_[i];
        ctx.test_ = RatVec(d);
        return ctx;
    }

    ctx.mode_ = EffMode::NegDef;
    // y = A - (projection of A onto the span of the reduced components);
    // y is orthogonal to every component, has positive square, and pairs
    // positively with every other curve class by the ampleness of A.
    ClassVec a = ctx.reduce(p.ample_reference());
    std::vector<std::vector<Rat>> gq(rr, std::vector<Rat>(rr));
    std::vector<Rat> b(rr);
    for (std::size_t i = 0; i < rr; ++i) {
        b[i] = Rat(inner(a, ctx.reduced_cycle_[i]));
        for (std::size_t j = 0; j < rr; ++j) gq[i][j] = Rat(g(i, j));
    }
    std::vector<Rat> c = solve_rational(gq, b);
    std::vector<Rat> y(a.coords.size());
    for (std::size_t k = 0; k < y.size(); ++k) {
        y[k] = Rat(a.coords[k]);
        for (std::size_t i = 0; i < rr; ++i) y[k] -= c[i] * Rat(ctx.reduced_cycle_[i].coords[k]);
    }
    ctx.test_ = RatVec(std::move(y), p.ambient());
    if (square(ctx.test_) <= 0)
        throw invariant_error("effectiveness_context: projected test class has y^2 <= 0");
    for (std::size_t i = 0; i < rr; ++i)
        if (inner(ctx.test_, ctx.reduced_cycle_[i]) != 0)
            throw invariant_error("effectiveness_context: y not orthogonal to the components");
    return ctx;
}

bool EffectivenessContext::is_numexc(const ClassVec& alpha) const {
    if (square(alpha) != -1) return false;
    return inner(alpha, pair_->canonical_class()) == -1;
}

bool EffectivenessContext::is_effective(const NumExcClass& alpha) const {
    if (!is_numexc(alpha.cls)) throw error("is_effective: class is not numerical exceptional");
    ClassVec v = reduce(alpha.cls);
    // in the span of contracted components: necessarily one of them (an
    // actual curve), see the numexc constraint
    if (v.is_zero()) return true;
    if (mode_ == EffMode::NegDef && in_rational_span(reduced_cycle_, v)) return false;
    return inner(test_, v) >= 0;
}

namespace {

struct NumexcSearch {
    const GramLattice* lat;
    std::size_t head;                 // number of minimal-model generators
    std::vector<Int> kvec;            // gram * (-K): linear form coefficients
    long bound;
    std::vector<Int> current;
    std::vector<ClassVec>* out;
    LatticePtr ambient;
    Int target_square;                // alpha^2
    Int target_k;                     // alpha . (-K)
    std::optional<long> fixed_first;  // pin the first head coordinate (parallel split)

    // cycle orthogonality constraints (for Lambda root enumeration)
    std::vector<std::vector<Int>> extra_forms;  // rows: gram * D_i

    void run() { head_loop(0); }

    void head_loop(std::size_t pos) {
        if (pos == head) {
            tail_setup();
            return;
        }
        if (pos == 0 && fixed_first) {
            current[0] = *fixed_first;
            head_loop(1);
            return;
        }
        for (long v = -bound; v <= bound; ++v) {
            current[pos] = v;
            head_loop(pos + 1);
        }
    }

    Int head_square() {
        Int s = 0;
        for (std::size_t i = 0; i < head; ++i) {
            if (current[i] == 0) continue;
            for (std::size_t j = 0; j < head; ++j)
                if (current[j] != 0) s += current[i] * lat->gram(i, j) * current[j];
        }
        return s;
    }

    void tail_setup() {
        std::size_t n = lat->rank;
        Int hsq = head_square();
        Int budget = hsq - target_square;  // sum of tail squares
        if (budget < 0) return;
        Int t = target_k;
        for (std::size_t i = 0; i < head; ++i) t -= kvec[i] * current[i];
        std::vector<Int> extras(extra_forms.size(), Int(0));
        for (std::size_t c = 0; c < extra_forms.size(); ++c)
            for (std::size_t i = 0; i < head; ++i) extras[c] += extra_forms[c][i] * current[i];
        dfs(head, budget, t, extras);
        (void)n;
    }

    // tail coordinates contribute -b^2 to the square and +b to alpha.(-K)
    void dfs(std::size_t pos, const Int& budget, const Int& t, std::vector<Int>& extras) {
        std::size_t n = lat->rank;
        std::size_t m = n - pos;  // remaining variables
        if (m == 0) {
            if (budget != 0 || t != 0) return;
            for (const Int& v : extras)
                if (v != 0) return;
            out->emplace_back(current, ambient);
            return;
        }
        if (budget == 0) {
            // all remaining coordinates are zero
            if (t != 0) return;
            for (std::size_t c = 0; c < extras.size(); ++c)
                if (extras[c] != 0) return;
            for (std::size_t i = pos; i < n; ++i) current[i] = 0;
            out->emplace_back(current, ambient);
            return;
        }
        if (t * t > budget * Int(m)) return;             // Cauchy-Schwarz
        if (budget > Int(m) * Int(bound) * Int(bound)) return;
        Int cap = isqrt(budget);
        long lim = std::min(bound, static_cast<long>(cap.get_si()));
        for (long v = -lim; v <= lim; ++v) {
            current[pos] = v;
            Int nb = budget - Int(v) * Int(v);
            Int nt = t - Int(v);
            // feasibility of the extra linear forms: |partial| can change by
            // at most coefmax * remaining later; cheap cutoff with the
            // remaining budget cap
            bool ok = true;
            std::vector<Int> next_extras(extras.size());
            for (std::size_t c = 0; c < extras.size(); ++c) {
                next_extras[c] = extras[c] + extra_forms[c][pos] * Int(v);
                Int slack = 0;
                for (std::size_t i = pos + 1; i < n; ++i) slack += abs(extra_forms[c][i]);
                slack *= isqrt(nb);
                if (abs(next_extras[c]) > slack) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            dfs(pos + 1, nb, nt, next_extras);
        }
        current[pos] = 0;
    }
};

NumexcSearch make_search(const AnticanonicalPair& p, long height_bound, const Int& target_square,
                         const Int& target_k, std::vector<std::vector<Int>> extra_forms,
                         std::vector<ClassVec>* out) {
    NumexcSearch s;
    s.lat = p.ambient().get();
    s.head = p.ambient()->rank - p.log().size();
    s.kvec = p.ambient()->gram * p.anticanonical_class().coords;
    // every blowup basis vector pairs to 1 with -K; the DFS relies on it
    for (std::size_t i = s.head; i < p.ambient()->rank; ++i)
        if (s.kvec[i] != 1) throw invariant_error("enumerate: e_k . (-K) != 1");
    s.bound = height_bound;
    s.current.assign(p.ambient()->rank, Int(0));
    s.out = out;
    s.ambient = p.ambient();
    s.target_square = target_square;
    s.target_k = target_k;
    s.extra_forms = std::move(extra_forms);
    return s;
}

std::vector<ClassVec> enumerate_quadric(const AnticanonicalPair& p, long height_bound,
                                        const Int& target_square, const Int& target_k,
                                        std::vector<std::vector<Int>> extra_forms) {
    std::size_t threads = env_threads();
    if (threads <= 1) {
        std::vector<ClassVec> out;
        make_search(p, height_bound, target_square, target_k, std::move(extra_forms), &out).run();
        return out;
    }
    // data-parallel split over the first head coordinate; the per-cell
    // results are concatenated in order, so the output is identical to the
    // serial enumeration
    long span = 2 * height_bound + 1;
    std::vector<std::vector<ClassVec>> parts(span);
    std::vector<std::thread> pool;
    std::size_t chunk = (static_cast<std::size_t>(span) + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
        long lo = -height_bound + static_cast<long>(t * chunk);
        long hi = std::min(lo + static_cast<long>(chunk) - 1, height_bound);
        if (lo > height_bound) break;
        pool.emplace_back([&, lo, hi]() {
            for (long v = lo; v <= hi; ++v) {
                NumexcSearch s = make_search(p, height_bound, target_square, target_k,
                                             extra_forms, &parts[v + height_bound]);
                s.fixed_first = v;
                s.run();
            }
        });
    }
    for (auto& th : pool) th.join();
    std::vector<ClassVec> out;
    for (auto& part : parts)
        for (auto& v : part) out.push_back(std::move(v));
    return out;
}

}  // namespace

std::vector<NumExcClass> enumerate_numexc(const AnticanonicalPair& p, long height_bound) {
    std::vector<ClassVec> raw = enumerate_quadric(p, height_bound, Int(-1), Int(1), {});
    std::vector<NumExcClass> out;
    out.reserve(raw.size());
    for (auto& v : raw) out.emplace_back(std::move(v));
    return out;
}

std::vector<NumExcClass> enumerate_exceptional(const AnticanonicalPair& p,
                                               const EffectivenessContext& ctx,
                                               long height_bound) {
    std::vector<NumExcClass> all = enumerate_numexc(p, height_bound);
    std::vector<NumExcClass> out;
    for (auto& a : all)
        if (ctx.is_effective(a)) out.push_back(std::move(a));
    return out;
}

std::vector<ClassVec> enumerate_lambda_roots(const AnticanonicalPair& p, long height_bound) {
    std::vector<std::vector<Int>> forms;
    for (std::size_t i = 1; i <= p.r(); ++i)
        forms.push_back(p.ambient()->gram * p.cycle_class(i).coords);
    // beta . (-K) = 0 is implied but also serves as the folded linear form
    return enumerate_quadric(p, height_bound, Int(-2), Int(0), std::move(forms));
}

ClassVec reflect(const ClassVec& x, const ClassVec& beta) {
    if (square(beta) != -2) throw error("reflect: beta^2 != -2");
    return x + beta.scaled(inner(x, beta));
}

RatVec reflect(const RatVec& x, const ClassVec& beta) {
    if (square(beta) != -2) throw error("reflect: beta^2 != -2");
    Rat c = inner(x, beta);
    std::vector<Rat> out = x.coords;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * Rat(beta.coords[i]);
    return RatVec(std::move(out), x.ambient);
}

ConeMembership in_generic_ample_cone(const AnticanonicalPair& p, const EffectivenessContext& ctx,
                                     const RatVec& x, long height_bound) {
    ConeMembership m;
    m.bound = height_bound;
    if (square(x) <= 0) {
        m.inside = false;
        m.reason = "x^2 <= 0";
        return m;
    }
    if (inner(x, p.ample_reference()) <= 0) {
        m.inside = false;
        m.reason = "wrong component of the positive cone";
        return m;
    }
    for (std::size_t i = 1; i <= p.r(); ++i)
        if (inner(x, p.cycle_class(i)) < 0) {
            m.inside = false;
            m.reason = "x . [D_i] < 0";
            m.violating = p.cycle_class(i);
            return m;
        }
    for (const auto& a : enumerate_exceptional(p, ctx, height_bound))
        if (inner(x, a.cls) < 0) {
            m.inside = false;
            m.reason = "x . alpha < 0 for an effective exceptional class";
            m.violating = a.cls;
            return m;
        }
    m.inside = true;
    m.reason = "certified up to bound";
    return m;
}

namespace {
void require_lambda_minus_two(const AnticanonicalPair& p, const ClassVec& beta, const char* who) {
    if (!beta.ambient->same_as(*p.ambient())) throw error(std::string(who) + ": wrong lattice");
    if (square(beta) != -2) throw error(std::string(who) + ": beta^2 != -2");
    for (std::size_t i = 1; i <= p.r(); ++i)
        if (inner(beta, p.cycle_class(i)) != 0)
            throw error(std::string(who) + ": beta is not in Lambda");
}
}  // namespace

namespace {

// A witness class has to be the class of an irreducible exceptional curve on
// the very general deformation, i.e. cut a face of the generic ample cone.
// Decomposable effective classes pair negatively with one of their summands,
// so we demand nonnegative pairing against every other enumerated effective
// class. This can only under-report witnesses (an honest
// not-found-within-bound), never invent one.
bool extremal_among(const ClassVec& alpha, const std::vector<NumExcClass>& effective) {
    for (const auto& other : effective) {
        if (other.cls == alpha) continue;
        if (inner(alpha, other.cls) < 0) return false;
    }
    return true;
}

}  // namespace

std::optional<RootClass> is_root(const AnticanonicalPair& p, const EffectivenessContext& ctx,
                                 const ClassVec& beta, long height_bound) {
    require_lambda_minus_two(p, beta, "is_root");
    // Minimal F0/F2: Lambda has rank one spanned by a (-2)-class, and both
    // generators are roots (the two rulings' difference, resp. the negative
    // section); there are no exceptional curves to witness with.
    if (p.log().empty() && (p.minimal().kind == MinimalKind::F0orF2_Bisection8 ||
                            p.minimal().kind == MinimalKind::F0orF2_TwoSections22))
        return RootClass{beta, std::nullopt};
    std::vector<NumExcClass> effective = enumerate_exceptional(p, ctx, height_bound);
    for (const auto& e2 : effective) {
        if (inner(beta, e2.cls) != 1) continue;
        NumExcClass e1(beta + e2.cls);
        if (!ctx.is_effective(e1)) continue;
        if (!extremal_among(e2.cls, effective)) continue;
        if (!extremal_among(e1.cls, effective)) continue;
        if (inner(e1.cls, e2.cls) != 0)
            throw invariant_error("is_root: witness pair not disjoint");
        return RootClass{beta, std::make_pair(e1, e2)};
    }
    return std::nullopt;
}

ReflectionTestResult reflection_root_test(const AnticanonicalPair& p,
                                          const EffectivenessContext& ctx, const ClassVec& beta,
                                          long height_bound) {
    require_lambda_minus_two(p, beta, "reflection_root_test");
    ReflectionTestResult res;
    if (p.log().empty() && (p.minimal().kind == MinimalKind::F0orF2_Bisection8 ||
                            p.minimal().kind == MinimalKind::F0orF2_TwoSections22))
        return res;  // no exceptional walls to move
    for (const auto& a : enumerate_exceptional(p, ctx, height_bound)) {
        ClassVec img = reflect(a.cls, beta);
        if (!ctx.is_effective(NumExcClass(img))) {
            res.preserved = false;
            res.violated = img;
            return res;
        }
    }
    return res;
}

WeylReduction weyl_reduce(const AnticanonicalPair& p, const std::vector<RootClass>& nodal,
                          const RatVec& x) {
    // The chamber is the one containing the ample classes, so orient every
    // nodal class positively against the ample reference (+-beta give the
    // same reflection) and deduplicate.
    ClassVec a = p.ample_reference();
    std::vector<ClassVec> walls;
    for (const auto& rc : nodal) {
        ClassVec beta = rc.cls;
        Int s = inner(a, beta);
        if (s < 0 || (s == 0 && beta.coords < (-beta).coords)) beta = -beta;
        bool seen = false;
        for (const auto& w : walls) seen = seen || w == beta;
        if (!seen) walls.push_back(beta);
    }
    WeylReduction red;
    red.reduced = x;
    std::size_t iterations = 0;
    bool moved = true;
    while (moved) {
        moved = false;
        for (const auto& beta : walls) {
            if (inner(red.reduced, beta) < 0) {
                red.reduced = reflect(red.reduced, beta);
                red.word.push_back(beta);
                moved = true;
                if (++iterations > 100000)
                    throw error("weyl_reduce: iteration cap hit; nodal set is inconsistent");
                break;
            }
        }
    }
    return red;
}

AdmissibilityVerdict is_admissible(const IntIsometry& gamma, const AnticanonicalPair& p,
                                   const EffectivenessContext& ctx, long height_bound) {
    if (!gamma.is_isometry()) throw error("is_admissible: not an isometry");
    if (!gamma.source->same_as(*p.ambient()) || !gamma.target->same_as(*p.ambient()))
        throw error("is_admissible: isometry does not act on the pair's lattice");
    for (std::size_t i = 1; i <= p.r(); ++i)
        if (!(gamma.apply(p.cycle_class(i)) == p.cycle_class(i)))
            throw error("is_admissible: gamma does not fix [D_i]");
    AdmissibilityVerdict v;
    v.bound = height_bound;
    ClassVec a = p.ample_reference();
    if (inner(gamma.apply(a), a) <= 0) {
        v.admissible = false;
        v.violating = a;
        return v;
    }
    if (ctx.mode() != EffMode::NegDef || p.dsquare() == -1) {
        // isometries fixing the [D_i] automatically preserve the generic
        // ample cone here
        v.admissible = true;
        v.shortcut = true;
        return v;
    }
    IntIsometry inv = gamma.inverse();
    for (const auto& alpha : enumerate_exceptional(p, ctx, height_bound)) {
        ClassVec fwd = gamma.apply(alpha.cls);
        if (!ctx.is_effective(NumExcClass(fwd))) {
            v.admissible = false;
            v.violating = fwd;
            return v;
        }
        ClassVec bwd = inv.apply(alpha.cls);
        if (!ctx.is_effective(NumExcClass(bwd))) {
            v.admissible = false;
            v.violating = bwd;
            return v;
        }
    }
    v.admissible = true;
    return v;
}

}  // namespace aclab
