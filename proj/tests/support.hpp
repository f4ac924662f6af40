#pragma once

#include <random>
#include <vector>

#include "aclab/cycle.hpp"
#include "aclab/pair.hpp"

namespace testsupport {

using aclab::Int;
using aclab::Rat;
using Rng = std::mt19937_64;

inline Rat rand_gm(Rng& g, bool allow_negative = true) {
    std::uniform_int_distribution<long> num(1, 12), den(1, 12);
    std::bernoulli_distribution neg(0.3);
    Rat q = aclab::make_rat(num(g), den(g));
    if (allow_negative && neg(g)) q = -q;
    return q;
}

// --- cocycle oracle -------------------------------------------------------
// Builds the gluing cocycle of O_D(d) from the explicit trivializations
// s_i(t) = prod_j (t - p_ij) / (t - q_ij): the cocycle entry over the node
// joining component i-1 to component i is s_i(0) / s_{i-1}(infinity).
// Polynomials are manipulated as coefficient vectors, so this path is
// independent of the product formula it checks.

struct RPoly {
    std::vector<Rat> c;  // c[k] t^k, normalized (no trailing zeros except constant 1)

    static RPoly one() { return RPoly{{Rat(1)}}; }
    RPoly times_linear(const Rat& root) const {  // multiply by (t - root)
        RPoly out;
        out.c.assign(c.size() + 1, Rat(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            out.c[k + 1] += c[k];
            out.c[k] -= root * c[k];
        }
        return out;
    }
    Rat at_zero() const { return c.front(); }
    Rat leading() const { return c.back(); }
};

inline std::vector<Rat> cocycle_of(const aclab::Deg0Divisor& d, std::size_t r) {
    std::vector<RPoly> num(r, RPoly::one()), den(r, RPoly::one());
    for (const auto& t : d.terms) {
        num[t.component - 1] = num[t.component - 1].times_linear(t.p);
        den[t.component - 1] = den[t.component - 1].times_linear(t.q);
    }
    std::vector<Rat> mu(r);
    for (std::size_t i = 0; i < r; ++i) {
        std::size_t prev = (i + r - 1) % r;
        Rat value_at_zero = num[i].at_zero() / den[i].at_zero();
        Rat prev_at_infinity = num[prev].leading() / den[prev].leading();
        mu[i] = value_at_zero / prev_at_infinity;
    }
    return mu;
}

inline aclab::Deg0Divisor rand_divisor(Rng& g, std::size_t r, std::size_t max_terms = 5) {
    std::uniform_int_distribution<std::size_t> nterms(0, max_terms), comp(1, r);
    aclab::Deg0Divisor d;
    std::size_t n = nterms(g);
    for (std::size_t k = 0; k < n; ++k) d.terms.emplace_back(comp(g), rand_gm(g), rand_gm(g));
    return d;
}

// --- brute-force definiteness refuter --------------------------------------
// Scans x in the box |x_i| <= 3 and reports whether any positive value or
// any vanishing value at x != 0 shows up.

struct BruteSigns {
    bool found_positive = false;
    bool found_zero = false;  // at some x != 0
};

inline BruteSigns brute_signs(const aclab::IMat& g) {
    std::size_t n = g.rows();
    BruteSigns res;
    std::vector<long> x(n, -3);
    while (true) {
        bool nonzero = false;
        for (long v : x) nonzero = nonzero || v != 0;
        if (nonzero) {
            Int q = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) q += Int(x[i]) * g(i, j) * Int(x[j]);
            if (q > 0) res.found_positive = true;
            if (q == 0) res.found_zero = true;
        }
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (x[i] < 3) {
                ++x[i];
                for (std::size_t j = i + 1; j < n; ++j) x[j] = -3;
                break;
            }
            if (i == 0) return res;
        }
    }
}

// --- random blowup logs -----------------------------------------------------

inline aclab::MinimalModel rand_minimal(Rng& g) {
    std::uniform_int_distribution<int> kind(0, 7), npick(0, 3);
    static const long ns[] = {0, 2, 3, 4};
    aclab::MinimalModel m;
    switch (kind(g)) {
        case 0: m = {aclab::MinimalKind::P2_111, 0}; break;
        case 1: m = {aclab::MinimalKind::P2_14, 0}; break;
        case 2: m = {aclab::MinimalKind::P2_9, 0}; break;
        case 3: m = {aclab::MinimalKind::FN_N0N0, ns[npick(g)]}; break;
        case 4: m = {aclab::MinimalKind::FN_N_Np2_0, ns[npick(g)]}; break;
        case 5: m = {aclab::MinimalKind::FN_N_Np4, ns[npick(g)]}; break;
        case 6: m = {aclab::MinimalKind::F0orF2_Bisection8, std::bernoulli_distribution()(g) ? 0 : 2}; break;
        default: m = {aclab::MinimalKind::F0orF2_TwoSections22, std::bernoulli_distribution()(g) ? 0 : 2}; break;
    }
    return m;
}

inline aclab::AnticanonicalPair rand_pair(Rng& g, std::size_t max_steps,
                                          bool interior_only = false,
                                          std::optional<aclab::MinimalModel> minimal = std::nullopt) {
    aclab::AnticanonicalPair p =
        aclab::AnticanonicalPair::make(minimal ? *minimal : rand_minimal(g));
    std::uniform_int_distribution<std::size_t> nsteps(0, max_steps);
    std::size_t steps = nsteps(g);
    for (std::size_t k = 0; k < steps; ++k) {
        std::uniform_int_distribution<std::size_t> comp(1, p.r());
        std::uniform_int_distribution<int> move(0, interior_only ? 1 : 5);
        int mv = move(g);
        bool have_interior_parent = false;
        for (const auto& rec : p.log()) have_interior_parent |= rec.step.is_interior();
        if (mv <= 1 || interior_only) {
            std::size_t c = comp(g);
            p = p.interior_blowup(c, aclab::CyclePoint(c, rand_gm(g)));
        } else if (mv <= 3 && have_interior_parent) {
            // infinitely near on a random earlier interior step
            std::vector<std::size_t> parents;
            for (std::size_t i = 0; i < p.log().size(); ++i)
                if (p.log()[i].step.is_interior()) parents.push_back(i + 1);
            std::uniform_int_distribution<std::size_t> pick(0, parents.size() - 1);
            p = p.interior_blowup_near(parents[pick(g)]);
        } else {
            std::uniform_int_distribution<std::size_t> edge(1, p.r());
            p = p.corner_blowup(edge(g));
        }
    }
    return p;
}

}  // namespace testsupport
