#pragma once

#include <vector>

#include "aclab/pair.hpp"

namespace aclab {

// Everything on the cycle D happens in G_m(Q) = Q*: points of D_i^int,
// multidegree-zero divisors, the isomorphism psi: Pic^0 D ~ G_m, and the
// Aut^0 D action. The identities implemented here are algebraic and hold
// over any field, so rational coordinates lose nothing.

// Divisor of multidegree (0,...,0): a list of (q - p) pairs, each supported
// on a single component.
struct Deg0Term {
    std::size_t component = 0;  // 1-based
    Rat q;                      // the + point
    Rat p;                      // the - point

    Deg0Term() = default;
    Deg0Term(std::size_t comp, Rat plus, Rat minus)
        : component(comp), q(std::move(plus)), p(std::move(minus)) {
        if (q == 0 || p == 0) throw error("Deg0Term: points must be nonzero");
    }
};

struct Deg0Divisor {
    std::vector<Deg0Term> terms;
};

// Element of Aut^0 D ~ G_m^r: one scale per component.
struct CycleAut {
    std::vector<Rat> scales;

    explicit CycleAut(std::vector<Rat> s) : scales(std::move(s)) {
        for (const Rat& l : scales)
            if (l == 0) throw error("CycleAut: zero scale");
    }
    static CycleAut identity(std::size_t r) { return CycleAut(std::vector<Rat>(r, Rat(1))); }
    bool is_identity() const;
};

// psi(O_D(d)) = prod p_ij / q_ij.
Rat psi_of_divisor(const Deg0Divisor& d);

bool is_principal(const Deg0Divisor& d);

// Collapses a gluing cocycle (mu_1, ..., mu_r) to its class in
// Pic^0 D ~ G_m; the product map of the Pic^0 computation.
Rat cocycle_reduce(const std::vector<Rat>& mu);

// The unique q on p's component with psi(O_D(q - p)) = L.
CyclePoint tau_p(const Rat& pic_element, const CyclePoint& p);

CyclePoint aut_act(const CycleAut& phi, const CyclePoint& x);
Deg0Divisor aut_act(const CycleAut& phi, const Deg0Divisor& d);

// Recovers the scales of phi through psi from any base points:
// F(phi)_i = psi(O_D(-phi(p_i) + p_i)).
std::vector<Rat> F_of_aut(const CycleAut& phi, const std::vector<CyclePoint>& base);

// Abel-Jacobi image of d: per-component product formula. Must agree with
// psi_of_divisor (the commuting square of the Jacobian comparison).
Rat abel_jacobi(const Deg0Divisor& d);

}  // namespace aclab
