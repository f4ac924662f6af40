#include "aclab/cycle.hpp"

#include <algorithm>
#include <map>

namespace aclab {

bool CycleAut::is_identity() const {
    return std::all_of(scales.begin(), scales.end(), [](const Rat& l) { return l == 1; });
}

Rat psi_of_divisor(const Deg0Divisor& d) {
    Rat v(1);
    for (const auto& t : d.terms) v *= t.p / t.q;
    return v;
}

bool is_principal(const Deg0Divisor& d) { return psi_of_divisor(d) == 1; }

Rat cocycle_reduce(const std::vector<Rat>& mu) {
    if (mu.empty()) throw error("cocycle_reduce: empty cocycle");
    Rat v(1);
    for (const Rat& m : mu) {
        if (m == 0) throw error("cocycle_reduce: zero entry");
        v *= m;
    }
    return v;
}

CyclePoint tau_p(const Rat& pic_element, const CyclePoint& p) {
    if (pic_element == 0) throw error("tau_p: Pic^0 element must be nonzero");
    // psi(O(q-p)) = p/q, so q = p / L.
    return CyclePoint(p.component, p.coord / pic_element);
}

CyclePoint aut_act(const CycleAut& phi, const CyclePoint& x) {
    if (x.component < 1 || x.component > phi.scales.size())
        throw error("aut_act: component index out of range");
    return CyclePoint(x.component, phi.scales[x.component - 1] * x.coord);
}

Deg0Divisor aut_act(const CycleAut& phi, const Deg0Divisor& d) {
    Deg0Divisor out;
    for (const auto& t : d.terms) {
        if (t.component < 1 || t.component > phi.scales.size())
            throw error("aut_act: component index out of range");
        const Rat& l = phi.scales[t.component - 1];
        out.terms.emplace_back(t.component, l * t.q, l * t.p);
    }
    return out;
}

std::vector<Rat> F_of_aut(const CycleAut& phi, const std::vector<CyclePoint>& base) {
    if (base.size() != phi.scales.size()) throw error("F_of_aut: base point count != r");
    std::vector<Rat> out;
    out.reserve(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (base[i].component != i + 1)
            throw error("F_of_aut: base point i must lie on component i");
        // psi(O(-phi(p)+p)) = psi(O(p - phi(p))) = phi(p)/p = lambda_i
        CyclePoint moved = aut_act(phi, base[i]);
        out.push_back(moved.coord / base[i].coord);
    }
    return out;
}

Rat abel_jacobi(const Deg0Divisor& d) {
    // Independent route: group terms by component, form each component's
    // product prod_j p_ij / q_ij, then multiply across components.
    std::map<std::size_t, Rat> per_component;
    for (const auto& t : d.terms) {
        auto [it, fresh] = per_component.try_emplace(t.component, Rat(1));
        it->second *= t.p / t.q;
    }
    Rat v(1);
    for (const auto& [comp, val] : per_component) v *= val;
    return v;
}

}  // namespace aclab
