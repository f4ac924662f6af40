#include "aclab/e8.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace aclab {

std::string ADEType::to_string() const {
    if (components.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i) os << "+";
        os << components[i].family << components[i].n;
    }
    return os.str();
}

LatticePtr e8_lattice() {
    static LatticePtr l = [] {
        IMat g(8, 8);
        for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
        // Bourbaki E8 diagram edges
        const std::pair<int, int> edges[] = {{1, 3}, {3, 4}, {2, 4}, {4, 5},
                                             {5, 6}, {6, 7}, {7, 8}};
        for (auto [a, b] : edges) {
            g(a - 1, b - 1) = 1;
            g(b - 1, a - 1) = 1;
        }
        std::vector<std::string> names;
        for (int i = 1; i <= 8; ++i) names.push_back("a" + std::to_string(i));
        return make_lattice(std::move(g), std::move(names));
    }();
    return l;
}

namespace {

// Exact LDL^T of a positive definite rational matrix.
struct LDL {
    std::vector<std::vector<Rat>> l;
    std::vector<Rat> d;
};

LDL ldl_decompose(const IMat& posdef) {
    std::size_t n = posdef.rows();
    LDL out;
    out.l.assign(n, std::vector<Rat>(n, Rat(0)));
    out.d.assign(n, Rat(0));
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(posdef(i, j));
    for (std::size_t j = 0; j < n; ++j) {
        Rat dj = a[j][j];
        for (std::size_t k = 0; k < j; ++k) dj -= out.l[j][k] * out.l[j][k] * out.d[k];
        if (dj <= 0) throw error("ldl_decompose: matrix is not positive definite");
        out.d[j] = dj;
        out.l[j][j] = 1;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rat v = a[i][j];
            for (std::size_t k = 0; k < j; ++k) v -= out.l[i][k] * out.l[j][k] * out.d[k];
            out.l[i][j] = v / dj;
        }
    }
    return out;
}

// floor/ceil of a rational
Int rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return f;
}
Int rat_ceil(const Rat& q) {
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return c;
}

}  // namespace

std::vector<ClassVec> short_vectors(const LatticePtr& l, const Int& norm) {
    std::size_t n = l->rank;
    if (n == 0) return {};
    IMat pos(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) pos(i, j) = -l->gram(i, j);
    Inertia in = inertia(pos);
    if (in.positive != n) throw error("short_vectors: lattice is not negative definite");
    LDL ldl = ldl_decompose(pos);
    // Q(x) = sum_j d_j (x_j + sum_{i>j} l_ij x_i)^2; recurse from the last
    // coordinate down.
    std::vector<Int> x(n, Int(0));
    std::vector<ClassVec> out;
    std::vector<Rat> shift(n, Rat(0));  // shift_j = sum_{i>j} l_ij x_i at current depth
    std::function<void(std::size_t, const Rat&)> rec = [&](std::size_t depth, const Rat& remaining) {
        if (depth == 0) {
            if (remaining == 0) {
                bool zero = std::all_of(x.begin(), x.end(), [](const Int& c) { return c == 0; });
                if (!zero) out.emplace_back(x, l);
            }
            return;
        }
        std::size_t j = depth - 1;
        // d_j (x_j + shift_j)^2 <= remaining
        Rat bound = remaining / ldl.d[j];
        // |x_j + shift_j| <= sqrt(bound): enumerate integers in the interval
        // [-s - shift, s - shift] with s = sqrt(bound) handled exactly via
        // squared comparisons
        Int lo = rat_floor(-shift[j]);
        while (ldl.d[j] * (Rat(lo) + shift[j]) * (Rat(lo) + shift[j]) <= remaining) lo -= 1;
        lo += 1;
        Int hi = rat_ceil(-shift[j]);
        while (ldl.d[j] * (Rat(hi) + shift[j]) * (Rat(hi) + shift[j]) <= remaining) hi += 1;
        hi -= 1;
        for (Int v = lo; v <= hi; v += 1) {
            x[j] = v;
            Rat term = Rat(v) + shift[j];
            Rat used = ldl.d[j] * term * term;
            if (used > remaining) continue;
            if (j > 0) {
                // update shifts of shallower coordinates
                std::vector<Rat> saved(j);
                for (std::size_t t = 0; t < j; ++t) {
                    saved[t] = shift[t];
                    shift[t] += ldl.l[j][t] * Rat(v);
                }
                rec(depth - 1, remaining - used);
                for (std::size_t t = 0; t < j; ++t) shift[t] = saved[t];
            } else {
                rec(depth - 1, remaining - used);
            }
        }
        x[j] = 0;
    };
    rec(n, Rat(norm));
    std::sort(out.begin(), out.end(),
              [](const ClassVec& a, const ClassVec& b) { return a.coords < b.coords; });
    return out;
}

const std::vector<ClassVec>& e8_roots() {
    static std::vector<ClassVec> roots = [] {
        auto r = short_vectors(e8_lattice(), Int(2));
        if (r.size() != 240) throw invariant_error("e8_roots: expected 240 roots");
        return r;
    }();
    return roots;
}

ADEType identify_ade(const std::vector<ClassVec>& roots) {
    ADEType t;
    if (roots.empty()) return t;
    for (const auto& r : roots)
        if (square(r) != -2) throw error("identify_ade: input of square != -2");
    // positivity by a deterministic generic functional
    std::set<std::vector<Int>> rootset;
    for (const auto& r : roots) rootset.insert(r.coords);
    auto positive = [&](const std::vector<Int>& v) {
        Int acc = 0, w = 1;
        for (const Int& c : v) {
            acc += c * w;
            w *= 4096;
        }
        if (acc == 0) throw error("identify_ade: functional vanished on a root");
        return acc > 0;
    };
    std::vector<std::vector<Int>> pos;
    for (const auto& r : roots)
        if (positive(r.coords)) pos.push_back(r.coords);
    if (pos.size() * 2 != roots.size())
        throw error("identify_ade: root set is not symmetric under negation");
    // simple roots: positives that are not sums of two positives
    std::set<std::vector<Int>> posset(pos.begin(), pos.end());
    std::vector<ClassVec> simple;
    const LatticePtr& amb = roots[0].ambient;
    for (const auto& v : pos) {
        bool decomposable = false;
        for (const auto& w : pos) {
            std::vector<Int> diff(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) diff[i] = v[i] - w[i];
            if (posset.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simple.emplace_back(v, amb);
    }
    // Dynkin graph
    std::size_t m = simple.size();
    std::vector<std::vector<std::size_t>> adj(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Int p = inner(simple[i], simple[j]);
            if (p == 1) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            } else if (p != 0) {
                throw error("identify_ade: not a simply laced simple system");
            }
        }
    // classify connected components
    std::vector<bool> seen(m, false);
    for (std::size_t s = 0; s < m; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp;
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (std::size_t w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::size_t nodes = comp.size();
        std::size_t edges = 0;
        std::size_t deg3 = 0, branch = 0, degmax = 0;
        for (std::size_t v : comp) {
            edges += adj[v].size();
            degmax = std::max(degmax, adj[v].size());
            if (adj[v].size() == 3) {
                ++deg3;
                branch = v;
            }
        }
        edges /= 2;
        if (edges != nodes - 1 || degmax > 3 || deg3 > 1)
            throw error("identify_ade: component is not an ADE diagram");
        if (deg3 == 0) {
            t.components.push_back({'A', nodes});
            continue;
        }
        // arm lengths from the branch node
        std::vector<std::size_t> arms;
        for (std::size_t w : adj[branch]) {
            std::size_t len = 1, prev = branch, cur = w;
            while (true) {
                std::size_t next = m;
                for (std::size_t u : adj[cur])
                    if (u != prev) next = u;
                if (next == m) break;
                prev = cur;
                cur = next;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms.size() != 3) throw error("identify_ade: malformed branch");
        if (arms[0] == 1 && arms[1] == 1)
            t.components.push_back({'D', nodes});
        else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4)
            t.components.push_back({'E', nodes});
        else
            throw error("identify_ade: diagram outside the ADE catalogue");
    }
    std::sort(t.components.begin(), t.components.end());
    return t;
}

namespace {

std::vector<ClassVec> complement_roots(const SubsystemEmbedding& emb) {
    std::vector<ClassVec> out;
    for (const auto& r : e8_roots()) {
        bool orth = true;
        for (const auto& im : emb.images)
            if (inner(r, im) != 0) {
                orth = false;
                break;
            }
        if (orth) out.push_back(r);
    }
    return out;
}

// Weyl-orbit classes are separated by cheap invariants in this range: the
// complement root count, the quotient torsion, and the span test. The full
// ADE classification is only computed for reporting.
std::string embedding_key(const SubsystemEmbedding& emb) {
    std::ostringstream os;
    auto info = root_count_in_complement(emb);
    os << info.count << "|" << quotient_torsion(emb).to_string() << "|"
       << (info.spans ? "spans" : "partial");
    return os.str();
}

const std::vector<std::vector<SubsystemEmbedding>>& embedding_levels() {
    static const std::vector<std::vector<SubsystemEmbedding>> levels = [] {
        std::vector<std::vector<SubsystemEmbedding>> out;
        std::vector<SubsystemEmbedding> level;
        {
            std::map<std::string, SubsystemEmbedding> classes;
            for (const auto& r : e8_roots()) {
                SubsystemEmbedding emb{{r}};
                std::string key = embedding_key(emb);
                if (!classes.count(key)) classes.emplace(key, emb);
            }
            for (auto& [k, v] : classes) level.push_back(v);
        }
        out.push_back(level);
        for (std::size_t len = 2; len <= 8; ++len) {
            std::map<std::string, SubsystemEmbedding> classes;
            for (const auto& emb : level) {
                for (const auto& r : e8_roots()) {
                    bool ok = inner(r, emb.images.back()) == 1;
                    for (std::size_t i = 0; i + 1 < emb.images.size() && ok; ++i)
                        ok = inner(r, emb.images[i]) == 0;
                    if (!ok) continue;
                    SubsystemEmbedding next{emb.images};
                    next.images.push_back(r);
                    std::string key = embedding_key(next);
                    if (!classes.count(key)) classes.emplace(key, next);
                }
            }
            level.clear();
            for (auto& [k, v] : classes) level.push_back(v);
            if (level.empty()) throw invariant_error("bds_embeddings: no chain extensions found");
            out.push_back(level);
        }
        return out;
    }();
    return levels;
}

}  // namespace

ADEType complement_type(const SubsystemEmbedding& emb) {
    return identify_ade(complement_roots(emb));
}

AbelianGroupStructure quotient_torsion(const SubsystemEmbedding& emb) {
    IMat m(8, emb.images.size());
    for (std::size_t j = 0; j < emb.images.size(); ++j)
        for (std::size_t i = 0; i < 8; ++i) m(i, j) = emb.images[j].coords[i];
    AbelianGroupStructure coker = cokernel_structure(m);
    AbelianGroupStructure torsion;
    torsion.torsion = coker.torsion;
    return torsion;
}

ComplementRootInfo root_count_in_complement(const SubsystemEmbedding& emb) {
    ComplementRootInfo info;
    std::vector<ClassVec> roots = complement_roots(emb);
    info.count = roots.size();
    SublatticeResult comp = orthogonal_complement(e8_lattice(), emb.images);
    if (comp.lattice->rank == 0) {
        info.spans = true;  // vacuous
        return info;
    }
    if (roots.empty()) {
        info.spans = false;
        return info;
    }
    IMat m(comp.lattice->rank, roots.size());
    std::size_t col = 0;
    for (const auto& r : roots) {
        auto coords = coordinates_in(comp.basis, r);
        if (!coords) throw invariant_error("root_count_in_complement: root outside complement");
        for (std::size_t i = 0; i < comp.lattice->rank; ++i) m(i, col) = (*coords)[i];
        ++col;
    }
    info.spans = cokernel_structure(m).trivial();
    return info;
}

std::vector<SubsystemEmbedding> bds_embeddings(std::size_t r_minus_1) {
    if (r_minus_1 < 1 || r_minus_1 > 8) throw error("bds_embeddings: need 1 <= r-1 <= 8");
    // Level walk: chain representatives are extended one node at a time and
    // deduplicated by invariants that separate the Weyl-orbit classes in
    // this range.
    return embedding_levels()[r_minus_1 - 1];
}

IntIsometry semidef_gamma_structure(const AnticanonicalPair& p, const ClassVec& sigma0,
                                    const ClassVec& lambda) {
    std::vector<ClassVec> cyc = p.cycle_classes();
    IMat g(cyc.size(), cyc.size());
    for (std::size_t i = 0; i < cyc.size(); ++i)
        for (std::size_t j = 0; j < cyc.size(); ++j) g(i, j) = inner(cyc[i], cyc[j]);
    Inertia in = inertia(g);
    if (!(in.positive == 0 && in.zero > 0))
        throw error("semidef_gamma_structure: pair is not strictly negative semidefinite");
    ClassVec d = p.anticanonical_class();
    if (square(sigma0) != -1 || inner(sigma0, d) != 1)
        throw error("semidef_gamma_structure: sigma0 must have square -1 and sigma0.[D] = 1");
    if (inner(lambda, sigma0) != 0 || inner(lambda, d) != 0)
        throw error("semidef_gamma_structure: lambda must be orthogonal to sigma0 and [D]");
    for (const auto& c : cyc)
        if (inner(lambda, c) != 0)
            throw error("semidef_gamma_structure: lambda must be orthogonal to every [D_i]");
    Int lsq = square(lambda);
    if (lsq % 2 != 0) throw invariant_error("semidef_gamma_structure: lambda^2 is odd");
    std::size_t n = p.ambient()->rank;
    IMat m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> ej(n, Int(0));
        ej[j] = 1;
        ClassVec x(ej, p.ambient());
        Int a = inner(x, d);
        Int b = inner(x, sigma0) + a;
        ClassVec alpha = x - sigma0.scaled(a) - d.scaled(b);
        // a_lambda(x) = a (sigma0 + lambda - (lambda^2/2) D) + b D
        //             + alpha - (alpha.lambda) D
        ClassVec img = sigma0.scaled(a) + lambda.scaled(a) - d.scaled(a * (lsq / 2)) +
                       d.scaled(b) + alpha - d.scaled(inner(alpha, lambda));
        for (std::size_t i = 0; i < n; ++i) m(i, j) = img.coords[i];
    }
    IntIsometry iso(std::move(m), p.ambient(), p.ambient());
    if (!iso.is_isometry()) throw invariant_error("semidef_gamma_structure: a_lambda not isometric");
    for (const auto& c : cyc)
        if (!(iso.apply(c) == c))
            throw invariant_error("semidef_gamma_structure: a_lambda moves a component");
    return iso;
}

std::vector<EmbeddingReport> ade_embedding_table() {
    std::vector<EmbeddingReport> table;
    for (std::size_t r = 2; r <= 9; ++r) {
        auto classes = bds_embeddings(r - 1);
        // primitive class first for a stable presentation
        std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) {
            return quotient_torsion(a).torsion.size() < quotient_torsion(b).torsion.size();
        });
        for (const auto& emb : classes) {
            EmbeddingReport rep;
            rep.r = r;
            rep.torsion = quotient_torsion(emb);
            rep.primitive = rep.torsion.torsion.empty();
            rep.complement = complement_type(emb);
            auto info = root_count_in_complement(emb);
            rep.complement_root_count = info.count;
            rep.roots_span_complement = info.spans;
            table.push_back(rep);
        }
    }
    return table;
}

}  // namespace aclab
