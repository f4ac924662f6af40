#include "aclab/lattice.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace aclab {

GramLattice::GramLattice(IMat g, std::vector<std::string> names)
    : rank(g.rows()), gram(std::move(g)), labels(std::move(names)) {
    if (!gram.is_symmetric()) throw error("GramLattice: gram matrix not symmetric");
    if (labels.size() != rank) throw error("GramLattice: label count != rank");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != rank) throw error("GramLattice: duplicate basis labels");
}

bool GramLattice::is_even() const {
    for (std::size_t i = 0; i < rank; ++i)
        if (gram(i, i) % 2 != 0) return false;
    return true;
}

LatticePtr make_lattice(IMat gram, std::vector<std::string> labels) {
    return std::make_shared<const GramLattice>(std::move(gram), std::move(labels));
}

namespace {
void check_same_ambient(const ClassVec& x, const ClassVec& y, const char* who) {
    if (!x.ambient || !y.ambient) throw error(std::string(who) + ": vector without ambient lattice");
    if (x.ambient == y.ambient) return;
    if (!x.ambient->same_as(*y.ambient)) throw error(std::string(who) + ": ambient lattice mismatch");
}
}  // namespace

ClassVec::ClassVec(std::vector<Int> c, LatticePtr l) : coords(std::move(c)), ambient(std::move(l)) {
    if (!ambient) throw error("ClassVec: null ambient");
    if (coords.size() != ambient->rank) throw error("ClassVec: coordinate length != ambient rank");
}

ClassVec ClassVec::operator+(const ClassVec& o) const {
    check_same_ambient(*this, o, "ClassVec::+");
    std::vector<Int> c(coords);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords[i];
    return ClassVec(std::move(c), ambient);
}

ClassVec ClassVec::operator-(const ClassVec& o) const {
    check_same_ambient(*this, o, "ClassVec::-");
    std::vector<Int> c(coords);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords[i];
    return ClassVec(std::move(c), ambient);
}

ClassVec ClassVec::operator-() const {
    std::vector<Int> c(coords);
    for (auto& v : c) v = -v;
    return ClassVec(std::move(c), ambient);
}

ClassVec ClassVec::scaled(const Int& c) const {
    std::vector<Int> w(coords);
    for (auto& v : w) v *= c;
    return ClassVec(std::move(w), ambient);
}

bool ClassVec::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Int& v) { return v == 0; });
}

Int inner(const ClassVec& x, const ClassVec& y) {
    check_same_ambient(x, y, "inner");
    const IMat& g = x.ambient->gram;
    Int s = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i] == 0) continue;
        for (std::size_t j = 0; j < y.coords.size(); ++j) {
            if (y.coords[j] == 0) continue;
            s += x.coords[i] * g(i, j) * y.coords[j];
        }
    }
    return s;
}

RatVec::RatVec(std::vector<Rat> c, LatticePtr l) : coords(std::move(c)), ambient(std::move(l)) {
    if (!ambient) throw error("RatVec: null ambient");
    if (coords.size() != ambient->rank) throw error("RatVec: coordinate length != ambient rank");
}

RatVec::RatVec(const ClassVec& v) : ambient(v.ambient) {
    coords.reserve(v.coords.size());
    for (const Int& c : v.coords) coords.emplace_back(c);
}

Rat inner(const RatVec& x, const RatVec& y) {
    if (x.coords.size() != y.coords.size()) throw error("inner: size mismatch");
    const IMat& g = x.ambient->gram;
    Rat s = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        if (x.coords[i] == 0) continue;
        for (std::size_t j = 0; j < y.coords.size(); ++j) {
            if (y.coords[j] == 0) continue;
            s += x.coords[i] * Rat(g(i, j)) * y.coords[j];
        }
    }
    return s;
}

Rat inner(const RatVec& x, const ClassVec& y) { return inner(x, RatVec(y)); }

IntIsometry::IntIsometry(IMat m, LatticePtr src, LatticePtr tgt)
    : matrix(std::move(m)), source(std::move(src)), target(std::move(tgt)) {
    if (matrix.rows() != target->rank || matrix.cols() != source->rank)
        throw error("IntIsometry: matrix shape does not match lattices");
}

ClassVec IntIsometry::apply(const ClassVec& v) const {
    if (!v.ambient->same_as(*source)) throw error("IntIsometry::apply: wrong source lattice");
    return ClassVec(matrix * v.coords, target);
}

RatVec IntIsometry::apply(const RatVec& v) const {
    std::vector<Rat> out(matrix.rows(), Rat(0));
    for (std::size_t i = 0; i < matrix.rows(); ++i)
        for (std::size_t j = 0; j < matrix.cols(); ++j)
            if (v.coords[j] != 0) out[i] += Rat(matrix(i, j)) * v.coords[j];
    return RatVec(std::move(out), target);
}

bool IntIsometry::is_isometry() const {
    if (matrix.rows() != matrix.cols()) return false;
    IMat lhs = matrix.transpose() * target->gram * matrix;
    if (!(lhs == source->gram)) return false;
    Int d = determinant(matrix);
    return d == 1 || d == -1;
}

IntIsometry IntIsometry::inverse() const {
    std::size_t n = matrix.rows();
    if (n != matrix.cols()) throw error("IntIsometry::inverse: not square");
    // Solve M X = I column by column; integrality is guaranteed by det = +-1.
    IMat inv(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> e(n, Int(0));
        e[j] = 1;
        auto x = solve_integer(matrix, e);
        if (!x) throw error("IntIsometry::inverse: matrix not unimodular");
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*x)[i];
    }
    return IntIsometry(std::move(inv), target, source);
}

IntIsometry IntIsometry::compose(const IntIsometry& first) const {
    if (!first.target->same_as(*source)) throw error("IntIsometry::compose: chain mismatch");
    return IntIsometry(matrix * first.matrix, first.source, target);
}

IntIsometry identity_isometry(const LatticePtr& l) {
    return IntIsometry(IMat::identity(l->rank), l, l);
}

std::string AbelianGroupStructure::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < free_rank; ++i) {
        os << (first ? "" : " + ") << "Z";
        first = false;
    }
    for (const Int& d : torsion) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

AbelianGroupStructure cokernel_structure(const IMat& m) {
    AbelianGroupStructure g;
    if (m.rows() == 0) return g;
    if (m.cols() == 0) {
        g.free_rank = m.rows();
        return g;
    }
    SmithDecomposition d = smith_decomposition(m);
    g.free_rank = m.rows() - d.rank;
    for (const Int& f : d.invariant_factors)
        if (f > 1) g.torsion.push_back(f);
    return g;
}

SublatticeResult orthogonal_complement(const LatticePtr& l, const std::vector<ClassVec>& spans) {
    for (const auto& s : spans)
        if (!s.ambient->same_as(*l)) throw error("orthogonal_complement: span vector not in lattice");
    // Rows of A are (gram * s)^T, so the complement is ker A.
    IMat a(spans.size(), l->rank);
    for (std::size_t i = 0; i < spans.size(); ++i) {
        std::vector<Int> row = l->gram * spans[i].coords;
        for (std::size_t j = 0; j < l->rank; ++j) a(i, j) = row[j];
    }
    IMat k = integer_kernel(a);
    SublatticeResult out;
    std::size_t r = k.cols();
    IMat g(r, r);
    for (std::size_t j = 0; j < r; ++j) out.basis.emplace_back(k.col_vec(j), l);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) g(i, j) = inner(out.basis[i], out.basis[j]);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < r; ++j) names.push_back("c" + std::to_string(j + 1));
    out.lattice = make_lattice(std::move(g), std::move(names));
    return out;
}

Inertia inertia(const IMat& gram) {
    if (!gram.is_symmetric()) throw error("inertia: matrix not symmetric");
    std::size_t n = gram.rows();
    // Rational symmetric elimination with 1x1 pivots where possible and
    // hyperbolic 2x2 pivots when the whole diagonal vanishes.
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(gram(i, j));
    std::vector<bool> dead(n, false);
    Inertia res;
    std::size_t alive = n;
    while (alive > 0) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!dead[i] && a[i][i] != 0) {
                piv = i;
                break;
            }
        if (piv < n) {
            if (a[piv][piv] > 0)
                ++res.positive;
            else
                ++res.negative;
            Rat d = a[piv][piv];
            dead[piv] = true;
            --alive;
            for (std::size_t i = 0; i < n; ++i) {
                if (dead[i] || a[i][piv] == 0) continue;
                Rat f = a[i][piv] / d;
                for (std::size_t j = 0; j < n; ++j)
                    if (!dead[j]) a[i][j] -= f * a[piv][j];
            }
            for (std::size_t j = 0; j < n; ++j) {
                a[piv][j] = 0;
                a[j][piv] = 0;
            }
            continue;
        }
        // Zero diagonal throughout the live block: either the block is zero,
        // or some off-diagonal entry gives a hyperbolic pair.
        std::size_t pi = n, pj = n;
        for (std::size_t i = 0; i < n && pi == n; ++i) {
            if (dead[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j)
                if (!dead[j] && a[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        }
        if (pi == n) {
            res.zero += alive;
            break;
        }
        ++res.positive;
        ++res.negative;
        Rat b = a[pi][pj];
        dead[pi] = dead[pj] = true;
        alive -= 2;
        for (std::size_t i = 0; i < n; ++i) {
            if (dead[i]) continue;
            Rat ui = a[i][pi], vi = a[i][pj];
            if (ui == 0 && vi == 0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (dead[j]) continue;
                a[i][j] -= (ui * a[pj][j] + vi * a[pi][j]) / b;
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            a[pi][j] = a[j][pi] = 0;
            a[pj][j] = a[j][pj] = 0;
        }
    }
    return res;
}

Definiteness definiteness(const GramLattice& l) {
    Inertia in = inertia(l.gram);
    if (in.positive == 0 && in.zero == 0) return Definiteness::NegativeDefinite;
    if (in.positive == 0) return Definiteness::StrictlyNegativeSemidefinite;
    return Definiteness::IndefiniteOrOther;
}

namespace {

// Enumerates nonzero integer vectors of max-norm exactly m, lexicographically.
bool next_in_shell(std::vector<Int>& v, long m) {
    std::size_t n = v.size();
    while (true) {
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (v[i] < m) {
                ++v[i];
                for (std::size_t j = i + 1; j < n; ++j) v[j] = -m;
                break;
            }
            if (i == 0) return false;
        }
        bool on_shell = false;
        for (const Int& c : v)
            if (c == m || c == -m) {
                on_shell = true;
                break;
            }
        if (on_shell) return true;
    }
}

}  // namespace

std::optional<HyperbolicSplit> hyperbolic_splitting(const LatticePtr& l, long search_bound) {
    if (!l->is_even()) throw error("hyperbolic_splitting: lattice is not even");
    if (l->rank < 2) throw error("hyperbolic_splitting: rank too small to contain U");
    Inertia in = inertia(l->gram);
    if (!(in.positive == 1 && in.zero == 0 && in.negative == l->rank - 1))
        throw error("hyperbolic_splitting: signature is not (1, rank-1)");
    std::size_t n = l->rank;
    for (long m = 1; m <= search_bound; ++m) {
        std::vector<Int> v(n, Int(-m));
        // Walk the max-norm-m shell; the first coordinate can be fixed >= 0
        // since +-e give the same splitting.
        do {
            if (v[0] < 0) continue;
            ClassVec e(v, l);
            if (e.is_zero() || square(e) != 0) continue;
            // make primitive
            Int g = 0;
            for (const Int& c : e.coords) g = gcd(g, c);
            if (g > 1) continue;  // the primitive representative has smaller norm
            // partner: u with e.u = 1, then f = u - (u^2/2) e (lattice is even)
            std::vector<Int> w = l->gram * e.coords;
            IMat row(1, n);
            for (std::size_t j = 0; j < n; ++j) row(0, j) = w[j];
            auto u = solve_integer(row, {Int(1)});
            if (!u) continue;
            ClassVec uv(*u, l);
            Int usq = square(uv);
            if (usq % 2 != 0) throw invariant_error("hyperbolic_splitting: odd square in even lattice");
            ClassVec f = uv - e.scaled(usq / 2);
            if (square(f) != 0 || inner(e, f) != 1)
                throw invariant_error("hyperbolic_splitting: partner construction failed");
            SublatticeResult comp = orthogonal_complement(l, {e, f});
            return HyperbolicSplit{e, f, std::move(comp)};
        } while (next_in_shell(v, m));
    }
    return std::nullopt;
}

std::optional<std::vector<Int>> coordinates_in(const std::vector<ClassVec>& basis, const ClassVec& v) {
    if (basis.empty()) return v.is_zero() ? std::optional<std::vector<Int>>(std::vector<Int>{}) : std::nullopt;
    std::size_t n = basis[0].coords.size();
    IMat m(n, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = basis[j].coords[i];
    return solve_integer(m, v.coords);
}

}  // namespace aclab
