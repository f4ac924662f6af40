#include "aclab/normal_form.hpp"

#include <cstdlib>

namespace aclab {

Int determinant(const IMat& m) {
    if (m.rows() != m.cols()) throw error("determinant: not square");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    IMat a = m;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                a(i, j) = t / prev;  // division is exact (Bareiss)
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

// Locates the entry of smallest nonzero |value| in the submatrix starting at
// (t,t); returns false if that submatrix is zero.
bool find_pivot(const IMat& s, std::size_t t, std::size_t& pi, std::size_t& pj) {
    bool found = false;
    Int best = 0;
    for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j) {
            if (s(i, j) == 0) continue;
            Int a = abs(s(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SmithDecomposition smith_decomposition(const IMat& m) {
    SmithDecomposition d;
    d.s = m;
    d.u = IMat::identity(m.rows());
    d.v = IMat::identity(m.cols());
    IMat& s = d.s;
    IMat& u = d.u;
    IMat& v = d.v;

    std::size_t t = 0;
    std::size_t lim = std::min(m.rows(), m.cols());
    while (t < lim) {
        std::size_t pi, pj;
        if (!find_pivot(s, t, pi, pj)) break;
        if (pi != t) {
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
        }
        if (pj != t) {
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
        }
        bool dirty = false;
        for (std::size_t i = t + 1; i < s.rows(); ++i) {
            if (s(i, t) == 0) continue;
            Int q = s(i, t) / s(t, t);  // C++ truncation; remainder re-checked below
            if (q != 0) {
                s.add_row(i, t, -q);
                u.add_row(i, t, -q);
            }
            if (s(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < s.cols(); ++j) {
            if (s(t, j) == 0) continue;
            Int q = s(t, j) / s(t, t);
            if (q != 0) {
                s.add_col(j, t, -q);
                v.add_col(j, t, -q);
            }
            if (s(t, j) != 0) dirty = true;
        }
        if (dirty) continue;  // smaller remainders appeared; pick a new pivot

        // Pivot now divides its row and column; make sure it divides the rest
        // of the submatrix too, otherwise fold an offending row in and retry.
        bool divides_all = true;
        for (std::size_t i = t + 1; i < s.rows() && divides_all; ++i)
            for (std::size_t j = t + 1; j < s.cols(); ++j)
                if (s(i, j) % s(t, t) != 0) {
                    s.add_row(t, i, Int(1));
                    u.add_row(t, i, Int(1));
                    divides_all = false;
                    break;
                }
        if (!divides_all) continue;
        if (s(t, t) < 0) {
            s.negate_row(t);
            u.negate_row(t);
        }
        ++t;
    }
    d.rank = t;
    for (std::size_t i = 0; i < t; ++i) d.invariant_factors.push_back(s(i, i));
    return d;
}

IMat integer_kernel(const IMat& m) {
    if (m.cols() == 0) return IMat(0, 0);
    if (m.rows() == 0) return IMat::identity(m.cols());
    SmithDecomposition d = smith_decomposition(m);
    // M*V has zero columns exactly past the rank; those columns of V span the
    // kernel lattice.
    IMat k(m.cols(), m.cols() - d.rank);
    for (std::size_t j = d.rank; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.cols(); ++i) k(i, j - d.rank) = d.v(i, j);
    return k;
}

std::optional<std::vector<Int>> solve_integer(const IMat& m, const std::vector<Int>& b) {
    if (b.size() != m.rows()) throw error("solve_integer: size mismatch");
    SmithDecomposition d = smith_decomposition(m);
    std::vector<Int> c = d.u * b;  // U M V y = U b, with S = U M V
    std::vector<Int> y(m.cols(), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < d.rank) {
            if (c[i] % d.s(i, i) != 0) return std::nullopt;
            y[i] = c[i] / d.s(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return d.v * y;
}

std::size_t integer_rank(const IMat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return smith_decomposition(m).rank;
}

}  // namespace aclab
