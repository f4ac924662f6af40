#include <doctest.h>

#include "aclab/e8.hpp"
#include "aclab/lattice.hpp"
#include "support.hpp"

using namespace aclab;

namespace {

LatticePtr blowup_lattice(std::size_t npoints) {
    IMat g(npoints + 1, npoints + 1);
    g(0, 0) = 1;
    for (std::size_t i = 1; i <= npoints; ++i) g(i, i) = -1;
    std::vector<std::string> names{"h"};
    for (std::size_t i = 1; i <= npoints; ++i) names.push_back("e" + std::to_string(i));
    return make_lattice(std::move(g), std::move(names));
}

ClassVec vec(const LatticePtr& l, std::vector<long> c) {
    std::vector<Int> v;
    for (long x : c) v.emplace_back(x);
    return ClassVec(std::move(v), l);
}

}  // namespace

TEST_CASE("inner products in the standard blowup basis") {
    LatticePtr l = blowup_lattice(2);
    ClassVec h = vec(l, {1, 0, 0}), e1 = vec(l, {0, 1, 0});
    CHECK(inner(h, h) == 1);
    CHECK(inner(e1, e1) == -1);
    CHECK(inner(h, e1) == 0);
    LatticePtr other = blowup_lattice(3);
    CHECK_THROWS_AS((void)inner(h, vec(other, {1, 0, 0, 0})), error);
}

TEST_CASE("the gamma classes of the ten-point example") {
    LatticePtr l = blowup_lattice(10);
    ClassVec g1 = vec(l, {3, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0});
    ClassVec g2 = vec(l, {3, -1, -1, -1, -1, -1, -1, -1, -1, 0, -1});
    ClassVec g3 = vec(l, {8, -3, -3, -3, -3, -3, -3, -3, -3, 0, 0});
    CHECK(square(g1) == 0);
    CHECK(square(g2) == 0);
    CHECK(inner(g1, g2) == 1);
    CHECK(inner(g1, g3) == 0);
    CHECK(inner(g2, g3) == 0);
    CHECK(square(g3) == -8);
}

TEST_CASE("orthogonal complement basics") {
    LatticePtr l2 = make_lattice(IMat{{1, 0}, {0, -1}}, {"h", "e1"});
    SUBCASE("complement of h is spanned by e1 with gram (-1)") {
        auto res = orthogonal_complement(l2, {vec(l2, {1, 0})});
        REQUIRE(res.lattice->rank == 1);
        CHECK(res.basis[0].coords[0] == 0);
        CHECK(abs(res.basis[0].coords[1]) == 1);
        CHECK(res.lattice->gram(0, 0) == -1);
    }
    SUBCASE("full-rank span has rank-zero complement") {
        auto res = orthogonal_complement(l2, {vec(l2, {1, 0}), vec(l2, {0, 1})});
        CHECK(res.lattice->rank == 0);
    }
}

TEST_CASE("complement of the cycle span in the ten-point example is U + (-8)") {
    LatticePtr l = blowup_lattice(10);
    std::vector<ClassVec> spans;
    for (int i = 1; i <= 7; ++i) {
        std::vector<long> c(11, 0);
        c[i] = 1;
        c[i + 1] = -1;
        spans.push_back(vec(l, c));
    }
    // anticanonical class 3h - e1 - ... - e10
    spans.push_back(vec(l, {3, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1}));
    auto res = orthogonal_complement(l, spans);
    REQUIRE(res.lattice->rank == 3);
    auto split = hyperbolic_splitting(res.lattice, 8);
    REQUIRE(split.has_value());
    CHECK(square(split->e) == 0);
    CHECK(square(split->f) == 0);
    CHECK(inner(split->e, split->f) == 1);
    REQUIRE(split->complement.lattice->rank == 1);
    CHECK(split->complement.lattice->gram(0, 0) == -8);
}

TEST_CASE("smith decomposition examples") {
    SUBCASE("identity") {
        auto d = smith_decomposition(IMat::identity(3));
        CHECK(d.rank == 3);
        CHECK(d.s == IMat::identity(3));
    }
    SUBCASE("single entry") {
        auto d = smith_decomposition(IMat{{2}});
        CHECK(d.invariant_factors == std::vector<Int>{2});
    }
    SUBCASE("diag(2,3) becomes diag(1,6)") {
        auto d = smith_decomposition(IMat{{2, 0}, {0, 3}});
        REQUIRE(d.invariant_factors.size() == 2);
        CHECK(d.invariant_factors[0] == 1);
        CHECK(d.invariant_factors[1] == 6);
    }
}

TEST_CASE("smith decomposition properties on random matrices") {
    testsupport::Rng rng(20240811);
    std::uniform_int_distribution<int> dim(1, 5), entry(-6, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t m = dim(rng), n = dim(rng);
        IMat a(m, n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
        auto d = smith_decomposition(a);
        CHECK(d.u * a * d.v == d.s);
        Int du = determinant(d.u), dv = determinant(d.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        for (std::size_t i = 0; i + 1 < d.invariant_factors.size(); ++i) {
            CHECK(d.invariant_factors[i] > 0);
            CHECK(d.invariant_factors[i + 1] % d.invariant_factors[i] == 0);
        }
        // off-diagonal entries of s vanish
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) CHECK(d.s(i, j) == 0);
    }
}

TEST_CASE("cokernel structures") {
    CHECK(cokernel_structure(IMat::identity(4)).trivial());
    auto g = cokernel_structure(IMat{{2, 0}, {0, 3}});
    CHECK(g.free_rank == 0);
    REQUIRE(g.torsion.size() == 1);
    CHECK(g.torsion[0] == 6);
    auto h = cokernel_structure(IMat{{2, 0}, {0, 0}});
    CHECK(h.free_rank == 1);
    CHECK(h.torsion == std::vector<Int>{2});
}

TEST_CASE("definiteness classification") {
    CHECK(definiteness(*make_lattice(IMat{{-2}}, {"a"})) == Definiteness::NegativeDefinite);
    // cycle of nine -2 curves
    IMat c9(9, 9);
    for (int i = 0; i < 9; ++i) {
        c9(i, i) = -2;
        c9(i, (i + 1) % 9) = 1;
        c9((i + 1) % 9, i) = 1;
    }
    std::vector<std::string> names;
    for (int i = 0; i < 9; ++i) names.push_back("d" + std::to_string(i));
    CHECK(definiteness(*make_lattice(std::move(c9), std::move(names))) ==
          Definiteness::StrictlyNegativeSemidefinite);
    CHECK(definiteness(*make_lattice(IMat{{0, 1}, {1, 0}}, {"u", "v"})) ==
          Definiteness::IndefiniteOrOther);
}

TEST_CASE("definiteness vs brute-force sign scan") {
    testsupport::Rng rng(7);
    std::uniform_int_distribution<int> dim(1, 5), entry(-3, 3);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = dim(rng);
        IMat g(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                g(i, j) = entry(rng);
                g(j, i) = g(i, j);
            }
        std::vector<std::string> names;
        for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
        Definiteness verdict = definiteness(*make_lattice(g, names));
        auto brute = testsupport::brute_signs(g);
        // brute force refutes: positives rule out semidefiniteness, zeros
        // rule out definiteness
        if (verdict == Definiteness::NegativeDefinite) {
            CHECK_FALSE(brute.found_positive);
            CHECK_FALSE(brute.found_zero);
        }
        if (verdict == Definiteness::StrictlyNegativeSemidefinite) {
            CHECK_FALSE(brute.found_positive);
            // exhibit an exact kernel vector as the semidefiniteness witness
            IMat k = integer_kernel(g);
            bool zero_witness = k.cols() > 0;
            CHECK((zero_witness || brute.found_zero));
        }
        if (brute.found_positive) CHECK(verdict == Definiteness::IndefiniteOrOther);
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("hyperbolic splitting") {
    SUBCASE("U itself") {
        auto u = make_lattice(IMat{{0, 1}, {1, 0}}, {"u1", "u2"});
        auto split = hyperbolic_splitting(u, 4);
        REQUIRE(split.has_value());
        CHECK(split->complement.lattice->rank == 0);
        CHECK(inner(split->e, split->f) == 1);
    }
    SUBCASE("wrong signature is an error") {
        auto l = make_lattice(IMat{{2}}, {"a"});
        CHECK_THROWS_AS((void)hyperbolic_splitting(l, 3), error);
    }
    SUBCASE("odd lattice is an error") {
        auto l = make_lattice(IMat{{1, 0}, {0, -1}}, {"a", "b"});
        CHECK_THROWS_AS((void)hyperbolic_splitting(l, 3), error);
    }
}

TEST_CASE("orthogonal complement output is orthogonal and saturated") {
    testsupport::Rng rng(99);
    std::uniform_int_distribution<int> entry(-3, 3), nspan(1, 3);
    LatticePtr l = blowup_lattice(4);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<ClassVec> spans;
        int k = nspan(rng);
        for (int s = 0; s < k; ++s) {
            std::vector<Int> c(5);
            for (auto& x : c) x = entry(rng);
            spans.emplace_back(std::move(c), l);
        }
        auto res = orthogonal_complement(l, spans);
        for (const auto& b : res.basis)
            for (const auto& s : spans) CHECK(inner(b, s) == 0);
        if (!res.basis.empty()) {
            IMat bm(5, res.basis.size());
            for (std::size_t j = 0; j < res.basis.size(); ++j)
                for (std::size_t i = 0; i < 5; ++i) bm(i, j) = res.basis[j].coords[i];
            // saturated: all invariant factors are 1
            for (const Int& f : smith_decomposition(bm).invariant_factors) CHECK(f == 1);
        }
    }
}

TEST_CASE("isometry checks") {
    LatticePtr l = blowup_lattice(2);
    IntIsometry id = identity_isometry(l);
    CHECK(id.is_isometry());
    // swap the two exceptional directions
    IMat m = IMat::identity(3);
    m(1, 1) = 0;
    m(2, 2) = 0;
    m(1, 2) = 1;
    m(2, 1) = 1;
    IntIsometry swap(m, l, l);
    CHECK(swap.is_isometry());
    CHECK(swap.inverse().is_isometry());
    IMat bad = IMat::identity(3);
    bad(0, 0) = 2;
    CHECK_FALSE(IntIsometry(bad, l, l).is_isometry());
}
