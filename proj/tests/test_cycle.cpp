#include <doctest.h>

#include "aclab/cycle.hpp"
#include "support.hpp"

using namespace aclab;
using testsupport::Rng;

TEST_CASE("psi on basic divisors") {
    SUBCASE("single pair p=1, q=lambda gives lambda^-1") {
        Deg0Divisor d;
        d.terms.emplace_back(1, Rat(7), Rat(1));  // q = 7, p = 1
        CHECK(psi_of_divisor(d) == make_rat(1, 7));
    }
    SUBCASE("empty divisor is the trivial bundle") {
        CHECK(psi_of_divisor(Deg0Divisor{}) == 1);
        CHECK(is_principal(Deg0Divisor{}));
    }
    SUBCASE("product over components") {
        Deg0Divisor d;
        d.terms.emplace_back(1, Rat(2), Rat(3));
        d.terms.emplace_back(2, Rat(5), Rat(7));
        CHECK(psi_of_divisor(d) == make_rat(21, 10));
    }
}

TEST_CASE("principality") {
    Deg0Divisor cancel;
    cancel.terms.emplace_back(1, Rat(2), Rat(3));
    cancel.terms.emplace_back(1, Rat(3), Rat(2));
    CHECK(is_principal(cancel));

    Deg0Divisor single;
    single.terms.emplace_back(1, Rat(5), Rat(1));
    CHECK_FALSE(is_principal(single));

    Deg0Divisor cross;
    cross.terms.emplace_back(1, Rat(2), Rat(3));
    cross.terms.emplace_back(2, Rat(3), Rat(2));
    CHECK(is_principal(cross));
}

TEST_CASE("cocycle reduction") {
    SUBCASE("coboundaries collapse to 1") {
        // delta_2(t_1,...,t_r) = (t_1^-1 t_r, t_2^-1 t_1, ..., t_r^-1 t_{r-1})
        std::vector<Rat> t{Rat(2), Rat(3), make_rat(5, 7), Rat(11)};
        std::vector<Rat> mu(4);
        for (std::size_t i = 0; i < 4; ++i) mu[i] = t[(i + 3) % 4] / t[i];
        CHECK(cocycle_reduce(mu) == 1);
    }
    SUBCASE("single lambda^-1 entry") {
        std::vector<Rat> mu{make_rat(1, 4), Rat(1), Rat(1)};
        CHECK(cocycle_reduce(mu) == make_rat(1, 4));
    }
    SUBCASE("all ones") {
        CHECK(cocycle_reduce(std::vector<Rat>(5, Rat(1))) == 1);
    }
}

TEST_CASE("oracle agreement: psi vs the trivialization cocycle") {
    Rng rng(1234);
    for (int trial = 0; trial < 500; ++trial) {
        std::uniform_int_distribution<std::size_t> rdist(1, 6);
        std::size_t r = rdist(rng);
        Deg0Divisor d = testsupport::rand_divisor(rng, r);
        std::vector<Rat> mu = testsupport::cocycle_of(d, r);
        CHECK(psi_of_divisor(d) == cocycle_reduce(mu));
        CHECK(abel_jacobi(d) == psi_of_divisor(d));
        CHECK(is_principal(d) == (psi_of_divisor(d) == 1));
    }
}

TEST_CASE("psi is a homomorphism under concatenation") {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        Deg0Divisor d1 = testsupport::rand_divisor(rng, 4);
        Deg0Divisor d2 = testsupport::rand_divisor(rng, 4);
        Deg0Divisor sum = d1;
        sum.terms.insert(sum.terms.end(), d2.terms.begin(), d2.terms.end());
        CHECK(psi_of_divisor(sum) == psi_of_divisor(d1) * psi_of_divisor(d2));
    }
}

TEST_CASE("tau_p") {
    CyclePoint p(2, Rat(6));
    CHECK(tau_p(Rat(1), p) == p);
    CHECK(tau_p(Rat(2), p) == CyclePoint(2, Rat(3)));  // psi(O(3-6)) = 6/3 = 2
    CyclePoint one(1, Rat(1));
    CHECK(tau_p(make_rat(1, 5), one) == CyclePoint(1, Rat(5)));
}

TEST_CASE("abel-jacobi conventions") {
    SUBCASE("alpha(lambda - 1) = lambda^-1") {
        Deg0Divisor d;
        d.terms.emplace_back(1, Rat(9), Rat(1));
        CHECK(abel_jacobi(d) == make_rat(1, 9));
    }
    SUBCASE("scale invariance") {
        Rng rng(3);
        for (int trial = 0; trial < 100; ++trial) {
            Rat l1 = testsupport::rand_gm(rng), l2 = testsupport::rand_gm(rng);
            Rat t = testsupport::rand_gm(rng);
            Deg0Divisor plain, scaled;
            plain.terms.emplace_back(1, l2, l1);
            scaled.terms.emplace_back(1, t * l2, t * l1);
            CHECK(abel_jacobi(plain) == abel_jacobi(scaled));
            CHECK(abel_jacobi(plain) == l1 / l2);
        }
    }
}

TEST_CASE("automorphism action") {
    SUBCASE("definition") {
        CycleAut id = CycleAut::identity(3);
        CyclePoint x(2, Rat(3));
        CHECK(aut_act(id, x) == x);
        CycleAut phi({Rat(1), Rat(2), Rat(1)});
        CHECK(aut_act(phi, x) == CyclePoint(2, Rat(6)));
    }
    SUBCASE("simple transitivity") {
        Rng rng(55);
        for (int trial = 0; trial < 100; ++trial) {
            Rat x = testsupport::rand_gm(rng), y = testsupport::rand_gm(rng);
            // the unique scale moving x to y on a fixed component
            Rat l = y / x;
            CycleAut phi({l});
            CHECK(aut_act(phi, CyclePoint(1, x)) == CyclePoint(1, y));
        }
    }
    SUBCASE("F recovers the scales through psi") {
        CycleAut phi({Rat(2), Rat(3)});
        std::vector<CyclePoint> base{CyclePoint(1, Rat(1)), CyclePoint(2, Rat(1))};
        CHECK(F_of_aut(phi, base) == phi.scales);
        Rng rng(66);
        for (int trial = 0; trial < 100; ++trial) {
            CycleAut rphi({testsupport::rand_gm(rng), testsupport::rand_gm(rng),
                           testsupport::rand_gm(rng)});
            std::vector<CyclePoint> rbase{CyclePoint(1, testsupport::rand_gm(rng)),
                                          CyclePoint(2, testsupport::rand_gm(rng)),
                                          CyclePoint(3, testsupport::rand_gm(rng))};
            CHECK(F_of_aut(rphi, rbase) == rphi.scales);
        }
    }
    SUBCASE("Aut^0 D acts trivially on Pic^0 D") {
        Rng rng(88);
        for (int trial = 0; trial < 100; ++trial) {
            Deg0Divisor d = testsupport::rand_divisor(rng, 3);
            CycleAut phi({testsupport::rand_gm(rng), testsupport::rand_gm(rng),
                          testsupport::rand_gm(rng)});
            CHECK(psi_of_divisor(aut_act(phi, d)) == psi_of_divisor(d));
        }
    }
    SUBCASE("tau equivariance") {
        Rng rng(99);
        for (int trial = 0; trial < 100; ++trial) {
            CycleAut phi({testsupport::rand_gm(rng), testsupport::rand_gm(rng)});
            CyclePoint p(2, testsupport::rand_gm(rng));
            Rat L = testsupport::rand_gm(rng);
            CHECK(tau_p(L, aut_act(phi, p)) == aut_act(phi, tau_p(L, p)));
        }
    }
}
