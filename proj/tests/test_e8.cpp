#include <doctest.h>

#include <set>

#include "aclab/e8.hpp"
#include "builders.hpp"
#include "support.hpp"

using namespace aclab;

TEST_CASE("E8 root enumeration") {
    const auto& roots = e8_roots();
    CHECK(roots.size() == 240);
    std::set<std::vector<Int>> set;
    for (const auto& r : roots) set.insert(r.coords);
    for (const auto& r : roots) {
        CHECK(square(r) == -2);
        std::vector<Int> neg;
        for (const Int& c : r.coords) neg.push_back(-c);
        CHECK(set.count(neg) == 1);
    }
    // pairwise inner products stay in [-2, 2]
    for (std::size_t i = 0; i < roots.size(); i += 7)
        for (std::size_t j = 0; j < roots.size(); j += 11) {
            Int p = inner(roots[i], roots[j]);
            CHECK(p >= -2);
            CHECK(p <= 2);
        }
}

TEST_CASE("identify_ade basics") {
    CHECK(identify_ade({}).to_string() == "0");
    // a single +- pair is A1
    auto l = e8_lattice();
    std::vector<Int> a1(8, Int(0));
    a1[0] = 1;
    ClassVec r1(a1, l);
    CHECK(identify_ade({r1, -r1}).to_string() == "A1");
}

TEST_CASE("embedding classes and the classification table") {
    SUBCASE("counts per rank") {
        CHECK(bds_embeddings(1).size() == 1);
        CHECK(bds_embeddings(2).size() == 1);
        CHECK(bds_embeddings(6).size() == 1);
        auto two = bds_embeddings(7);
        REQUIRE(two.size() == 2);
        // exactly one of the two A7 classes is primitive
        int primitive = 0;
        for (const auto& emb : two)
            if (quotient_torsion(emb).trivial()) ++primitive;
        CHECK(primitive == 1);
        auto a8 = bds_embeddings(8);
        REQUIRE(a8.size() == 1);
        CHECK(quotient_torsion(a8[0]).torsion == std::vector<Int>{3});
    }
    SUBCASE("full table") {
        auto table = ade_embedding_table();
        REQUIRE(table.size() == 9);  // r = 2..9 with two rows at r = 8
        auto row = [&](std::size_t idx) { return table[idx]; };
        CHECK(row(0).complement.to_string() == "E7");
        CHECK(row(1).complement.to_string() == "E6");
        CHECK(row(2).complement.to_string() == "D5");
        CHECK(row(3).complement.to_string() == "A4");
        CHECK(row(4).complement.to_string() == "A1+A2");
        CHECK(row(5).complement.to_string() == "A1");
        // r = 8: primitive first (sorted by torsion size)
        CHECK(row(6).r == 8);
        CHECK(row(6).primitive);
        CHECK(row(6).complement.to_string() == "0");
        CHECK(row(7).r == 8);
        CHECK_FALSE(row(7).primitive);
        CHECK(row(7).complement.to_string() == "A1");
        CHECK(row(7).torsion.torsion == std::vector<Int>{2});
        CHECK(row(8).r == 9);
        CHECK(row(8).complement.to_string() == "0");
        CHECK(row(8).torsion.torsion == std::vector<Int>{3});
        // span over Z except r = 7 and the primitive r = 8 row
        CHECK(row(0).roots_span_complement);
        CHECK(row(1).roots_span_complement);
        CHECK(row(2).roots_span_complement);
        CHECK(row(3).roots_span_complement);
        CHECK(row(4).roots_span_complement);
        CHECK_FALSE(row(5).roots_span_complement);
        CHECK_FALSE(row(6).roots_span_complement);
        CHECK(row(8).roots_span_complement);  // vacuous at rank zero
    }
    SUBCASE("r=2 complement is E7 with 126 roots") {
        auto emb = bds_embeddings(1);
        auto info = root_count_in_complement(emb[0]);
        CHECK(info.count == 126);
    }
    SUBCASE("dedup keys do not depend on the chain orientation") {
        for (std::size_t m : {3u, 5u, 7u}) {
            for (const auto& emb : bds_embeddings(m)) {
                SubsystemEmbedding rev{{emb.images.rbegin(), emb.images.rend()}};
                CHECK(complement_type(rev).to_string() == complement_type(emb).to_string());
                CHECK(quotient_torsion(rev) == quotient_torsion(emb));
            }
        }
    }
}

TEST_CASE("a_lambda isometries of a strictly semidefinite pair") {
    auto p = testsupport::heptagon_minus2(
        {Rat(2), Rat(3), Rat(5), Rat(7), Rat(11)});
    REQUIRE(p.sequence().entries == std::vector<Int>(7, Int(-2)));
    // sigma0: any interior exceptional basis class meets D once
    ClassVec sigma0 = p.step_class(p.log().size());
    REQUIRE(square(sigma0) == -1);
    REQUIRE(inner(sigma0, p.anticanonical_class()) == 1);
    // Lambda-bar = {sigma0, D, D_i}^perp
    std::vector<ClassVec> spans = p.cycle_classes();
    spans.push_back(sigma0);
    auto bar = orthogonal_complement(p.ambient(), spans);
    REQUIRE(bar.lattice->rank == 2);  // the affine A1 situation
    const ClassVec& lam = bar.basis[0];
    const ClassVec& mu = bar.basis[1];

    IntIsometry a0 = semidef_gamma_structure(p, sigma0, lam.scaled(Int(0)));
    CHECK(a0.matrix == IMat::identity(p.ambient()->rank));

    IntIsometry al = semidef_gamma_structure(p, sigma0, lam);
    IntIsometry am = semidef_gamma_structure(p, sigma0, mu);
    IntIsometry alm = semidef_gamma_structure(p, sigma0, lam + mu);
    CHECK(al.compose(am).matrix == alm.matrix);
    CHECK(am.compose(al).matrix == alm.matrix);
    CHECK(al.is_isometry());

    // eta a_lambda eta^-1 = a_{eta(lambda)} for eta fixing sigma0 and [D]:
    // take eta = reflection in a root of Lambda-bar
    auto bar_roots = short_vectors(bar.lattice, Int(2));
    REQUIRE(!bar_roots.empty());
    // map the root back to ambient coordinates
    ClassVec root = bar.basis[0].scaled(bar_roots[0].coords[0]) +
                    bar.basis[1].scaled(bar_roots[0].coords[1]);
    REQUIRE(square(root) == -2);
    std::size_t n = p.ambient()->rank;
    IMat rm(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Int> ej(n, Int(0));
        ej[j] = 1;
        ClassVec img = ClassVec(ej, p.ambient());
        img = img + root.scaled(inner(img, root));
        for (std::size_t i = 0; i < n; ++i) rm(i, j) = img.coords[i];
    }
    IntIsometry eta(rm, p.ambient(), p.ambient());
    REQUIRE(eta.is_isometry());
    REQUIRE(eta.apply(sigma0) == sigma0);
    IntIsometry lhs = eta.compose(al).compose(eta.inverse());
    IntIsometry rhs = semidef_gamma_structure(p, sigma0, eta.apply(lam));
    CHECK(lhs.matrix == rhs.matrix);
}
