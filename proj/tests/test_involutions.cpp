#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <random>

#include "htlie/pipeline.hpp"

using namespace htlie;

TEST_CASE("catalog schemes carry the published selection words") {
    InvolutionScheme s06 = scheme_for({0, 6});
    REQUIRE(s06.involutions == std::vector<Word>{{1, 2, 3, 4}, {1, 2, 5, 6}});
    REQUIRE(s06.complementary.size() == 3);
    REQUIRE(s06.complementary[0].word == Word{1});
    REQUIRE(s06.complementary[1].word == Word{5});
    REQUIRE(s06.complementary[2].word == Word{2, 3, 5});

    InvolutionScheme s50 = scheme_for({5, 0});
    REQUIRE(s50.involutions == std::vector<Word>{{1, 2, 3, 4}, {1, 2, 5}});

    InvolutionScheme s33 = scheme_for({3, 3});
    REQUIRE(s33.involutions == std::vector<Word>{{1, 2, 4, 5}, {2, 3, 5, 6}, {1, 2, 3}});

    REQUIRE_THROWS_AS(scheme_for({2, 1}), std::out_of_range);  // reached by transfer
    REQUIRE_THROWS_AS(scheme_for({0, 9}), std::out_of_range);
}

TEST_CASE("scheme verification checks involutions and the commutation table") {
    CliffordRep amb = catalog_ambient({0, 6});
    InvolutionScheme sch = scheme_for({0, 6});
    verify_scheme(amb, sch);
    // published pattern: P1 vs (J1, J5, J2J3J5) = a, c, c; P2 vs same = a on J5, c on J2J3J5
    REQUIRE(sch.commutation_table[0] == "acc");
    REQUIRE(sch.commutation_table[1][1] == 'a');
    REQUIRE(sch.commutation_table[1][2] == 'c');

    // word commutation shortcut agrees with matrix evaluation
    for (size_t i = 0; i < sch.involutions.size(); ++i)
        for (size_t j = 0; j < sch.complementary.size(); ++j) {
            bool by_words = words_commute(sch.involutions[i], sch.complementary[j].word);
            REQUIRE(by_words == (sch.commutation_table[i][j] == 'c'));
        }

    InvolutionScheme bad = sch;
    bad.involutions.push_back({1, 2});  // squares to -Id: not an involution
    REQUIRE_THROWS_AS(verify_scheme(amb, bad), std::logic_error);
}

TEST_CASE("every catalog scheme passes verification on its ambient module") {
    for (const auto& [key, unused] : scheme_catalog()) {
        Signature sig{key.first, key.second};
        CAPTURE(sig.str());
        CliffordRep amb = catalog_ambient(sig);
        InvolutionScheme sch = scheme_for(sig);
        REQUIRE_NOTHROW(verify_scheme(amb, sch));
    }
}

TEST_CASE("common eigenvector: fixed, spacelike, unit norm") {
    for (Signature sig : {Signature{0, 4}, Signature{0, 8}, Signature{3, 4}, Signature{7, 0}}) {
        CAPTURE(sig.str());
        CliffordRep amb = catalog_ambient(sig);
        InvolutionScheme sch = scheme_for(sig);
        verify_scheme(amb, sch);
        SeedVector seed = common_eigenvector(amb, sch);
        REQUIRE(seed.norm == Scalar(1));
        REQUIRE(inner(seed.vec, seed.vec, amb.module) == Scalar(1));
        for (size_t i = 0; i < sch.involutions.size(); ++i) {
            Operator P = amb.word_operator(sch.involutions[i]);
            Vec img = P.apply(seed.vec);
            if (seed.signs_used[i] < 0) img = negate(img);
            REQUIRE(img == seed.vec);
        }
    }
}

TEST_CASE("sign flips are used where the plain orientation has no fixed spacelike vector") {
    // In the quaternion-based model the three-generator volume word evaluates
    // to -Id, so the flipped orientation must be selected.
    CliffordRep amb = catalog_ambient({3, 0});
    REQUIRE(amb.word_operator({1, 2, 3}).is_scalar(-1));
    InvolutionScheme sch = scheme_for({3, 0});
    verify_scheme(amb, sch);
    SeedVector seed = common_eigenvector(amb, sch);
    REQUIRE(seed.signs_used == std::vector<int>{-1});
}

TEST_CASE("orthogonalize_seed leaves already-orthogonal seeds unchanged") {
    CliffordRep amb = catalog_ambient({0, 3});
    std::vector<Operator> omegas{amb.word_operator({1, 2, 3})};
    SeedVector seed;
    seed.vec = unit_vector(amb.dim(), 0);
    seed.norm = Scalar(1);
    REQUIRE(inner(seed.vec, omegas[0].apply(seed.vec), amb.module).is_zero());
    SeedVector out = orthogonalize_seed(seed, omegas, {}, amb.module);
    REQUIRE(out.vec == seed.vec);
    REQUIRE(out.norm == Scalar(1));
}

TEST_CASE("orthogonalize_seed handles a nonzero product with one exact surd") {
    CliffordRep amb = catalog_ambient({0, 5});
    const MetricSpace& M = amb.module;
    Operator om = amb.word_operator({1, 2, 5});
    REQUIRE(is_anti_involution(om));
    REQUIRE(is_symmetric_wrt(om, M));

    std::mt19937 rng(23);
    std::uniform_int_distribution<long> tnum(1, 6), tden(1, 5);
    std::uniform_int_distribution<int> pick(1, amb.dim() / 2 - 1);
    // route one leg of the displacement through the image of the seed so the
    // product <w, Omega w> is generically nonzero
    int x = om.sparse().target[0];
    REQUIRE(x != 0);
    int surd_cases = 0;
    for (int it = 0; it < 40; ++it) {
        // w = e_q + t (e_i + e_j) with <e_i,e_i> = -<e_j,e_j>: unit norm for any t.
        int q = 0;
        int i = pick(rng), j = amb.dim() / 2 + pick(rng);
        if (M.signs[x] > 0) i = x;
        else j = x;
        Scalar t(Rational(tnum(rng), tden(rng)));
        REQUIRE(M.signs[q] == 1);
        REQUIRE(M.signs[i] == -M.signs[j]);
        SeedVector seed;
        seed.vec = unit_vector(amb.dim(), q);
        seed.vec = add(seed.vec, scale(add(unit_vector(amb.dim(), i), unit_vector(amb.dim(), j)), t));
        seed.norm = inner(seed.vec, seed.vec, M);
        REQUIRE(seed.norm == Scalar(1));
        Scalar a = inner(seed.vec, om.apply(seed.vec), M);
        SeedVector out = orthogonalize_seed(seed, {om}, {}, M);
        if (!a.is_zero()) ++surd_cases;
        REQUIRE(inner(out.vec, om.apply(out.vec), M).is_zero());
        REQUIRE(out.norm.is_positive());
        if (a.is_zero()) REQUIRE(out.norm == Scalar(1));
    }
    REQUIRE(surd_cases >= 20);
}

TEST_CASE("orthogonalize_seed rejects bad operators and honours HTYPE_SURD=off") {
    CliffordRep amb = catalog_ambient({0, 5});
    SeedVector seed;
    seed.vec = unit_vector(amb.dim(), 0);
    seed.norm = Scalar(1);
    // A generator is skew, not symmetric, and squares to +Id: both
    // preconditions fail.
    REQUIRE_THROWS_AS(orthogonalize_seed(seed, {amb.gen(1)}, {}, amb.module),
                      std::invalid_argument);

    Operator om = amb.word_operator({1, 2, 5});
    // find a unit-norm combination with nonzero product against the operator
    SeedVector s2;
    bool found = false;
    for (int i = 1; i < amb.dim() / 2 && !found; ++i)
        for (int j = amb.dim() / 2; j < amb.dim() && !found; ++j) {
            Vec w = add(unit_vector(amb.dim(), 0),
                        add(unit_vector(amb.dim(), i), unit_vector(amb.dim(), j)));
            if (inner(w, om.apply(w), amb.module).is_zero()) continue;
            if (inner(w, w, amb.module) != Scalar(1)) continue;
            s2.vec = w;
            s2.norm = Scalar(1);
            found = true;
        }
    REQUIRE(found);
    setenv("HTYPE_SURD", "off", 1);
    REQUIRE_THROWS_AS(orthogonalize_seed(s2, {om}, {}, amb.module), std::runtime_error);
    unsetenv("HTYPE_SURD");
    REQUIRE_NOTHROW(orthogonalize_seed(s2, {om}, {}, amb.module));
}

TEST_CASE("sequential orthogonalization against several operators") {
    CliffordRep amb = catalog_ambient({0, 5});
    InvolutionScheme sch = scheme_for({0, 5});
    verify_scheme(amb, sch);
    std::vector<Operator> omegas;
    for (const Word& w : sch.omegas) omegas.push_back(amb.word_operator(w));
    std::vector<Operator> preserve{amb.word_operator(sch.involutions[0])};
    SeedVector seed = common_eigenvector(amb, sch);
    SeedVector out = orthogonalize_seed(seed, omegas, preserve, amb.module);
    for (const Operator& om : omegas)
        REQUIRE(inner(out.vec, om.apply(out.vec), amb.module).is_zero());
    REQUIRE(preserve[0].apply(out.vec) == out.vec);
    REQUIRE(out.norm == Scalar(1));
}

TEST_CASE("anticommuting isometric complement forces equal eigenspace halves") {
    CliffordRep amb = catalog_ambient({0, 8});
    InvolutionScheme sch = scheme_for({0, 8});
    verify_scheme(amb, sch);
    // first complementary operator is an isometry anticommuting with P1
    Operator P = amb.word_operator(sch.involutions[0]);
    Operator T = amb.word_operator(sch.complementary[0].word);
    REQUIRE(is_isometry(T, amb.module));
    REQUIRE(anticommute(P, T));
    REQUIRE(eigenspace(P, 1).size() == eigenspace(P, -1).size());
}
