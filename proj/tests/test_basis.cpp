#include <catch2/catch_amalgamated.hpp>

#include "htlie/algebra.hpp"

using namespace htlie;

TEST_CASE("orbit of the seed enumerates all generator products") {
    CliffordRep rep = base_representation({0, 1});
    auto orbit = generate_orbit(rep, unit_vector(2, 0));
    REQUIRE(orbit.size() == 2);
    REQUIRE(orbit[0].word == Word{});
    REQUIRE(orbit[1].word == Word{1});
    REQUIRE(orbit[1].vec == unit_vector(2, 1));

    Construction c03 = construct({0, 3});
    auto orbit3 = generate_orbit(c03.mod.rep, unit_vector(8, 0));
    REQUIRE(orbit3.size() == 8);
}

TEST_CASE("a fixed seed collapses the sixteen products to eight classes") {
    // With the seed fixed by J1 J2 J3 J4, products pair off in the orbit.
    Construction c = construct({0, 4});
    const CliffordRep& rep = c.mod.rep;
    Vec w = c.mod.basis.vectors[0];
    REQUIRE(rep.word_operator({1, 2, 3, 4}).apply(w) == w);
    auto orbit = generate_orbit(rep, w);
    REQUIRE(orbit.size() == 16);
    std::set<std::string> classes;
    for (const auto& e : orbit) classes.insert(detail::sign_canonical_key(e.vec).first);
    REQUIRE(classes.size() == 8);
    // e.g. J1 w = J2 J3 J4 w up to sign
    Vec a = rep.apply_word({1}, w);
    Vec b = rep.apply_word({2, 3, 4}, w);
    REQUIRE((a == b || a == negate(b)));
}

TEST_CASE("selected basis for two negative generators matches the published one") {
    Construction c = construct({0, 2});
    const IntegralBasis& B = c.mod.basis;
    REQUIRE(B.words == std::vector<Word>{{}, {1, 2}, {1}, {2}});
    REQUIRE(B.norms == std::vector<int>{1, 1, -1, -1});
}

TEST_CASE("basis norm split for seven negative generators") {
    Construction c = construct({0, 7});
    REQUIRE(c.mod.basis.size() == 16);
    REQUIRE(std::count(c.mod.basis.norms.begin(), c.mod.basis.norms.end(), 1) == 8);
    REQUIRE(std::count(c.mod.basis.norms.begin(), c.mod.basis.norms.end(), -1) == 8);
    // spacelike block first
    for (int i = 0; i < 8; ++i) REQUIRE(c.mod.basis.norms[i] == 1);
}

TEST_CASE("three positive generators give an all-positive basis") {
    Construction c = construct({3, 0});
    REQUIRE(c.mod.basis.size() == 4);
    REQUIRE(c.mod.basis.norms == std::vector<int>(4, 1));
}

TEST_CASE("select_basis fails loudly when the seed is not fixed enough") {
    CliffordRep amb = catalog_ambient({0, 4});
    // A basis vector which is not fixed by J1 J2 J3 J4 over-generates.
    Operator P = amb.word_operator({1, 2, 3, 4});
    int bad = -1;
    for (int q = 0; q < amb.dim(); ++q)
        if (P.apply(unit_vector(amb.dim(), q)) != unit_vector(amb.dim(), q)) {
            bad = q;
            break;
        }
    REQUIRE(bad >= 0);
    auto orbit = generate_orbit(amb, unit_vector(amb.dim(), bad));
    REQUIRE_THROWS_AS(select_basis(orbit, amb.module, {0, 4}, 8), std::runtime_error);
}

TEST_CASE("action table on the two-dimensional module") {
    Construction c = construct({0, 1});
    const SignedPerm& p = c.mod.table.gen(1);
    REQUIRE(p.target == std::vector<int>{1, 0});
    REQUIRE(p.sign == std::vector<int>{1, 1});
}

TEST_CASE("action table sends v1 to the first timelike vector") {
    Construction c = construct({0, 4});
    REQUIRE(c.mod.basis.words[4] == Word{1});  // v5 = J1 w
    REQUIRE(c.mod.table.gen(1).target[0] == 4);
    REQUIRE(c.mod.table.gen(1).sign[0] == 1);
}

TEST_CASE("applying the table twice matches the generator square") {
    Construction c = construct({1, 1});
    // first generator squares to -Id
    SignedPerm sq = compose(c.mod.table.gen(1), c.mod.table.gen(1));
    REQUIRE(sq.is_negated_identity());
    // second generator squares to +Id
    SignedPerm sq2 = compose(c.mod.table.gen(2), c.mod.table.gen(2));
    REQUIRE(sq2.is_identity());
}

TEST_CASE("no two generators share an image vector on any constructed basis") {
    for (Signature sig : {Signature{0, 5}, Signature{4, 3}, Signature{2, 2}}) {
        Construction c = construct(sig);
        int m = c.mod.basis.size();
        for (int a = 0; a < m; ++a) {
            std::set<int> targets;
            for (int i = 1; i <= sig.count(); ++i) targets.insert(c.mod.table.gen(i).target[a]);
            REQUIRE(targets.size() == static_cast<size_t>(sig.count()));
        }
    }
}

TEST_CASE("structure constants of the smallest algebras") {
    Construction c01 = construct({0, 1});
    REQUIRE(c01.sc.A[0][0][1] == 1);  // [v1, v2] = z1
    int nonzero = 0;
    for (const auto& row : c01.sc.A[0])
        for (int v : row) nonzero += (v != 0);
    REQUIRE(nonzero == 2);  // the bracket and its mirror

    // two negative generators: [v1,v3] = [v2,v4] = z1, [v1,v4] = -[v2,v3] = z2
    Construction c02 = construct({0, 2});
    REQUIRE(c02.sc.A[0][0][2] == 1);
    REQUIRE(c02.sc.A[0][1][3] == 1);
    REQUIRE(c02.sc.A[1][0][3] == 1);
    REQUIRE(c02.sc.A[1][1][2] == -1);
}

TEST_CASE("basis words reproduce the basis vectors up to sign") {
    for (Signature sig : {Signature{0, 6}, Signature{5, 2}, Signature{1, 3}}) {
        Construction c = construct(sig);
        const CliffordRep& rep = c.mod.rep;
        Vec w = c.mod.basis.vectors[0];
        for (int b = 0; b < c.mod.basis.size(); ++b) {
            Vec img = rep.apply_word(c.mod.basis.words[b], w);
            REQUIRE((img == c.mod.basis.vectors[b] || img == negate(c.mod.basis.vectors[b])));
        }
    }
}

TEST_CASE("published basis listings are reproduced word for word") {
    auto words_of = [](int r, int s) { return construct({r, s}).mod.basis.words; };
    REQUIRE(words_of(0, 4) == std::vector<Word>{{}, {1, 2}, {1, 3}, {1, 4}, {1}, {2}, {3}, {4}});
    REQUIRE(words_of(0, 5) ==
            std::vector<Word>{{}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5},
                              {1}, {2}, {3}, {4}, {5}, {1, 2, 5}, {1, 3, 5}, {1, 4, 5}});
    REQUIRE(words_of(0, 6) ==
            std::vector<Word>{{}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {3, 5}, {3, 6},
                              {1}, {2}, {3}, {4}, {5}, {6}, {1, 3, 5}, {1, 3, 6}});
    REQUIRE(words_of(0, 8) ==
            std::vector<Word>{{}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {1, 7}, {1, 8},
                              {1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}});
    REQUIRE(words_of(5, 0) == std::vector<Word>{{}, {1}, {2}, {3}, {4}, {5}, {1, 3}, {1, 4}});
    REQUIRE(words_of(2, 2) == std::vector<Word>{{}, {1}, {2}, {1, 2}, {3}, {4}, {1, 3}, {1, 4}});
    REQUIRE(words_of(3, 0) == std::vector<Word>{{}, {1}, {2}, {3}});
    REQUIRE(words_of(1, 2) == std::vector<Word>{{}, {1}, {2}, {3}});
    REQUIRE(words_of(6, 0) == std::vector<Word>{{}, {1}, {2}, {3}, {4}, {5}, {6}, {1, 2}});
    REQUIRE(words_of(7, 0) == std::vector<Word>{{}, {1}, {2}, {3}, {4}, {5}, {6}, {7}});
    REQUIRE(words_of(3, 3) == std::vector<Word>{{}, {1}, {2}, {3}, {4}, {5}, {6}, {1, 4}});
    REQUIRE(words_of(3, 2) == std::vector<Word>{{}, {1}, {2}, {3}, {4}, {5}, {2, 4}, {2, 5}});
    REQUIRE(words_of(3, 4) == std::vector<Word>{{}, {1}, {2}, {3}, {4}, {5}, {6}, {7}});
    REQUIRE(words_of(4, 4) ==
            std::vector<Word>{{}, {1}, {2}, {3}, {4}, {1, 2}, {1, 3}, {1, 4},
                              {5}, {6}, {7}, {8}, {1, 5}, {1, 6}, {1, 7}, {1, 8}});
}

TEST_CASE("seven negative generators: the shorter class representative wins") {
    // The class of the published J3 J6 w also contains J2 J7 w, which sorts
    // first; both name the same basis vector up to sign.
    Construction c = construct({0, 7});
    REQUIRE(c.mod.basis.words[7] == Word{2, 7});
    Vec a = c.mod.rep.apply_word({3, 6}, c.mod.basis.vectors[0]);
    const Vec& v8 = c.mod.basis.vectors[7];
    REQUIRE((a == v8 || a == negate(v8)));
}

TEST_CASE("fixing by the four-generator involution forces the published signs") {
    Construction c = construct({0, 4});
    const CliffordRep& rep = c.mod.rep;
    Vec w = c.mod.basis.vectors[0];
    auto word = [&](std::initializer_list<int> is) { return rep.apply_word(Word(is), w); };
    REQUIRE(word({1}) == word({2, 3, 4}));
    REQUIRE(word({2}) == negate(word({1, 3, 4})));
    REQUIRE(word({3}) == word({1, 2, 4}));
    REQUIRE(word({4}) == negate(word({1, 2, 3})));
    REQUIRE(word({1, 2}) == negate(word({3, 4})));
    REQUIRE(word({1, 3}) == word({2, 4}));
    REQUIRE(word({1, 4}) == negate(word({2, 3})));
}

TEST_CASE("action table rejects vectors outside the basis span") {
    Construction c = construct({0, 2});
    IntegralBasis broken = c.mod.basis;
    broken.vectors[1] = add(broken.vectors[0], broken.vectors[1]);
    REQUIRE_THROWS_AS(action_table(c.mod.rep, broken), std::runtime_error);
}

TEST_CASE("orbit coherence: any two orbit vectors are proportional or orthogonal") {
    Construction c = construct({0, 5});
    Vec w = c.mod.basis.vectors[0];
    auto orbit = generate_orbit(c.mod.rep, w);
    for (size_t i = 0; i < orbit.size(); ++i)
        for (size_t j = i + 1; j < orbit.size(); ++j) {
            bool prop = orbit[i].vec == orbit[j].vec || orbit[i].vec == negate(orbit[j].vec);
            bool orth = inner(orbit[i].vec, orbit[j].vec, c.mod.rep.module).is_zero();
            REQUIRE((prop || orth));
        }
}
