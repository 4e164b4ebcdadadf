#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "htlie/pipeline.hpp"

using namespace htlie;

namespace {

SignedPerm random_signed_perm(int n, std::mt19937& rng) {
    SignedPerm p;
    p.target.resize(n);
    p.sign.resize(n);
    for (int i = 0; i < n; ++i) p.target[i] = i;
    std::shuffle(p.target.begin(), p.target.end(), rng);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < n; ++i) p.sign[i] = coin(rng) ? 1 : -1;
    return p;
}

Vec random_vec(int n, std::mt19937& rng) {
    std::uniform_int_distribution<long> d(-5, 5);
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = Scalar(Rational(d(rng), 1 + std::abs(d(rng))));
    return v;
}

}  // namespace

TEST_CASE("apply: identity and explicit generator images") {
    Operator id = Operator::identity(4);
    Vec e1 = unit_vector(4, 0);
    REQUIRE(id.apply(e1) == e1);

    // First generator of the fixed Cl_{0,2} model maps e1 to e3.
    CliffordRep rep = base_cl02();
    REQUIRE(rep.gen(1).apply(e1) == unit_vector(4, 2));

    REQUIRE_THROWS_AS(id.apply(Vec(3, Scalar(0))), std::invalid_argument);
}

TEST_CASE("apply: signed permutation agrees with dense multiplication") {
    std::mt19937 rng(7);
    for (int it = 0; it < 20; ++it) {
        SignedPerm p = random_signed_perm(4, rng);
        Operator sparse = Operator::from_signed_perm(p);
        Operator dense = Operator::from_entries(4, sparse.dense().e);
        REQUIRE(sparse.sparse_matches_dense());
        Vec v = random_vec(4, rng);
        REQUIRE(sparse.apply(v) == dense.apply(v));
    }
}

TEST_CASE("inner products against the diagonal metric") {
    MetricSpace M2{{1, -1}};
    REQUIRE(inner(unit_vector(2, 0), unit_vector(2, 0), M2) == Scalar(1));
    REQUIRE(inner(unit_vector(2, 1), unit_vector(2, 1), M2) == Scalar(-1));
    MetricSpace M4{{1, 1, -1, -1}};
    Vec u = add(unit_vector(4, 0), unit_vector(4, 2));
    Vec v = add(unit_vector(4, 0), negate(unit_vector(4, 2)));
    REQUIRE(inner(u, v, M4) == Scalar(2));
    REQUIRE_THROWS_AS(inner(u, unit_vector(2, 0), M4), std::invalid_argument);
}

TEST_CASE("metric adjoint") {
    MetricSpace M4 = MetricSpace::euclidean(4);
    REQUIRE(metric_adjoint(Operator::identity(4), M4) == Operator::identity(4));

    // A skew generator with J^2 = -Id on a positive-definite space: J* = -J.
    CliffordRep q = base_cl20();
    REQUIRE(metric_adjoint(q.gen(1), q.module) == -q.gen(1));

    CliffordRep h = base_cl11();
    REQUIRE(metric_adjoint(h.gen(1), h.module) == -h.gen(1));
    REQUIRE(metric_adjoint(h.gen(2), h.module) == -h.gen(2));
}

TEST_CASE("adjoint identity <A u, v> = <u, A* v> on sampled vectors") {
    std::mt19937 rng(11);
    MetricSpace M{{1, 1, -1, -1, 1, -1}};
    for (int it = 0; it < 25; ++it) {
        Operator A = Operator::from_signed_perm(random_signed_perm(6, rng));
        Operator Astar = metric_adjoint(A, M);
        Vec u = random_vec(6, rng), v = random_vec(6, rng);
        REQUIRE(inner(A.apply(u), v, M) == inner(u, Astar.apply(v), M));
    }
}

TEST_CASE("dense adjoint on a non-permutation matrix") {
    std::mt19937 rng(13);
    MetricSpace M{{1, -1, 1}};
    std::uniform_int_distribution<long> d(-3, 3);
    for (int it = 0; it < 10; ++it) {
        std::vector<Scalar> e;
        for (int i = 0; i < 9; ++i) e.push_back(Scalar(Rational(d(rng), 2)));
        Operator A = Operator::from_entries(3, e);
        Operator Astar = metric_adjoint(A, M);
        Vec u = random_vec(3, rng), v = random_vec(3, rng);
        REQUIRE(inner(A.apply(u), v, M) == inner(u, Astar.apply(v), M));
    }
}

TEST_CASE("eigenspace of involutions") {
    REQUIRE(eigenspace(Operator::identity(3), 1).size() == 3);
    Operator diag = Operator::from_signed_perm(SignedPerm{{0, 1}, {1, -1}});
    auto minus = eigenspace(diag, -1);
    REQUIRE(minus.size() == 1);
    REQUIRE(minus[0] == unit_vector(2, 1));

    // Non-involutions are rejected.
    CliffordRep q = base_cl20();
    REQUIRE_THROWS_AS(eigenspace(q.gen(1), 1), std::invalid_argument);
}

TEST_CASE("four-generator involution splits the Cl_{0,4} module in half") {
    Construction c = construct({0, 4});
    Operator P = c.mod.rep.word_operator({1, 2, 3, 4});
    auto plus = eigenspace(P, 1);
    auto minus = eigenspace(P, -1);
    REQUIRE(plus.size() == 4);
    REQUIRE(minus.size() == 4);
    REQUIRE(plus.size() + minus.size() == static_cast<size_t>(c.mod.rep.dim()));
}

TEST_CASE("eigenspaces of symmetric or isometric involutions are orthogonal") {
    Construction c = construct({0, 6});
    for (const Word& w : c.scheme.involutions) {
        Operator P = c.mod.rep.word_operator(w);
        bool sym = is_symmetric_wrt(P, c.mod.rep.module);
        bool iso = is_isometry(P, c.mod.rep.module);
        REQUIRE((sym || iso));
        auto plus = eigenspace(P, 1);
        auto minus = eigenspace(P, -1);
        for (const Vec& u : plus)
            for (const Vec& v : minus) REQUIRE(inner(u, v, c.mod.rep.module).is_zero());
    }
}

TEST_CASE("rational kernel solves a small system exactly") {
    // rows: x + y/2 - z = 0, y + 2z = 0
    std::vector<Vec> rows = {
        {Scalar(1), Scalar(Rational(1, 2)), Scalar(-1)},
        {Scalar(0), Scalar(1), Scalar(2)},
    };
    auto basis = rational_kernel(3, rows);
    REQUIRE(basis.size() == 1);
    const Vec& k = basis[0];
    REQUIRE((k[0] + Scalar(Rational(1, 2)) * k[1] - k[2]).is_zero());
    REQUIRE((k[1] + Scalar(2) * k[2]).is_zero());
    REQUIRE_FALSE(is_zero(k));
}
