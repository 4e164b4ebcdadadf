#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "htlie/scalar.hpp"

using namespace htlie;

TEST_CASE("rationals are canonical") {
    Scalar a(Rational(2, 4));
    REQUIRE(a == Scalar(Rational(1, 2)));
    REQUIRE(a.as_rational().get_den() == 2);
    REQUIRE(Scalar(Rational(-3, -6)) == Scalar(Rational(1, 2)));
}

TEST_CASE("surd with zero coefficient collapses to a rational") {
    Scalar a(Rational(3), Rational(0), 5);
    REQUIRE(a.is_rational());
    REQUIRE(a == Scalar(3));
    // normalization is idempotent
    Scalar b = a + Scalar(0);
    REQUIRE(b.is_rational());
    REQUIRE(b.radicand() == 0);
}

TEST_CASE("surd arithmetic stays in one quadratic field") {
    Scalar x(Rational(1), Rational(2), 2);   // 1 + 2 sqrt2
    Scalar y(Rational(-3), Rational(1), 2);  // -3 + sqrt2
    REQUIRE(x + y == Scalar(Rational(-2), Rational(3), 2));
    REQUIRE(x * y == Scalar(Rational(1), Rational(-5), 2));  // -3+4 + (1-6)sqrt2
    REQUIRE(x * x.inverse() == Scalar(1));
    Scalar z(Rational(0), Rational(1), 3);
    REQUIRE_THROWS_AS(x + z, std::domain_error);
}

TEST_CASE("exact sign of mixed-sign surds") {
    // 3 - 2 sqrt2 > 0 because 9 > 8; 2 - 2 sqrt2 < 0.
    REQUIRE(Scalar(Rational(3), Rational(-2), 2).sign() == 1);
    REQUIRE(Scalar(Rational(2), Rational(-2), 2).sign() == -1);
    REQUIRE(Scalar(Rational(-3), Rational(2), 2).sign() == -1);
    REQUIRE(Scalar(0).sign() == 0);
}

TEST_CASE("sqrt_exact extracts square parts") {
    REQUIRE(sqrt_exact(Rational(25, 16)) == Scalar(Rational(5, 4)));
    REQUIRE(sqrt_exact(Rational(8)) == Scalar(Rational(0), Rational(2), 2));
    REQUIRE(sqrt_exact(Rational(2, 9)) == Scalar(Rational(0), Rational(1, 3), 2));
    REQUIRE(sqrt_exact(Rational(0)) == Scalar(0));
    REQUIRE_THROWS_AS(sqrt_exact(Rational(-1)), std::domain_error);
}

TEST_CASE("field laws on sampled triples") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    auto sample = [&]() {
        return Scalar(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), 2);
    };
    for (int it = 0; it < 200; ++it) {
        Scalar a = sample(), b = sample(), c = sample();
        REQUIRE((a + b) + c == a + (b + c));
        REQUIRE((a * b) * c == a * (b * c));
        REQUIRE(a * b == b * a);
        REQUIRE(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) REQUIRE(a * a.inverse() == Scalar(1));
    }
}
