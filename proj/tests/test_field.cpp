#include <acmext/field.hpp>

#include <doctest.h>

using namespace acmext;

TEST_CASE("prime field construction and arithmetic") {
    auto F7 = make_prime_field(7);
    CHECK(F7->p() == 7);
    CHECK(F7->height() == 0);
    // 3+5 = 1, 3*5 = 1 in F_7
    CHECK(F7->add(Elem(3), Elem(5)) == Elem(1));
    CHECK(F7->mul(Elem(3), Elem(5)) == Elem(1));

    CHECK_THROWS_AS(make_prime_field(4), Error);
    CHECK_THROWS_AS(make_prime_field(2), Error);
    CHECK_THROWS_AS(make_prime_field(1), Error);
    try {
        make_prime_field(4);
    } catch (const Error& e) {
        CHECK(e.code() == Err::NotPrime);
    }
    try {
        make_prime_field(2);
    } catch (const Error& e) {
        CHECK(e.code() == Err::TooSmall);
    }

    auto big = make_prime_field(32003);
    CHECK(big->p() == 32003);
}

TEST_CASE("inverses are total on nonzero elements") {
    auto F = make_prime_field(101);
    for (u64 a = 1; a < 101; ++a) {
        Elem x(a);
        CHECK(F->mul(x, F->inv(x)) == F->one());
    }
}

TEST_CASE("square roots in the prime field") {
    auto F7 = make_prime_field(7);
    // squares mod 7: {1,2,4}; sqrt(2) = 3 (3 < 4 lexicographically)
    CHECK(F7->sqrt(Elem(2)) == Elem(3));
    CHECK_THROWS_AS(F7->sqrt(Elem(3)), Error);
    CHECK(F7->sqrt(Elem(0)) == Elem(0));

    auto F = make_prime_field(32003);
    for (u64 a = 1; a < 60; ++a) {
        Elem sq = F->mul(Elem(a), Elem(a));
        Elem r = F->sqrt(sq);
        CHECK((r == Elem(a) || r == F->neg(Elem(a))));
        CHECK(F->mul(r, r) == sq);
    }
}

TEST_CASE("quadratic extension tower over F_7") {
    auto F7 = make_prime_field(7);
    auto F49 = extend_quadratic(F7);
    CHECK(F49->height() == 1);
    // squares mod 7 are {1,2,4}, so the smallest non-residue is 3
    CHECK(F49->tower()[0] == Elem(3));

    // r = adjoined root, r^2 = 3; r^{-1} = 5r since 3*5 = 1 in F_7
    Elem r = Elem::with_len(2);
    r[1] = 1;
    Elem rinv = F49->inv(r);
    Elem expect = Elem::with_len(2);
    expect[1] = 5;
    CHECK(rinv == expect);
    CHECK(F49->mul(r, rinv) == F49->one());

    auto F2401 = extend_quadratic(F49);
    CHECK(F2401->height() == 2);

    // embedding commutes with arithmetic
    Elem a(4), b(6);
    Elem lhs = F2401->embed(F49->mul(a, b), 2);
    Elem rhs = F2401->mul(F2401->embed(a, 2), F2401->embed(b, 2));
    CHECK(lhs == rhs);
}

TEST_CASE("squares and roots through the tower") {
    auto F = extend_to(make_prime_field(31), 2);
    Rng rng(42);
    int tested = 0;
    for (int trial = 0; trial < 200; ++trial) {
        Elem a = Elem::with_len(4);
        for (int i = 0; i < 4; ++i) a[i] = rng.below(31);
        if (F->is_zero(a)) continue;
        Elem sq = F->mul(a, a);
        CHECK(F->is_square(sq));
        Elem r = F->sqrt(sq);
        CHECK(F->mul(r, r) == sq);
        CHECK((r == a || r == F->neg(a)));
        ++tested;
    }
    CHECK(tested > 150);
}

TEST_CASE("sqrt may require one level up") {
    auto F7 = make_prime_field(7);
    auto F49 = extend_quadratic(F7);
    Elem three(3);
    CHECK_FALSE(F7->is_square(three));
    CHECK(F49->is_square(F49->embed(three, 1)));
    Elem r = F49->sqrt(F49->embed(three, 1));
    CHECK(F49->mul(r, r) == F49->embed(three, 1));
}

TEST_CASE("frobenius fixes the base field and generates conjugates") {
    auto F = extend_to(make_prime_field(13), 1);
    for (u64 a = 0; a < 13; ++a) CHECK(F->frobenius(Elem(a)) == Elem(a));
    Elem r = Elem::with_len(2);
    r[1] = 1;
    Elem fr = F->frobenius(r);
    CHECK_FALSE(fr == r);
    CHECK(F->frobenius(fr) == r); // order 2
    // frobenius is a ring hom: (r+1)^p = r^p + 1
    Elem rp1 = F->add(r, F->one());
    CHECK(F->frobenius(rp1) == F->add(fr, F->one()));
}
