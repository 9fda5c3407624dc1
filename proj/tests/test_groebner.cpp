#include <acmext/groebner.hpp>

#include <doctest.h>

using namespace acmext;

namespace {

Poly term_of(const RingPtr& R, i64 c, std::vector<int> exps) {
    Monomial m = Monomial::unit(R->nvars);
    for (std::size_t i = 0; i < exps.size(); ++i) {
        m.e[i] = static_cast<std::uint16_t>(exps[i]);
        m.deg += exps[i];
    }
    return poly_from_terms(R, {Term{m, R->F->from_int(c)}});
}

// 2x2 minors of [[x0,x1,x2],[x1,x2,x3]] — the twisted cubic in P^3
std::vector<Poly> twisted_cubic(const RingPtr& R) {
    auto x = [&](int i) { return poly_var(R, i); };
    Poly m01 = poly_sub(poly_mul(x(0), x(2)), poly_mul(x(1), x(1)));
    Poly m02 = poly_sub(poly_mul(x(0), x(3)), poly_mul(x(1), x(2)));
    Poly m12 = poly_sub(poly_mul(x(1), x(3)), poly_mul(x(2), x(2)));
    return {m01, m02, m12};
}

// brute-force membership in degree deg(p): is p in the span of monomial
// multiples of gens?
bool member_la(const Poly& p, const std::vector<Poly>& gens) {
    const RingPtr& R = p.R;
    int d = p.degree();
    std::vector<Poly> rows;
    for (const Poly& g : gens) {
        if (g.is_zero() || g.degree() > d) continue;
        for (const Monomial& m : monomial_basis(R, d - g.degree()))
            rows.push_back(poly_mul_term(g, m, R->F->one()));
    }
    Mat span = coefficient_matrix(R, rows, d);
    Mat with = coefficient_matrix(R, [&] {
        std::vector<Poly> v = rows;
        v.push_back(p);
        return v;
    }(), d);
    return rank(span) == rank(with);
}

} // namespace

TEST_CASE("buchberger on principal and monomial ideals") {
    auto F = make_prime_field(7);
    auto R = make_ring_xs(F, 2);
    auto gb = buchberger(R, {poly_var(R, 0)});
    CHECK(gb.g.size() == 1);
    CHECK(poly_equal(gb.g[0], poly_var(R, 0)));

    // {x0x1, x0x2} is already reduced; canonical order is ascending in grevlex
    auto R3 = make_ring_xs(F, 3);
    Poly a = term_of(R3, 1, {1, 1, 0});
    Poly b = term_of(R3, 1, {1, 0, 1});
    auto gb2 = buchberger(R3, {a, b});
    CHECK(gb2.g.size() == 2);
    CHECK(poly_equal(gb2.g[0], b));
    CHECK(poly_equal(gb2.g[1], a));
}

TEST_CASE("twisted cubic groebner basis") {
    auto F = make_prime_field(32003);
    auto R = make_ring_xs(F, 4);
    auto gens = twisted_cubic(R);
    GBStats st;
    auto gb = buchberger(R, gens, &st);
    CHECK(gb.g.size() == 3);
    for (const Poly& g : gb.g) CHECK(g.degree() == 2);
    // membership cross-check against the degree-by-degree oracle
    for (const Poly& g : gens) {
        CHECK(in_ideal(g, gb));
        CHECK(member_la(g, gens));
    }
    Poly outside = term_of(R, 1, {2, 0, 0, 0});
    CHECK(in_ideal(outside, gb) == member_la(outside, gens));

    // basis is canonical: independent of generator order
    auto gb2 = buchberger(R, {gens[2], gens[0], gens[1]});
    CHECK(gb_equal(gb, gb2));
}

TEST_CASE("normal form") {
    auto F = make_prime_field(7);
    auto R = make_ring_xs(F, 2);
    auto gb = buchberger(R, {poly_var(R, 0)});
    Poly x1sq = term_of(R, 1, {0, 2});
    CHECK(poly_equal(normal_form(x1sq, gb), x1sq));
    CHECK(normal_form(poly_var(R, 0), gb).is_zero());
}

TEST_CASE("ideal quotient") {
    auto F = make_prime_field(7);
    auto R = make_ring_xs(F, 3);
    Poly x0 = poly_var(R, 0), x1 = poly_var(R, 1), x2 = poly_var(R, 2);

    // ((x0x1) : x0) = (x1)
    auto I = buchberger(R, {poly_mul(x0, x1)});
    auto Q = ideal_quotient(I, x0);
    CHECK(Q.g.size() == 1);
    CHECK(poly_equal(Q.g[0], x1));

    // (I : 1) = I
    auto tc = buchberger(R, {poly_mul(x0, x1), poly_mul(x0, x2)});
    auto Q1 = ideal_quotient(tc, poly_const(R, F->one()));
    CHECK(gb_equal(Q1, tc));

    // ((x0x1, x0x2) : x0) = (x1, x2)
    auto Q2 = ideal_quotient(tc, x0);
    CHECK(Q2.g.size() == 2);
    CHECK(in_ideal(x1, Q2));
    CHECK(in_ideal(x2, Q2));
    CHECK_FALSE(in_ideal(x0, Q2));
}

TEST_CASE("saturation") {
    auto F = make_prime_field(7);
    auto R = make_ring_xs(F, 2);
    Poly x0 = poly_var(R, 0), x1 = poly_var(R, 1);

    // ((x0^2) : x0^inf) = (1)
    auto I = buchberger(R, {poly_mul(x0, x0)});
    auto S = saturate(I, x0);
    CHECK(S.is_unit());

    // saturating by a nonzerodivisor leaves the ideal unchanged
    auto J = buchberger(R, {poly_mul(x0, x1)});
    auto S2 = saturate(J, poly_add(x0, x1));
    CHECK(gb_equal(S2, J));

    // ((x0x1, x0^2) : x0^inf): x0^2 is a generator, so 1 lands in (I : x0^2)
    // and the saturation is the unit ideal
    auto K = buchberger(R, {poly_mul(x0, x1), poly_mul(x0, x0)});
    auto S3 = saturate(K, x0);
    CHECK(S3.is_unit());
    // the single quotient (I : x0) = (x0, x1) along the way
    auto Q = ideal_quotient(K, x0);
    CHECK(Q.g.size() == 2);
    CHECK(in_ideal(x0, Q));
    CHECK(in_ideal(x1, Q));
}

TEST_CASE("hilbert data") {
    auto F = make_prime_field(7);
    auto R2 = make_ring_xs(F, 2);

    // zero ideal in 2 vars: 1/(1-t)^2
    auto Z = buchberger(R2, {});
    HilbertData hz = hilbert(Z);
    CHECK(hz.numerator == std::vector<i64>{1});
    CHECK(hz.krull_dim == 2);
    CHECK(hz.degree == 1);

    // unit ideal: numerator 0
    auto U = buchberger(R2, {poly_const(R2, F->one())});
    HilbertData hu = hilbert(U);
    CHECK(hu.numerator == std::vector<i64>{0});

    // twisted cubic: projective (dim, deg) = (1, 3)
    auto R4 = make_ring_xs(F, 4);
    auto gb = buchberger(R4, twisted_cubic(R4));
    auto dd = dimension_degree(gb);
    CHECK(dd.first == 1);
    CHECK(dd.second == 3);

    // linear subspace cut by k independent linear forms in P^m
    auto R5 = make_ring_xs(F, 5);
    auto L = buchberger(R5, {poly_var(R5, 0), poly_var(R5, 1)});
    auto dd2 = dimension_degree(L);
    CHECK(dd2.first == 2);
    CHECK(dd2.second == 1);
}

TEST_CASE("hilbert function agrees with degree-by-degree linear algebra") {
    auto F = make_prime_field(32003);
    auto R = make_ring_xs(F, 4);
    auto gens = twisted_cubic(R);
    auto gb = buchberger(R, gens);
    HilbertData h = hilbert(gb);
    // h(d) from the numerator: coefficient of t^d in numerator/(1-t)^4
    auto hf_from_numerator = [&](int d) {
        i64 s = 0;
        for (std::size_t i = 0; i < h.numerator.size(); ++i) {
            if (static_cast<int>(i) > d) break;
            int k = d - static_cast<int>(i);
            // C(k+3, 3)
            i64 binom = (i64)(k + 1) * (k + 2) * (k + 3) / 6;
            s += h.numerator[i] * binom;
        }
        return s;
    };
    for (int d = 0; d <= 6; ++d) {
        std::vector<Poly> rows;
        for (const Poly& g : gens)
            if (g.degree() <= d)
                for (const Monomial& m : monomial_basis(R, d - g.degree()))
                    rows.push_back(poly_mul_term(g, m, F->one()));
        int dim_ideal = rows.empty() ? 0 : rank(coefficient_matrix(R, rows, d));
        i64 expect = static_cast<i64>(monomial_basis(R, d).size()) - dim_ideal;
        CHECK(hf_from_numerator(d) == expect);
    }
}
