#include <acmext/ring.hpp>

#include <doctest.h>

using namespace acmext;

namespace {

// small helper: parse-free construction of a monomial term
Poly term_of(const RingPtr& R, i64 c, std::vector<int> exps) {
    Monomial m = Monomial::unit(R->nvars);
    for (std::size_t i = 0; i < exps.size(); ++i) {
        m.e[i] = static_cast<std::uint16_t>(exps[i]);
        m.deg += exps[i];
    }
    return poly_from_terms(R, {Term{m, R->F->from_int(c)}});
}

} // namespace

TEST_CASE("monomial basis counts and order") {
    auto F = make_prime_field(7);
    auto R3 = make_ring_xs(F, 3);
    auto b = monomial_basis(R3, 2);
    CHECK(b.size() == 6);
    // grevlex descending: x0^2, x0x1, x1^2, x0x2, x1x2, x2^2
    CHECK(b[0].e == std::vector<std::uint16_t>{2, 0, 0});
    CHECK(b[1].e == std::vector<std::uint16_t>{1, 1, 0});
    CHECK(b[2].e == std::vector<std::uint16_t>{0, 2, 0});
    CHECK(b[3].e == std::vector<std::uint16_t>{1, 0, 1});
    CHECK(b[4].e == std::vector<std::uint16_t>{0, 1, 1});
    CHECK(b[5].e == std::vector<std::uint16_t>{0, 0, 2});

    auto R5 = make_ring_xs(F, 5);
    CHECK(monomial_basis(R5, 3).size() == 35);
    CHECK(monomial_basis(R5, 0).size() == 1);
}

TEST_CASE("poly arithmetic keeps homogeneity") {
    auto F = make_prime_field(7);
    auto R = make_ring_xs(F, 3);
    Poly a = poly_add(term_of(R, 1, {2, 0, 0}), term_of(R, 3, {0, 1, 1}));
    CHECK(a.degree() == 2);
    Poly b = poly_mul(a, a);
    CHECK(b.degree() == 4);
    CHECK_THROWS_AS(poly_add(a, poly_var(R, 0)), Error);

    Poly z = poly_sub(a, a);
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
}

TEST_CASE("coefficient matrix") {
    auto F = make_prime_field(7);
    auto R = make_ring_xs(F, 2);
    Poly p1 = term_of(R, 1, {2, 0});
    Poly p2 = term_of(R, 1, {1, 1});
    Mat m = coefficient_matrix(R, {p1, p2}, 2);
    CHECK(m.rows == 2);
    CHECK(m.cols == 3);
    CHECK(m.at(0, 0) == Elem(1));
    CHECK(F->is_zero(m.at(0, 1)));
    CHECK(m.at(1, 1) == Elem(1));

    Mat empty = coefficient_matrix(R, {}, 2);
    CHECK(empty.rows == 0);
    CHECK(empty.cols == 3);

    CHECK_THROWS_AS(coefficient_matrix(R, {poly_var(R, 0)}, 2), Error);
}

TEST_CASE("variable slices of the Hankel matrix") {
    auto F = make_prime_field(7);
    auto R = make_ring_xs(F, 5);
    // rows x0 x1 x2 x3 / x1 x2 x3 x4
    PolyMatrix h(R, 2, 4, {0, 0}, {1, 1, 1, 1});
    for (int j = 0; j < 4; ++j) {
        h.set(0, j, poly_var(R, j));
        h.set(1, j, poly_var(R, j + 1));
    }
    auto slices = variable_slices(h);
    CHECK(slices.size() == 5);
    for (int l = 0; l < 5; ++l) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 4; ++j) {
                bool expect_one = (i == 0 && j == l) || (i == 1 && j + 1 == l);
                if (expect_one)
                    CHECK(slices[l].at(i, j) == Elem(1));
                else
                    CHECK(F->is_zero(slices[l].at(i, j)));
            }
    }
    // reassembly round trip
    PolyMatrix back = slices_to_linear_matrix(R, slices, h.rowdeg, h.coldeg);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j) CHECK(poly_equal(back.at(i, j), h.at(i, j)));

    PolyMatrix bad(R, 1, 1, {0}, {2});
    bad.set(0, 0, term_of(R, 1, {2, 0, 0, 0, 0}));
    CHECK_THROWS_AS(variable_slices(bad), Error);
}

TEST_CASE("substitute_linear") {
    auto F = make_prime_field(7);
    auto R = make_ring_xs(F, 3);
    Poly p = poly_add(term_of(R, 1, {1, 0, 1}), term_of(R, 1, {0, 2, 0})); // x0x2 + x1^2

    std::vector<Poly> ident;
    for (int i = 0; i < 3; ++i) ident.push_back(poly_var(R, i));
    CHECK(poly_equal(substitute_linear(p, ident, R), p));

    std::vector<Poly> kill2 = ident;
    kill2[2] = Poly(R);
    CHECK(poly_equal(substitute_linear(p, kill2, R), term_of(R, 1, {0, 2, 0})));

    CHECK_THROWS_AS(substitute_linear(p, {poly_var(R, 0)}, R), Error);
}

TEST_CASE("generic linear change then inverse change restores the form") {
    auto F = make_prime_field(101);
    auto R = make_ring_xs(F, 3);
    Rng rng(5);
    Mat g(F, 3, 3);
    // random invertible matrix
    do {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g.at(i, j) = Elem(rng.below(101));
    } while (rank(g) < 3);
    Mat ginv = solve(g, Mat::identity(F, 3));

    auto images_of = [&](const Mat& m) {
        std::vector<Poly> im;
        for (int i = 0; i < 3; ++i) {
            std::vector<Term> raw;
            for (int j = 0; j < 3; ++j)
                if (!F->is_zero(m.at(i, j))) raw.push_back(Term{Monomial::var(3, j), m.at(i, j)});
            im.push_back(poly_from_terms(R, std::move(raw)));
        }
        return im;
    };

    Poly p = poly_add(term_of(R, 3, {2, 0, 0}), term_of(R, 5, {0, 1, 1}));
    Poly q = substitute_linear(substitute_linear(p, images_of(g), R), images_of(ginv), R);
    CHECK(poly_equal(q, p));
}

TEST_CASE("poly matrix product and shifts") {
    auto F = make_prime_field(7);
    auto R = make_ring_xs(F, 2);
    PolyMatrix id(R, 2, 2, {0, 0}, {0, 0});
    id.set(0, 0, poly_const(R, F->one()));
    id.set(1, 1, poly_const(R, F->one()));
    PolyMatrix m(R, 2, 1, {0, 0}, {1});
    m.set(0, 0, poly_var(R, 0));
    m.set(1, 0, poly_var(R, 1));
    PolyMatrix pr = matmul_poly(id, m);
    CHECK(poly_equal(pr.at(0, 0), m.at(0, 0)));
    CHECK(poly_equal(pr.at(1, 0), m.at(1, 0)));

    PolyMatrix wrong(R, 1, 2, {0}, {1, 1});
    CHECK_THROWS_AS(matmul_poly(m, wrong), Error);

    // degree-shift violations are rejected
    PolyMatrix bad(R, 1, 1, {0}, {2});
    CHECK_THROWS_AS(bad.set(0, 0, poly_var(R, 0)), Error);
}
