#include <acmext/mat.hpp>

#include <doctest.h>

using namespace acmext;

namespace {

Mat from_ints(const FieldPtr& F, int r, int c, std::initializer_list<i64> vals) {
    Mat m(F, r, c);
    auto it = vals.begin();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = F->from_int(*it++);
    return m;
}

Mat random_mat(const FieldPtr& F, Rng& rng, int r, int c) {
    Mat m(F, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.at(i, j) = Elem(rng.below(F->p()));
    return m;
}

} // namespace

TEST_CASE("rref basics") {
    auto F = make_prime_field(7);
    Mat id = Mat::identity(F, 2);
    auto rr = rref(id);
    CHECK(rr.rank == 2);
    CHECK(rr.R == id);

    Mat m = from_ints(F, 2, 2, {1, 1, 2, 2});
    auto rr2 = rref(m);
    CHECK(rr2.rank == 1);
    CHECK(rr2.R.at(0, 0) == Elem(1));
    CHECK(rr2.R.at(0, 1) == Elem(1));
    CHECK(F->is_zero(rr2.R.at(1, 0)));
    CHECK(F->is_zero(rr2.R.at(1, 1)));
}

TEST_CASE("random rank properties") {
    auto F = make_prime_field(7);
    Rng rng(7);
    Mat m = random_mat(F, rng, 50, 70);
    int r1 = rank(m);
    CHECK(r1 == 50); // full row rank with overwhelming probability
    CHECK(rank(m.transpose()) == r1);

    for (int trial = 0; trial < 10; ++trial) {
        Mat a = random_mat(F, rng, 9, 13);
        CHECK(rank(a) == rank(a.transpose()));
        Subspace k = right_kernel(a);
        CHECK(k.dim() + rank(a) == a.cols);
        // every kernel basis vector is an exact solution
        for (int i = 0; i < k.dim(); ++i) {
            for (int row = 0; row < a.rows; ++row) {
                Elem s;
                for (int j = 0; j < a.cols; ++j) s = F->add(s, F->mul(a.at(row, j), k.basis.at(i, j)));
                CHECK(F->is_zero(s));
            }
        }
    }
}

TEST_CASE("right kernel examples") {
    auto F = make_prime_field(7);
    Subspace k = right_kernel(Mat::identity(F, 3));
    CHECK(k.dim() == 0);

    Mat m = from_ints(F, 1, 2, {1, 1});
    Subspace k2 = right_kernel(m);
    CHECK(k2.dim() == 1);
    CHECK(k2.basis.at(0, 0) == Elem(1));
    CHECK(k2.basis.at(0, 1) == Elem(6));
}

TEST_CASE("subspace containment") {
    auto F = make_prime_field(7);
    Subspace full = subspace_from_rows(Mat::identity(F, 2));
    Subspace e0 = subspace_from_rows(from_ints(F, 1, 2, {1, 0}));
    Subspace e1 = subspace_from_rows(from_ints(F, 1, 2, {0, 1}));
    CHECK(subspace_contains(full, e0));
    CHECK(subspace_contains(full, e1));
    CHECK_FALSE(subspace_contains(e0, e1));

    // mutual containment forces equal RREF bases
    Subspace a = subspace_from_rows(from_ints(F, 2, 3, {1, 2, 3, 0, 1, 5}));
    Subspace b = subspace_from_rows(from_ints(F, 2, 3, {1, 3, 1, 0, 2, 3}));
    if (subspace_contains(a, b) && subspace_contains(b, a)) CHECK(subspace_equal(a, b));

    Subspace amb = subspace_from_rows(from_ints(F, 1, 3, {1, 0, 0}));
    CHECK_THROWS_AS(subspace_contains(e0, amb), Error);
}

TEST_CASE("solve") {
    auto F = make_prime_field(7);
    Mat id = Mat::identity(F, 3);
    Rng rng(3);
    Mat rhs = random_mat(F, rng, 3, 2);
    CHECK(solve(id, rhs) == rhs);

    Mat m = from_ints(F, 1, 2, {1, 1});
    Mat b = from_ints(F, 1, 1, {2});
    Mat x = solve(m, b);
    CHECK(F->add(x.at(0, 0), x.at(1, 0)) == Elem(2));

    Mat zero = from_ints(F, 1, 1, {0});
    Mat one = from_ints(F, 1, 1, {1});
    CHECK_THROWS_AS(solve(zero, one), Error);
}

TEST_CASE("prepared solver matches direct solve") {
    auto F = make_prime_field(101);
    Rng rng(11);
    Mat m = random_mat(F, rng, 12, 8);
    PreparedSolver ps(m);
    for (int trial = 0; trial < 5; ++trial) {
        // build a consistent rhs
        Mat x0 = random_mat(F, rng, 8, 1);
        Mat b = m.mul(x0);
        std::vector<Elem> rhs(12);
        for (int i = 0; i < 12; ++i) rhs[i] = b.at(i, 0);
        auto x = ps.solve_one(rhs);
        Mat xm(F, 8, 1);
        for (int i = 0; i < 8; ++i) xm.at(i, 0) = x[i];
        CHECK(m.mul(xm) == b);
    }
}
