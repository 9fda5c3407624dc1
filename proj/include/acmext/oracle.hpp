#pragma once

#include "groebner.hpp"

namespace acmext {

// Brute-force cross-checks backing the test suite. Size-guarded; never used
// on the production path.

// p in the degree-(deg p) span of the monomial multiples of gens, by rank
inline bool membership_by_linear_algebra(const Poly& p, const std::vector<Poly>& gens) {
    if (p.is_zero()) return true;
    const RingPtr& R = p.R;
    int d = p.degree();
    std::vector<Poly> rows;
    for (const Poly& g : gens) {
        if (g.is_zero() || g.degree() > d) continue;
        for (const Monomial& m : monomial_basis(R, d - g.degree()))
            rows.push_back(poly_mul_term(g, m, R->F->one()));
    }
    if (rows.empty()) return false;
    Mat span = coefficient_matrix(R, rows, d);
    rows.push_back(p);
    Mat with = coefficient_matrix(R, rows, d);
    return rank(span) == rank(with);
}

// dimension of the degree-syz_degree syzygy space of gens, one big kernel
inline i64 naive_syzygy(const RingPtr& R, const std::vector<Poly>& gens, int syz_degree) {
    std::vector<Monomial> target = monomial_basis(R, syz_degree);
    std::vector<std::pair<int, Monomial>> unknowns;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        int dj = syz_degree - gens[j].degree();
        if (dj < 0) continue;
        for (const Monomial& m : monomial_basis(R, dj)) unknowns.push_back({static_cast<int>(j), m});
    }
    require(unknowns.size() * target.size() <= 40'000'000ULL, Err::TooLarge,
            "naive_syzygy instance too large");
    Mat sys(R->F, static_cast<int>(target.size()), static_cast<int>(unknowns.size()));
    const Field& F = *R->F;
    for (std::size_t c = 0; c < unknowns.size(); ++c) {
        const auto& [j, m] = unknowns[c];
        Poly prod = poly_mul_term(gens[j], m, F.one());
        for (const Term& t : prod.t) {
            int row = basis_index(target, t.m);
            sys.at(row, static_cast<int>(c)) = F.add(sys.at(row, static_cast<int>(c)), t.c);
        }
    }
    return right_kernel(sys).dim();
}

// exhaustive projective point count over F_{p^j}, j <= 2, after slicing to
// an expected dimension of zero
inline i64 point_sample_degree(const RingPtr& R, const std::vector<Poly>& gens, int dim_hint,
                               u64 seed, int max_level = 1) {
    RingPtr small = R;
    std::vector<Poly> sliced = gens;
    if (dim_hint > 0) {
        sliced = slice_last_vars(R, gens, dim_hint, child_seed(seed, "oracle-slice"), &small);
    }
    int k = small->nvars;
    const u64 p = R->F->p();
    FieldPtr K = max_level > 0 ? extend_to(make_prime_field(p), max_level) : make_prime_field(p);
    u64 q = 1;
    for (int i = 0; i < (1 << max_level); ++i) q *= p;
    // |P^{k-1}(F_q)| = (q^k - 1)/(q - 1)
    long double space = 1;
    for (int i = 0; i < k; ++i) space *= static_cast<long double>(q);
    require(space <= 4e7L, Err::TooLarge, "point_sample_degree enumeration too large");

    RingPtr Rk = make_ring(K, small->names);
    std::vector<Poly> lifted;
    for (const Poly& g : sliced) {
        Poly h = g;
        h.R = Rk;
        lifted.push_back(h);
    }
    i64 count = 0;
    // representatives: first nonzero coordinate = 1
    std::vector<Elem> pt(k);
    std::function<void(int, bool)> rec = [&](int i, bool pivot_set) {
        if (i == k) {
            if (!pivot_set) return;
            for (const Poly& g : lifted)
                if (!K->is_zero(poly_eval(g, pt))) return;
            ++count;
            return;
        }
        if (!pivot_set) {
            pt[i] = K->zero();
            rec(i + 1, false);
            pt[i] = K->one();
            rec(i + 1, true);
            return;
        }
        for (u64 code = 0; code < q; ++code) {
            pt[i] = K->from_encoding(code, max_level);
            rec(i + 1, true);
        }
    };
    rec(0, false);
    return count;
}

} // namespace acmext
