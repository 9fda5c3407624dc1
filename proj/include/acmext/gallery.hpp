#pragma once

#include "strand.hpp"

namespace acmext {

// Seeded constructors for every variety the pipeline is exercised on.

struct GalleryIdeal {
    RingPtr R;
    std::vector<Poly> gens;
    int retries_used = 0;
};

namespace gallerydetail {

inline Poly pm_det(const PolyMatrix& m, std::vector<int> rows, std::vector<int> cols) {
    const RingPtr& R = m.R;
    if (rows.size() == 1) return m.at(rows[0], cols[0]);
    Poly acc(R);
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const Poly& e = m.at(rows[0], cols[k]);
        if (e.is_zero()) continue;
        std::vector<int> sub_rows(rows.begin() + 1, rows.end());
        std::vector<int> sub_cols;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) sub_cols.push_back(cols[j]);
        Poly minor = pm_det(m, sub_rows, sub_cols);
        Poly term = poly_mul(e, minor);
        acc = poly_add(acc, (k % 2 == 0) ? term : poly_neg(term));
    }
    return acc;
}

// all k x k minors of a matrix of forms
inline std::vector<Poly> minors(const PolyMatrix& m, int k) {
    std::vector<Poly> out;
    auto rsets = strandetail::subsets(m.rows, k);
    auto csets = strandetail::subsets(m.cols, k);
    for (const auto& rs : rsets)
        for (const auto& cs : csets) {
            Poly d = pm_det(m, rs, cs);
            if (!d.is_zero()) out.push_back(d);
        }
    return out;
}

inline Poly random_linear(const RingPtr& R, Rng& rng) {
    std::vector<Term> raw;
    for (int j = 0; j < R->nvars; ++j) {
        u64 c = rng.below(R->F->p());
        if (c) raw.push_back(Term{Monomial::var(R->nvars, j), Elem(c)});
    }
    return poly_from_terms(R, std::move(raw));
}

// dimension/degree + strand ranks + Hilbert numerator sanity for the degree-10
// genus-6 curve models
inline bool genus6_curve_checks(const RingPtr& R, const std::vector<Poly>& gens) {
    if (gens.size() != 10) return false;
    for (const Poly& g : gens)
        if (g.is_zero() || g.degree() != 3) return false;
    if (rank(coefficient_matrix(R, gens, 3)) != 10) return false;
    try {
        ResolutionSlice s = resolution_slice(R, gens);
        if (s.r1 != 10 || s.r2 != 15 || s.r3 != 6) return false;
    } catch (const Error&) {
        return false;
    }
    auto gb = buchberger(R, gens);
    auto dd = dimension_degree(gb);
    if (dd.first != 1 || dd.second != 10) return false;
    HilbertData h = hilbert(gb);
    return h.numerator == std::vector<i64>{1, 0, 0, -10, 15, -6};
}

} // namespace gallerydetail

// rational normal curve of degree 4: 2x2 minors of the Hankel matrix
inline GalleryIdeal rnc4(const FieldPtr& F) {
    RingPtr R = make_ring_xs(F, 5);
    PolyMatrix h(R, 2, 4, {0, 0}, {1, 1, 1, 1});
    for (int j = 0; j < 4; ++j) {
        h.set(0, j, poly_var(R, j));
        h.set(1, j, poly_var(R, j + 1));
    }
    return {R, gallerydetail::minors(h, 2), 0};
}

// del Pezzo surface of degree 6 in P^6: toric ideal of the seven cubic
// monomials x^2y, x^2z, xy^2, y^2z, xz^2, yz^2, xyz (P^2 blown up in the
// three coordinate points); its degree-2 part is 9 binomial quadrics
inline GalleryIdeal del_pezzo6(const FieldPtr& F) {
    RingPtr R = make_ring_xs(F, 7);
    const int expo[7][3] = {{2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {0, 2, 1}, {1, 0, 2}, {0, 1, 2}, {1, 1, 1}};
    std::map<std::array<int, 3>, std::vector<std::pair<int, int>>> by_product;
    for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j) {
            std::array<int, 3> prod{expo[i][0] + expo[j][0], expo[i][1] + expo[j][1],
                                    expo[i][2] + expo[j][2]};
            by_product[prod].push_back({i, j});
        }
    std::vector<Poly> gens;
    for (const auto& kv : by_product) {
        const auto& pairs = kv.second;
        for (std::size_t t = 1; t < pairs.size(); ++t) {
            Monomial a = Monomial::unit(7), b = Monomial::unit(7);
            a.e[pairs[0].first]++; a.e[pairs[0].second]++; a.deg = 2;
            b.e[pairs[t].first]++; b.e[pairs[t].second]++; b.deg = 2;
            gens.push_back(poly_from_terms(R, {Term{a, F->one()}, Term{b, F->neg(F->one())}}));
        }
    }
    check(rank(coefficient_matrix(R, gens, 2)) == 9, "del Pezzo sextic quadric count");
    // drop dependent binomials so the generators are minimal
    std::vector<Poly> min_gens;
    for (const Poly& g : gens) {
        std::vector<Poly> trial = min_gens;
        trial.push_back(g);
        if (rank(coefficient_matrix(R, trial, 2)) > static_cast<int>(min_gens.size()))
            min_gens.push_back(g);
    }
    return {R, min_gens, 0};
}

// 3x3 minors of a seeded random 3x5 matrix of linear forms on P^4
inline GalleryIdeal generic_det_quintic_curve(const FieldPtr& F, u64 seed, int max_retries = 20) {
    RingPtr R = make_ring_xs(F, 5);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng(child_seed(seed, "generic_det_quintic:" + std::to_string(attempt)));
        PolyMatrix m(R, 3, 5, {0, 0, 0}, {1, 1, 1, 1, 1});
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 5; ++j) m.set(i, j, gallerydetail::random_linear(R, rng));
        std::vector<Poly> gens = gallerydetail::minors(m, 3);
        if (gallerydetail::genus6_curve_checks(R, gens)) return {R, gens, attempt};
    }
    fail(Err::DegenerateDraw, "generic determinantal quintic: retries exhausted");
}

// rows a = (x0..x4) * S_a for seeded random symmetric 5x5 scalar matrices S_a
inline GalleryIdeal prym_symmetric_quintic_curve(const FieldPtr& F, u64 seed, int max_retries = 20) {
    RingPtr R = make_ring_xs(F, 5);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng(child_seed(seed, "prym_quintic:" + std::to_string(attempt)));
        PolyMatrix m(R, 3, 5, {0, 0, 0}, {1, 1, 1, 1, 1});
        for (int a = 0; a < 3; ++a) {
            Mat S(F, 5, 5);
            for (int i = 0; i < 5; ++i)
                for (int j = i; j < 5; ++j) {
                    Elem c(rng.below(F->p()));
                    S.at(i, j) = c;
                    S.at(j, i) = c;
                }
            for (int j = 0; j < 5; ++j) {
                std::vector<Term> raw;
                for (int i = 0; i < 5; ++i)
                    if (!F->is_zero(S.at(i, j))) raw.push_back(Term{Monomial::var(5, i), S.at(i, j)});
                m.set(a, j, poly_from_terms(R, std::move(raw)));
            }
        }
        std::vector<Poly> gens = gallerydetail::minors(m, 3);
        if (gallerydetail::genus6_curve_checks(R, gens)) return {R, gens, attempt};
    }
    fail(Err::DegenerateDraw, "prym symmetric quintic: retries exhausted");
}

// 3x3 minors of the generic 3x5 matrix in 15 variables: the secant variety
// of P^2 x P^4 in P^14
inline GalleryIdeal secant_p2xp4(const FieldPtr& F) {
    RingPtr R = make_ring_xs(F, 15);
    PolyMatrix m(R, 3, 5, {0, 0, 0}, {1, 1, 1, 1, 1});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 5; ++j) m.set(i, j, poly_var(R, i * 5 + j));
    return {R, gallerydetail::minors(m, 3), 0};
}

// General paracanonical genus-6 curve, built through the K^2 = -5 surface:
// P^2 blown up in 14 points embedded by sextics with 4 double and 10 simple
// base points, then a hyperplane section.
inline GalleryIdeal paracanonical_genus6_curve(const FieldPtr& F, u64 seed, int max_retries = 20) {
    const u64 p = F->p();
    RingPtr P2 = make_ring_xs(F, 3, "u");
    auto sextics = monomial_basis(P2, 6); // 28 monomials

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Rng rng(child_seed(seed, "paracanonical:" + std::to_string(attempt)));

        // (a) 14 random points of P^2
        std::vector<std::vector<Elem>> pts;
        for (int i = 0; i < 14; ++i)
            pts.push_back({Elem(rng.below(p)), Elem(rng.below(p)), F->one()});

        // (b) sextics double at the first 4 points, simple at the last 10:
        // 22 linear conditions on 28 coefficients
        Mat cond(F, 22, 28);
        int row = 0;
        for (int i = 0; i < 4; ++i) {
            for (int v = 0; v < 3; ++v) {
                for (int c = 0; c < 28; ++c) {
                    const Monomial& m = sextics[c];
                    if (m.e[v] == 0) continue;
                    // d/du_v evaluated at the point
                    Elem val = F->from_int(m.e[v]);
                    for (int w = 0; w < 3; ++w) {
                        int e = m.e[w] - (w == v ? 1 : 0);
                        for (int k = 0; k < e; ++k) val = F->mul(val, pts[i][w]);
                    }
                    cond.at(row, c) = val;
                }
                ++row;
            }
        }
        for (int i = 4; i < 14; ++i) {
            for (int c = 0; c < 28; ++c) {
                Elem val = F->one();
                for (int w = 0; w < 3; ++w)
                    for (int k = 0; k < sextics[c].e[w]; ++k) val = F->mul(val, pts[i][w]);
                cond.at(row, c) = val;
            }
            ++row;
        }
        Subspace sys = right_kernel(cond);
        if (sys.dim() != 6) continue;

        std::vector<Poly> phi; // the six sextics defining P^2 -> P^5
        for (int t = 0; t < 6; ++t) {
            std::vector<Term> raw;
            for (int c = 0; c < 28; ++c)
                if (!F->is_zero(sys.basis.at(t, c))) raw.push_back(Term{sextics[c], sys.basis.at(t, c)});
            phi.push_back(poly_from_terms(P2, std::move(raw)));
        }

        // (c)+(d) interpolate the degree-3 part of the surface ideal in P^5
        RingPtr P5 = make_ring_xs(F, 6);
        auto cubes = monomial_basis(P5, 3); // 56 monomials
        auto sample_rows = [&](int count, Mat& target, int row0) {
            for (int s = 0; s < count; ++s) {
                std::vector<Elem> q{Elem(rng.below(p)), Elem(rng.below(p)), F->one()};
                std::vector<Elem> img;
                for (int t = 0; t < 6; ++t) img.push_back(poly_eval(phi[t], q));
                for (int c = 0; c < 56; ++c) {
                    Elem val = F->one();
                    for (int w = 0; w < 6; ++w)
                        for (int k = 0; k < cubes[c].e[w]; ++k) val = F->mul(val, img[w]);
                    target.at(row0 + s, c) = val;
                }
            }
        };
        Mat interp(F, 130, 56);
        sample_rows(130, interp, 0);
        Subspace cubics = right_kernel(interp);
        if (cubics.dim() != 10) continue;
        // stability check on fresh samples
        Mat fresh(F, 40, 56);
        sample_rows(40, fresh, 0);
        bool stable = true;
        for (int t = 0; t < 10 && stable; ++t)
            for (int s = 0; s < 40 && stable; ++s) {
                Elem acc;
                for (int c = 0; c < 56; ++c)
                    acc = F->add(acc, F->mul(cubics.basis.at(t, c), fresh.at(s, c)));
                if (!F->is_zero(acc)) stable = false;
            }
        if (!stable)
            fail(Err::InterpolationUnstable,
                 "surface cubics do not vanish on fresh samples (seed "
                     + std::to_string(seed) + ")");

        // (e) hyperplane section x5 = 0
        RingPtr P4 = make_ring_xs(F, 5);
        std::vector<Poly> images;
        for (int i = 0; i < 5; ++i) images.push_back(poly_var(P4, i));
        images.push_back(Poly(P4));
        std::vector<Poly> gens;
        for (int t = 0; t < 10; ++t) {
            std::vector<Term> raw;
            for (int c = 0; c < 56; ++c)
                if (!F->is_zero(cubics.basis.at(t, c))) raw.push_back(Term{cubes[c], cubics.basis.at(t, c)});
            Poly cubic = poly_from_terms(P5, std::move(raw));
            Poly g = substitute_linear(cubic, images, P4);
            if (!g.is_zero()) gens.push_back(g);
        }
        if (gallerydetail::genus6_curve_checks(P4, gens)) return {P4, gens, attempt};
    }
    fail(Err::DegenerateDraw, "paracanonical genus-6 curve: retries exhausted");
}

inline GalleryIdeal construct_gallery(const std::string& name, const FieldPtr& F, u64 seed) {
    if (name == "rnc4") return rnc4(F);
    if (name == "del_pezzo6") return del_pezzo6(F);
    if (name == "generic_det_quintic") return generic_det_quintic_curve(F, seed);
    if (name == "prym_quintic") return prym_symmetric_quintic_curve(F, seed);
    if (name == "paracanonical_genus6") return paracanonical_genus6_curve(F, seed);
    if (name == "secant_p2xp4") return secant_p2xp4(F);
    fail(Err::ParseError, "unknown gallery tag: " + name);
}

} // namespace acmext
