#pragma once

#include "census.hpp"
#include "extend.hpp"

#include <optional>

namespace acmext {

// ---------------------------------------------------------------------------
// quadric rank and rank-<=2 factorization over quadratic towers
// ---------------------------------------------------------------------------

struct QuadricRank {
    int rank = 0;
    Mat gram;
};

inline QuadricRank quadric_rank(const Poly& q) {
    const RingPtr& R = q.R;
    const Field& F = *R->F;
    require(F.p() != 2, Err::CharTwo, "quadric Gram matrix needs characteristic != 2");
    require(q.is_zero() || q.degree() == 2, Err::DegreeMismatch, "quadric_rank needs a quadric");
    int n = R->nvars;
    Mat g(R->F, n, n);
    Elem half = Elem(F.inv_mod(2));
    for (const Term& tm : q.t) {
        int i = -1, j = -1;
        for (int v = 0; v < n; ++v) {
            if (tm.m.e[v] == 2) { i = j = v; break; }
            if (tm.m.e[v] == 1) (i < 0 ? i : j) = v;
        }
        if (i == j) {
            g.at(i, i) = tm.c;
        } else {
            Elem h = F.mul(tm.c, half);
            g.at(i, j) = h;
            g.at(j, i) = h;
        }
    }
    QuadricRank out;
    out.rank = rank(g);
    out.gram = std::move(g);
    return out;
}

struct Rank2Factors {
    RingPtr R;   // ring over the (possibly extended) field
    Poly l1, l2; // q = l1 * l2, l1 monic, l1 <= l2 lexicographically
    int level = 0;
};

namespace compdetail {

inline Poly lift_poly(const Poly& p, const RingPtr& target) {
    Poly r = p;
    r.R = target;
    return r;
}

inline std::vector<Poly> lift_polys(const std::vector<Poly>& ps, const RingPtr& target) {
    std::vector<Poly> out;
    out.reserve(ps.size());
    for (const Poly& p : ps) out.push_back(lift_poly(p, target));
    return out;
}

inline Poly linear_from_coeffs(const RingPtr& R, const std::vector<Elem>& c) {
    std::vector<Term> raw;
    for (int i = 0; i < R->nvars; ++i)
        if (!R->F->is_zero(c[i])) raw.push_back(Term{Monomial::var(R->nvars, i), c[i]});
    return poly_from_terms(R, std::move(raw));
}

inline std::vector<Elem> coeffs_of_linear(const Poly& l) {
    std::vector<Elem> c(l.R->nvars);
    for (const Term& tm : l.t)
        for (int v = 0; v < l.R->nvars; ++v)
            if (tm.m.e[v] == 1) c[v] = tm.c;
    return c;
}

inline bool linear_lex_less(const Poly& a, const Poly& b) {
    auto ca = coeffs_of_linear(a), cb = coeffs_of_linear(b);
    for (std::size_t i = 0; i < ca.size(); ++i) {
        if (ca[i] != cb[i]) return Field::lex_less(ca[i], cb[i]);
    }
    return false;
}

} // namespace compdetail

// Factor a quadric of Gram rank <= 2 into two linear forms, extending the
// field by at most one quadratic step.
inline Rank2Factors factor_rank2(const Poly& q, int tower_cap = 6) {
    const RingPtr& R = q.R;
    const FieldPtr& K = R->F;
    const Field& F = *K;
    require(!q.is_zero(), Err::RankTooHigh, "factor_rank2 on the zero quadric");
    QuadricRank qr = quadric_rank(q);
    require(qr.rank <= 2, Err::RankTooHigh, "quadric has Gram rank > 2");
    int n = R->nvars;

    // hyperbolic case with zero diagonal: shift one variable to create a square
    int zi = -1, zj = -1;
    bool has_diag = false;
    for (int i = 0; i < n; ++i)
        if (!F.is_zero(qr.gram.at(i, i))) { has_diag = true; break; }
    if (!has_diag) {
        for (int i = 0; i < n && zi < 0; ++i)
            for (int j = i + 1; j < n && zi < 0; ++j)
                if (!F.is_zero(qr.gram.at(i, j))) { zi = i; zj = j; }
        check(zi >= 0, "nonzero quadric with zero Gram matrix");
        std::vector<Poly> fwd, bwd;
        for (int v = 0; v < n; ++v) {
            fwd.push_back(poly_var(R, v));
            bwd.push_back(poly_var(R, v));
        }
        fwd[zi] = poly_add(poly_var(R, zi), poly_var(R, zj));
        bwd[zi] = poly_sub(poly_var(R, zi), poly_var(R, zj));
        Rank2Factors f = factor_rank2(substitute_linear(q, fwd, R), tower_cap);
        Poly l1 = substitute_linear(f.l1, compdetail::lift_polys(bwd, f.R), f.R);
        Poly l2 = substitute_linear(f.l2, compdetail::lift_polys(bwd, f.R), f.R);
        Elem lc = l1.lead().c;
        l1 = poly_monic(l1);
        l2 = poly_scale(l2, lc);
        if (compdetail::linear_lex_less(poly_monic(l2), l1)) {
            Poly t = poly_monic(l2);
            Poly s2 = poly_scale(l1, l2.lead().c);
            l1 = t;
            l2 = s2;
        }
        return {f.R, l1, l2, f.level};
    }

    int i0 = -1;
    for (int i = 0; i < n; ++i)
        if (!F.is_zero(qr.gram.at(i, i))) { i0 = i; break; }
    Elem a = qr.gram.at(i0, i0);
    std::vector<Elem> lc(n);
    for (int j = 0; j < n; ++j) lc[j] = qr.gram.at(i0, j);
    Poly l = compdetail::linear_from_coeffs(R, lc); // = a*y_i0 + ...
    // q - l^2/a has rank <= 1
    Poly rem = poly_sub(q, poly_scale(poly_mul(l, l), F.inv(a)));

    if (rem.is_zero()) {
        // q = (1/a) l^2
        Poly l1 = poly_monic(l);
        Poly l2 = poly_scale(l1, q.lead().c); // l1 monic, restore scale
        // q = l1 * l2 requires lead(q) = lead(l1*l2): fix scale via comparison
        Poly prod = poly_mul(l1, l2);
        check(!prod.is_zero(), "rank-1 factor degenerated");
        Elem fix = F.div(q.lead().c, prod.lead().c);
        l2 = poly_scale(l2, fix);
        check(poly_equal(poly_mul(l1, l2), q), "rank-1 factorization failed");
        return {R, l1, l2, K->height()};
    }

    QuadricRank rr = quadric_rank(rem);
    check(rr.rank == 1, "rank reduction step failed");
    int i1 = -1;
    for (int i = 0; i < n; ++i)
        if (!F.is_zero(rr.gram.at(i, i))) { i1 = i; break; }
    check(i1 >= 0, "rank-1 remainder without diagonal");
    Elem c1 = rr.gram.at(i1, i1);
    std::vector<Elem> l2c(n);
    for (int j = 0; j < n; ++j) l2c[j] = F.div(rr.gram.at(i1, j), c1);
    Poly lp = compdetail::linear_from_coeffs(R, l2c); // monic-ish: rem = c1 * lp^2
    // q = (1/a) l^2 + c1 lp^2 = (1/a) (l - s lp)(l + s lp) with s^2 = -a*c1
    Elem disc = F.neg(F.mul(a, c1));

    RingPtr Rx = R;
    FieldPtr Kx = K;
    if (!F.is_square(disc)) {
        require(K->height() < tower_cap, Err::ExtensionTooDeep,
                "factor needs a field level beyond the tower cap");
        Kx = extend_quadratic(K);
        Rx = make_ring(Kx, R->names);
    }
    Elem s = Kx->sqrt(Kx->embed(disc, Kx->height()));
    Poly lx = compdetail::lift_poly(l, Rx);
    Poly lpx = compdetail::lift_poly(lp, Rx);
    Poly f1 = poly_sub(lx, poly_scale(lpx, s));
    Poly f2 = poly_add(lx, poly_scale(lpx, s));
    // q = (1/a) f1 f2; normalize scales below
    Poly l1 = poly_monic(f1);
    Poly l2 = f2;
    Poly prod = poly_mul(l1, l2);
    Elem fix = Kx->div(compdetail::lift_poly(q, Rx).lead().c, prod.lead().c);
    l2 = poly_scale(l2, fix);
    check(poly_equal(poly_mul(l1, l2), compdetail::lift_poly(q, Rx)), "rank-2 factorization failed");
    if (compdetail::linear_lex_less(poly_monic(l2), l1)) {
        Poly t1 = poly_monic(l2);
        Poly t2 = poly_scale(l1, l2.lead().c);
        l1 = t1;
        l2 = t2;
    }
    return {Rx, l1, l2, Kx->height()};
}

// ---------------------------------------------------------------------------
// splitting V(eq) into maximal linear components
// ---------------------------------------------------------------------------

struct LinearComponent {
    RingPtr R;   // y-ring over the component's field
    int level = 0;
    Mat forms;   // RREF rows over that field, ambient m+1
    int dim = 0; // projective dimension
    bool contains_trivial = false;
    int conj_class = 0;
};

struct ResidualCluster {
    RingPtr R;
    int level = 0;
    std::vector<Poly> gens;
    int dim = 0;
    i64 geometric_degree = 0;
    i64 hilbert_degree = 0;
    bool contains_trivial = false;
    bool linear_union_certified = false;
    std::string reason;
};

struct SplitConfig {
    int budget = 200;   // random-combination search budget
    int tower_cap = 5;  // maximum quadratic tower height
    u64 seed = 1;
};

struct SplitResult {
    std::vector<LinearComponent> components;
    std::vector<ResidualCluster> clusters;
    std::map<int, i64> census_by_dim; // geometric component counts
    int nodes_visited = 0;
};

inline SplitResult split_linear_components(const RingPtr& Y, const std::vector<Poly>& eq,
                                           int trivial_dim, const SplitConfig& cfg);

namespace compdetail {

// substitution images induced by an RREF matrix of linear forms: pivot
// variables rewritten into free variables
inline std::vector<Poly> images_of_forms(const RingPtr& R, const Mat& forms) {
    const Field& F = *R->F;
    int n = R->nvars;
    std::vector<Poly> images;
    std::vector<int> pivot_row(n, -1);
    for (int r = 0; r < forms.rows; ++r)
        for (int c = 0; c < n; ++c)
            if (!F.is_zero(forms.at(r, c))) { pivot_row[c] = r; break; }
    // pivot of row r is its first nonzero column
    std::vector<int> row_pivot(forms.rows, -1);
    for (int r = 0; r < forms.rows; ++r)
        for (int c = 0; c < n; ++c)
            if (!F.is_zero(forms.at(r, c))) { row_pivot[r] = c; break; }
    std::vector<bool> is_pivot(n, false);
    for (int r = 0; r < forms.rows; ++r) is_pivot[row_pivot[r]] = true;
    for (int v = 0; v < n; ++v) {
        if (!is_pivot[v]) {
            images.push_back(poly_var(R, v));
            continue;
        }
        int r = -1;
        for (int rr = 0; rr < forms.rows; ++rr)
            if (row_pivot[rr] == v) { r = rr; break; }
        std::vector<Term> raw;
        for (int c = v + 1; c < n; ++c) {
            if (is_pivot[c]) continue;
            const Elem& coef = forms.at(r, c);
            if (!F.is_zero(coef)) raw.push_back(Term{Monomial::var(n, c), F.neg(coef)});
        }
        images.push_back(poly_from_terms(R, std::move(raw)));
    }
    return images;
}

inline std::vector<Poly> reduce_mod_forms(const RingPtr& R, const std::vector<Poly>& quads,
                                          const Mat& forms) {
    auto images = images_of_forms(R, forms);
    std::vector<Poly> out;
    for (const Poly& q : quads) {
        Poly r = substitute_linear(q, images, R);
        if (!r.is_zero()) out.push_back(poly_monic(r));
    }
    std::sort(out.begin(), out.end(),
              [](const Poly& a, const Poly& b) { return canonical_poly_cmp(a, b) < 0; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const Poly& a, const Poly& b) { return poly_equal(a, b); }),
              out.end());
    return out;
}

inline Mat lift_mat(const Mat& m, const FieldPtr& K) {
    Mat r = m;
    r.F = K;
    return r;
}

// append a linear form to an RREF matrix, re-reducing
inline Mat forms_with(const RingPtr& R, const Mat& forms, const Poly& l) {
    Mat add(R->F, forms.rows + 1, forms.cols);
    for (int r = 0; r < forms.rows; ++r)
        for (int c = 0; c < forms.cols; ++c) add.at(r, c) = forms.at(r, c);
    auto lc = coeffs_of_linear(l);
    for (int c = 0; c < forms.cols; ++c) add.at(forms.rows, c) = lc[c];
    return subspace_from_rows(add).basis;
}

} // namespace compdetail

// V(I) = V(I : f^inf) union V(I + (f)); returns both branches
inline std::pair<GroebnerBasis, GroebnerBasis> zero_divisor_split(const GroebnerBasis& I,
                                                                  const Poly& f) {
    GroebnerBasis sat = saturate(I, f);
    std::vector<Poly> with = I.g;
    with.push_back(f);
    return {sat, buchberger(I.R, with)};
}

namespace compdetail {

struct SplitCtx {
    const std::vector<Poly>* eq0; // original quadrics over the base ring
    RingPtr Y0;
    int trivial_dim; // n+1
    SplitConfig cfg;
    SplitResult* out;
    Rng* rng;
};

inline void emit_component(SplitCtx& ctx, const RingPtr& R, const Mat& forms) {
    LinearComponent c;
    c.R = R;
    c.level = R->F->height();
    c.forms = forms;
    c.dim = R->nvars - 1 - forms.rows;
    ctx.out->components.push_back(std::move(c));
}

inline void emit_cluster(SplitCtx& ctx, const RingPtr& R, const Mat& forms,
                         const std::vector<Poly>& gens, const std::string& reason) {
    ResidualCluster cl;
    cl.R = R;
    cl.level = R->F->height();
    cl.reason = reason;
    for (int r = 0; r < forms.rows; ++r) {
        std::vector<Elem> row(forms.cols);
        for (int c = 0; c < forms.cols; ++c) row[c] = forms.at(r, c);
        cl.gens.push_back(linear_from_coeffs(R, row));
    }
    for (const Poly& q : gens) cl.gens.push_back(q);
    auto gb = buchberger(R, cl.gens);
    auto dd = dimension_degree(gb);
    cl.dim = dd.first;
    cl.hilbert_degree = dd.second;
    cl.geometric_degree = dd.second; // refined by the caller via point counts
    ctx.out->clusters.push_back(std::move(cl));
}

inline std::optional<Poly> find_rank2_element(SplitCtx& ctx, const RingPtr& R,
                                              const std::vector<Poly>& quads) {
    for (const Poly& q : quads) {
        if (quadric_rank(q).rank <= 2) return q;
    }
    const Field& F = *R->F;
    int k = static_cast<int>(quads.size());
    if (k >= 2) {
        for (int trial = 0; trial < ctx.cfg.budget; ++trial) {
            Poly q(R);
            for (int i = 0; i < k; ++i) {
                u64 c = ctx.rng->below(F.p());
                if (c) q = poly_add(q, poly_scale(quads[i], Elem(c)));
            }
            if (q.is_zero()) continue;
            if (quadric_rank(q).rank <= 2) return poly_monic(q);
        }
    }
    return std::nullopt;
}

inline void split_rec(SplitCtx& ctx, RingPtr R, Mat forms, std::vector<Poly> extra,
                      bool allow_cone);

// When every component of the node's variety is expected to pass through the
// trivial subspace, the variety is a cone over its restriction to the
// complementary coordinate subspace. Splitting the restriction happens in
// trivial_dim fewer variables; the joins are certified exactly and the node
// ideal is peeled down to the unit ideal as a completeness proof. Returns
// false (emitting nothing) when any certificate fails.
struct ConeAttempt {
    std::vector<LinearComponent> comps;
    std::vector<ResidualCluster> clusters;
    bool ok = false;
};

inline ConeAttempt cone_split(SplitCtx& ctx, const RingPtr& R, const Mat& forms,
                              const std::vector<Poly>& gens) {
    ConeAttempt out;
    const Field& F = *R->F;
    int n = R->nvars;
    int t = ctx.trivial_dim;

    // restriction to {y_0 = .. = y_{t-1} = 0}
    std::vector<std::string> names(ctx.Y0->names.begin() + t, ctx.Y0->names.end());
    RingPtr Q = make_ring(R->F, names);
    std::vector<Poly> images;
    for (int i = 0; i < t; ++i) images.push_back(Poly(Q));
    for (int i = t; i < n; ++i) images.push_back(poly_var(Q, i - t));
    std::vector<Poly> bar;
    for (int r = 0; r < forms.rows; ++r) {
        std::vector<Elem> row(forms.cols);
        for (int c = 0; c < forms.cols; ++c) row[c] = forms.at(r, c);
        bar.push_back(substitute_linear(linear_from_coeffs(R, row), images, Q));
    }
    for (const Poly& g : gens) {
        Poly b = substitute_linear(g, images, Q);
        if (!b.is_zero()) bar.push_back(b);
    }

    SplitConfig sub_cfg = ctx.cfg;
    sub_cfg.seed = child_seed(ctx.cfg.seed, "cone");
    SplitResult sub = split_linear_components(Q, bar, 0, sub_cfg);

    // join candidates back and certify them against the node ideal
    std::vector<Poly> node_gens = lift_polys(*ctx.eq0, R);
    for (const Poly& g : gens) node_gens.push_back(g);
    for (const LinearComponent& c : sub.components) {
        RingPtr Rc = make_ring(c.R->F, ctx.Y0->names);
        Mat big(c.R->F, c.forms.rows, n);
        for (int r = 0; r < c.forms.rows; ++r)
            for (int col = 0; col < c.forms.cols; ++col) big.at(r, t + col) = c.forms.at(r, col);
        auto red = reduce_mod_forms(Rc, lift_polys(node_gens, Rc), big);
        if (!red.empty()) continue; // junk from a non-cone part; peel will notice
        LinearComponent cc;
        cc.R = Rc;
        cc.level = c.level;
        cc.forms = big;
        cc.dim = n - 1 - big.rows;
        cc.conj_class = c.conj_class;
        out.comps.push_back(std::move(cc));
    }
    for (const ResidualCluster& cl : sub.clusters) {
        if (cl.level != 0) return out; // norms for removal not implemented off the base field
        RingPtr Rc = make_ring(cl.R->F, ctx.Y0->names);
        ResidualCluster big = cl;
        big.R = Rc;
        std::vector<Poly> lifted;
        std::vector<Poly> up;
        for (int i = 0; i < Q->nvars; ++i) up.push_back(poly_var(Rc, t + i));
        for (const Poly& g : cl.gens) lifted.push_back(substitute_linear(g, up, Rc));
        big.gens = std::move(lifted);
        {
            auto gb = buchberger(Rc, big.gens);
            auto dd = dimension_degree(gb);
            big.dim = dd.first;
            big.hilbert_degree = dd.second;
            // membership certificate: the node ideal vanishes on the join
            for (const Poly& g : node_gens)
                if (!in_ideal(g, gb)) return out;
        }
        out.clusters.push_back(std::move(big));
    }

    // completeness: peel the node ideal by the candidates, stratum by stratum
    std::vector<Poly> jgens = node_gens;
    for (int r = 0; r < forms.rows; ++r) {
        std::vector<Elem> row(forms.cols);
        for (int c = 0; c < forms.cols; ++c) row[c] = forms.at(r, c);
        jgens.push_back(linear_from_coeffs(R, row));
    }
    GroebnerBasis W = buchberger(R, jgens);
    std::vector<bool> used_comp(out.comps.size(), false), used_cl(out.clusters.size(), false);
    Rng rng(child_seed(ctx.cfg.seed, "cone-peel"));
    for (int guard = 0; guard <= n + 1; ++guard) {
        if (W.is_unit()) {
            out.ok = true;
            return out;
        }
        int d = dimension_degree(W).first;
        if (d < 0) {
            out.ok = true;
            return out;
        }
        bool any = false;
        // remove whole conjugacy classes at once through rational norms
        std::map<int, std::vector<const LinearComponent*>> classes;
        for (std::size_t i = 0; i < out.comps.size(); ++i)
            if (!used_comp[i] && out.comps[i].dim == d) classes[out.comps[i].conj_class].push_back(&out.comps[i]);
        for (auto& kv : classes) {
            const auto& orbit = kv.second;
            bool removed = false;
            for (int attempt = 0; attempt < 3 && !removed; ++attempt) {
                // random form on the first member, conjugated around the orbit
                const LinearComponent& c0 = *orbit.front();
                const FieldPtr& K = c0.R->F;
                std::vector<Elem> combo(n);
                for (int col = 0; col < n; ++col) {
                    Elem acc;
                    for (int r = 0; r < c0.forms.rows; ++r)
                        acc = K->add(acc, K->mul(Elem(rng.below(F.p())), c0.forms.at(r, col)));
                    combo[col] = acc;
                }
                RingPtr RK = make_ring(K, ctx.Y0->names);
                Poly ell = compdetail::linear_from_coeffs(RK, combo);
                if (ell.is_zero()) continue;
                Poly g = ell;
                for (std::size_t i = 1; i < orbit.size(); ++i) {
                    Poly prev = g;
                    // conjugate the form, multiply the norm up
                    std::vector<Elem> cc(n);
                    for (int col = 0; col < n; ++col) cc[col] = K->frobenius(coeffs_of_linear(ell)[col]);
                    ell = compdetail::linear_from_coeffs(RK, cc);
                    g = poly_mul(prev, ell);
                }
                // the norm must be rational
                bool rational = true;
                for (const Term& tm : g.t)
                    if (K->level(K->drop_level(tm.c)) != 0) { rational = false; break; }
                if (!rational) continue;
                Poly grat = g;
                grat.R = R;
                GroebnerBasis nxt = saturate(W, grat);
                if (nxt.is_unit() || dimension_degree(nxt).first <= d) {
                    W = std::move(nxt);
                    removed = true;
                }
            }
            if (!removed) return out;
            for (std::size_t i = 0; i < out.comps.size(); ++i)
                if (!used_comp[i] && out.comps[i].dim == d && out.comps[i].conj_class == kv.first)
                    used_comp[i] = true;
            any = true;
        }
        for (std::size_t i = 0; i < out.clusters.size(); ++i) {
            if (used_cl[i] || out.clusters[i].dim != d) continue;
            bool removed = false;
            for (int attempt = 0; attempt < 3 && !removed; ++attempt) {
                int D = 0;
                for (const Poly& t2 : out.clusters[i].gens) D = std::max(D, t2.degree());
                Poly g(R);
                for (const Poly& t2 : out.clusters[i].gens) {
                    Poly scaled = compdetail::lift_poly(t2, R);
                    for (int k = t2.degree(); k < D; ++k)
                        scaled = poly_mul(scaled, unidetail::random_linear_full(R, rng));
                    u64 c = rng.below(F.p() - 1) + 1;
                    g = poly_add(g, poly_scale(scaled, Elem(c)));
                }
                if (g.is_zero()) continue;
                GroebnerBasis nxt = saturate(W, g);
                if (nxt.is_unit() || dimension_degree(nxt).first <= d) {
                    W = std::move(nxt);
                    removed = true;
                }
            }
            if (!removed) return out;
            used_cl[i] = true;
            any = true;
        }
        if (!any) return out; // leftover stratum no candidate explains
        if (!W.is_unit() && dimension_degree(W).first >= d) {
            // strata left at the same dimension would loop forever
            return out;
        }
    }
    return out;
}

// One node of the branch-and-reduce tree. `extra` carries generators beyond
// the original quadrics that appear after stratum-peeling saturations.
inline void split_rec(SplitCtx& ctx, RingPtr R, Mat forms, std::vector<Poly> extra,
                      bool allow_cone) {
    ++ctx.out->nodes_visited;
    for (;;) {
        std::vector<Poly> gens = lift_polys(*ctx.eq0, R);
        for (const Poly& g : extra) gens.push_back(g);
        gens = reduce_mod_forms(R, gens, lift_mat(forms, R->F));

        // absorb linear generators into the partial subspace
        bool absorbed = false;
        for (const Poly& g : gens)
            if (g.degree() == 1) {
                forms = forms_with(R, forms, g);
                absorbed = true;
                break;
            }
        if (absorbed) continue;

        if (gens.empty()) {
            emit_component(ctx, R, forms);
            return;
        }

        std::vector<Poly> quads;
        for (const Poly& g : gens)
            if (g.degree() == 2) quads.push_back(g);
        std::optional<Poly> q;
        if (!quads.empty()) q = find_rank2_element(ctx, R, quads);
        if (q) {
            Rank2Factors f;
            try {
                f = factor_rank2(*q, ctx.cfg.tower_cap);
            } catch (const Error& e) {
                if (e.code() == Err::ExtensionTooDeep) {
                    emit_cluster(ctx, R, forms, gens, "field tower cap reached");
                    return;
                }
                throw;
            }
            Mat lifted = lift_mat(forms, f.R->F);
            auto extra_l = lift_polys(extra, f.R);
            split_rec(ctx, f.R, forms_with(f.R, lifted, f.l1), extra_l, allow_cone);
            if (!poly_equal(poly_monic(f.l2), f.l1))
                split_rec(ctx, f.R, forms_with(f.R, lifted, poly_monic(f.l2)), extra_l, allow_cone);
            return;
        }

        // no splittable quadric: when the node still passes through the
        // trivial subspace, split the cone restriction in fewer variables
        bool cone_ok = allow_cone && ctx.trivial_dim > 0 && ctx.trivial_dim < R->nvars;
        for (int r = 0; r < forms.rows && cone_ok; ++r)
            for (int c = 0; c < ctx.trivial_dim && cone_ok; ++c)
                if (!R->F->is_zero(forms.at(r, c))) cone_ok = false;
        if (cone_ok) {
            ConeAttempt ca = cone_split(ctx, R, forms, gens);
            if (ca.ok) {
                for (auto& c : ca.comps) ctx.out->components.push_back(std::move(c));
                for (auto& cl : ca.clusters) ctx.out->clusters.push_back(std::move(cl));
                return;
            }
        }

        // otherwise peel the top equidimensional stratum, the zero-divisor
        // split with f a generic element of the top part
        std::vector<Poly> jgens;
        for (int r = 0; r < forms.rows; ++r) {
            std::vector<Elem> row(forms.cols);
            for (int c = 0; c < forms.cols; ++c) row[c] = forms.at(r, c);
            jgens.push_back(linear_from_coeffs(R, row));
        }
        for (const Poly& g : gens) jgens.push_back(g);
        GroebnerBasis J = buchberger(R, jgens);
        auto dd = dimension_degree(J);
        std::vector<Poly> T = equidim_top(J, child_seed(ctx.cfg.seed, "peel"));
        GroebnerBasis TG = buchberger(R, T);
        // saturate the top stratum away; an empty remainder means the whole
        // node is its own top stratum, i.e. a residual cluster
        bool removed = false;
        for (int attempt = 0; attempt < 3 && !removed; ++attempt) {
            Rng rng(child_seed(ctx.cfg.seed, "peel-rm" + std::to_string(attempt)));
            int D = 0;
            for (const Poly& t : TG.g) D = std::max(D, t.degree());
            Poly g(R);
            for (const Poly& t : TG.g) {
                Poly scaled = t;
                for (int k = t.degree(); k < D; ++k)
                    scaled = poly_mul(scaled, unidetail::random_linear_full(R, rng));
                u64 c = rng.below(R->F->p() - 1) + 1;
                g = poly_add(g, poly_scale(scaled, Elem(c)));
            }
            if (g.is_zero()) continue;
            GroebnerBasis rest = saturate(J, g);
            if (rest.is_unit()) {
                // nothing outside the top stratum: the node is one cluster
                emit_cluster(ctx, R, Mat(R->F, 0, R->nvars), TG.g,
                             "no splittable quadric within budget");
                return;
            }
            if (dimension_degree(rest).first < dd.first) {
                split_rec(ctx, R, Mat(R->F, 0, R->nvars), TG.g, allow_cone);
                split_rec(ctx, R, Mat(R->F, 0, R->nvars), rest.g, allow_cone);
                removed = true;
            }
        }
        if (removed) return;
        fail(Err::NotFiniteUnion, "could not peel the top stratum off the obstruction locus");
    }
}

inline Mat frobenius_mat(const Mat& m) {
    Mat r = m;
    for (Elem& e : r.a) e = m.F->frobenius(e);
    return r;
}

inline int min_level_of(const Mat& m) {
    std::size_t need = 1;
    for (const Elem& e : m.a) {
        Elem d = m.F->drop_level(e);
        if (d.len() > need) need = d.len();
    }
    return Field::level_of_len(need);
}

inline bool mats_equal_padded(const Mat& a, const Mat& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t i = 0; i < a.a.size(); ++i)
        if (!(a.a[i] == b.a[i])) return false;
    return true;
}

} // namespace compdetail

// Recursive branch-and-reduce splitter. eq are quadrics in the parameter ring;
// trivial_dim = n+1 marks the adapted trivial coordinates y_0..y_n.
inline SplitResult split_linear_components(const RingPtr& Y, const std::vector<Poly>& eq,
                                           int trivial_dim, const SplitConfig& cfg = {}) {
    SplitResult out;
    Rng rng(child_seed(cfg.seed, "split"));
    compdetail::SplitCtx ctx{&eq, Y, trivial_dim, cfg, &out, &rng};
    Mat none(Y->F, 0, Y->nvars);
    compdetail::split_rec(ctx, Y, none, {}, true);

    // canonical field level per component
    for (LinearComponent& c : out.components) {
        int lvl = compdetail::min_level_of(c.forms);
        if (lvl < c.level) {
            FieldPtr K = lvl == 0 ? make_prime_field(Y->F->p()) : extend_to(make_prime_field(Y->F->p()), lvl);
            // tower prefixes agree by construction (deterministic non-residues)
            c.R = make_ring(K, Y->names);
            c.forms.F = K;
            c.level = lvl;
        }
    }

    // dedupe
    {
        std::vector<LinearComponent> uniq;
        for (auto& c : out.components) {
            bool seen = false;
            for (auto& u : uniq)
                if (compdetail::mats_equal_padded(c.forms, u.forms)) { seen = true; break; }
            if (!seen) uniq.push_back(std::move(c));
        }
        out.components = std::move(uniq);
    }

    // close components under Frobenius (conjugates of components are components)
    {
        std::size_t i = 0;
        while (i < out.components.size()) {
            const LinearComponent c = out.components[i];
            if (c.level > 0) {
                Mat fr = compdetail::frobenius_mat(c.forms);
                bool seen = false;
                for (auto& u : out.components)
                    if (compdetail::mats_equal_padded(fr, u.forms)) { seen = true; break; }
                if (!seen) {
                    LinearComponent cc = c;
                    cc.forms = fr;
                    out.components.push_back(std::move(cc));
                }
            }
            ++i;
        }
    }

    // maximality: drop components strictly contained in others or in clusters
    {
        FieldPtr deep = Y->F;
        for (const auto& c : out.components)
            if (c.level > deep->height()) deep = c.R->F;
        for (const auto& c : out.clusters)
            if (c.level > deep->height()) deep = c.R->F;
        auto as_subspace = [&](const Mat& forms) {
            return subspace_from_rows(compdetail::lift_mat(forms, deep));
        };
        std::vector<bool> drop(out.components.size(), false);
        for (std::size_t i = 0; i < out.components.size(); ++i) {
            Subspace fi = as_subspace(out.components[i].forms);
            for (std::size_t j = 0; j < out.components.size() && !drop[i]; ++j) {
                if (i == j || drop[j]) continue;
                if (out.components[j].forms.rows >= out.components[i].forms.rows) continue;
                // V(i) inside V(j) iff span(forms_j) inside span(forms_i)
                Subspace fj = as_subspace(out.components[j].forms);
                if (subspace_contains(fi, fj)) drop[i] = true;
            }
            // inside a higher-dimensional cluster's variety?
            for (std::size_t j = 0; j < out.clusters.size() && !drop[i]; ++j) {
                const ResidualCluster& cl = out.clusters[j];
                if (cl.dim <= out.components[i].dim) continue;
                RingPtr Rd = make_ring(deep, Y->names);
                auto gens = compdetail::lift_polys(cl.gens, Rd);
                Mat lf = compdetail::lift_mat(out.components[i].forms, deep);
                auto red = compdetail::reduce_mod_forms(Rd, gens, lf);
                if (red.empty()) drop[i] = true;
            }
        }
        std::vector<LinearComponent> kept;
        for (std::size_t i = 0; i < out.components.size(); ++i)
            if (!drop[i]) kept.push_back(std::move(out.components[i]));
        out.components = std::move(kept);
    }

    // soundness + trivial flags
    for (LinearComponent& c : out.components) {
        RingPtr Rc = c.R;
        auto red = compdetail::reduce_mod_forms(Rc, compdetail::lift_polys(eq, Rc),
                                                compdetail::lift_mat(c.forms, Rc->F));
        check(red.empty(), "unsound component emitted by the splitter");
        c.contains_trivial = true;
        for (int r = 0; r < c.forms.rows && c.contains_trivial; ++r)
            for (int col = 0; col < trivial_dim; ++col)
                if (!Rc->F->is_zero(c.forms.at(r, col))) { c.contains_trivial = false; break; }
    }
    for (ResidualCluster& cl : out.clusters) {
        std::vector<Poly> to_trivial;
        for (int t = 0; t < cl.R->nvars; ++t)
            to_trivial.push_back(t < trivial_dim ? poly_var(cl.R, t) : Poly(cl.R));
        cl.contains_trivial = true;
        for (const Poly& g : cl.gens)
            if (!substitute_linear(g, to_trivial, cl.R).is_zero()) {
                cl.contains_trivial = false;
                break;
            }
    }

    // deterministic order + conjugacy classes by Frobenius orbit
    std::sort(out.components.begin(), out.components.end(),
              [](const LinearComponent& a, const LinearComponent& b) {
                  if (a.dim != b.dim) return a.dim > b.dim;
                  if (a.level != b.level) return a.level < b.level;
                  if (a.forms.rows != b.forms.rows) return a.forms.rows < b.forms.rows;
                  for (std::size_t i = 0; i < a.forms.a.size(); ++i) {
                      if (!(a.forms.a[i] == b.forms.a[i]))
                          return Field::lex_less(a.forms.a[i], b.forms.a[i]);
                  }
                  return false;
              });
    {
        int next_class = 0;
        std::vector<int> cls(out.components.size(), -1);
        for (std::size_t i = 0; i < out.components.size(); ++i) {
            if (cls[i] >= 0) continue;
            cls[i] = next_class;
            Mat fr = compdetail::frobenius_mat(out.components[i].forms);
            for (int guard = 0; guard < 64; ++guard) {
                bool moved = false;
                for (std::size_t j = 0; j < out.components.size(); ++j)
                    if (cls[j] < 0 && compdetail::mats_equal_padded(fr, out.components[j].forms)) {
                        cls[j] = next_class;
                        fr = compdetail::frobenius_mat(out.components[j].forms);
                        moved = true;
                        break;
                    }
                if (!moved) break;
            }
            ++next_class;
        }
        for (std::size_t i = 0; i < out.components.size(); ++i)
            out.components[i].conj_class = cls[i];
    }

    // geometric census: split components count one each, clusters add their
    // geometric degree (= number of conjugate linear spaces)
    for (ResidualCluster& cl : out.clusters) {
        auto gb = buchberger(cl.R, cl.gens);
        if (cl.dim >= 0) {
            i64 pts = 0;
            {
                // slice to dimension zero and count geometric points
                GroebnerBasis J = gb;
                if (cl.dim > 0) {
                    Rng srng(child_seed(cfg.seed, "cluster-slice"));
                    RingPtr small;
                    auto sliced = slice_last_vars(cl.R, cl.gens, cl.dim,
                                                  srng.next(), &small);
                    J = buchberger(small, sliced);
                }
                pts = zero_dim_point_count(J, child_seed(cfg.seed, "cluster-count"));
            }
            cl.geometric_degree = pts;
            cl.linear_union_certified = (pts == cl.hilbert_degree);
        }
    }
    for (const LinearComponent& c : out.components) out.census_by_dim[c.dim] += 1;
    for (const ResidualCluster& cl : out.clusters) out.census_by_dim[cl.dim] += cl.geometric_degree;
    return out;
}

inline SplitResult split_linear_components(const ObstructionIdeal& o, const SplitConfig& cfg = {}) {
    return split_linear_components(o.Y, o.eq, o.sol.n + 1, cfg);
}

} // namespace acmext
