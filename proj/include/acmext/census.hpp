#pragma once

#include "strand.hpp"

namespace acmext {

// ---------------------------------------------------------------------------
// dense univariate polynomials over a Field (tower levels allowed): just
// enough for squarefree root counting of eliminants
// ---------------------------------------------------------------------------

struct UniPoly {
    FieldPtr F;
    std::vector<Elem> c; // ascending, no trailing zeros

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    void trim() {
        while (!c.empty() && F->is_zero(c.back())) c.pop_back();
    }
};

namespace unidetail {

inline UniPoly monic(UniPoly f) {
    if (f.is_zero()) return f;
    Elem ic = f.F->inv(f.c.back());
    for (Elem& x : f.c) x = f.F->mul(x, ic);
    return f;
}

inline UniPoly derivative(const UniPoly& f) {
    UniPoly d{f.F, {}};
    for (std::size_t i = 1; i < f.c.size(); ++i)
        d.c.push_back(f.F->mul(f.c[i], f.F->from_int(static_cast<i64>(i))));
    d.trim();
    return d;
}

inline UniPoly rem(UniPoly a, const UniPoly& b) {
    const Field& F = *a.F;
    check(!b.is_zero(), "rem by zero");
    while (!a.is_zero() && a.deg() >= b.deg()) {
        Elem q = F.div(a.c.back(), b.c.back());
        int shift = a.deg() - b.deg();
        for (int i = 0; i <= b.deg(); ++i)
            a.c[i + shift] = F.sub(a.c[i + shift], F.mul(q, b.c[i]));
        a.trim();
    }
    return a;
}

inline UniPoly divexact(UniPoly a, const UniPoly& b) {
    const Field& F = *a.F;
    UniPoly q{a.F, std::vector<Elem>(a.is_zero() ? 0 : a.deg() - b.deg() + 1)};
    while (!a.is_zero() && a.deg() >= b.deg()) {
        Elem qc = F.div(a.c.back(), b.c.back());
        int shift = a.deg() - b.deg();
        q.c[shift] = qc;
        for (int i = 0; i <= b.deg(); ++i)
            a.c[i + shift] = F.sub(a.c[i + shift], F.mul(qc, b.c[i]));
        a.trim();
    }
    check(a.is_zero(), "divexact with remainder");
    q.trim();
    return q;
}

inline UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a));
}

// inverse of the arithmetic Frobenius at the element's tower level
inline Elem frob_inv(const Field& F, const Elem& a) {
    int lvl = F.level(a);
    Elem r = a;
    u64 order = u64(1) << lvl; // Frobenius has order 2^lvl on F_{p^(2^lvl)}
    for (u64 i = 1; i < order; ++i) r = F.frobenius(r);
    return r;
}

inline UniPoly pth_root(const UniPoly& f) {
    const Field& F = *f.F;
    UniPoly r{f.F, {}};
    u64 p = F.p();
    for (std::size_t i = 0; i < f.c.size(); i += p) r.c.push_back(frob_inv(F, f.c[i]));
    r.trim();
    return r;
}

// number of distinct roots over the algebraic closure
inline int distinct_root_count(const UniPoly& f0) {
    UniPoly f = monic(f0);
    if (f.is_zero() || f.deg() == 0) return 0;
    UniPoly d = derivative(f);
    if (d.is_zero()) return distinct_root_count(pth_root(f));
    UniPoly g = gcd(f, d);
    UniPoly w = divexact(f, g); // squarefree part of the non-p-power factors
    // strip w's factors out of g; what remains is a p-th power
    UniPoly g1 = g;
    while (true) {
        UniPoly c = gcd(g1, w);
        if (c.deg() <= 0) break;
        g1 = divexact(g1, c);
    }
    int rest = g1.deg() > 0 ? distinct_root_count(pth_root(g1)) : 0;
    return w.deg() + rest;
}

inline Poly random_linear_full(const RingPtr& R, Rng& rng) {
    std::vector<Term> raw;
    for (int j = 0; j < R->nvars; ++j) {
        u64 c = rng.below(R->F->p() - 1) + 1;
        raw.push_back(Term{Monomial::var(R->nvars, j), Elem(c)});
    }
    return poly_from_terms(R, std::move(raw));
}

} // namespace unidetail

// ---------------------------------------------------------------------------
// geometric point count of a zero-dimensional projective ideal via the
// squarefree degree of a generic binary eliminant
// ---------------------------------------------------------------------------

inline i64 zero_dim_point_count(const GroebnerBasis& J0, u64 seed) {
    if (J0.is_unit()) return 0;
    const RingPtr& R = J0.R;
    const Field& F = *R->F;
    HilbertData h = hilbert(J0);
    require(h.krull_dim == 1, Err::NotFiniteUnion,
            "zero_dim_point_count: ideal is not zero-dimensional");
    Rng rng(child_seed(seed, "zdim"));

    // remove irrelevant junk (and nothing else, generically): saturate by a
    // random linear form
    GroebnerBasis J = saturate(J0, unidetail::random_linear_full(R, rng));
    i64 bound = hilbert(J).degree;

    auto eliminant_count = [&](Rng& r2) -> i64 {
        Poly mu = unidetail::random_linear_full(R, r2);
        Poly lm = unidetail::random_linear_full(R, r2);
        // NF ladder of mu^{D-j} lm^j
        std::vector<Poly> cur{normal_form(poly_const(R, F.one()), J)};
        for (int D = 1; D <= static_cast<int>(bound) + 1; ++D) {
            std::vector<Poly> nxt(D + 1);
            for (int j = 0; j < D; ++j) nxt[j] = normal_form(poly_mul(cur[j], mu), J);
            nxt[D] = normal_form(poly_mul(cur[D - 1], lm), J);
            cur = std::move(nxt);
            std::vector<Poly> nonzero;
            std::vector<int> idx;
            for (int j = 0; j <= D; ++j)
                if (!cur[j].is_zero()) {
                    nonzero.push_back(cur[j]);
                    idx.push_back(j);
                }
            Subspace k;
            if (static_cast<int>(nonzero.size()) == D + 1) {
                // kernel over the support of the normal forms only
                std::map<Monomial, int, bool (*)(const Monomial&, const Monomial&)> support(
                    [](const Monomial& a, const Monomial& b) { return cmp_grevlex(a, b) > 0; });
                for (const Poly& p : nonzero)
                    for (const Term& t : p.t) support.emplace(t.m, 0);
                int sidx = 0;
                for (auto& kv : support) kv.second = sidx++;
                Mat M(R->F, sidx, static_cast<int>(nonzero.size()));
                for (std::size_t c = 0; c < nonzero.size(); ++c)
                    for (const Term& t : nonzero[c].t)
                        M.at(support.at(t.m), static_cast<int>(c)) = t.c;
                k = right_kernel(M);
            }
            if (static_cast<int>(nonzero.size()) < D + 1 || k.dim() > 0) {
                // a binary form of degree D lies in J
                UniPoly f{R->F, std::vector<Elem>(D + 1)};
                if (static_cast<int>(nonzero.size()) < D + 1) {
                    // some power product reduced to zero: that monomial alone
                    int j0 = 0;
                    std::vector<bool> present(D + 1, false);
                    for (int j : idx) present[j] = true;
                    for (int j = 0; j <= D; ++j)
                        if (!present[j]) { j0 = j; break; }
                    f.c[j0] = F.one();
                } else {
                    for (std::size_t t = 0; t < idx.size(); ++t)
                        f.c[idx[t]] = k.basis.at(0, static_cast<int>(t));
                }
                f.trim();
                // univariate in s = lm/mu; a missing top coefficient means one
                // extra geometric root on mu = 0
                int lead_gap = D - f.deg();
                return unidetail::distinct_root_count(f) + (lead_gap > 0 ? 1 : 0);
            }
        }
        fail(Err::NotFiniteUnion, "no eliminant found below the degree bound");
    };

    for (int attempt = 0; attempt < 3; ++attempt) {
        Rng ra(child_seed(seed, "elimA" + std::to_string(attempt)));
        Rng rb(child_seed(seed, "elimB" + std::to_string(attempt)));
        i64 ka = eliminant_count(ra);
        i64 kb = eliminant_count(rb);
        if (ka == kb) return ka;
    }
    fail(Err::NotFiniteUnion, "eliminant point counts disagree across draws");
}

// ---------------------------------------------------------------------------
// equidimensional top part (generic coordinates + block order + saturation by
// leading coefficients)
// ---------------------------------------------------------------------------

namespace censusdetail {

struct LinearChange {
    std::vector<Poly> fwd; // images of the old variables in the new ones
    std::vector<Poly> bwd;
};

inline LinearChange random_change(const RingPtr& R, Rng& rng) {
    const Field& F = *R->F;
    int n = R->nvars;
    Mat M(R->F, n, n);
    do {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M.at(i, j) = Elem(rng.below(F.p()));
    } while (rank(M) < n);
    Mat Minv = solve(M, Mat::identity(R->F, n));
    LinearChange ch;
    auto images = [&](const Mat& m) {
        std::vector<Poly> im;
        for (int i = 0; i < n; ++i) {
            std::vector<Term> raw;
            for (int j = 0; j < n; ++j)
                if (!F.is_zero(m.at(i, j))) raw.push_back(Term{Monomial::var(n, j), m.at(i, j)});
            im.push_back(poly_from_terms(R, std::move(raw)));
        }
        return im;
    };
    ch.fwd = images(M);
    ch.bwd = images(Minv);
    return ch;
}

// leading K[u]-coefficients of a block-order GB, u = the last n - split vars
inline std::vector<Poly> block_leading_coeffs(const RingPtr& R,
                                              const std::vector<gbdetail::TermList>& gb,
                                              int split) {
    std::vector<Poly> lcs;
    for (const auto& g : gb) {
        if (g.empty()) continue;
        const Monomial& lead = g.front().m;
        std::vector<Term> raw;
        for (const Term& t : g) {
            bool same_v = true;
            for (int v = 0; v < split && same_v; ++v)
                if (t.m.e[v] != lead.e[v]) same_v = false;
            if (!same_v) continue;
            Monomial mu = Monomial::unit(R->nvars);
            for (int v = split; v < R->nvars; ++v) {
                mu.e[v] = t.m.e[v];
                mu.deg += t.m.e[v];
            }
            raw.push_back(Term{mu, t.c});
        }
        lcs.push_back(poly_monic(poly_from_terms(R, std::move(raw))));
    }
    std::sort(lcs.begin(), lcs.end(),
              [](const Poly& a, const Poly& b) { return canonical_poly_cmp(a, b) < 0; });
    lcs.erase(std::unique(lcs.begin(), lcs.end(),
                          [](const Poly& a, const Poly& b) { return poly_equal(a, b); }),
              lcs.end());
    return lcs;
}

// one rational point on the degree-1 top stratum, found by slicing to
// dimension zero; returns homogeneous coordinates or empty on failure
inline std::vector<Elem> rational_point_on_top(const RingPtr& R, const GroebnerBasis& I, int dim,
                                               u64 seed) {
    for (int attempt = 0; attempt < 4; ++attempt) {
        RingPtr small;
        std::vector<Poly> images;
        std::vector<Poly> sliced =
            slice_last_vars(R, I.g, dim, child_seed(seed, "pt" + std::to_string(attempt)), &small,
                            &images);
        GroebnerBasis J = buchberger(small, sliced);
        if (J.is_unit() || hilbert(J).krull_dim != 1) continue;
        Rng rng(child_seed(seed, "ptsat" + std::to_string(attempt)));
        GroebnerBasis Jsat = saturate(J, unidetail::random_linear_full(small, rng));
        if (hilbert(Jsat).degree != 1) continue;
        std::vector<Poly> lin;
        for (const Poly& g : Jsat.g)
            if (g.degree() == 1) lin.push_back(g);
        if (static_cast<int>(lin.size()) != small->nvars - 1) continue;
        Subspace pt = right_kernel(coefficient_matrix(small, lin, 1));
        if (pt.dim() != 1) continue;
        std::vector<Elem> small_pt(small->nvars);
        for (int i = 0; i < small->nvars; ++i) small_pt[i] = pt.basis.at(0, i);
        // lift through the slicing substitution
        std::vector<Elem> full(R->nvars);
        for (int i = 0; i < R->nvars; ++i) full[i] = poly_eval(images[i], small_pt);
        return full;
    }
    return {};
}

// Top part by hyperplane-slice interpolation: a degree-d form vanishes on the
// top stratum iff it vanishes on its sections with d+1 generic hyperplanes,
// and one generic slice wipes out any finite stratum below. Exact (and
// certified by the Hilbert checks in the caller) when the lower strata are
// finite; with positive-dimensional lower strata the candidate degenerates
// and the certificates reject it.
inline std::vector<Poly> equidim_top_by_slices(const GroebnerBasis& I, u64 seed) {
    const RingPtr& R = I.R;
    const Field& F = *R->F;
    int n = R->nvars;
    int maxd = 0;
    for (const Poly& g : I.g) maxd = std::max(maxd, g.degree());
    int nslices = maxd + 2;

    struct SliceData {
        RingPtr S;
        std::vector<Poly> images;
        RrefResult span; // degree-d piece of the slice ideal, per degree
        GroebnerBasis J;
    };
    std::vector<SliceData> slices;
    for (int i = 0; i < nslices; ++i) {
        SliceData sd;
        auto sliced = slice_last_vars(R, I.g, 1, child_seed(seed, "etbs" + std::to_string(i)), &sd.S,
                                      &sd.images);
        GroebnerBasis J0 = buchberger(sd.S, sliced);
        if (J0.is_unit()) return {};
        Rng rng(child_seed(seed, "etbs-sat" + std::to_string(i)));
        sd.J = saturate(J0, unidetail::random_linear_full(sd.S, rng));
        slices.push_back(std::move(sd));
    }

    std::vector<Poly> pieces;
    int first_nonzero = -1;
    for (int d = 1; d <= maxd + 1; ++d) {
        if (first_nonzero >= 0 && d > first_nonzero + 1) break;
        std::vector<Monomial> big = monomial_basis(R, d);
        // conditions: for each slice, the substituted form reduces to zero
        // against the slice ideal's degree-d piece
        std::vector<std::vector<Elem>> cond_rows;
        for (SliceData& sd : slices) {
            std::vector<Monomial> small = monomial_basis(sd.S, d);
            std::vector<Poly> span_rows;
            for (const Poly& g : sd.J.g)
                if (g.degree() <= d)
                    for (const Monomial& m : monomial_basis(sd.S, d - g.degree()))
                        span_rows.push_back(poly_mul_term(g, m, F.one()));
            RrefResult rr = rref(coefficient_matrix(sd.S, span_rows, d, &small));
            std::vector<int> col_row(small.size(), -1);
            for (int r = 0; r < rr.rank; ++r) col_row[rr.pivots[r]] = r;
            // reduction of each substituted big monomial
            std::vector<std::vector<Elem>> reduced;
            for (const Monomial& mu : big) {
                Poly img = poly_const(sd.S, F.one());
                for (int v = 0; v < n; ++v)
                    for (int k = 0; k < mu.e[v]; ++k) img = poly_mul(img, sd.images[v]);
                std::vector<Elem> vec(small.size());
                for (const Term& t : img.t) vec[basis_index(small, t.m)] = t.c;
                // eliminate pivot coordinates
                for (std::size_t c = 0; c < small.size(); ++c) {
                    if (col_row[c] < 0 || F.is_zero(vec[c])) continue;
                    Elem f = vec[c];
                    for (std::size_t c2 = c; c2 < small.size(); ++c2)
                        vec[c2] = F.sub(vec[c2], F.mul(f, rr.R.at(col_row[c], static_cast<int>(c2))));
                }
                reduced.push_back(std::move(vec));
            }
            // rows of the condition block: one per non-pivot coordinate
            for (std::size_t c = 0; c < small.size(); ++c) {
                if (col_row[c] >= 0) continue;
                std::vector<Elem> row(big.size());
                bool nz = false;
                for (std::size_t muI = 0; muI < big.size(); ++muI) {
                    row[muI] = reduced[muI][c];
                    if (!F.is_zero(row[muI])) nz = true;
                }
                if (nz) cond_rows.push_back(std::move(row));
            }
        }
        Mat cond(R->F, static_cast<int>(cond_rows.size()), static_cast<int>(big.size()));
        for (std::size_t r = 0; r < cond_rows.size(); ++r)
            for (std::size_t c = 0; c < big.size(); ++c) cond.at(static_cast<int>(r), static_cast<int>(c)) = cond_rows[r][c];
        Subspace ker = right_kernel(cond);
        for (int k = 0; k < ker.dim(); ++k) {
            std::vector<Term> raw;
            for (std::size_t c = 0; c < big.size(); ++c)
                if (!F.is_zero(ker.basis.at(k, static_cast<int>(c))))
                    raw.push_back(Term{big[c], ker.basis.at(k, static_cast<int>(c))});
            pieces.push_back(poly_from_terms(R, std::move(raw)));
        }
        if (first_nonzero < 0 && ker.dim() > 0) first_nonzero = d;
    }
    return pieces;
}

} // namespace censusdetail

// Generators of the intersection of the top-dimensional primary components.
//
// Correctness needs only that every top-dimensional prime keeps the last dk
// variables independent: primes of smaller dimension can never carry dk
// independent variables, so they are always removed. A dropped top prime
// would lower the Hilbert degree, which is checked; on failure the ideal is
// moved by a fresh random change of coordinates and retried.
inline std::vector<Poly> equidim_top(const GroebnerBasis& I, u64 seed, int trivial_dim = 0) {
    const RingPtr& R = I.R;
    int n = R->nvars;
    HilbertData h0 = hilbert(I);
    int dk = h0.krull_dim;
    check(dk >= 1, "equidim_top needs a nonempty variety");
    if (dk == n) return I.g; // zero ideal

    // projectively zero-dimensional: every component is top-dimensional, so
    // the top part is the irrelevant saturation
    if (dk == 1) {
        Rng rng(child_seed(seed, "dim0"));
        return saturate(I, unidetail::random_linear_full(R, rng)).g;
    }

    // degree-1 fast path: the top stratum is one reduced linear space,
    // recovered as the Jacobian kernel at a rational point of a generic slice
    if (h0.degree == 1) {
        auto pt = censusdetail::rational_point_on_top(R, I, dk - 1, child_seed(seed, "deg1"));
        if (!pt.empty()) {
            const Field& F = *R->F;
            Mat jac(R->F, static_cast<int>(I.g.size()), n);
            for (std::size_t r = 0; r < I.g.size(); ++r)
                for (int v = 0; v < n; ++v) {
                    // d g / d y_v evaluated at pt
                    Elem acc;
                    for (const Term& t : I.g[r].t) {
                        if (t.m.e[v] == 0) continue;
                        Elem val = F.from_int(t.m.e[v]);
                        val = F.mul(val, t.c);
                        for (int w = 0; w < n; ++w) {
                            int e = t.m.e[w] - (w == v ? 1 : 0);
                            for (int z = 0; z < e; ++z) val = F.mul(val, pt[w]);
                        }
                        acc = F.add(acc, val);
                    }
                    jac.at(static_cast<int>(r), v) = acc;
                }
            Subspace tangent = right_kernel(jac);
            if (tangent.dim() == dk) {
                // cutting forms = the row space of the Jacobian, in RREF
                Subspace forms = subspace_from_rows(jac);
                std::vector<Poly> T;
                for (int r = 0; r < forms.dim(); ++r) {
                    std::vector<Term> raw;
                    for (int v = 0; v < n; ++v)
                        if (!F.is_zero(forms.basis.at(r, v)))
                            raw.push_back(Term{Monomial::var(n, v), forms.basis.at(r, v)});
                    T.push_back(poly_from_terms(R, std::move(raw)));
                }
                // exactness: every generator must vanish on the recovered space
                bool sound = true;
                {
                    std::vector<Poly> im;
                    Subspace pts = right_kernel(coefficient_matrix(R, T, 1));
                    // substitute the parametrization: y = sum params * basis rows
                    RingPtr P = make_ring_xs(R->F, pts.dim(), "q");
                    for (int v = 0; v < n; ++v) {
                        std::vector<Term> raw;
                        for (int t = 0; t < pts.dim(); ++t)
                            if (!F.is_zero(pts.basis.at(t, v)))
                                raw.push_back(Term{Monomial::var(pts.dim(), t), pts.basis.at(t, v)});
                        im.push_back(poly_from_terms(P, std::move(raw)));
                    }
                    for (const Poly& g : I.g)
                        if (!substitute_linear(g, im, P).is_zero()) { sound = false; break; }
                }
                if (sound) return T;
            }
        }
    }

    // join path: when every component passes through the trivial subspace
    // y_0 = .. = y_{t-1}, the variety is the cone over its restriction and the
    // top part is the join of the trivial subspace with the restricted top
    if (trivial_dim > 0 && trivial_dim < n) {
        const Field& F = *R->F;
        std::vector<std::string> names(R->names.begin() + trivial_dim, R->names.end());
        RingPtr Q = make_ring(R->F, names);
        std::vector<Poly> images;
        for (int i = 0; i < trivial_dim; ++i) images.push_back(Poly(Q));
        for (int i = trivial_dim; i < n; ++i) images.push_back(poly_var(Q, i - trivial_dim));
        std::vector<Poly> bar;
        for (const Poly& g : I.g) {
            Poly b = substitute_linear(g, images, Q);
            if (!b.is_zero()) bar.push_back(b);
        }
        if (!bar.empty()) {
            GroebnerBasis gbar = buchberger(Q, bar);
            if (!gbar.is_unit() && hilbert(gbar).krull_dim >= 1) {
                std::vector<Poly> Tbar = equidim_top(gbar, child_seed(seed, "join"), 0);
                if (!Tbar.empty()) {
                    std::vector<Poly> up;
                    for (int i = 0; i < Q->nvars; ++i) up.push_back(poly_var(R, trivial_dim + i));
                    std::vector<Poly> Tj;
                    for (const Poly& g : Tbar) Tj.push_back(substitute_linear(g, up, R));
                    GroebnerBasis TG = buchberger(R, Tj);
                    HilbertData ht = hilbert(TG);
                    if (ht.krull_dim == dk && ht.degree == h0.degree) return TG.g;
                }
            }
        }
        (void)F;
    }

    // slice-interpolation path
    {
        std::vector<Poly> cand = censusdetail::equidim_top_by_slices(I, child_seed(seed, "slices"));
        if (!cand.empty()) {
            std::vector<Poly> gens = cand;
            GroebnerBasis TG = buchberger(R, gens);
            HilbertData ht = hilbert(TG);
            if (ht.krull_dim == dk && ht.degree == h0.degree) return TG.g;
        }
    }

    for (int attempt = 0; attempt < 6; ++attempt) {
        censusdetail::LinearChange ch;
        std::vector<Poly> moved;
        if (attempt == 0) {
            moved = I.g; // sparse original coordinates first
        } else {
            Rng rng(child_seed(seed, "equidim" + std::to_string(attempt)));
            ch = censusdetail::random_change(R, rng);
            for (const Poly& g : I.g) moved.push_back(substitute_linear(g, ch.fwd, R));
        }
        GroebnerBasis Im = attempt == 0 ? I : buchberger(R, moved);
        // necessary precheck: no leading monomial purely in the last dk vars
        bool ok = true;
        for (const Poly& g : Im.g) {
            bool pure_u = true;
            for (int v = 0; v < n - dk && pure_u; ++v)
                if (g.lead().m.e[v] != 0) pure_u = false;
            if (pure_u) { ok = false; break; }
        }
        if (!ok) continue;

        // block-order GB with the first n - dk variables dominant
        MonOrder ord{MonOrder::Kind::BlockGrevlex, n - dk};
        std::vector<gbdetail::TermList> in;
        for (const Poly& p : Im.g) in.push_back(gbdetail::to_sorted(p, ord));
        auto basis = gbdetail::engine(R, std::move(in), ord, nullptr);
        basis = gbdetail::reduce_basis(R, std::move(basis), ord);
        auto lcs = censusdetail::block_leading_coeffs(R, basis, n - dk);

        GroebnerBasis T = Im;
        for (const Poly& c : lcs) {
            if (c.is_zero() || c.degree() == 0) continue;
            T = saturate(T, c);
        }
        // no top component may have been lost
        HilbertData ht = hilbert(T);
        if (ht.krull_dim != dk || ht.degree != h0.degree) continue;
        if (attempt == 0) return T.g;
        std::vector<Poly> out;
        for (const Poly& g : T.g) out.push_back(substitute_linear(g, ch.bwd, R));
        return out;
    }
    fail(Err::NotFiniteUnion, "could not reach Noether position for the top stratum");
}

// ---------------------------------------------------------------------------
// the census: strata counted top dimension down, each stratum removed by
// saturation before descending
// ---------------------------------------------------------------------------

struct CensusEntry {
    i64 count = 0;  // geometric components (reduced points of the sliced stratum)
    i64 degree = 0; // Hilbert degree of the stratum (with multiplicity)
};

struct Census {
    std::map<int, CensusEntry> by_dim;

    bool counts_match(const std::map<int, i64>& other) const {
        std::map<int, i64> mine;
        for (const auto& kv : by_dim) mine[kv.first] = kv.second.count;
        return mine == other;
    }
};

// slice with `d` seeded random hyperplanes (substituting away d variables)
inline GroebnerBasis slice_to_points(const RingPtr& R, const std::vector<Poly>& gens, int d,
                                     u64 seed, RingPtr* out_ring) {
    for (int attempt = 0; attempt < 5; ++attempt) {
        RingPtr small;
        auto sliced = slice_last_vars(R, gens, d, child_seed(seed, "slice" + std::to_string(attempt)),
                                      &small);
        GroebnerBasis J = buchberger(small, sliced);
        if (!J.is_unit() && hilbert(J).krull_dim == 1) {
            if (out_ring) *out_ring = small;
            return J;
        }
    }
    fail(Err::NotFiniteUnion, "random slices did not reach dimension zero");
}

inline Census degree_census(const RingPtr& Y, const std::vector<Poly>& eq, u64 seed,
                            int trivial_dim = 0) {
    Census out;
    GroebnerBasis I = buchberger(Y, eq);
    int guard = 0;
    while (!I.is_unit() && !I.is_zero_ideal()) {
        check(++guard <= Y->nvars + 1, "census did not terminate");
        auto dd = dimension_degree(I);
        int d = dd.first;
        if (d < 0) break; // irrelevant-only ideal: empty projective set
        CensusEntry entry;
        entry.degree = dd.second;
        if (d == 0) {
            entry.count = zero_dim_point_count(I, child_seed(seed, "stratum0"));
            out.by_dim[d] = entry;
            break;
        }
        RingPtr small;
        GroebnerBasis pts =
            slice_to_points(Y, I.g, d, child_seed(seed, "stratum" + std::to_string(d)), &small);
        entry.count = zero_dim_point_count(pts, child_seed(seed, "count" + std::to_string(d)));
        out.by_dim[d] = entry;

        // remove the stratum: saturate by a random form vanishing on it
        auto T = equidim_top(I, child_seed(seed, "top" + std::to_string(d)), trivial_dim);
        bool removed = false;
        for (int attempt = 0; attempt < 3 && !removed; ++attempt) {
            Rng rng(child_seed(seed, "remove" + std::to_string(d) + ":" + std::to_string(attempt)));
            int D = 0;
            for (const Poly& t : T) D = std::max(D, t.degree());
            Poly g(Y);
            for (const Poly& t : T) {
                Poly scaled = t;
                for (int k = t.degree(); k < D; ++k)
                    scaled = poly_mul(scaled, unidetail::random_linear_full(Y, rng));
                u64 c = rng.below(Y->F->p() - 1) + 1;
                g = poly_add(g, poly_scale(scaled, Elem(c)));
            }
            if (g.is_zero()) continue;
            GroebnerBasis nxt = saturate(I, g);
            if (nxt.is_unit() || dimension_degree(nxt).first < d) {
                I = std::move(nxt);
                removed = true;
            }
        }
        require(removed, Err::NotFiniteUnion, "could not remove the top stratum by saturation");
    }
    return out;
}

} // namespace acmext
