#pragma once

#include "strand.hpp"

namespace acmext {

// ---------------------------------------------------------------------------
// the coefficient-comparison linear system for extensions: unknowns are the
// scalar entries of A~ (r1 x r2) and B~ (r2 x r3), one equation block per
// ambient variable:  A~ Psi_l + Phi_l B~ = 0
// ---------------------------------------------------------------------------

struct ExtensionProblem {
    RingPtr R;            // ambient ring K[x_0..x_n]
    ResolutionSlice slice;
    int n = 0;            // ambient projective dimension
    std::vector<Mat> Phi; // variable slices of phi2, each r1 x r2
    std::vector<Mat> Psi; // variable slices of phi3, each r2 x r3
};

inline ExtensionProblem make_extension_problem(const RingPtr& R, ResolutionSlice slice) {
    ExtensionProblem pr;
    pr.R = R;
    pr.n = R->nvars - 1;
    pr.Phi = variable_slices(slice.phi2);
    pr.Psi = variable_slices(slice.phi3);
    pr.slice = std::move(slice);
    // coefficient identities of phi2*phi3 = 0: Phi_k Psi_l + Phi_l Psi_k = 0
    const Field& F = *R->F;
    for (int k = 0; k <= pr.n; ++k)
        for (int l = k; l <= pr.n; ++l) {
            Mat s = pr.Phi[k].mul(pr.Psi[l]);
            if (l != k) {
                Mat t = pr.Phi[l].mul(pr.Psi[k]);
                for (std::size_t z = 0; z < s.a.size(); ++z) s.a[z] = F.add(s.a[z], t.a[z]);
            }
            check(s.is_zero(), "coefficient identity of phi2*phi3 = 0 failed");
        }
    return pr;
}

// flattening: unknowns [A~ row-major | B~ row-major]
inline int unknown_count(const ExtensionProblem& pr) {
    return pr.slice.r1 * pr.slice.r2 + pr.slice.r2 * pr.slice.r3;
}

inline Mat build_system(const ExtensionProblem& pr) {
    int r1 = pr.slice.r1, r2 = pr.slice.r2, r3 = pr.slice.r3;
    Mat sys(pr.R->F, (pr.n + 1) * r1 * r3, r1 * r2 + r2 * r3);
    const Field& F = *pr.R->F;
    for (int l = 0; l <= pr.n; ++l)
        for (int a = 0; a < r1; ++a)
            for (int c = 0; c < r3; ++c) {
                int row = l * r1 * r3 + a * r3 + c;
                for (int j = 0; j < r2; ++j) {
                    const Elem& psi = pr.Psi[l].at(j, c);
                    if (!F.is_zero(psi))
                        sys.at(row, a * r2 + j) = F.add(sys.at(row, a * r2 + j), psi);
                    const Elem& phi = pr.Phi[l].at(a, j);
                    if (!F.is_zero(phi))
                        sys.at(row, r1 * r2 + j * r3 + c) =
                            F.add(sys.at(row, r1 * r2 + j * r3 + c), phi);
                }
            }
    return sys;
}

// The solution space W with its trivial subspace, re-based so the n+1 trivial
// pairs (Phi_l, Psi_l) come first.
struct SolutionSpace {
    int N = 0;       // P^N: unknown count - 1
    int n = 0;       // trivial subspace is a P^n
    Subspace W;      // dim m+1
    Subspace trivial;
    Mat adapted;     // (m+1) x (N+1); rows 0..n are the trivial pairs
    int m() const { return W.dim() - 1; }
};

inline std::vector<Elem> trivial_pair_vector(const ExtensionProblem& pr, int l) {
    int r1 = pr.slice.r1, r2 = pr.slice.r2, r3 = pr.slice.r3;
    std::vector<Elem> v(r1 * r2 + r2 * r3);
    for (int a = 0; a < r1; ++a)
        for (int j = 0; j < r2; ++j) v[a * r2 + j] = pr.Phi[l].at(a, j);
    for (int j = 0; j < r2; ++j)
        for (int c = 0; c < r3; ++c) v[r1 * r2 + j * r3 + c] = pr.Psi[l].at(j, c);
    return v;
}

inline SolutionSpace solve_extension_space(const ExtensionProblem& pr, const Mat& sys) {
    SolutionSpace out;
    out.N = unknown_count(pr) - 1;
    out.n = pr.n;
    out.W = right_kernel(sys);

    Mat triv(pr.R->F, pr.n + 1, out.N + 1);
    for (int l = 0; l <= pr.n; ++l) {
        std::vector<Elem> v = trivial_pair_vector(pr, l);
        check(subspace_member(out.W, v), "trivial pair is not a solution");
        for (int c = 0; c <= out.N; ++c) triv.at(l, c) = v[c];
    }
    out.trivial = subspace_from_rows(triv);
    require(out.trivial.dim() == pr.n + 1, Err::ConeSuspected,
            "trivial pairs are linearly dependent; input looks like a cone");

    // adapted basis: trivial pairs first, completed from W's RREF rows by
    // greedy rank growth
    Mat acc = triv;
    Subspace span = subspace_from_rows(acc);
    for (int i = 0; i < out.W.dim() && span.dim() < out.W.dim(); ++i) {
        std::vector<Elem> row(out.N + 1);
        for (int c = 0; c <= out.N; ++c) row[c] = out.W.basis.at(i, c);
        if (subspace_member(span, row)) continue;
        Mat next(pr.R->F, acc.rows + 1, out.N + 1);
        for (int r = 0; r < acc.rows; ++r)
            for (int c = 0; c <= out.N; ++c) next.at(r, c) = acc.at(r, c);
        for (int c = 0; c <= out.N; ++c) next.at(acc.rows, c) = row[c];
        acc = std::move(next);
        span = subspace_from_rows(acc);
    }
    check(acc.rows == out.W.dim(), "adapted basis completion failed");
    out.adapted = std::move(acc);
    return out;
}

// ---------------------------------------------------------------------------
// the obstruction ideal eq = entries of A*B over the parameter ring K[y_0..y_m]
// ---------------------------------------------------------------------------

struct ObstructionIdeal {
    RingPtr Y;           // parameter ring K[y_0..y_m]
    PolyMatrix A;        // r1 x r2, linear in y
    PolyMatrix B;        // r2 x r3, linear in y
    std::vector<Poly> eq;
    std::vector<Mat> Aslice, Bslice; // scalar coefficient matrices per y_t
    SolutionSpace sol;
    ExtensionProblem prob;
};

inline ObstructionIdeal obstruction_ideal(const ExtensionProblem& pr, const SolutionSpace& sol) {
    const Field& F = *pr.R->F;
    int r1 = pr.slice.r1, r2 = pr.slice.r2, r3 = pr.slice.r3;
    int m = sol.m();
    ObstructionIdeal o;
    o.prob = pr;
    o.sol = sol;
    o.Y = make_ring_xs(pr.R->F, m + 1, "y");

    for (int t = 0; t <= m; ++t) {
        Mat At(pr.R->F, r1, r2), Bt(pr.R->F, r2, r3);
        for (int a = 0; a < r1; ++a)
            for (int j = 0; j < r2; ++j) At.at(a, j) = sol.adapted.at(t, a * r2 + j);
        for (int j = 0; j < r2; ++j)
            for (int c = 0; c < r3; ++c) Bt.at(j, c) = sol.adapted.at(t, r1 * r2 + j * r3 + c);
        o.Aslice.push_back(std::move(At));
        o.Bslice.push_back(std::move(Bt));
    }
    // rows 0..n of the adapted basis are the trivial pairs
    for (int l = 0; l <= pr.n; ++l) {
        check(o.Aslice[l] == pr.Phi[l], "adapted basis row is not the trivial A slice");
        check(o.Bslice[l] == pr.Psi[l], "adapted basis row is not the trivial B slice");
    }

    o.A = slices_to_linear_matrix(o.Y, o.Aslice, std::vector<int>(r1, 0), std::vector<int>(r2, 1));
    o.B = slices_to_linear_matrix(o.Y, o.Bslice, std::vector<int>(r2, 1), std::vector<int>(r3, 2));

    PolyMatrix ab = matmul_poly(o.A, o.B);
    std::vector<Poly> quads;
    for (const Poly& q : ab.e)
        if (!q.is_zero()) quads.push_back(poly_monic(q));
    std::sort(quads.begin(), quads.end(),
              [](const Poly& a, const Poly& b) { return canonical_poly_cmp(a, b) < 0; });
    quads.erase(std::unique(quads.begin(), quads.end(),
                            [](const Poly& a, const Poly& b) { return poly_equal(a, b); }),
                quads.end());
    o.eq = std::move(quads);

    // every quadric vanishes on the trivial subspace {y_{n+1} = .. = y_m = 0}
    std::vector<Poly> to_trivial;
    for (int t = 0; t <= m; ++t)
        to_trivial.push_back(t <= pr.n ? poly_var(o.Y, t) : Poly(o.Y));
    for (const Poly& q : o.eq)
        check(substitute_linear(q, to_trivial, o.Y).is_zero(),
              "obstruction quadric does not vanish on the trivial subspace");
    (void)F;
    return o;
}

// ---------------------------------------------------------------------------
// restriction of (A, B) to a linear component through the trivial subspace
// ---------------------------------------------------------------------------

struct RestrictedPair {
    RingPtr R;      // K_L[x_0..x_n, y_1..y_e]
    FieldPtr K;     // field of definition of the component
    int e = 0;
    PolyMatrix Ai;  // lifted phi_i, product Ai * Ai1 = 0 exactly
    PolyMatrix Ai1; // lifted phi_{i+1}
};

// forms: RREF rows cutting the component out of P^m, over a field K that the
// obstruction ideal's field embeds into.
inline RestrictedPair restrict_pair(const ObstructionIdeal& o, const Mat& forms) {
    const FieldPtr& K = forms.F;
    const Field& F = *K;
    int m = o.sol.m();
    int n = o.sol.n;
    check(forms.cols == m + 1, "component ambient mismatch");
    for (int r = 0; r < forms.rows; ++r)
        for (int c = 0; c <= n; ++c)
            require(F.is_zero(forms.at(r, c)), Err::TrivialNotContained,
                    "component does not contain the trivial subspace");

    Subspace pts = right_kernel(forms);
    int e = pts.dim() - (n + 1);
    check(e >= 0, "component smaller than the trivial subspace");

    // basis of the component's point space: trivial directions first
    Mat basis(K, n + 1 + e, m + 1);
    for (int l = 0; l <= n; ++l) basis.at(l, l) = F.one();
    {
        Subspace span = subspace_from_rows(basis);
        int have = n + 1;
        for (int i = 0; i < pts.dim() && have < n + 1 + e; ++i) {
            std::vector<Elem> row(m + 1);
            for (int c = 0; c <= m; ++c) row[c] = pts.basis.at(i, c);
            if (subspace_member(span, row)) continue;
            for (int c = 0; c <= m; ++c) basis.at(have, c) = row[c];
            ++have;
            span = subspace_from_rows(basis);
        }
        check(have == n + 1 + e, "component basis completion failed");
    }

    RestrictedPair rp;
    rp.K = K;
    rp.e = e;
    std::vector<std::string> names;
    for (int i = 0; i <= n; ++i) names.push_back("x" + std::to_string(i));
    for (int s = 1; s <= e; ++s) names.push_back("y" + std::to_string(s));
    rp.R = make_ring(K, names);

    int r1 = o.prob.slice.r1, r2 = o.prob.slice.r2, r3 = o.prob.slice.r3;
    auto combine = [&](const std::vector<Mat>& slices, int rows, int cols) {
        // slices of the restricted matrix along the component basis vectors
        std::vector<Mat> out;
        for (int v = 0; v < n + 1 + e; ++v) {
            Mat s(K, rows, cols);
            for (int t = 0; t <= m; ++t) {
                const Elem& c = basis.at(v, t);
                if (F.is_zero(c)) continue;
                for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < cols; ++j)
                        s.at(i, j) = F.add(s.at(i, j), F.mul(c, slices[t].at(i, j)));
            }
            out.push_back(std::move(s));
        }
        return out;
    };
    auto As = combine(o.Aslice, r1, r2);
    auto Bs = combine(o.Bslice, r2, r3);
    rp.Ai = slices_to_linear_matrix(rp.R, As, std::vector<int>(r1, 0), std::vector<int>(r2, 1));
    rp.Ai1 = slices_to_linear_matrix(rp.R, Bs, std::vector<int>(r2, 1), std::vector<int>(r3, 2));
    require(matmul_poly(rp.Ai, rp.Ai1).is_zero(), Err::ProductNonzero,
            "restricted pair has nonzero product; component not inside V(eq)");
    return rp;
}

} // namespace acmext
