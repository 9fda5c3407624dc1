#pragma once

#include "groebner.hpp"

#include <map>

namespace acmext {

// ---------------------------------------------------------------------------
// graded strand linear algebra: linear syzygies, resolution slices, Betti
// tables by Koszul cohomology
// ---------------------------------------------------------------------------

// All linear syzygies of the columns of m: a linear matrix s with m*s = 0
// whose columns span the kernel in the first graded step. Columns of m must
// share a common degree shift.
inline PolyMatrix linear_syzygies(const PolyMatrix& m) {
    const RingPtr& R = m.R;
    const Field& F = *R->F;
    int n = R->nvars;
    for (int j = 1; j < m.cols; ++j)
        require(m.coldeg[j] == m.coldeg[0], Err::DegreeMismatch,
                "linear_syzygies: columns must share a degree");
    int D = m.coldeg.empty() ? 0 : m.coldeg[0];

    // unknowns c_{l,j}: candidate syzygy column s_j = sum_l c_{l,j} x_l
    int ncols = n * m.cols;
    std::vector<std::vector<Monomial>> bases(m.rows);
    std::vector<int> row_off(m.rows + 1, 0);
    for (int i = 0; i < m.rows; ++i) {
        int d = D + 1 - m.rowdeg[i];
        bases[i] = d >= 0 ? monomial_basis(R, d) : std::vector<Monomial>{};
        row_off[i + 1] = row_off[i] + static_cast<int>(bases[i].size());
    }
    Mat sys(R->F, row_off[m.rows], ncols);
    for (int j = 0; j < m.cols; ++j) {
        for (int i = 0; i < m.rows; ++i) {
            const Poly& p = m.at(i, j);
            if (p.is_zero()) continue;
            for (int l = 0; l < n; ++l) {
                Poly xp = poly_mul_term(p, Monomial::var(n, l), F.one());
                int col = j * n + l;
                for (const Term& tm : xp.t)
                    sys.at(row_off[i] + basis_index(bases[i], tm.m), col) =
                        F.add(sys.at(row_off[i] + basis_index(bases[i], tm.m), col), tm.c);
            }
        }
    }
    Subspace k = right_kernel(sys);
    PolyMatrix s(R, m.cols, k.dim(), m.coldeg, std::vector<int>(k.dim(), D + 1));
    for (int t = 0; t < k.dim(); ++t)
        for (int j = 0; j < m.cols; ++j) {
            std::vector<Term> raw;
            for (int l = 0; l < n; ++l) {
                const Elem& c = k.basis.at(t, j * n + l);
                if (!F.is_zero(c)) raw.push_back(Term{Monomial::var(n, l), c});
            }
            s.at(j, t) = poly_from_terms(R, std::move(raw));
        }
    return s;
}

// Generator row phi1 and the two consecutive linear differentials phi2, phi3.
struct ResolutionSlice {
    PolyMatrix phi1; // 1 x r1, entries of degree d
    PolyMatrix phi2; // r1 x r2, linear
    PolyMatrix phi3; // r2 x r3, linear
    int r1 = 0, r2 = 0, r3 = 0;
    int gen_degree = 0;
};

inline ResolutionSlice resolution_slice(const RingPtr& R, const std::vector<Poly>& gens) {
    require(!gens.empty(), Err::NotMinimal, "resolution_slice: no generators");
    int d = gens[0].degree();
    for (const Poly& g : gens)
        require(!g.is_zero() && g.degree() == d, Err::DegreeMismatch,
                "resolution_slice: generators must share a single degree");
    int r1 = static_cast<int>(gens.size());
    require(rank(coefficient_matrix(R, gens, d)) == r1, Err::NotMinimal,
            "resolution_slice: generators are linearly dependent");

    ResolutionSlice s;
    s.gen_degree = d;
    s.r1 = r1;
    s.phi1 = PolyMatrix(R, 1, r1, {0}, std::vector<int>(r1, d));
    for (int j = 0; j < r1; ++j) s.phi1.set(0, j, gens[j]);
    s.phi2 = linear_syzygies(s.phi1);
    s.r2 = s.phi2.cols;
    require(s.r2 > 0, Err::NoLinearStrand, "no linear syzygies on the generators");
    s.phi3 = linear_syzygies(s.phi2);
    s.r3 = s.phi3.cols;
    require(s.r3 > 0, Err::NoLinearStrand, "no linear second syzygies");
    check(matmul_poly(s.phi1, s.phi2).is_zero(), "phi1*phi2 != 0");
    check(matmul_poly(s.phi2, s.phi3).is_zero(), "phi2*phi3 != 0");
    return s;
}

// ---------------------------------------------------------------------------
// graded pieces of S/I by plain linear algebra, with per-degree caches
// ---------------------------------------------------------------------------

class GradedQuotient {
  public:
    GradedQuotient(RingPtr R, std::vector<Poly> gens) : R_(std::move(R)), gens_(std::move(gens)) {}

    const RingPtr& ring() const { return R_; }

    int dim_of(int d) {
        if (d < 0) return 0;
        return static_cast<int>(piece(d).quotient_cols.size());
    }

    // class of a degree-d monomial in quotient coordinates
    std::vector<Elem> reduce_monomial(int d, const Monomial& m) {
        Piece& pc = piece(d);
        const Field& F = *R_->F;
        std::vector<Elem> v(pc.quotient_cols.size());
        int col = basis_index(pc.basis, m);
        if (pc.col_to_quotient[col] >= 0) {
            v[pc.col_to_quotient[col]] = F.one();
            return v;
        }
        int row = pc.col_to_pivot_row[col];
        for (std::size_t q = 0; q < pc.quotient_cols.size(); ++q) {
            const Elem& c = pc.rref.at(row, pc.quotient_cols[q]);
            if (!F.is_zero(c)) v[q] = F.neg(c);
        }
        return v;
    }

    const std::vector<Monomial>& basis_of(int d) { return piece(d).basis; }
    const std::vector<int>& quotient_cols_of(int d) { return piece(d).quotient_cols; }

  private:
    struct Piece {
        std::vector<Monomial> basis;
        Mat rref;
        std::vector<int> col_to_quotient;  // -1 when pivot column
        std::vector<int> col_to_pivot_row; // -1 when quotient column
        std::vector<int> quotient_cols;
    };

    Piece& piece(int d) {
        auto it = cache_.find(d);
        if (it != cache_.end()) return it->second;
        Piece pc;
        pc.basis = monomial_basis(R_, d);
        std::vector<Poly> rows;
        for (const Poly& g : gens_) {
            if (g.is_zero() || g.degree() > d) continue;
            for (const Monomial& m : monomial_basis(R_, d - g.degree()))
                rows.push_back(poly_mul_term(g, m, R_->F->one()));
        }
        RrefResult rr = rref(coefficient_matrix(R_, rows, d, &pc.basis));
        pc.col_to_quotient.assign(pc.basis.size(), -1);
        pc.col_to_pivot_row.assign(pc.basis.size(), -1);
        for (int r = 0; r < rr.rank; ++r) pc.col_to_pivot_row[rr.pivots[r]] = r;
        for (int c = 0; c < static_cast<int>(pc.basis.size()); ++c)
            if (pc.col_to_pivot_row[c] < 0) {
                pc.col_to_quotient[c] = static_cast<int>(pc.quotient_cols.size());
                pc.quotient_cols.push_back(c);
            }
        pc.rref = std::move(rr.R);
        return cache_.emplace(d, std::move(pc)).first->second;
    }

    RingPtr R_;
    std::vector<Poly> gens_;
    std::map<int, Piece> cache_;
};

struct BettiTable {
    std::map<std::pair<int, int>, i64> beta; // (i, j) -> rank

    i64 get(int i, int j) const {
        auto it = beta.find({i, j});
        return it == beta.end() ? 0 : it->second;
    }
    bool operator==(const BettiTable& o) const { return beta == o.beta; }
};

namespace strandetail {

// subsets of {0..n-1} of size k, lexicographic
inline std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    std::function<void(int, int)> rec = [&](int start, int pos) {
        if (pos == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur[pos] = v;
            rec(v + 1, pos + 1);
        }
    };
    rec(0, 0);
    return out;
}

// Koszul differential Lambda^i V (x) (S/I)_{j-i}  ->  Lambda^{i-1} V (x) (S/I)_{j-i+1}
inline Mat koszul_map(GradedQuotient& Q, int i, int deg_src,
                      const std::vector<std::vector<int>>& set_i,
                      const std::vector<std::vector<int>>& set_im1) {
    const RingPtr& R = Q.ring();
    const Field& F = *R->F;
    int q_src = Q.dim_of(deg_src);
    int q_dst = Q.dim_of(deg_src + 1);
    Mat m(R->F, static_cast<int>(set_im1.size()) * q_dst, static_cast<int>(set_i.size()) * q_src);
    if (m.rows == 0 || m.cols == 0) return m;

    std::map<std::vector<int>, int> index_im1;
    for (std::size_t t = 0; t < set_im1.size(); ++t) index_im1[set_im1[t]] = static_cast<int>(t);

    const std::vector<Monomial>& src_basis = Q.basis_of(deg_src);
    const std::vector<int>& src_cols = Q.quotient_cols_of(deg_src);
    for (std::size_t T = 0; T < set_i.size(); ++T) {
        for (int s = 0; s < q_src; ++s) {
            int col = static_cast<int>(T) * q_src + s;
            const Monomial& mu = src_basis[src_cols[s]];
            for (std::size_t k = 0; k < set_i[T].size(); ++k) {
                int var = set_i[T][k];
                std::vector<int> rest = set_i[T];
                rest.erase(rest.begin() + k);
                int Tp = index_im1.at(rest);
                Elem sign = (k % 2 == 0) ? F.one() : F.neg(F.one());
                Monomial xm = mono_mul(mu, Monomial::var(R->nvars, var));
                std::vector<Elem> red = Q.reduce_monomial(deg_src + 1, xm);
                for (std::size_t t = 0; t < red.size(); ++t) {
                    if (F.is_zero(red[t])) continue;
                    int row = Tp * q_dst + static_cast<int>(t);
                    m.at(row, col) = F.add(m.at(row, col), F.mul(sign, red[t]));
                }
            }
        }
    }
    return m;
}

} // namespace strandetail

// Graded Betti numbers beta_{i,j} of S/I via Koszul cohomology, for all i and
// all rows j - i <= reg_bound.
inline BettiTable betti_table(const RingPtr& R, const std::vector<Poly>& gens, int reg_bound) {
    GradedQuotient Q(R, gens);
    int n = R->nvars;
    BettiTable out;
    std::vector<std::vector<std::vector<int>>> sets(n + 2);
    for (int i = 0; i <= n + 1; ++i) sets[i] = strandetail::subsets(n, i);

    for (int i = 0; i <= n; ++i) {
        for (int row = 0; row <= reg_bound; ++row) {
            int j = i + row;
            int deg_mid = row;
            i64 D = static_cast<i64>(sets[i].size()) * Q.dim_of(deg_mid);
            if (D == 0) continue;
            // d1: Lambda^i (x) (S)_row -> Lambda^{i-1} (x) (S)_{row+1}
            int r1 = 0, r2 = 0;
            if (i >= 1) {
                Mat d1 = strandetail::koszul_map(Q, i, deg_mid, sets[i], sets[i - 1]);
                r1 = rank(d1);
            }
            if (i + 1 <= n && deg_mid - 1 >= 0) {
                Mat d2 = strandetail::koszul_map(Q, i + 1, deg_mid - 1, sets[i + 1], sets[i]);
                r2 = rank(d2);
            }
            i64 b = D - r1 - r2;
            check(b >= 0, "negative Betti number");
            if (b > 0) out.beta[{i, j}] = b;
        }
    }
    return out;
}

// conventional text layout: rows are j - i, columns are i
inline std::string betti_to_string(const BettiTable& b) {
    int max_i = 0, max_row = 0;
    for (const auto& kv : b.beta) {
        max_i = std::max(max_i, kv.first.first);
        max_row = std::max(max_row, kv.first.second - kv.first.first);
    }
    std::string s;
    for (int row = 0; row <= max_row; ++row) {
        s += std::to_string(row) + ":";
        for (int i = 0; i <= max_i; ++i) {
            i64 v = b.get(i, i + row);
            s += " ";
            s += (v == 0 ? "." : std::to_string(v));
        }
        s += "\n";
    }
    return s;
}

// Substitute the last k variables by seeded random linear forms in the first
// nvars-k variables. For an ACM quotient and generic forms this is a regular
// sequence and preserves the Hilbert numerator and the Betti table.
inline std::vector<Poly> slice_last_vars(const RingPtr& R, const std::vector<Poly>& gens, int k,
                                         u64 seed, RingPtr* out_ring,
                                         std::vector<Poly>* out_images = nullptr) {
    int n = R->nvars;
    check(k >= 0 && k < n, "slice_last_vars count");
    RingPtr S = make_ring_xs(R->F, n - k, "s");
    Rng rng(seed);
    std::vector<Poly> images;
    for (int i = 0; i < n - k; ++i) images.push_back(poly_var(S, i));
    for (int i = 0; i < k; ++i) {
        std::vector<Term> raw;
        for (int j = 0; j < n - k; ++j) {
            u64 c = rng.below(R->F->p());
            if (c) raw.push_back(Term{Monomial::var(n - k, j), Elem(c)});
        }
        images.push_back(poly_from_terms(S, std::move(raw)));
    }
    std::vector<Poly> out;
    for (const Poly& g : gens) {
        Poly h = substitute_linear(g, images, S);
        if (!h.is_zero()) out.push_back(h);
    }
    if (out_ring) *out_ring = S;
    if (out_images) *out_images = images;
    return out;
}

} // namespace acmext
