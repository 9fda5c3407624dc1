#pragma once

#include "field.hpp"

#include <utility>
#include <vector>

namespace acmext {

// Dense matrix over a Field (entries may sit at any tower level <= field height).
struct Mat {
    FieldPtr F;
    int rows = 0;
    int cols = 0;
    std::vector<Elem> a;

    Mat() = default;
    Mat(FieldPtr f, int r, int c) : F(std::move(f)), rows(r), cols(c), a(std::size_t(r) * c) {}

    Elem& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
    const Elem& at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

    static Mat identity(const FieldPtr& f, int n) {
        Mat m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
        return m;
    }

    Mat transpose() const {
        Mat t(F, cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    Mat mul(const Mat& b) const {
        require(cols == b.rows, Err::ShapeMismatch, "matrix product shape");
        Mat r(F, rows, b.cols);
        for (int i = 0; i < rows; ++i)
            for (int k = 0; k < cols; ++k) {
                const Elem& x = at(i, k);
                if (F->is_zero(x)) continue;
                for (int j = 0; j < b.cols; ++j) {
                    const Elem& y = b.at(k, j);
                    if (F->is_zero(y)) continue;
                    r.at(i, j) = F->add(r.at(i, j), F->mul(x, y));
                }
            }
        return r;
    }

    bool is_zero() const {
        for (const Elem& x : a)
            if (!F->is_zero(x)) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        if (rows != o.rows || cols != o.cols) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != o.a[i]) return false;
        return true;
    }

    static Mat stack_rows(const Mat& top, const Mat& bottom) {
        require(top.cols == bottom.cols, Err::ShapeMismatch, "stack_rows width");
        Mat r(top.F, top.rows + bottom.rows, top.cols);
        for (int i = 0; i < top.rows; ++i)
            for (int j = 0; j < top.cols; ++j) r.at(i, j) = top.at(i, j);
        for (int i = 0; i < bottom.rows; ++i)
            for (int j = 0; j < top.cols; ++j) r.at(top.rows + i, j) = bottom.at(i, j);
        return r;
    }
};

struct RrefResult {
    Mat R;
    int rank = 0;
    std::vector<int> pivots; // pivot column per nonzero row
};

// Reduced row echelon form: pivots 1, cleared above and below. Row space preserved.
inline RrefResult rref(Mat m) {
    const Field& F = *m.F;
    RrefResult out;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (!F.is_zero(m.at(i, c))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = c; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Elem ip = F.inv(m.at(r, c));
        for (int j = c; j < m.cols; ++j) m.at(r, j) = F.mul(m.at(r, j), ip);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || F.is_zero(m.at(i, c))) continue;
            Elem f = m.at(i, c);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(r, j)));
        }
        out.pivots.push_back(c);
        ++r;
    }
    out.rank = r;
    out.R = std::move(m);
    return out;
}

inline int rank(const Mat& m) { return rref(m).rank; }

// Linear subspace of K^ambient given by a basis in RREF (rows independent).
struct Subspace {
    FieldPtr F;
    int ambient = 0;
    Mat basis; // rank x ambient, RREF, no zero rows

    int dim() const { return basis.rows; }
};

inline Subspace subspace_from_rows(const Mat& rows_mat) {
    RrefResult rr = rref(rows_mat);
    Mat b(rows_mat.F, rr.rank, rows_mat.cols);
    for (int i = 0; i < rr.rank; ++i)
        for (int j = 0; j < rows_mat.cols; ++j) b.at(i, j) = rr.R.at(i, j);
    return Subspace{rows_mat.F, rows_mat.cols, std::move(b)};
}

// {v : m v = 0}, basis rows in RREF. dim = cols - rank.
inline Subspace right_kernel(const Mat& m) {
    RrefResult rr = rref(m);
    const Field& F = *m.F;
    std::vector<bool> is_piv(m.cols, false);
    for (int c : rr.pivots) is_piv[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_piv[c]) free_cols.push_back(c);
    Mat basis(m.F, static_cast<int>(free_cols.size()), m.cols);
    for (int k = 0; k < basis.rows; ++k) {
        int fc = free_cols[k];
        basis.at(k, fc) = F.one();
        for (int i = 0; i < rr.rank; ++i)
            basis.at(k, rr.pivots[i]) = F.neg(rr.R.at(i, fc));
    }
    // rows are already in RREF up to row order; sort by pivot (= free col index)
    return subspace_from_rows(basis);
}

inline Subspace left_kernel(const Mat& m) { return right_kernel(m.transpose()); }

// Reduce a row vector against an RREF basis; returns the remainder.
inline std::vector<Elem> reduce_against(const Subspace& s, std::vector<Elem> v) {
    const Field& F = *s.F;
    for (int i = 0; i < s.basis.rows; ++i) {
        int c = -1;
        for (int j = 0; j < s.ambient; ++j)
            if (!F.is_zero(s.basis.at(i, j))) { c = j; break; }
        if (c < 0) continue;
        if (F.is_zero(v[c])) continue;
        Elem f = v[c];
        for (int j = c; j < s.ambient; ++j) v[j] = F.sub(v[j], F.mul(f, s.basis.at(i, j)));
    }
    return v;
}

inline bool subspace_member(const Subspace& s, const std::vector<Elem>& v) {
    require(static_cast<int>(v.size()) == s.ambient, Err::AmbientMismatch, "vector length");
    std::vector<Elem> r = reduce_against(s, v);
    for (const Elem& x : r)
        if (!s.F->is_zero(x)) return false;
    return true;
}

// true iff b is contained in a
inline bool subspace_contains(const Subspace& a, const Subspace& b) {
    require(a.ambient == b.ambient, Err::AmbientMismatch, "subspace ambient dimensions differ");
    for (int i = 0; i < b.basis.rows; ++i) {
        std::vector<Elem> v(a.ambient);
        for (int j = 0; j < a.ambient; ++j) v[j] = b.basis.at(i, j);
        if (!subspace_member(a, v)) return false;
    }
    return true;
}

inline bool subspace_equal(const Subspace& a, const Subspace& b) {
    return a.ambient == b.ambient && a.basis == b.basis;
}

// One particular solution x of m x = rhs (column-wise). Throws Inconsistent.
inline Mat solve(const Mat& m, const Mat& rhs) {
    require(rhs.rows == m.rows, Err::ShapeMismatch, "solve: rhs row count");
    const Field& F = *m.F;
    Mat aug(m.F, m.rows, m.cols + rhs.cols);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        for (int j = 0; j < rhs.cols; ++j) aug.at(i, m.cols + j) = rhs.at(i, j);
    }
    RrefResult rr = rref(std::move(aug));
    Mat x(m.F, m.cols, rhs.cols);
    for (int i = 0; i < rr.rank; ++i) {
        int c = rr.pivots[i];
        require(c < m.cols, Err::Inconsistent, "linear system has no solution");
        for (int j = 0; j < rhs.cols; ++j) x.at(c, j) = rr.R.at(i, m.cols + j);
    }
    return x;
}

// Solver with a factored coefficient matrix, for repeated right-hand sides.
class PreparedSolver {
  public:
    explicit PreparedSolver(const Mat& m) : F_(m.F), cols_(m.cols) {
        Mat aug(m.F, m.rows, m.cols + m.rows);
        for (int i = 0; i < m.rows; ++i) {
            for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
            aug.at(i, m.cols + i) = m.F->one();
        }
        rr_ = rref(std::move(aug));
        for (int i = 0; i < rr_.rank && rr_.pivots[i] < cols_; ++i) ++nsys_rank_;
    }

    // solves m x = rhs for one rhs vector; throws Inconsistent
    std::vector<Elem> solve_one(const std::vector<Elem>& rhs) const {
        const Field& F = *F_;
        int rows = rr_.R.rows;
        std::vector<Elem> x(cols_);
        for (int i = 0; i < rows; ++i) {
            // value of transformed rhs at row i
            Elem v;
            for (int k = 0; k < rows; ++k) {
                const Elem& t = rr_.R.at(i, cols_ + k);
                if (F.is_zero(t) || F.is_zero(rhs[k])) continue;
                v = F.add(v, F.mul(t, rhs[k]));
            }
            if (i < rr_.rank && rr_.pivots[i] < cols_) {
                x[rr_.pivots[i]] = v;
            } else {
                require(F.is_zero(v), Err::Inconsistent, "prepared solve: no solution");
            }
        }
        return x;
    }

    int system_rank() const { return nsys_rank_; }

  private:
    FieldPtr F_;
    int cols_;
    int nsys_rank_ = 0;
    RrefResult rr_;
};

} // namespace acmext
