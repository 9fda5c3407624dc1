#pragma once

#include "mat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

namespace acmext {

struct Ring {
    FieldPtr F;
    int nvars = 0;
    std::vector<std::string> names;

    Ring(FieldPtr f, std::vector<std::string> vnames)
        : F(std::move(f)), nvars(static_cast<int>(vnames.size())), names(std::move(vnames)) {
        require(nvars >= 1, Err::ArityMismatch, "ring needs at least one variable");
    }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(FieldPtr f, std::vector<std::string> names) {
    return std::make_shared<Ring>(std::move(f), std::move(names));
}

inline RingPtr make_ring_xs(const FieldPtr& f, int n, const std::string& prefix = "x") {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
    return make_ring(f, std::move(names));
}

// same field (same prime + tower prefix relation is checked where it matters)
inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a->nvars == b->nvars && a->F->p() == b->F->p() && a->names == b->names);
}

struct Monomial {
    std::vector<std::uint16_t> e;
    int deg = 0;

    static Monomial unit(int nvars) {
        Monomial m;
        m.e.assign(nvars, 0);
        return m;
    }
    static Monomial var(int nvars, int i, int pow = 1) {
        Monomial m = unit(nvars);
        m.e[i] = static_cast<std::uint16_t>(pow);
        m.deg = pow;
        return m;
    }

    bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
};

// graded reverse lexicographic: +1 if a > b, -1 if a < b, 0 if equal
inline int cmp_grevlex(const Monomial& a, const Monomial& b) {
    if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
    for (int i = static_cast<int>(a.e.size()) - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = static_cast<std::uint16_t>(r.e[i] + b.e[i]);
    r.deg = a.deg + b.deg;
    return r;
}

inline bool mono_divides(const Monomial& a, const Monomial& b) {
    // a | b
    if (a.deg > b.deg) return false;
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

inline Monomial mono_div(const Monomial& b, const Monomial& a) {
    Monomial r = b;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = static_cast<std::uint16_t>(r.e[i] - a.e[i]);
    r.deg = b.deg - a.deg;
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i)
        r.e[i] = std::max(r.e[i], b.e[i]);
    r.deg = std::accumulate(r.e.begin(), r.e.end(), 0);
    return r;
}

struct Term {
    Monomial m;
    Elem c;
};

// Homogeneous polynomial; terms sorted descending in grevlex, no zero coefficients.
// The zero polynomial has no terms and degree() == -1.
struct Poly {
    RingPtr R;
    std::vector<Term> t;

    Poly() = default;
    explicit Poly(RingPtr r) : R(std::move(r)) {}

    bool is_zero() const { return t.empty(); }
    int degree() const { return t.empty() ? -1 : t.front().m.deg; }
    const Term& lead() const { return t.front(); }
};

inline Poly poly_zero(const RingPtr& R) { return Poly(R); }

// sort/deduplicate raw terms into canonical form; enforces homogeneity
inline Poly poly_from_terms(const RingPtr& R, std::vector<Term> raw) {
    const Field& F = *R->F;
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return cmp_grevlex(a.m, b.m) > 0; });
    Poly p(R);
    p.t.reserve(raw.size());
    for (auto& tm : raw) {
        if (!p.t.empty() && p.t.back().m == tm.m) {
            p.t.back().c = F.add(p.t.back().c, tm.c);
            if (F.is_zero(p.t.back().c)) p.t.pop_back();
        } else if (!F.is_zero(tm.c)) {
            p.t.push_back(std::move(tm));
        }
    }
    for (const Term& tm : p.t)
        require(tm.m.deg == p.t.front().m.deg, Err::DegreeMismatch, "polynomial is not homogeneous");
    return p;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    require(a.degree() == b.degree(), Err::DegreeMismatch, "adding forms of different degrees");
    const Field& F = *a.R->F;
    Poly r(a.R);
    r.t.reserve(a.t.size() + b.t.size());
    std::size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        int c = cmp_grevlex(a.t[i].m, b.t[j].m);
        if (c > 0) {
            r.t.push_back(a.t[i++]);
        } else if (c < 0) {
            r.t.push_back(b.t[j++]);
        } else {
            Elem s = F.add(a.t[i].c, b.t[j].c);
            if (!F.is_zero(s)) r.t.push_back(Term{a.t[i].m, s});
            ++i;
            ++j;
        }
    }
    while (i < a.t.size()) r.t.push_back(a.t[i++]);
    while (j < b.t.size()) r.t.push_back(b.t[j++]);
    return r;
}

inline Poly poly_scale(const Poly& a, const Elem& c) {
    const Field& F = *a.R->F;
    if (F.is_zero(c)) return Poly(a.R);
    Poly r(a.R);
    r.t.reserve(a.t.size());
    for (const Term& tm : a.t) r.t.push_back(Term{tm.m, F.mul(tm.c, c)});
    return r;
}

inline Poly poly_neg(const Poly& a) {
    Poly r(a.R);
    r.t.reserve(a.t.size());
    for (const Term& tm : a.t) r.t.push_back(Term{tm.m, a.R->F->neg(tm.c)});
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_neg(b)); }

// a - c * x^m * b, the Groebner reduction step, as a single sorted merge
inline Poly poly_sub_mul_term(const Poly& a, const Elem& c, const Monomial& m, const Poly& b) {
    const Field& F = *a.R->F;
    Poly r(a.R);
    r.t.reserve(a.t.size() + b.t.size());
    std::size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        Monomial bm = mono_mul(b.t[j].m, m);
        int cc = cmp_grevlex(a.t[i].m, bm);
        if (cc > 0) {
            r.t.push_back(a.t[i++]);
        } else if (cc < 0) {
            r.t.push_back(Term{std::move(bm), F.neg(F.mul(c, b.t[j].c))});
            ++j;
        } else {
            Elem s = F.sub(a.t[i].c, F.mul(c, b.t[j].c));
            if (!F.is_zero(s)) r.t.push_back(Term{a.t[i].m, s});
            ++i;
            ++j;
        }
    }
    while (i < a.t.size()) r.t.push_back(a.t[i++]);
    while (j < b.t.size()) {
        r.t.push_back(Term{mono_mul(b.t[j].m, m), F.neg(F.mul(c, b.t[j].c))});
        ++j;
    }
    return r;
}

inline Poly poly_mul_term(const Poly& a, const Monomial& m, const Elem& c) {
    const Field& F = *a.R->F;
    if (F.is_zero(c)) return Poly(a.R);
    Poly r(a.R);
    r.t.reserve(a.t.size());
    for (const Term& tm : a.t) r.t.push_back(Term{mono_mul(tm.m, m), F.mul(tm.c, c)});
    return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.R ? a.R : b.R);
    std::vector<Term> raw;
    raw.reserve(a.t.size() * b.t.size());
    const Field& F = *a.R->F;
    for (const Term& x : a.t)
        for (const Term& y : b.t) raw.push_back(Term{mono_mul(x.m, y.m), F.mul(x.c, y.c)});
    return poly_from_terms(a.R, std::move(raw));
}

inline Poly poly_pow(const Poly& a, int e) {
    check(e >= 0, "poly_pow exponent");
    Poly r = poly_from_terms(a.R, {Term{Monomial::unit(a.R->nvars), a.R->F->one()}});
    for (int i = 0; i < e; ++i) r = poly_mul(r, a);
    return r;
}

inline bool poly_equal(const Poly& a, const Poly& b) {
    if (a.t.size() != b.t.size()) return false;
    for (std::size_t i = 0; i < a.t.size(); ++i)
        if (!(a.t[i].m == b.t[i].m) || a.t[i].c != b.t[i].c) return false;
    return true;
}

// total order on polynomials for canonical sorting and deduplication
inline int canonical_poly_cmp(const Poly& a, const Poly& b) {
    if (a.t.size() != b.t.size()) return a.t.size() < b.t.size() ? -1 : 1;
    for (std::size_t i = 0; i < a.t.size(); ++i) {
        int c = cmp_grevlex(a.t[i].m, b.t[i].m);
        if (c != 0) return c;
        if (a.t[i].c != b.t[i].c) return Field::lex_less(a.t[i].c, b.t[i].c) ? -1 : 1;
    }
    return 0;
}

// leading coefficient scaled to 1
inline Poly poly_monic(const Poly& a) {
    if (a.is_zero()) return a;
    return poly_scale(a, a.R->F->inv(a.lead().c));
}

inline Poly poly_var(const RingPtr& R, int i) {
    return poly_from_terms(R, {Term{Monomial::var(R->nvars, i), R->F->one()}});
}

inline Poly poly_const(const RingPtr& R, const Elem& c) {
    if (R->F->is_zero(c)) return Poly(R);
    return poly_from_terms(R, {Term{Monomial::unit(R->nvars), c}});
}

// all monomials of total degree d, descending grevlex; count C(nvars-1+d, d)
inline std::vector<Monomial> monomial_basis(const RingPtr& R, int d) {
    require(d >= 0, Err::DegreeMismatch, "monomial_basis needs d >= 0");
    std::vector<Monomial> out;
    Monomial cur = Monomial::unit(R->nvars);
    cur.deg = d;
    // enumerate exponent vectors summing to d
    std::vector<int> stack;
    std::function<void(int, int)> rec = [&](int i, int rem) {
        if (i == R->nvars - 1) {
            cur.e[i] = static_cast<std::uint16_t>(rem);
            out.push_back(cur);
            return;
        }
        for (int v = rem; v >= 0; --v) {
            cur.e[i] = static_cast<std::uint16_t>(v);
            rec(i + 1, rem - v);
        }
        cur.e[i] = 0;
    };
    rec(0, d);
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return cmp_grevlex(a, b) > 0; });
    return out;
}

// index lookup in a descending-sorted monomial basis
inline int basis_index(const std::vector<Monomial>& basis, const Monomial& m) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m, [](const Monomial& a, const Monomial& b) {
        return cmp_grevlex(a, b) > 0;
    });
    check(it != basis.end() && *it == m, "monomial not found in basis");
    return static_cast<int>(it - basis.begin());
}

// rows indexed by polys (each homogeneous of degree d or zero), columns by monomial_basis(R, d)
inline Mat coefficient_matrix(const RingPtr& R, const std::vector<Poly>& polys, int d,
                              const std::vector<Monomial>* basis_opt = nullptr) {
    std::vector<Monomial> local;
    const std::vector<Monomial>& basis = basis_opt ? *basis_opt : (local = monomial_basis(R, d));
    Mat m(R->F, static_cast<int>(polys.size()), static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].is_zero()) continue;
        require(polys[i].degree() == d, Err::DegreeMismatch, "coefficient_matrix degree mismatch");
        for (const Term& tm : polys[i].t) m.at(static_cast<int>(i), basis_index(basis, tm.m)) = tm.c;
    }
    return m;
}

inline Poly poly_from_coeff_row(const RingPtr& R, const Mat& m, int row,
                                const std::vector<Monomial>& basis) {
    std::vector<Term> raw;
    for (int j = 0; j < m.cols; ++j)
        if (!R->F->is_zero(m.at(row, j))) raw.push_back(Term{basis[j], m.at(row, j)});
    return poly_from_terms(R, std::move(raw));
}

// p with variable i replaced by images[i]; images linear or zero in a common target ring
inline Poly substitute_linear(const Poly& p, const std::vector<Poly>& images, const RingPtr& target) {
    require(static_cast<int>(images.size()) == p.R->nvars, Err::ArityMismatch,
            "substitute_linear: one image per variable required");
    for (const Poly& im : images)
        require(im.is_zero() || im.degree() == 1, Err::ArityMismatch,
                "substitute_linear images must be linear or zero");
    Poly acc(target);
    for (const Term& tm : p.t) {
        Poly prod = poly_const(target, tm.c);
        for (int i = 0; i < p.R->nvars && !prod.is_zero(); ++i) {
            for (int k = 0; k < tm.m.e[i]; ++k) prod = poly_mul(prod, images[i]);
        }
        acc = poly_add(acc, prod);
    }
    return acc;
}

inline Elem poly_eval(const Poly& p, const std::vector<Elem>& point) {
    require(static_cast<int>(point.size()) == p.R->nvars, Err::ArityMismatch, "poly_eval arity");
    const Field& F = *p.R->F;
    Elem acc;
    for (const Term& tm : p.t) {
        Elem v = tm.c;
        for (int i = 0; i < p.R->nvars; ++i)
            for (int k = 0; k < tm.m.e[i]; ++k) v = F.mul(v, point[i]);
        acc = F.add(acc, v);
    }
    return acc;
}

// Matrix of forms with graded shifts: entry (i,j) is zero or homogeneous of
// degree coldeg[j] - rowdeg[i].
struct PolyMatrix {
    RingPtr R;
    int rows = 0, cols = 0;
    std::vector<Poly> e;
    std::vector<int> rowdeg, coldeg;

    PolyMatrix() = default;
    PolyMatrix(RingPtr r, int nr, int nc, std::vector<int> rd, std::vector<int> cd)
        : R(std::move(r)), rows(nr), cols(nc), e(std::size_t(nr) * nc, Poly(R)),
          rowdeg(std::move(rd)), coldeg(std::move(cd)) {
        check(static_cast<int>(rowdeg.size()) == rows && static_cast<int>(coldeg.size()) == cols,
              "PolyMatrix shift lengths");
        for (auto& p : e) p.R = R;
    }

    Poly& at(int i, int j) { return e[std::size_t(i) * cols + j]; }
    const Poly& at(int i, int j) const { return e[std::size_t(i) * cols + j]; }

    void set(int i, int j, Poly p) {
        require(p.is_zero() || p.degree() == coldeg[j] - rowdeg[i], Err::DegreeMismatch,
                "PolyMatrix entry degree violates shifts");
        at(i, j) = std::move(p);
    }

    bool is_zero() const {
        for (const Poly& p : e)
            if (!p.is_zero()) return false;
        return true;
    }
};

// product with induced shifts; requires a.coldeg == b.rowdeg
inline PolyMatrix matmul_poly(const PolyMatrix& a, const PolyMatrix& b) {
    require(a.cols == b.rows, Err::ShapeMismatch, "matmul_poly: inner dimensions");
    require(a.coldeg == b.rowdeg, Err::ShapeMismatch, "matmul_poly: incompatible degree shifts");
    PolyMatrix r(a.R, a.rows, b.cols, a.rowdeg, b.coldeg);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < b.cols; ++j) {
            Poly s(a.R);
            for (int k = 0; k < a.cols; ++k) {
                if (a.at(i, k).is_zero() || b.at(k, j).is_zero()) continue;
                s = poly_add(s, poly_mul(a.at(i, k), b.at(k, j)));
            }
            r.at(i, j) = std::move(s);
        }
    return r;
}

// decompose a linear matrix m = sum_l x_l * M_l into scalar coefficient slices
inline std::vector<Mat> variable_slices(const PolyMatrix& m) {
    const RingPtr& R = m.R;
    std::vector<Mat> slices(R->nvars, Mat(R->F, m.rows, m.cols));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            const Poly& p = m.at(i, j);
            if (p.is_zero()) continue;
            require(p.degree() == 1, Err::NotLinear, "variable_slices requires linear entries");
            for (const Term& tm : p.t) {
                for (int l = 0; l < R->nvars; ++l)
                    if (tm.m.e[l] == 1) slices[l].at(i, j) = tm.c;
            }
        }
    return slices;
}

// reassemble sum_l x_l * M_l
inline PolyMatrix slices_to_linear_matrix(const RingPtr& R, const std::vector<Mat>& slices,
                                          std::vector<int> rowdeg, std::vector<int> coldeg) {
    check(!slices.empty(), "no slices");
    PolyMatrix m(R, slices[0].rows, slices[0].cols, std::move(rowdeg), std::move(coldeg));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            std::vector<Term> raw;
            for (int l = 0; l < R->nvars; ++l) {
                const Elem& c = slices[l].at(i, j);
                if (!R->F->is_zero(c)) raw.push_back(Term{Monomial::var(R->nvars, l), c});
            }
            m.at(i, j) = poly_from_terms(R, std::move(raw));
        }
    return m;
}

} // namespace acmext
