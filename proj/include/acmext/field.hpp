#pragma once

#include "common.hpp"

#include <array>
#include <cstring>
#include <memory>
#include <vector>

namespace acmext {

// Element of F_{p^(2^k)}: coefficient vector over F_p of length 2^k.
// Levels 0 and 1 (the common case) live inline; deeper tower levels
// spill into the vector.
class Elem {
  public:
    Elem() : n_(1) { buf_[0] = 0; }
    explicit Elem(u64 v) : n_(1) { buf_[0] = v; }

    static Elem with_len(std::size_t n) {
        Elem e;
        e.resize(n);
        return e;
    }

    std::size_t len() const { return n_; }

    u64* data() { return n_ <= 2 ? buf_.data() : big_.data(); }
    const u64* data() const { return n_ <= 2 ? buf_.data() : big_.data(); }

    u64 operator[](std::size_t i) const { return data()[i]; }
    u64& operator[](std::size_t i) { return data()[i]; }

    void resize(std::size_t n) {
        if (n <= 2) {
            if (n_ > 2) {
                buf_[0] = big_.empty() ? 0 : big_[0];
                buf_[1] = big_.size() > 1 ? big_[1] : 0;
                big_.clear();
            }
            for (std::size_t i = n_ < 2 ? n_ : 2; i < n; ++i) buf_[i] = 0;
        } else {
            if (n_ <= 2) {
                big_.assign(n, 0);
                big_[0] = buf_[0];
                if (n_ > 1) big_[1] = buf_[1];
            } else {
                big_.resize(n, 0);
            }
        }
        n_ = static_cast<std::uint32_t>(n);
    }

    bool operator==(const Elem& o) const {
        std::size_t a = n_, b = o.n_;
        std::size_t m = a < b ? a : b;
        for (std::size_t i = 0; i < m; ++i)
            if (data()[i] != o.data()[i]) return false;
        for (std::size_t i = m; i < a; ++i)
            if (data()[i] != 0) return false;
        for (std::size_t i = m; i < b; ++i)
            if (o.data()[i] != 0) return false;
        return true;
    }
    bool operator!=(const Elem& o) const { return !(*this == o); }

  private:
    std::uint32_t n_;
    std::array<u64, 2> buf_;
    std::vector<u64> big_;
};

// Prime field F_p with a tower of quadratic extensions. tower()[k] is the
// non-residue of level k adjoined as a square root to form level k+1.
// Immutable after construction; all operations are const.
class Field {
  public:
    static constexpr u64 kMaxPrime = (u64(1) << 31) - 1;

    static Field prime(u64 p) {
        require(p > 2, Err::TooSmall, "prime modulus must exceed 2, got " + std::to_string(p));
        require(p <= kMaxPrime, Err::TooLarge, "prime modulus above machine-word square-root bound");
        require(is_prime(p), Err::NotPrime, std::to_string(p) + " is not prime");
        return Field(p);
    }

    // one more tower level, adjoining a square root of the smallest
    // non-residue (in integer encoding) of the current top level
    Field extended() const {
        Field f(*this);
        Elem nr = f.smallest_nonresidue(static_cast<int>(f.tower_.size()));
        f.tower_.push_back(nr);
        return f;
    }

    Field extended_to(int height) const {
        Field f(*this);
        while (static_cast<int>(f.tower_.size()) < height) f = f.extended();
        return f;
    }

    u64 p() const { return p_; }
    int height() const { return static_cast<int>(tower_.size()); }
    const std::vector<Elem>& tower() const { return tower_; }

    // true when other is this field or a further quadratic extension of it
    bool prefix_of(const Field& other) const {
        if (p_ != other.p_ || tower_.size() > other.tower_.size()) return false;
        for (std::size_t i = 0; i < tower_.size(); ++i)
            if (tower_[i] != other.tower_[i]) return false;
        return true;
    }

    static int level_of_len(std::size_t n) {
        int l = 0;
        while ((std::size_t(1) << l) < n) ++l;
        return l;
    }
    int level(const Elem& a) const { return level_of_len(a.len()); }

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(i64 v) const {
        i64 m = static_cast<i64>(p_);
        i64 r = v % m;
        if (r < 0) r += m;
        return Elem(static_cast<u64>(r));
    }

    bool is_zero(const Elem& a) const {
        for (std::size_t i = 0; i < a.len(); ++i)
            if (a[i] != 0) return false;
        return true;
    }
    bool is_one(const Elem& a) const {
        if (a[0] != 1) return false;
        for (std::size_t i = 1; i < a.len(); ++i)
            if (a[i] != 0) return false;
        return true;
    }

    // lift to the given level (zero padding)
    Elem embed(const Elem& a, int lvl) const {
        std::size_t n = std::size_t(1) << lvl;
        check(n >= a.len(), "embed: cannot shrink");
        if (n == a.len()) return a;
        Elem r = a;
        r.resize(n);
        return r;
    }

    // drop trailing zero halves: canonical minimal-level representative
    Elem drop_level(const Elem& a) const {
        std::size_t n = a.len();
        while (n > 1) {
            bool hi_zero = true;
            for (std::size_t i = n / 2; i < n; ++i)
                if (a[i] != 0) { hi_zero = false; break; }
            if (!hi_zero) break;
            n /= 2;
        }
        if (n == a.len()) return a;
        Elem r = Elem::with_len(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = a[i];
        return r;
    }

    Elem add(const Elem& a, const Elem& b) const {
        const Elem *lo = &a, *hi = &b;
        if (lo->len() > hi->len()) std::swap(lo, hi);
        Elem r = *hi;
        for (std::size_t i = 0; i < lo->len(); ++i) r[i] = addm(r[i], (*lo)[i]);
        return r;
    }

    Elem sub(const Elem& a, const Elem& b) const {
        std::size_t n = a.len() > b.len() ? a.len() : b.len();
        Elem r = a;
        r.resize(n);
        for (std::size_t i = 0; i < b.len(); ++i) r[i] = subm(r[i], b[i]);
        return r;
    }

    Elem neg(const Elem& a) const {
        Elem r = a;
        for (std::size_t i = 0; i < r.len(); ++i) r[i] = r[i] ? p_ - r[i] : 0;
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        if (a.len() == 1 && b.len() == 1) return Elem(mulm(a[0], b[0]));
        if (a.len() == 1) return scale(b, a[0]);
        if (b.len() == 1) return scale(a, b[0]);
        std::size_t n = a.len() > b.len() ? a.len() : b.len();
        Elem ae = embed(a, level_of_len(n));
        Elem be = embed(b, level_of_len(n));
        Elem r = Elem::with_len(n);
        u64 scratch[kScratch];
        mul_span(ae.data(), be.data(), r.data(), n, scratch);
        return r;
    }

    Elem scale(const Elem& a, u64 c) const {
        Elem r = a;
        for (std::size_t i = 0; i < r.len(); ++i) r[i] = mulm(r[i], c);
        return r;
    }

    Elem sq(const Elem& a) const { return mul(a, a); }

    Elem inv(const Elem& a) const {
        check(!is_zero(a), "inverse of zero");
        if (a.len() == 1) return Elem(inv_mod(a[0]));
        // (a0 + a1 r)^-1 = (a0 - a1 r) / (a0^2 - T a1^2)
        std::size_t h = a.len() / 2;
        Elem a0 = lo_half(a), a1 = hi_half(a);
        Elem nrm = norm_step(a0, a1, level_of_len(a.len()) - 1);
        Elem ninv = inv(nrm);
        Elem r0 = mul(a0, ninv);
        Elem r1 = neg(mul(a1, ninv));
        return join(r0, r1, h);
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    // multiplicative norm down one level: a0^2 - T_{lvl-1} a1^2
    Elem norm_step(const Elem& a0, const Elem& a1, int lower_lvl) const {
        return sub(sq(a0), mul(tower_.at(lower_lvl), sq(a1)));
    }

    bool is_square(const Elem& a) const {
        if (is_zero(a)) return true;
        Elem x = a;
        while (x.len() > 1) {
            std::size_t h = x.len() / 2;
            Elem x0 = lo_half(x), x1 = hi_half(x);
            x = norm_step(x0, x1, level_of_len(h * 2) - 1);
            x.resize(h);
            // norm_step result lives one level down already; keep length h
        }
        return euler(x[0]) != p_ - 1;
    }

    // deterministic square root: of the two roots, the one whose coordinate
    // vector is lexicographically smallest. Throws NonResidue.
    Elem sqrt(const Elem& a) const {
        if (is_zero(a)) return Elem(0);
        require(is_square(a), Err::NonResidue, "element is not a square at its level");
        Elem s = sqrt_rec(a);
        Elem t = neg(s);
        return lex_less(t, s) ? t : s;
    }

    // x -> x^p, the arithmetic Frobenius over the prime field
    Elem frobenius(const Elem& a) const { return pow(a, p_); }

    Elem pow(const Elem& a, u64 e) const {
        Elem r(1), b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    // total order on elements used for canonical choices
    static bool lex_less(const Elem& a, const Elem& b) {
        std::size_t n = a.len() > b.len() ? a.len() : b.len();
        for (std::size_t i = 0; i < n; ++i) {
            u64 x = i < a.len() ? a[i] : 0;
            u64 y = i < b.len() ? b[i] : 0;
            if (x != y) return x < y;
        }
        return false;
    }

    // integer encoding sum c_i p^i, for deterministic candidate enumeration
    Elem from_encoding(u64 code, int lvl) const {
        Elem r = Elem::with_len(std::size_t(1) << lvl);
        for (std::size_t i = 0; i < r.len() && code; ++i) {
            r[i] = code % p_;
            code /= p_;
        }
        return r;
    }

    static bool is_prime(u64 p) {
        if (p < 2) return false;
        if (p % 2 == 0) return p == 2;
        for (u64 d = 3; d * d <= p; d += 2)
            if (p % d == 0) return false;
        return true;
    }

    u64 addm(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    u64 subm(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
    u64 mulm(u64 a, u64 b) const { return (a * b) % p_; }

    u64 inv_mod(u64 a) const {
        check(a != 0, "inverse of zero residue");
        i64 t = 0, nt = 1;
        i64 r = static_cast<i64>(p_), nr = static_cast<i64>(a);
        while (nr != 0) {
            i64 q = r / nr;
            i64 tmp = t - q * nt; t = nt; nt = tmp;
            tmp = r - q * nr; r = nr; nr = tmp;
        }
        return t < 0 ? static_cast<u64>(t + static_cast<i64>(p_)) : static_cast<u64>(t);
    }

  private:
    explicit Field(u64 p) : p_(p) {}

    static constexpr std::size_t kScratch = 512;

    std::size_t static half(std::size_t n) { return n / 2; }

    static Elem lo_half(const Elem& a) {
        std::size_t h = a.len() / 2;
        Elem r = Elem::with_len(h);
        for (std::size_t i = 0; i < h; ++i) r[i] = a[i];
        return r;
    }
    static Elem hi_half(const Elem& a) {
        std::size_t h = a.len() / 2;
        Elem r = Elem::with_len(h);
        for (std::size_t i = 0; i < h; ++i) r[i] = a[h + i];
        return r;
    }
    static Elem join(const Elem& lo, const Elem& hi, std::size_t h) {
        Elem r = Elem::with_len(2 * h);
        for (std::size_t i = 0; i < h; ++i) {
            r[i] = i < lo.len() ? lo[i] : 0;
            r[h + i] = i < hi.len() ? hi[i] : 0;
        }
        return r;
    }

    // out = a*b at length n (both length n), Karatsuba-style over the tower
    void mul_span(const u64* a, const u64* b, u64* out, std::size_t n, u64* scratch) const {
        if (n == 1) {
            out[0] = mulm(a[0], b[0]);
            return;
        }
        std::size_t h = n / 2;
        int lvl = level_of_len(n);
        const Elem& T = tower_[lvl - 1];
        u64* p0 = scratch;            // a0*b0
        u64* p1 = scratch + h;        // a1*b1
        u64* psum = scratch + 2 * h;  // (a0+a1)(b0+b1)
        u64* sa = scratch + 3 * h;
        u64* sb = scratch + 4 * h;
        u64* tb = scratch + 5 * h;    // T*(a1*b1)
        u64* next = scratch + 6 * h;
        mul_span(a, b, p0, h, next);
        mul_span(a + h, b + h, p1, h, next);
        for (std::size_t i = 0; i < h; ++i) {
            sa[i] = addm(a[i], a[h + i]);
            sb[i] = addm(b[i], b[h + i]);
        }
        mul_span(sa, sb, psum, h, next);
        // T * p1 (T has length <= h)
        for (std::size_t i = 0; i < h; ++i) sa[i] = i < T.len() ? T[i] : 0;
        mul_span(sa, p1, tb, h, next);
        for (std::size_t i = 0; i < h; ++i) {
            out[i] = addm(p0[i], tb[i]);
            out[h + i] = subm(psum[i], addm(p0[i], p1[i]));
        }
    }

    u64 euler(u64 a) const {
        // a^((p-1)/2) mod p
        u64 r = 1, b = a % p_, e = (p_ - 1) / 2;
        while (e) {
            if (e & 1) r = mulm(r, b);
            b = mulm(b, b);
            e >>= 1;
        }
        return r;
    }

    u64 smallest_nonresidue_base() const {
        for (u64 c = 2; c < p_; ++c)
            if (euler(c) == p_ - 1) return c;
        check(false, "no non-residue found");
        return 0;
    }

    Elem smallest_nonresidue(int lvl) const {
        if (lvl == 0) return Elem(smallest_nonresidue_base());
        for (u64 code = 2;; ++code) {
            Elem c = from_encoding(code, lvl);
            if (!is_zero(c) && !is_square(c)) return drop_or_keep(c, lvl);
        }
    }

    // keep the element at exactly the requested level's length
    Elem drop_or_keep(const Elem& a, int lvl) const { return embed(drop_level(a), lvl); }

    u64 tonelli_shanks(u64 a) const {
        if (a == 0) return 0;
        check(euler(a) == 1, "tonelli_shanks on non-residue");
        if (p_ % 4 == 3) {
            u64 r = powm(a, (p_ + 1) / 4);
            return r;
        }
        u64 q = p_ - 1;
        u64 s = 0;
        while ((q & 1) == 0) { q >>= 1; ++s; }
        u64 z = smallest_nonresidue_base();
        u64 m = s, c = powm(z, q), t = powm(a, q), r = powm(a, (q + 1) / 2);
        while (t != 1) {
            u64 i = 0, tt = t;
            while (tt != 1) { tt = mulm(tt, tt); ++i; }
            u64 b = c;
            for (u64 j = 0; j + i + 1 < m; ++j) b = mulm(b, b);
            m = i;
            c = mulm(b, b);
            t = mulm(t, c);
            r = mulm(r, b);
        }
        return r;
    }

    u64 powm(u64 a, u64 e) const {
        u64 r = 1, b = a % p_;
        while (e) {
            if (e & 1) r = mulm(r, b);
            b = mulm(b, b);
            e >>= 1;
        }
        return r;
    }

    Elem sqrt_rec(const Elem& a) const {
        if (a.len() == 1) return Elem(tonelli_shanks(a[0]));
        std::size_t h = a.len() / 2;
        int lower = level_of_len(a.len()) - 1;
        Elem a0 = lo_half(a), a1 = hi_half(a);
        const Elem& T = tower_[lower];
        if (is_zero(a1)) {
            if (is_square(a0)) return embed(sqrt_rec(a0), lower + 1);
            // a0 = (t*r)^2 with t = sqrt(a0/T)
            Elem t = sqrt_rec(div(a0, T));
            return join(Elem(0), t, h);
        }
        Elem n = norm_step(a0, a1, lower);
        Elem nu = sqrt_rec(n);
        u64 half_inv = inv_mod(2);
        Elem hplus = scale(add(a0, nu), half_inv);
        Elem s0;
        if (!is_zero(hplus) && is_square(hplus))
            s0 = sqrt_rec(hplus);
        else
            s0 = sqrt_rec(scale(sub(a0, nu), half_inv));
        Elem s1 = div(scale(a1, half_inv), s0);
        return join(s0, s1, h);
    }

    u64 p_;
    std::vector<Elem> tower_;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr make_prime_field(u64 p) { return std::make_shared<Field>(Field::prime(p)); }
inline FieldPtr extend_quadratic(const FieldPtr& f) { return std::make_shared<Field>(f->extended()); }
inline FieldPtr extend_to(const FieldPtr& f, int height) {
    return std::make_shared<Field>(f->extended_to(height));
}

} // namespace acmext
