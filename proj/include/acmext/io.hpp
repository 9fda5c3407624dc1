#pragma once

#include "ring.hpp"

#include <fstream>
#include <sstream>

namespace acmext {

// Polynomial text format: sums of terms `c*x0^a0*...*xn^an`, coefficients as
// residues; the coefficient and unit exponents may be omitted.

inline std::string poly_to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    const Field& F = *p.R->F;
    std::string s;
    bool first = true;
    for (const Term& t : p.t) {
        if (!first) s += "+";
        first = false;
        check(F.level(t.c) == 0, "text format carries prime-field coefficients only");
        bool have_coeff = t.c[0] != 1 || t.m.deg == 0;
        if (have_coeff) s += std::to_string(t.c[0]);
        bool have_var = false;
        for (int v = 0; v < p.R->nvars; ++v) {
            if (t.m.e[v] == 0) continue;
            if (have_var || have_coeff) s += "*";
            s += p.R->names[v];
            if (t.m.e[v] > 1) s += "^" + std::to_string(static_cast<int>(t.m.e[v]));
            have_var = true;
        }
    }
    return s;
}

namespace iodetail {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    int line;

    [[noreturn]] void err(const std::string& what) const {
        fail(Err::ParseError, what + " at line " + std::to_string(line) + ", column "
                                  + std::to_string(pos + 1));
    }
    bool eof() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
};

inline u64 parse_number(Cursor& c) {
    if (c.eof() || !std::isdigit(static_cast<unsigned char>(c.peek()))) c.err("expected a number");
    u64 v = 0;
    while (!c.eof() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
        v = v * 10 + static_cast<u64>(c.peek() - '0');
        if (v > (u64(1) << 62)) c.err("number too large");
        ++c.pos;
    }
    return v;
}

} // namespace iodetail

inline Poly parse_poly(const RingPtr& R, const std::string& text, int line_no) {
    iodetail::Cursor c{text, 0, line_no};
    const Field& F = *R->F;
    std::vector<Term> raw;
    auto skip_ws = [&] {
        while (!c.eof() && (c.peek() == ' ' || c.peek() == '\t')) ++c.pos;
    };
    skip_ws();
    if (c.eof()) c.err("empty polynomial");
    if (text.substr(c.pos) == "0") return Poly(R);
    bool first = true;
    while (true) {
        skip_ws();
        if (c.eof()) {
            if (first) c.err("empty polynomial");
            break;
        }
        if (!first) {
            if (c.peek() != '+') c.err("expected '+'");
            ++c.pos;
            skip_ws();
        }
        first = false;
        // one term: [coeff][*var[^e]]*...
        Elem coeff = F.one();
        Monomial m = Monomial::unit(R->nvars);
        bool saw_anything = false;
        if (!c.eof() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coeff = F.from_int(static_cast<i64>(iodetail::parse_number(c) % F.p()));
            saw_anything = true;
        }
        while (true) {
            skip_ws();
            if (!c.eof() && c.peek() == '*') {
                ++c.pos;
                skip_ws();
            } else if (saw_anything) {
                break;
            }
            if (c.eof() || !std::isalpha(static_cast<unsigned char>(c.peek()))) {
                if (!saw_anything) c.err("expected a coefficient or variable");
                c.err("expected a variable after '*'");
            }
            std::size_t start = c.pos;
            while (!c.eof() && (std::isalnum(static_cast<unsigned char>(c.peek())))) ++c.pos;
            std::string name = text.substr(start, c.pos - start);
            int var = -1;
            for (int v = 0; v < R->nvars; ++v)
                if (R->names[v] == name) { var = v; break; }
            if (var < 0) {
                c.pos = start;
                c.err("unknown variable '" + name + "'");
            }
            int e = 1;
            if (!c.eof() && c.peek() == '^') {
                ++c.pos;
                e = static_cast<int>(iodetail::parse_number(c));
            }
            m.e[var] = static_cast<std::uint16_t>(m.e[var] + e);
            m.deg += e;
            saw_anything = true;
        }
        if (!F.is_zero(coeff)) raw.push_back(Term{std::move(m), coeff});
    }
    return poly_from_terms(R, std::move(raw));
}

struct IdealFile {
    u64 p = 0;
    RingPtr R;
    std::vector<Poly> gens;
};

inline IdealFile read_ideal_stream(std::istream& in) {
    IdealFile out;
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            std::size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            std::size_t b = line.find_last_not_of(" \t\r");
            line = line.substr(a, b - a + 1);
            if (line.empty() || line[0] == '#') continue;
            return true;
        }
        return false;
    };
    require(next_line(), Err::ParseError, "missing `p <prime>` header line");
    {
        std::istringstream is(line);
        std::string tag;
        is >> tag >> out.p;
        require(tag == "p" && out.p > 0, Err::ParseError,
                "line " + std::to_string(line_no) + ": expected `p <prime>`");
    }
    require(next_line(), Err::ParseError, "missing `vars ...` header line");
    {
        std::istringstream is(line);
        std::string tag;
        is >> tag;
        require(tag == "vars", Err::ParseError,
                "line " + std::to_string(line_no) + ": expected `vars x0 x1 ...`");
        std::vector<std::string> names;
        std::string v;
        while (is >> v) names.push_back(v);
        require(!names.empty(), Err::ParseError, "no variables declared");
        out.R = make_ring(make_prime_field(out.p), names);
    }
    while (next_line()) {
        Poly g = parse_poly(out.R, line, line_no);
        if (!g.is_zero()) out.gens.push_back(g);
    }
    return out;
}

inline IdealFile read_ideal(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), Err::ParseError, "cannot open ideal file: " + path);
    return read_ideal_stream(in);
}

inline std::string write_ideal_string(const RingPtr& R, const std::vector<Poly>& gens) {
    std::string s = "p " + std::to_string(R->F->p()) + "\nvars";
    for (const std::string& n : R->names) s += " " + n;
    s += "\n";
    for (const Poly& g : gens) s += poly_to_string(g) + "\n";
    return s;
}

inline void write_ideal(const std::string& path, const RingPtr& R, const std::vector<Poly>& gens) {
    std::ofstream out(path);
    require(static_cast<bool>(out), Err::ParseError, "cannot open output file: " + path);
    out << write_ideal_string(R, gens);
}

} // namespace acmext
