#include "conicfib/family.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace conicfib {

std::string mode_name(FamilyMode m) {
    switch (m) {
        case FamilyMode::affine: return "affine";
        case FamilyMode::projective: return "projective";
        default: return "squarefree";
    }
}

bool MonomialConicFamily::equal_degree_parity() const {
    for (const auto& c : conics) {
        int d0 = c[0].card_vars() & 1;
        if ((c[1].card_vars() & 1) != d0 || (c[2].card_vars() & 1) != d0) return false;
    }
    return true;
}

void validate_family(const MonomialConicFamily& fam) {
    if (fam.n < 1 || fam.n > 62)
        throw FamilyValidationError("vars must be between 1 and 62");
    if (fam.conics.empty())
        throw FamilyValidationError("family needs at least one conic");
    std::uint64_t allowed = (fam.n == 62 ? ~0ull >> 2 : (1ull << fam.n) - 1);
    for (int i = 0; i < fam.m(); ++i) {
        const auto& c = fam.conics[i];
        for (int j = 0; j < 3; ++j)
            if (c[j].proj().bits() & ~allowed)
                throw FamilyValidationError("conic " + std::to_string(i + 1) +
                                            ": variable index out of range");
        std::uint64_t v1 = c[0].proj().bits(), v2 = c[1].proj().bits(), v3 = c[2].proj().bits();
        if ((v1 & v2) | (v1 & v3) | (v2 & v3))
            throw FamilyValidationError("conic " + std::to_string(i + 1) +
                                        ": monomials must be pairwise coprime");
        if (fam.mode == FamilyMode::projective &&
            !(c[0].card_vars() == c[1].card_vars() && c[1].card_vars() == c[2].card_vars()))
            throw FamilyValidationError("conic " + std::to_string(i + 1) +
                                        ": projective mode requires equal degrees");
    }
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

    bool eof() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    void advance() {
        if (s[pos] == '\n') { ++line; col = 1; } else { ++col; }
        ++pos;
    }
    void skip_ws_and_comments_inline() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
        if (!eof() && peek() == '#')
            while (!eof() && peek() != '\n') advance();
    }
};

// One monomial: ['-'] ('1' | t<k> ['*' t<k>]...); stops at '|' or end of line.
SubsetVec parse_mono(Cursor& c, int n) {
    c.skip_ws_and_comments_inline();
    SubsetVec out;
    if (!c.eof() && c.peek() == '-') {
        out += SubsetVec::minus();
        c.advance();
        c.skip_ws_and_comments_inline();
    }
    bool any = false;
    while (true) {
        c.skip_ws_and_comments_inline();
        if (c.eof() || c.peek() == '\n' || c.peek() == '|') break;
        if (c.peek() == '1') {
            c.advance();
            any = true;
        } else if (c.peek() == 't') {
            int line = c.line, col = c.col;
            c.advance();
            std::string digits;
            while (!c.eof() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
                digits += c.peek();
                c.advance();
            }
            if (digits.empty()) throw ParseError(line, col, "expected variable index after 't'");
            long k = std::stol(digits);
            if (k < 1 || k > n)
                throw ParseError(line, col, "variable t" + digits + " out of range (vars = " +
                                                std::to_string(n) + ")");
            if (out.has_var(static_cast<int>(k)))
                throw ParseError(line, col, "repeated variable t" + digits +
                                                " in one monomial (not squarefree)");
            out += SubsetVec::var(static_cast<int>(k));
            any = true;
        } else {
            throw ParseError(c.line, c.col, std::string("unexpected character '") + c.peek() +
                                                "' in monomial");
        }
        c.skip_ws_and_comments_inline();
        if (!c.eof() && c.peek() == '*') {
            c.advance();
            continue;
        }
        break;
    }
    if (!any) throw ParseError(c.line, c.col, "empty monomial");
    return out;
}

}  // namespace

MonomialConicFamily parse_family(const std::string& text) {
    Cursor c{text};
    MonomialConicFamily fam;
    bool saw_vars = false, saw_mode = false;

    while (!c.eof()) {
        c.skip_ws_and_comments_inline();
        if (c.eof()) break;
        if (c.peek() == '\n') { c.advance(); continue; }

        int kw_line = c.line, kw_col = c.col;
        std::string kw;
        while (!c.eof() && (std::isalpha(static_cast<unsigned char>(c.peek())))) {
            kw += c.peek();
            c.advance();
        }
        c.skip_ws_and_comments_inline();
        if (c.eof() || c.peek() != '=')
            throw ParseError(kw_line, kw_col, "expected '<keyword> = ...'");
        c.advance();

        if (kw != "vars" && !saw_vars)
            throw ParseError(kw_line, kw_col, "the first directive must be 'vars = <n>'");
        if (kw == "vars") {
            if (saw_vars) throw ParseError(kw_line, kw_col, "duplicate vars line");
            c.skip_ws_and_comments_inline();
            std::string digits;
            while (!c.eof() && std::isdigit(static_cast<unsigned char>(c.peek()))) {
                digits += c.peek();
                c.advance();
            }
            if (digits.empty()) throw ParseError(c.line, c.col, "expected integer after 'vars ='");
            fam.n = static_cast<int>(std::stol(digits));
            saw_vars = true;
        } else if (kw == "conic") {
            if (!saw_vars) throw ParseError(kw_line, kw_col, "vars must come before conic lines");
            std::array<SubsetVec, 3> tri;
            tri[0] = parse_mono(c, fam.n);
            for (int j = 1; j < 3; ++j) {
                c.skip_ws_and_comments_inline();
                if (c.eof() || c.peek() != '|')
                    throw ParseError(c.line, c.col, "conic needs three '|'-separated monomials");
                c.advance();
                tri[j] = parse_mono(c, fam.n);
            }
            fam.conics.push_back(tri);
        } else if (kw == "mode") {
            if (saw_mode) throw ParseError(kw_line, kw_col, "duplicate mode line");
            c.skip_ws_and_comments_inline();
            std::string word;
            while (!c.eof() && std::isalpha(static_cast<unsigned char>(c.peek()))) {
                word += c.peek();
                c.advance();
            }
            if (word == "affine") fam.mode = FamilyMode::affine;
            else if (word == "projective") fam.mode = FamilyMode::projective;
            else if (word == "squarefree") fam.mode = FamilyMode::squarefree;
            else throw ParseError(c.line, c.col, "mode must be affine, projective or squarefree");
            saw_mode = true;
        } else {
            throw ParseError(kw_line, kw_col, "unknown keyword '" + kw + "'");
        }

        c.skip_ws_and_comments_inline();
        if (!c.eof() && c.peek() != '\n')
            throw ParseError(c.line, c.col, "trailing content on line");
    }
    if (!saw_vars) throw ParseError(1, 1, "missing 'vars = <n>' line");
    validate_family(fam);
    return fam;
}

namespace {

std::string mono_str(SubsetVec s) {
    std::string out = s.has_minus() ? "-" : "";
    bool any = false;
    for (int i = 1; i <= 62; ++i) {
        if (s.has_var(i)) {
            if (any) out += "*";
            out += "t" + std::to_string(i);
            any = true;
        }
    }
    if (!any) out += "1";
    return out;
}

}  // namespace

std::string serialize_family(const MonomialConicFamily& fam) {
    std::ostringstream os;
    os << "vars = " << fam.n << "\n";
    for (const auto& c : fam.conics)
        os << "conic = " << mono_str(c[0]) << " | " << mono_str(c[1]) << " | " << mono_str(c[2])
           << "\n";
    os << "mode = " << mode_name(fam.mode) << "\n";
    return os.str();
}

MonomialConicFamily builtin_family(const std::string& name) {
    MonomialConicFamily fam;
    if (name == "planar") {
        fam.n = 3;
        fam.conics.push_back({SubsetVec::var(1), SubsetVec::var(2), SubsetVec::var(3)});
        fam.mode = FamilyMode::projective;
    } else if (name == "redei") {
        fam.n = 3;
        fam.conics.push_back({SubsetVec::minus(), SubsetVec::var(1), SubsetVec::var(2)});
        fam.conics.push_back({SubsetVec::minus(), SubsetVec::var(1), SubsetVec::var(3)});
        fam.conics.push_back({SubsetVec::minus(), SubsetVec::var(2), SubsetVec::var(3)});
        fam.mode = FamilyMode::squarefree;
        fam.redei_conditions = true;
    } else if (name == "example31") {
        // quaternion classes (t2 t3, t1 t4), (t2 t5, t1 t6), (t4 t5, t3 t6)
        // realised as conics A x^2 + B y^2 - z^2.
        fam.n = 6;
        auto two = [](int a, int b) { return SubsetVec::var(a) + SubsetVec::var(b); };
        fam.conics.push_back({two(2, 3), two(1, 4), SubsetVec::minus()});
        fam.conics.push_back({two(2, 5), two(1, 6), SubsetVec::minus()});
        fam.conics.push_back({two(4, 5), two(3, 6), SubsetVec::minus()});
        fam.mode = FamilyMode::affine;
    } else {
        throw std::invalid_argument("unknown builtin family '" + name + "'");
    }
    validate_family(fam);
    return fam;
}

std::string family_digest(const MonomialConicFamily& fam) {
    std::string s = serialize_family(fam);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

EvaluatedFibre evaluate(const MonomialConicFamily& fam, std::span<const Int> t) {
    if (static_cast<int>(t.size()) != fam.n)
        throw std::invalid_argument("evaluate: wrong number of coordinates");
    for (Int ti : t)
        if (ti == 0) throw DegenerateFibreError();
    EvaluatedFibre fib;
    fib.t.assign(t.begin(), t.end());
    fib.coefficients.reserve(fam.m());
    for (const auto& c : fam.conics) {
        std::array<Int128, 3> tri;
        for (int j = 0; j < 3; ++j) {
            Int128 v = c[j].has_minus() ? -1 : 1;
            for (int k = 1; k <= fam.n; ++k)
                if (c[j].has_var(k)) {
                    if (__builtin_mul_overflow(v, static_cast<Int128>(t[k - 1]), &v))
                        throw std::overflow_error("evaluate: coefficient overflow");
                }
            tri[j] = v;
        }
        fib.coefficients.push_back(tri);
    }
    return fib;
}

bool fibre_soluble_at(const EvaluatedFibre& fib, PlaceRef v) {
    for (const auto& c : fib.coefficients)
        if (!conic_soluble_at_i128(c[0], c[1], c[2], v)) return false;
    return true;
}

bool everywhere_locally_soluble(const MonomialConicFamily& fam, std::span<const Int> t,
                                const SpfSieve* sieve) {
    EvaluatedFibre fib = evaluate(fam, t);
    if (!fibre_soluble_at(fib, PlaceRef::real())) return false;
    if (!fibre_soluble_at(fib, PlaceRef::two())) return false;
    // Solubility is automatic at odd primes not dividing t_1 ... t_n.
    std::vector<Int> ps;
    for (Int ti : t) {
        Int m = ti < 0 ? -ti : ti;
        if (sieve && m <= sieve->limit())
            sieve->distinct_primes(m, ps);
        else
            for (auto [p, e] : factorize(m)) ps.push_back(p);
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    for (Int p : ps) {
        if (p == 2) continue;
        PlaceRef v{PlaceRef::Tag::odd, p};
        if (!fibre_soluble_at(fib, v)) return false;
    }
    return true;
}

}  // namespace conicfib
