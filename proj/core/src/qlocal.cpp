#include "conicfib/qlocal.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace conicfib {

PlaceRef PlaceRef::odd(Int prime) {
    if (prime <= 2 || !is_prime_u64(static_cast<std::uint64_t>(prime)))
        throw std::domain_error("PlaceRef::odd requires an odd prime");
    return {Tag::odd, prime};
}

std::string PlaceRef::str() const {
    switch (tag) {
        case Tag::real: return "real";
        case Tag::two: return "2";
        default: return std::to_string(p);
    }
}

int kronecker_symbol(Int a, Int n) {
    if (n <= 0 || n % 2 == 0)
        throw std::domain_error("kronecker_symbol: modulus must be odd and positive");
    a %= n;
    if (a < 0) a += n;
    Int m = n;
    int t = 1;
    while (a != 0) {
        int z = std::countr_zero(static_cast<std::uint64_t>(a));
        a >>= z;
        // (2/m) = -1 iff m = +-3 mod 8
        if ((z & 1) && (m % 8 == 3 || m % 8 == 5)) t = -t;
        // quadratic reciprocity for odd positive a, m
        if ((a % 4 == 3) && (m % 4 == 3)) t = -t;
        std::swap(a, m);
        a %= m;
    }
    return m == 1 ? t : 0;
}

int legendre_symbol(Int128 a, Int p) {
    Int r = static_cast<Int>(a % p);
    if (r < 0) r += p;
    return kronecker_symbol(r, p);
}

namespace {

// eps(u) = (u-1)/2 mod 2 for odd u, i.e. 1 iff u = 3 mod 4.
int eps2(Int128 u) {
    int r = static_cast<int>(((u % 4) + 4) % 4);
    return r == 3 ? 1 : 0;
}

// omega(u) = (u^2-1)/8 mod 2 for odd u, i.e. 1 iff u = +-3 mod 8.
int omega2(Int128 u) {
    int r = static_cast<int>(((u % 8) + 8) % 8);
    return (r == 3 || r == 5) ? 1 : 0;
}

}  // namespace

int hilbert_symbol_i128(Int128 a, Int128 b, PlaceRef v) {
    if (a == 0 || b == 0) throw std::domain_error("hilbert_symbol: zero argument");
    switch (v.tag) {
        case PlaceRef::Tag::real:
            return (a < 0 && b < 0) ? -1 : 1;
        case PlaceRef::Tag::two: {
            int alpha = 0, beta = 0;
            while (a % 2 == 0) { a /= 2; ++alpha; }
            while (b % 2 == 0) { b /= 2; ++beta; }
            int e = eps2(a) * eps2(b) + alpha * omega2(b) + beta * omega2(a);
            return (e & 1) ? -1 : 1;
        }
        default: {
            const Int p = v.p;
            int alpha = 0, beta = 0;
            while (a % p == 0) { a /= p; ++alpha; }
            while (b % p == 0) { b /= p; ++beta; }
            int sign = 1;
            if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) sign = -sign;
            if (beta & 1) sign *= legendre_symbol(a, p);
            if (alpha & 1) sign *= legendre_symbol(b, p);
            return sign;
        }
    }
}

int hilbert_symbol(Int a, Int b, PlaceRef v) {
    return hilbert_symbol_i128(a, b, v);
}

bool conic_soluble_at_i128(Int128 A, Int128 B, Int128 C, PlaceRef v) {
    if (A == 0 || B == 0 || C == 0) throw DegenerateConicError();
    // Hasse-Minkowski for A x^2 + B y^2 + C z^2 = 0: soluble at v iff
    // (-AC, -BC)_v = +1.
    return hilbert_symbol_i128(-A * C, -B * C, v) == 1;
}

bool conic_soluble_at(Int A, Int B, Int C, PlaceRef v) {
    return conic_soluble_at_i128(A, B, C, v);
}

int unit_class_mod8(Int128 odd_value) {
    int r = static_cast<int>(((odd_value % 8) + 8) % 8);
    switch (r) {
        case 1: return 1;
        case 3: return 3;
        case 5: return -3;
        case 7: return -1;
        default: throw std::domain_error("unit_class_mod8: even value");
    }
}

SquarefreeDecomposition squarefree_decompose(Int t) {
    if (t == 0) throw std::domain_error("squarefree_decompose: t = 0");
    SquarefreeDecomposition d;
    d.s = t < 0 ? -1 : 1;
    std::uint64_t m = t < 0 ? -static_cast<std::uint64_t>(t) : static_cast<std::uint64_t>(t);
    d.nu2 = m ? std::countr_zero(m) : 0;
    m >>= d.nu2;
    d.lambda = d.nu2 & 1;
    d.b = Int(1) << (d.nu2 / 2);
    d.a = 1;
    for (auto [p, e] : factorize(static_cast<Int>(m))) {
        if (e & 1) d.a *= p;
        for (int k = 0; k < e / 2; ++k) d.b *= p;
    }
    d.unit_class = unit_class_mod8(static_cast<Int128>(d.s) * d.a);
    return d;
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    std::uint64_t x0 = 2, c = 1;
    while (true) {
        std::uint64_t x = x0, y = x0, d = 1;
        std::uint64_t ys = y, q = 1;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        auto f = [&](std::uint64_t v) { return (mulmod_u64(v, v, n) + c) % n; };
        while (d == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            while (k < r && d == 1) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod_u64(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
                k += m;
            }
            r <<= 1;
        }
        if (d == n) {
            d = 1;
            do {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (d == 1);
        }
        if (d != n) return d;
        ++c;
        ++x0;
    }
}

void factor_rec(std::uint64_t n, std::vector<Int>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(static_cast<Int>(n));
        return;
    }
    std::uint64_t d = pollard_brent(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n == 0) throw std::domain_error("factorize: n = 0");
    std::uint64_t m = n < 0 ? -static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
    std::vector<Int> ps;
    for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        while (m % static_cast<std::uint64_t>(p) == 0) {
            ps.push_back(p);
            m /= static_cast<std::uint64_t>(p);
        }
    }
    factor_rec(m, ps);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<Int, int>> out;
    for (Int p : ps) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::vector<Int> prime_support(Int n) {
    std::vector<Int> out;
    for (auto [p, e] : factorize(n)) out.push_back(p);
    return out;
}

SpfSieve::SpfSieve(Int limit) {
    spf_.assign(limit + 1, 0);
    if (limit >= 1) spf_[1] = 1;
    for (Int i = 2; i <= limit; ++i) {
        if (!spf_[i]) {
            spf_[i] = i;
            primes_.push_back(i);
        }
        for (Int p : primes_) {
            if (p > spf_[i] || i * p > limit) break;
            spf_[i * p] = p;
        }
    }
}

bool SpfSieve::is_squarefree(Int x) const {
    while (x > 1) {
        Int p = spf_[x];
        x /= p;
        if (x % p == 0) return false;
    }
    return true;
}

void SpfSieve::distinct_primes(Int x, std::vector<Int>& out) const {
    while (x > 1) {
        Int p = spf_[x];
        out.push_back(p);
        while (x % p == 0) x /= p;
    }
}

std::vector<Int> primes_up_to(Int limit) {
    std::vector<bool> comp(limit + 1, false);
    std::vector<Int> out;
    for (Int i = 2; i <= limit; ++i) {
        if (!comp[i]) {
            out.push_back(i);
            for (Int j = i * i; j <= limit; j += i) comp[j] = true;
        }
    }
    return out;
}

}  // namespace conicfib
