#pragma once

// Exact quadratic local arithmetic over Q: Kronecker/Jacobi symbols, Hilbert
// symbols at every place, solubility of diagonal ternary conics, and the
// canonical decomposition t = s * 2^(nu2) * a * b^2 with a odd squarefree.
//
// Hilbert symbols are computed by the closed-form unit/valuation formulas
//   odd p : (a,b)_p = (-1)^{alpha beta (p-1)/2} (u/p)^beta (w/p)^alpha
//   p = 2 : (a,b)_2 = (-1)^{eps(u)eps(w) + alpha omega(w) + beta omega(u)}
//   real  : -1 iff a < 0 and b < 0
// where a = p^alpha u, b = p^beta w. Search-based evaluation exists only as a
// test oracle.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conicfib {

using Int = std::int64_t;
using Int128 = __int128;

// A place of Q: the real place, 2, or an odd prime.
struct PlaceRef {
    enum class Tag { real, two, odd };

    Tag tag = Tag::real;
    Int p = 0;  // the prime when tag == odd

    static PlaceRef real() { return {Tag::real, 0}; }
    static PlaceRef two() { return {Tag::two, 2}; }
    static PlaceRef odd(Int prime);  // throws unless prime is an odd prime

    bool operator==(const PlaceRef&) const = default;
    std::string str() const;
};

// Kronecker/Jacobi symbol (a/n) for odd n >= 1; throws std::domain_error
// otherwise. Equals the Legendre symbol when n is prime.
int kronecker_symbol(Int a, Int n);

// Legendre symbol of (possibly huge / negative) a modulo an odd prime p.
int legendre_symbol(Int128 a, Int p);

// Hilbert symbol (a,b)_v for nonzero a, b.
int hilbert_symbol(Int a, Int b, PlaceRef v);
int hilbert_symbol_i128(Int128 a, Int128 b, PlaceRef v);

// Whether A x^2 + B y^2 + C z^2 = 0 has a nontrivial solution over the
// completion at v; any zero coefficient raises DegenerateConicError.
bool conic_soluble_at(Int A, Int B, Int C, PlaceRef v);
bool conic_soluble_at_i128(Int128 A, Int128 B, Int128 C, PlaceRef v);

class DegenerateConicError : public std::domain_error {
public:
    DegenerateConicError() : std::domain_error("degenerate conic: zero coefficient") {}
};

// t = s * 2^{nu2} * (odd part) = s * 2^lambda * a * b^2 with lambda = nu2 mod 2,
// a odd positive squarefree, b positive (b collects 2^{floor(nu2/2)}).
struct SquarefreeDecomposition {
    int s = 1;          // sign of t
    int lambda = 0;     // parity of nu_2(t)
    Int a = 1;          // odd positive squarefree
    Int b = 1;          // positive square part
    int nu2 = 0;        // full 2-adic valuation
    int unit_class = 1; // u = s*a mod 8, as an element of {+1,-1,+3,-3}
};

SquarefreeDecomposition squarefree_decompose(Int t);

// Residue class mod 8 of an odd value, mapped into {+1,-1,+3,-3}
// (1 -> +1, 3 -> +3, 5 -> -3, 7 -> -1).
int unit_class_mod8(Int128 odd_value);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Factorization of |n| by trial division then Brent-Pollard rho.
// Returns (prime, exponent) pairs with primes ascending; n must be nonzero.
std::vector<std::pair<Int, int>> factorize(Int n);

// Distinct primes of |n| (n nonzero), ascending.
std::vector<Int> prime_support(Int n);

// Smallest-prime-factor sieve; immutable after construction, safe to share
// across census worker threads.
class SpfSieve {
public:
    explicit SpfSieve(Int limit);

    Int limit() const { return static_cast<Int>(spf_.size()) - 1; }
    Int spf(Int x) const { return spf_[x]; }
    bool is_squarefree(Int x) const;
    // Appends the distinct prime factors of x (1 <= x <= limit) to out.
    void distinct_primes(Int x, std::vector<Int>& out) const;
    const std::vector<Int>& primes() const { return primes_; }

private:
    std::vector<Int> spf_;
    std::vector<Int> primes_;
};

// All primes <= limit, ascending.
std::vector<Int> primes_up_to(Int limit);

}  // namespace conicfib
