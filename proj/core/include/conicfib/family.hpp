#pragma once

// Data model for a product-of-conic-bundles family over A^n: m conics whose
// coefficients are signed squarefree monomials in t_1..t_n, each encoded as a
// subset of [n] u {-} (membership of "-" flips the sign, t_- = -1).

#include "conicfib/qlocal.hpp"
#include "conicfib/subset.hpp"

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace conicfib {

enum class FamilyMode { affine, projective, squarefree };

std::string mode_name(FamilyMode m);

struct MonomialConicFamily {
    int n = 0;
    std::vector<std::array<SubsetVec, 3>> conics;  // S_{i,1}, S_{i,2}, S_{i,3}
    FamilyMode mode = FamilyMode::affine;
    // Applies the Redei-census side conditions (one coordinate 1 mod 8,
    // coprime quadratic discriminants) to the two-adic strata; set on the
    // redei builtin only. Not part of the family grammar.
    bool redei_conditions = false;

    int m() const { return static_cast<int>(conics.size()); }
    int degree(int i, int j) const { return conics[i][j].card_vars(); }
    bool equal_degree_parity() const;

    bool operator==(const MonomialConicFamily& o) const {
        return n == o.n && conics == o.conics && mode == o.mode;
    }
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int col, const std::string& what)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(col) + ": " + what),
          line(line), col(col) {}
    int line;
    int col;
};

class FamilyValidationError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class DegenerateFibreError : public std::domain_error {
public:
    DegenerateFibreError() : std::domain_error("degenerate fibre: zero coordinate") {}
};

// Family file grammar (line oriented, '#' starts a comment):
//   vars = <n>
//   conic = <mono> | <mono> | <mono>      (one line per conic)
//   mode = affine|projective|squarefree   (optional, default affine)
// <mono> := ['-'] ('1' | t<k> ['*' t<k>]...), variables distinct.
MonomialConicFamily parse_family(const std::string& text);
std::string serialize_family(const MonomialConicFamily& fam);

// Named families: "planar", "redei", "example31".
MonomialConicFamily builtin_family(const std::string& name);

// Checks all family invariants, throwing FamilyValidationError.
void validate_family(const MonomialConicFamily& fam);

// FNV-1a hash of the canonical serialization, as 16 hex digits.
std::string family_digest(const MonomialConicFamily& fam);

struct EvaluatedFibre {
    std::vector<Int> t;
    std::vector<std::array<Int128, 3>> coefficients;
};

// Monomials evaluated at t (length n, all nonzero).
EvaluatedFibre evaluate(const MonomialConicFamily& fam, std::span<const Int> t);

// Whether every conic of the evaluated fibre is soluble at v.
bool fibre_soluble_at(const EvaluatedFibre& fib, PlaceRef v);

// True iff every conic of the fibre at t is soluble at the real place, at 2,
// and at every odd prime dividing some t_i. A sieve covering max|t_i| can be
// supplied to avoid per-call factorisation.
bool everywhere_locally_soluble(const MonomialConicFamily& fam, std::span<const Int> t,
                                const SpfSieve* sieve = nullptr);

}  // namespace conicfib
