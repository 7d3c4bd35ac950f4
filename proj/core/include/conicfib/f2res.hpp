#pragma once

// F2 residue data of a family: for each proper nonempty S in [n], the space
// V_S spanned by the generators g_{i,S}, the splitting W_S (minus-free part
// when {-} lies in V_S, all of V_S otherwise), and the collection D of S with
// {-} in V_S. The generator table keyed by the intersection parities
// (|S n S_{i,1}|, |S n S_{i,2}|, |S n S_{i,3}|) mod 2 is
//     (0,0,0),(1,1,1) -> {}          (1,0,0),(0,1,1) -> {-}+S_{i,2}+S_{i,3}
//     (0,1,0),(1,0,1) -> {-}+S_{i,1}+S_{i,3}
//     (0,0,1),(1,1,0) -> {-}+S_{i,1}+S_{i,2}

#include "conicfib/family.hpp"
#include "conicfib/rational.hpp"
#include "conicfib/subset.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace conicfib {

// The residue generator g_{i,S} for conic i and a subset {} != S != [n] of [n].
SubsetVec generator(const MonomialConicFamily& fam, int i, SubsetVec S);

struct ResidueRow {
    F2Space V;
    F2Space W;
    bool in_D = false;
    std::uint64_t c_S() const { return W.size(); }
};

struct ResidueData {
    MonomialConicFamily fam;
    // Indexed by the variable mask of S; rows exist for 0 < mask < 2^n - 1.
    std::vector<ResidueRow> rows;

    int n() const { return fam.n; }
    const ResidueRow& row(std::uint64_t mask) const { return rows[mask]; }
    bool in_D(std::uint64_t mask) const { return rows[mask].in_D; }

    // Variable mask of {i in [n] : {i} in D}.
    std::uint64_t d_singletons() const;
    // |V_{i}| and |W_{i}| = c_{i} for a singleton.
    std::uint64_t v_size(int i) const { return rows[1ull << (i - 1)].V.size(); }
    std::uint64_t c_i(int i) const { return rows[1ull << (i - 1)].W.size(); }

    // gamma_i = 1/|V_{i}|, gamma = sum_i gamma_i, Delta = n - gamma.
    Rational gamma_i(int i) const { return Rational(1, BigInt(v_size(i))); }
    Rational gamma() const;
    Rational delta() const { return Rational(fam.n) - gamma(); }

    // The index set I of pairs (S, T) with T in W_S, ordered by (mask, T).
    std::vector<std::pair<std::uint64_t, SubsetVec>> index_set() const;
};

ResidueData build_residue_data(const MonomialConicFamily& fam);

// Both sides of the character identity
//   2^{-m} prod_i (1 + (prod_{j in g_{i,S}} t_j / p))
//     = 1_{S in D => p = 1 mod 4} / |W_S| * sum_{T in W_S} (prod_{j in T} t_j / p)
// evaluated at residues t_1..t_n coprime to p (t_- = -1 by convention).
std::pair<Rational, Rational> expand_indicator_sides(const ResidueData& res, SubsetVec S,
                                                     std::span<const Int> t, Int p);

// The common value; throws std::logic_error if the sides disagree.
Rational expand_indicator(const ResidueData& res, SubsetVec S, std::span<const Int> t, Int p);

}  // namespace conicfib
