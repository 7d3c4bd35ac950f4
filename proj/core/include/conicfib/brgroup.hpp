#pragma once

// The combinatorial subordinate Brauer group of a family. An RAlt element is
// a tuple of singleton values f({i}) in V_{i} satisfying the alternating
// conditions <{i},f({j})> = <{j},f({i})> and <{i},f({i})> = 0, extended to
// all S in P([n]) by the canonical section: pi(f(S)) = sum_{i in S}
// pi(f({i})), lifted into W_S when possible and without the minus sign
// otherwise. A BMSubElem couples an RAlt map with a twist J inside
// {i : {i} in D}; its underlying map has g({i}) = f({i}) + [i in J]{-}.

#include "conicfib/f2res.hpp"
#include "conicfib/qlocal.hpp"
#include "conicfib/rational.hpp"
#include "conicfib/subset.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace conicfib {

// Resolution of the free choices of the section (those S where neither lift
// of pi(f(S)) lies in W_S). Downstream quantities never read these values;
// flip_free_choices exists to test exactly that.
enum class SectionPolicy { canonical, flip_free_choices };

struct RAltMap {
    // values[mask] = f(S) for every S subseteq [n] (index = variable mask).
    std::vector<SubsetVec> values;

    SubsetVec at(std::uint64_t mask) const { return values[mask]; }
    SubsetVec singleton(int i) const { return values[1ull << (i - 1)]; }
    bool operator==(const RAltMap&) const = default;
};

struct BMSubElem {
    std::uint64_t J = 0;  // variable mask inside {i : {i} in D}
    RAltMap f;
    bool is_pbm = false;

    SubsetVec g_singleton(int i) const {
        SubsetVec v = f.singleton(i);
        if (J & (1ull << (i - 1))) v += SubsetVec::minus();
        return v;
    }
};

// The canonical extension of admissible singleton values (f({i}) = singletons[i-1]).
RAltMap section_extend(std::span<const SubsetVec> singletons, const ResidueData& res,
                       SectionPolicy policy = SectionPolicy::canonical);

// All RAlt representatives, ordered lexicographically on singleton values.
std::vector<RAltMap> enumerate_ralt(const ResidueData& res,
                                    SectionPolicy policy = SectionPolicy::canonical);

// All of BM_Sub as (J, f) pairs: f major (lexicographic), J minor (mask order).
std::vector<BMSubElem> enumerate_bmsub(const ResidueData& res,
                                       SectionPolicy policy = SectionPolicy::canonical);

// kappa(g, S): the parity
//   sum_{k in S} <{-}, g({k})> + sum_{{i,j} sub S} <{i}, g({j})> + <{-}, f(S)>
// with f the RAlt representative of g.
int kappa(const BMSubElem& g, SubsetVec S);

// Tw_v(g, a) = prod_i (-1, a_i)_v^{<-,g({i})>} prod_{i<j} (a_i, a_j)_v^{<{j},g({i})>}.
int tw(const BMSubElem& g, std::span<const Int> a, PlaceRef v);
int tw_i128(const BMSubElem& g, std::span<const Int128> a, PlaceRef v);

// inv_v of the Brauer class of g at the point t: 0 if Tw_v(g,t) = +1 else 1/2.
Rational brauer_invariant(const BMSubElem& g, std::span<const Int> t, PlaceRef v);

// A candidate blocking set: members (S, T) of the index set I.
using IndexPair = std::pair<std::uint64_t, SubsetVec>;

// Literal check of the two blocking-set conditions: every k in [n] appears in
// a singleton row, and every singleton member is unlinked from every member.
// (S1,T1),(S2,T2) are linked iff |S2 n T1| + |S1 n T2| is odd and some |Si| = 1.
bool is_blocking_set(const ResidueData& res, std::span<const IndexPair> members);

bool linked(std::uint64_t s1, SubsetVec t1, std::uint64_t s2, SubsetVec t2);

// The sandwich of blocking sets classified by one RAlt element g:
// {({i}, g({i}))} subseteq B subseteq {(S, g(S)) : g(S) in W_S}.
struct BlockingSandwich {
    RAltMap g;
    std::vector<IndexPair> min_set;
    std::vector<IndexPair> max_set;
};

// One sandwich per RAlt element, in enumerate_ralt order. Every blocking set
// lies between min_set and max_set for exactly one g.
std::vector<BlockingSandwich> classify_blocking_sets(const ResidueData& res);

}  // namespace conicfib
