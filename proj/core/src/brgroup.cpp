#include "conicfib/brgroup.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace conicfib {

RAltMap section_extend(std::span<const SubsetVec> singletons, const ResidueData& res,
                       SectionPolicy policy) {
    const int n = res.n();
    if (static_cast<int>(singletons.size()) != n)
        throw std::invalid_argument("section_extend: need one value per variable");
    const std::uint64_t full = (1ull << n) - 1;
    RAltMap f;
    f.values.assign(full + 1, SubsetVec::empty());
    for (int i = 1; i <= n; ++i) f.values[1ull << (i - 1)] = singletons[i - 1];
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
        if (std::popcount(mask) < 2) continue;
        SubsetVec q;  // pi(f(S)) is forced by linearity of pi o f
        for (int i = 1; i <= n; ++i)
            if (mask & (1ull << (i - 1))) q += singletons[i - 1].proj();
        q = q.proj();
        SubsetVec qm = q + SubsetVec::minus();
        if (mask < full) {
            const F2Space& W = res.row(mask).W;
            if (W.contains(q)) { f.values[mask] = q; continue; }
            if (W.contains(qm)) { f.values[mask] = qm; continue; }
        }
        f.values[mask] = (policy == SectionPolicy::canonical) ? q : qm;
    }
    return f;
}

std::vector<RAltMap> enumerate_ralt(const ResidueData& res, SectionPolicy policy) {
    const int n = res.n();
    // Candidate singleton values: the W-representatives for {i} in D (both
    // lifts lie in V_{i}, the minus-free one is canonical), all of V_{i}
    // otherwise (pi is injective there).
    std::vector<std::vector<SubsetVec>> cand(n);
    for (int i = 1; i <= n; ++i) {
        const auto& row = res.row(1ull << (i - 1));
        cand[i - 1] = row.in_D ? row.W.elements() : row.V.elements();
        std::sort(cand[i - 1].begin(), cand[i - 1].end());
        // <{i}, f({i})> = 0
        std::erase_if(cand[i - 1], [i](SubsetVec v) { return v.has_var(i); });
    }

    std::vector<RAltMap> out;
    std::vector<SubsetVec> cur(n);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == n) {
            out.push_back(section_extend(cur, res, policy));
            return;
        }
        for (SubsetVec v : cand[i]) {
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                ok = v.pair(SubsetVec::var(j + 1)) == cur[j].pair(SubsetVec::var(i + 1));
            if (!ok) continue;
            cur[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

namespace {

bool pbm_condition(const BMSubElem& g, int n) {
    int parity = 0;
    for (int i = 1; i <= n; ++i) {
        parity ^= g.g_singleton(i).has_minus() ? 1 : 0;
        for (int j = i + 1; j <= n; ++j) parity ^= SubsetVec::var(i).pair(g.g_singleton(j));
    }
    return parity == 0;
}

}  // namespace

std::vector<BMSubElem> enumerate_bmsub(const ResidueData& res, SectionPolicy policy) {
    const std::uint64_t d1 = res.d_singletons();
    std::vector<BMSubElem> out;
    for (const RAltMap& f : enumerate_ralt(res, policy)) {
        // iterate J over subsets of {i : {i} in D}
        std::uint64_t J = 0;
        while (true) {
            BMSubElem g{J, f, false};
            g.is_pbm = pbm_condition(g, res.n());
            out.push_back(std::move(g));
            if (J == d1) break;
            J = (J - d1) & d1;  // next subset of d1 in increasing mask order
        }
    }
    return out;
}

int kappa(const BMSubElem& g, SubsetVec S) {
    int parity = 0;
    const std::uint64_t mask = S.proj().bits();
    for (int k = 1; k <= 62; ++k) {
        if (!(mask & (1ull << (k - 1)))) continue;
        parity ^= g.g_singleton(k).has_minus() ? 1 : 0;
        for (int j = k + 1; j <= 62; ++j)
            if (mask & (1ull << (j - 1))) parity ^= SubsetVec::var(k).pair(g.g_singleton(j));
    }
    parity ^= g.f.at(mask).has_minus() ? 1 : 0;
    return parity;
}

int tw_i128(const BMSubElem& g, std::span<const Int128> a, PlaceRef v) {
    const int n = static_cast<int>(a.size());
    int sign = 1;
    for (int i = 1; i <= n; ++i) {
        if (g.g_singleton(i).has_minus() && hilbert_symbol_i128(-1, a[i - 1], v) == -1)
            sign = -sign;
        for (int j = i + 1; j <= n; ++j)
            if (SubsetVec::var(j).pair(g.g_singleton(i)) &&
                hilbert_symbol_i128(a[i - 1], a[j - 1], v) == -1)
                sign = -sign;
    }
    return sign;
}

int tw(const BMSubElem& g, std::span<const Int> a, PlaceRef v) {
    std::vector<Int128> aa(a.begin(), a.end());
    return tw_i128(g, aa, v);
}

Rational brauer_invariant(const BMSubElem& g, std::span<const Int> t, PlaceRef v) {
    for (Int ti : t)
        if (ti == 0) throw DegenerateFibreError();
    return tw(g, t, v) == 1 ? Rational(0) : Rational(1, 2);
}

bool linked(std::uint64_t s1, SubsetVec t1, std::uint64_t s2, SubsetVec t2) {
    if (std::popcount(s1) != 1 && std::popcount(s2) != 1) return false;
    int parity = SubsetVec::vars(s2).pair(t1) ^ SubsetVec::vars(s1).pair(t2);
    return parity == 1;
}

bool is_blocking_set(const ResidueData& res, std::span<const IndexPair> members) {
    const int n = res.n();
    std::uint64_t covered = 0;
    for (const auto& [mask, T] : members)
        if (std::popcount(mask) == 1) {
            covered |= mask;
            for (const auto& [mask2, T2] : members)
                if (linked(mask, T, mask2, T2)) return false;
        }
    return covered == (1ull << n) - 1;
}

std::vector<BlockingSandwich> classify_blocking_sets(const ResidueData& res) {
    const int n = res.n();
    const std::uint64_t full = (1ull << n) - 1;
    std::vector<BlockingSandwich> out;
    for (const RAltMap& g : enumerate_ralt(res)) {
        BlockingSandwich bs;
        bs.g = g;
        for (int i = 1; i <= n; ++i)
            bs.min_set.emplace_back(1ull << (i - 1), g.singleton(i));
        for (std::uint64_t mask = 1; mask < full; ++mask)
            if (res.row(mask).W.contains(g.at(mask))) bs.max_set.emplace_back(mask, g.at(mask));
        out.push_back(std::move(bs));
    }
    return out;
}

}  // namespace conicfib
