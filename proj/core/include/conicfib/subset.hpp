#pragma once

// Subsets of [n] u {-} as bitmasks, and F2-subspaces of the power set.
// Addition of subsets is symmetric difference; <S,T> = |S n T| mod 2.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace conicfib {

class SubsetVec {
public:
    // Bit i-1 holds variable t_i (1-based); bit 63 holds the formal "-" element.
    static constexpr std::uint64_t kMinus = 1ull << 63;

    constexpr SubsetVec() : bits_(0) {}
    constexpr explicit SubsetVec(std::uint64_t bits) : bits_(bits) {}

    static constexpr SubsetVec empty() { return SubsetVec(0); }
    static constexpr SubsetVec minus() { return SubsetVec(kMinus); }
    static constexpr SubsetVec var(int i) { return SubsetVec(1ull << (i - 1)); }
    // Subset of [n] from a plain variable mask (bit i-1 <-> t_i).
    static constexpr SubsetVec vars(std::uint64_t mask) { return SubsetVec(mask); }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool is_empty() const { return bits_ == 0; }
    constexpr bool has_minus() const { return bits_ & kMinus; }
    constexpr bool has_var(int i) const { return bits_ & (1ull << (i - 1)); }

    // Natural projection P([n] u {-}) -> P([n]).
    constexpr SubsetVec proj() const { return SubsetVec(bits_ & ~kMinus); }

    constexpr SubsetVec operator+(SubsetVec o) const { return SubsetVec(bits_ ^ o.bits_); }
    SubsetVec& operator+=(SubsetVec o) { bits_ ^= o.bits_; return *this; }

    // <S,T> = |S n T| mod 2.
    int pair(SubsetVec o) const { return std::popcount(bits_ & o.bits_) & 1; }
    int card() const { return std::popcount(bits_); }
    int card_vars() const { return std::popcount(bits_ & ~kMinus); }

    constexpr bool operator==(const SubsetVec&) const = default;
    constexpr auto operator<=>(const SubsetVec&) const = default;

    // "{-,1,3}" / "{}" rendering, minus first then variables ascending.
    std::string str() const {
        std::string s = "{";
        bool first = true;
        if (has_minus()) { s += "-"; first = false; }
        for (int i = 1; i <= 63; ++i) {
            if (has_var(i)) {
                if (!first) s += ",";
                s += std::to_string(i);
                first = false;
            }
        }
        return s + "}";
    }

private:
    std::uint64_t bits_;
};

// F2-span of a list of SubsetVec, stored as a reduced row-echelon basis
// (rows sorted by leading bit, descending).
class F2Space {
public:
    F2Space() = default;

    void insert(SubsetVec v) {
        std::uint64_t x = reduce_(v.bits());
        if (!x) return;
        basis_.push_back(x);
        renormalize_();
    }

    int dim() const { return static_cast<int>(basis_.size()); }
    std::uint64_t size() const { return 1ull << basis_.size(); }

    bool contains(SubsetVec v) const { return reduce_(v.bits()) == 0; }

    // All 2^dim elements, in Gray-code order starting from the empty set.
    std::vector<SubsetVec> elements() const {
        std::vector<SubsetVec> out;
        out.reserve(size());
        std::uint64_t cur = 0;
        out.push_back(SubsetVec(0));
        for (std::uint64_t k = 1; k < size(); ++k) {
            cur ^= basis_[std::countr_zero(k)];
            out.push_back(SubsetVec(cur));
        }
        return out;
    }

    const std::vector<std::uint64_t>& basis() const { return basis_; }

    bool operator==(const F2Space&) const = default;

private:
    static std::uint64_t top_bit_(std::uint64_t x) {
        return x ? 1ull << (63 - std::countl_zero(x)) : 0;
    }

    std::uint64_t reduce_(std::uint64_t x) const {
        for (std::uint64_t b : basis_)
            if (x & top_bit_(b)) x ^= b;
        return x;
    }

    void renormalize_() {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (std::size_t j = 0; j < basis_.size(); ++j)
                if (i != j && (basis_[j] & top_bit_(basis_[i]))) basis_[j] ^= basis_[i];
        std::sort(basis_.begin(), basis_.end(), std::greater<>());
    }

    std::vector<std::uint64_t> basis_;
};

}  // namespace conicfib
