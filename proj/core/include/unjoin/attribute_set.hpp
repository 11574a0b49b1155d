#pragma once

#include <bit>
#include <cassert>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace unjoin {

/// A set of attribute indices, stored as a 64-bit mask. Index i corresponds
/// to column i of the relation. Tables wider than 64 columns are rejected at
/// load time, so one word always suffices.
class AttributeSet {
public:
    static constexpr int kMaxAttributes = 64;

    constexpr AttributeSet() = default;

    static constexpr AttributeSet from_bits(std::uint64_t bits) {
        AttributeSet s;
        s.bits_ = bits;
        return s;
    }

    static constexpr AttributeSet single(int index) {
        assert(index >= 0 && index < kMaxAttributes);
        return from_bits(std::uint64_t{1} << index);
    }

    static AttributeSet of(std::initializer_list<int> indices) {
        AttributeSet s;
        for (int i : indices) s.insert(i);
        return s;
    }

    /// The full set {0, ..., n-1}.
    static constexpr AttributeSet universe(int n) {
        assert(n >= 0 && n <= kMaxAttributes);
        if (n == 0) return {};
        return from_bits(n == kMaxAttributes ? ~std::uint64_t{0}
                                             : (std::uint64_t{1} << n) - 1);
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }

    constexpr bool contains(int index) const {
        return index >= 0 && index < kMaxAttributes &&
               (bits_ >> index) & std::uint64_t{1};
    }
    void insert(int index) {
        assert(index >= 0 && index < kMaxAttributes);
        bits_ |= std::uint64_t{1} << index;
    }
    void erase(int index) {
        assert(index >= 0 && index < kMaxAttributes);
        bits_ &= ~(std::uint64_t{1} << index);
    }

    /// Subset test: every index of `other` is also in *this.
    constexpr bool is_superset_of(AttributeSet other) const {
        return (other.bits_ & ~bits_) == 0;
    }
    constexpr bool is_subset_of(AttributeSet other) const {
        return other.is_superset_of(*this);
    }
    constexpr bool intersects(AttributeSet other) const {
        return (bits_ & other.bits_) != 0;
    }

    friend constexpr AttributeSet operator|(AttributeSet a, AttributeSet b) {
        return from_bits(a.bits_ | b.bits_);
    }
    friend constexpr AttributeSet operator&(AttributeSet a, AttributeSet b) {
        return from_bits(a.bits_ & b.bits_);
    }
    /// Set difference a \ b.
    friend constexpr AttributeSet operator-(AttributeSet a, AttributeSet b) {
        return from_bits(a.bits_ & ~b.bits_);
    }
    AttributeSet& operator|=(AttributeSet o) { bits_ |= o.bits_; return *this; }
    AttributeSet& operator&=(AttributeSet o) { bits_ &= o.bits_; return *this; }
    AttributeSet& operator-=(AttributeSet o) { bits_ &= ~o.bits_; return *this; }

    /// Complement relative to the universe {0, ..., n-1}.
    constexpr AttributeSet complement_in(int n) const {
        return universe(n) - *this;
    }

    constexpr int lowest() const {
        assert(!empty());
        return std::countr_zero(bits_);
    }

    /// Set bits in ascending index order.
    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t b = bits_; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b));
        return out;
    }

    friend constexpr bool operator==(AttributeSet, AttributeSet) = default;
    friend constexpr auto operator<=>(AttributeSet a, AttributeSet b) {
        return a.bits_ <=> b.bits_;
    }

    /// Debug rendering as sorted index list, e.g. "{0,2,5}".
    std::string to_string() const;

private:
    std::uint64_t bits_ = 0;
};

struct AttributeSetHash {
    std::size_t operator()(AttributeSet s) const noexcept {
        // splitmix64 finalizer
        std::uint64_t x = s.bits() + 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(x ^ (x >> 31));
    }
};

}  // namespace unjoin
