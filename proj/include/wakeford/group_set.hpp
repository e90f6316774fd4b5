#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "wakeford/errors.hpp"

namespace wakeford {

/// Subset of a group's elements, stored as a bitmask over element indices
/// 0..universe-1. Bits at positions >= universe are always clear.
class GroupSet {
public:
    GroupSet() : universe_(0) {}

    explicit GroupSet(int universe) : universe_(check_universe(universe)) {
        words_.assign(word_count(), 0);
    }

    GroupSet(int universe, std::initializer_list<int> elems) : GroupSet(universe) {
        for (int x : elems) add(x);
    }

    static GroupSet full(int universe) {
        GroupSet s(universe);
        for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    static GroupSet singleton(int universe, int x) {
        GroupSet s(universe);
        s.add(x);
        return s;
    }

    int universe() const { return universe_; }

    int size() const {
        int c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    bool empty() const {
        for (std::uint64_t w : words_) if (w != 0) return false;
        return true;
    }

    bool contains(int x) const {
        if (x < 0 || x >= universe_) return false;
        return (words_[static_cast<std::size_t>(x) >> 6] >> (x & 63)) & 1u;
    }

    void add(int x) {
        check_index(x);
        words_[static_cast<std::size_t>(x) >> 6] |= std::uint64_t{1} << (x & 63);
    }

    void remove(int x) {
        check_index(x);
        words_[static_cast<std::size_t>(x) >> 6] &= ~(std::uint64_t{1} << (x & 63));
    }

    /// Smallest element, or -1 when empty.
    int first() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] != 0) return static_cast<int>(w * 64) + std::countr_zero(words_[w]);
        return -1;
    }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](int x) { out.push_back(x); });
        return out;
    }

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                int b = std::countr_zero(bits);
                f(static_cast<int>(w * 64) + b);
                bits &= bits - 1;
            }
        }
    }

    GroupSet& operator|=(const GroupSet& o) {
        check_same(o);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
        return *this;
    }

    GroupSet& operator&=(const GroupSet& o) {
        check_same(o);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
        return *this;
    }

    /// Set difference: keep elements not in `o`.
    GroupSet& operator-=(const GroupSet& o) {
        check_same(o);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
        return *this;
    }

    friend GroupSet operator|(GroupSet a, const GroupSet& b) { return a |= b; }
    friend GroupSet operator&(GroupSet a, const GroupSet& b) { return a &= b; }
    friend GroupSet operator-(GroupSet a, const GroupSet& b) { return a -= b; }

    GroupSet complemented() const {
        GroupSet s(universe_);
        for (std::size_t w = 0; w < words_.size(); ++w) s.words_[w] = ~words_[w];
        s.trim();
        return s;
    }

    bool subset_of(const GroupSet& o) const {
        check_same(o);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if ((words_[w] & ~o.words_[w]) != 0) return false;
        return true;
    }

    bool intersects(const GroupSet& o) const {
        check_same(o);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if ((words_[w] & o.words_[w]) != 0) return true;
        return false;
    }

    bool operator==(const GroupSet& o) const {
        return universe_ == o.universe_ && words_ == o.words_;
    }
    bool operator!=(const GroupSet& o) const { return !(*this == o); }

    /// Numeric comparison of the masks (sum of 2^i over members).
    static bool mask_less(const GroupSet& a, const GroupSet& b) {
        a.check_same(b);
        for (std::size_t w = a.words_.size(); w-- > 0;) {
            if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
        }
        return false;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::string to_string() const {
        std::ostringstream os;
        os << '{';
        bool sep = false;
        for_each([&](int x) {
            if (sep) os << ',';
            os << x;
            sep = true;
        });
        os << '}';
        return os.str();
    }

private:
    static int check_universe(int universe) {
        if (universe <= 0) throw DomainError("set universe must be positive");
        return universe;
    }

    std::size_t word_count() const {
        return (static_cast<std::size_t>(universe_) + 63) / 64;
    }

    void check_index(int x) const {
        if (x < 0 || x >= universe_)
            throw DomainError("element index " + std::to_string(x) +
                              " out of range for universe of size " + std::to_string(universe_));
    }

    void check_same(const GroupSet& o) const {
        if (universe_ != o.universe_) throw DomainError("sets live over different universes");
    }

    void trim() {
        int tail = universe_ & 63;
        if (tail != 0) words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    int universe_;
    std::vector<std::uint64_t> words_;
};

} // namespace wakeford
