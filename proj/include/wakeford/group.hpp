#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "wakeford/errors.hpp"
#include "wakeford/group_set.hpp"
#include "wakeford/rng.hpp"

namespace wakeford {

/// Hard cap on constructible group order.
inline constexpr int kMaxGroupOrder = 10000;
/// Cap for subgroup enumeration and p(G).
inline constexpr int kMaxSubgroupEnumOrder = 256;

/// A finite group as a Cayley table. Element 0 is always the identity.
/// Instances are immutable after construction and safe to share between
/// threads.
class Group {
public:
    int order() const { return n_; }

    int mul(int a, int b) const {
        check_index(a);
        check_index(b);
        return mul_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(b)];
    }

    int inv(int a) const {
        check_index(a);
        return inv_[static_cast<std::size_t>(a)];
    }

    /// Smallest k >= 1 with x^k = identity.
    int order_of(int x) const {
        check_index(x);
        return elem_order_[static_cast<std::size_t>(x)];
    }

    /// x^k for k >= 0.
    int power(int x, long long k) const {
        check_index(x);
        int acc = 0;
        int base = x;
        while (k > 0) {
            if (k & 1) acc = mul_raw(acc, base);
            base = mul_raw(base, base);
            k >>= 1;
        }
        return acc;
    }

    /// Canonical descriptor this group was built from.
    const std::string& spec() const { return spec_; }

    GroupSet empty_set() const { return GroupSet(n_); }
    GroupSet full_set() const { return GroupSet::full(n_); }

private:
    friend Group make_group(std::string_view);
    Group() = default;

    int mul_raw(int a, int b) const {
        return mul_[static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(b)];
    }

    void check_index(int x) const {
        if (x < 0 || x >= n_)
            throw DomainError("element index " + std::to_string(x) +
                              " out of range for group of order " + std::to_string(n_));
    }

    int n_ = 0;
    std::vector<std::uint16_t> mul_;
    std::vector<std::uint16_t> inv_;
    std::vector<std::uint16_t> elem_order_;
    std::string spec_;
};

namespace detail {

struct TableBuild {
    int n = 0;
    std::vector<std::uint16_t> mul;
    std::string spec;

    int at(int a, int b) const {
        return mul[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(b)];
    }
    void set(int a, int b, int v) {
        mul[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) +
            static_cast<std::size_t>(b)] = static_cast<std::uint16_t>(v);
    }
};

inline TableBuild build_cyclic(int n) {
    TableBuild t;
    t.n = n;
    t.mul.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t.set(a, b, (a + b) % n);
    t.spec = "cyclic:" + std::to_string(n);
    return t;
}

// Elements 0..n-1 are r^i, elements n..2n-1 are s*r^(i-n), with s*r^i*s = r^(-i).
inline TableBuild build_dihedral(int n) {
    TableBuild t;
    t.n = 2 * n;
    t.mul.resize(static_cast<std::size_t>(t.n) * static_cast<std::size_t>(t.n));
    auto mod = [n](int v) { return ((v % n) + n) % n; };
    for (int i = 0; i < t.n; ++i) {
        for (int j = 0; j < t.n; ++j) {
            bool fi = i >= n, fj = j >= n;
            int a = fi ? i - n : i, b = fj ? j - n : j;
            int v;
            if (!fi && !fj) v = mod(a + b);               // r^a r^b
            else if (!fi && fj) v = n + mod(b - a);       // r^a (s r^b) = s r^(b-a)
            else if (fi && !fj) v = n + mod(a + b);       // (s r^a) r^b = s r^(a+b)
            else v = mod(b - a);                          // (s r^a)(s r^b) = r^(b-a)
            t.set(i, j, v);
        }
    }
    t.spec = "dihedral:" + std::to_string(n);
    return t;
}

// Elements are permutations of {0..n-1} in lexicographic rank order,
// composed as (p*q)(i) = p(q(i)). Rank 0 is the identity.
inline TableBuild build_symmetric(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    auto rank_of = [&perms](const std::vector<int>& q) {
        auto it = std::lower_bound(perms.begin(), perms.end(), q);
        return static_cast<int>(it - perms.begin());
    };

    TableBuild t;
    t.n = static_cast<int>(perms.size());
    t.mul.resize(static_cast<std::size_t>(t.n) * static_cast<std::size_t>(t.n));
    std::vector<int> comp(static_cast<std::size_t>(n));
    for (int a = 0; a < t.n; ++a) {
        for (int b = 0; b < t.n; ++b) {
            const auto& pa = perms[static_cast<std::size_t>(a)];
            const auto& pb = perms[static_cast<std::size_t>(b)];
            for (int i = 0; i < n; ++i)
                comp[static_cast<std::size_t>(i)] =
                    pa[static_cast<std::size_t>(pb[static_cast<std::size_t>(i)])];
            t.set(a, b, rank_of(comp));
        }
    }
    t.spec = "symmetric:" + std::to_string(n);
    return t;
}

// Indices 0..7 stand for {1,-1,i,-i,j,-j,k,-k}: index = 2*axis + sign with
// axes (1,i,j,k) and sign bit 1 for the negative copy.
inline TableBuild build_quaternion() {
    // axis product table: entry {axis, sign} for (row axis)*(col axis)
    static constexpr std::array<std::array<std::array<int, 2>, 4>, 4> kAxis = {{
        {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}},
        {{{1, 0}, {0, 1}, {3, 0}, {2, 1}}},
        {{{2, 0}, {3, 1}, {0, 1}, {1, 0}}},
        {{{3, 0}, {2, 0}, {1, 1}, {0, 1}}},
    }};
    TableBuild t;
    t.n = 8;
    t.mul.resize(64);
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            int ax = a >> 1, sa = a & 1;
            int bx = b >> 1, sb = b & 1;
            int cx = kAxis[static_cast<std::size_t>(ax)][static_cast<std::size_t>(bx)][0];
            int sc = kAxis[static_cast<std::size_t>(ax)][static_cast<std::size_t>(bx)][1];
            t.set(a, b, (cx << 1) | (sa ^ sb ^ sc));
        }
    }
    t.spec = "quaternion";
    return t;
}

// Direct product; pair (i1, i2) is encoded as i1*n2 + i2.
inline TableBuild build_product(const TableBuild& g1, const TableBuild& g2) {
    long long order = static_cast<long long>(g1.n) * g2.n;
    if (order > kMaxGroupOrder)
        throw LimitError("group order " + std::to_string(order) + " exceeds cap " +
                         std::to_string(kMaxGroupOrder));
    TableBuild t;
    t.n = static_cast<int>(order);
    t.mul.resize(static_cast<std::size_t>(t.n) * static_cast<std::size_t>(t.n));
    for (int a1 = 0; a1 < g1.n; ++a1)
        for (int a2 = 0; a2 < g2.n; ++a2)
            for (int b1 = 0; b1 < g1.n; ++b1)
                for (int b2 = 0; b2 < g2.n; ++b2)
                    t.set(a1 * g2.n + a2, b1 * g2.n + b2,
                          g1.at(a1, b1) * g2.n + g2.at(a2, b2));
    t.spec = "product:(" + g1.spec + "," + g2.spec + ")";
    return t;
}

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    TableBuild parse_top() {
        TableBuild t = parse_spec();
        if (pos_ != text_.size())
            throw ParseError("trailing characters in group spec at position " +
                             std::to_string(pos_));
        return t;
    }

private:
    TableBuild parse_spec() {
        if (eat("cyclic:")) {
            int n = parse_int();
            check_order(n);
            return build_cyclic(n);
        }
        if (eat("dihedral:")) {
            int n = parse_int();
            if (n < 2) throw ParseError("dihedral:n requires n >= 2");
            check_order(2LL * n);
            return build_dihedral(n);
        }
        if (eat("symmetric:")) {
            int n = parse_int();
            if (n < 2 || n > 5) throw ParseError("symmetric:n requires 2 <= n <= 5");
            return build_symmetric(n);
        }
        if (eat("quaternion")) return build_quaternion();
        if (eat("product:(")) {
            TableBuild g1 = parse_spec();
            expect(',');
            TableBuild g2 = parse_spec();
            expect(')');
            return build_product(g1, g2);
        }
        throw ParseError("unrecognized group spec at position " + std::to_string(pos_));
    }

    void check_order(long long n) const {
        if (n > kMaxGroupOrder)
            throw LimitError("group order " + std::to_string(n) + " exceeds cap " +
                             std::to_string(kMaxGroupOrder));
    }

    int parse_int() {
        std::size_t start = pos_;
        long long value = 0;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 100 * static_cast<long long>(kMaxGroupOrder))
                throw LimitError("integer literal too large in group spec");
            ++pos_;
        }
        if (pos_ == start) throw ParseError("expected integer at position " + std::to_string(pos_));
        if (value == 0) throw ParseError("integer in group spec must be positive");
        return static_cast<int>(value);
    }

    bool eat(std::string_view word) {
        if (text_.substr(pos_, word.size()) == word) {
            pos_ += word.size();
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw ParseError(std::string("expected '") + c + "' at position " +
                             std::to_string(pos_));
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline void check_group_axioms(const TableBuild& t) {
    int n = t.n;
    for (std::uint16_t v : t.mul)
        if (v >= n) throw std::logic_error("Cayley table entry out of range");
    for (int g = 0; g < n; ++g) {
        if (t.at(0, g) != g || t.at(g, 0) != g)
            throw std::logic_error("element 0 is not an identity in " + t.spec);
    }
    // Exhaustive associativity up to the subgroup-enumeration cap, randomized
    // triples beyond it.
    auto assoc = [&t](int a, int b, int c) {
        return t.at(t.at(a, b), c) == t.at(a, t.at(b, c));
    };
    if (n <= kMaxSubgroupEnumOrder) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (!assoc(a, b, c))
                        throw std::logic_error("associativity fails in " + t.spec);
    } else {
        SplitMix64 rng(0x5D1B107F5ULL);
        for (int trial = 0; trial < 100000; ++trial) {
            int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            int c = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            if (!assoc(a, b, c))
                throw std::logic_error("associativity fails in " + t.spec);
        }
    }
}

} // namespace detail

/// Builds a group from a descriptor:
///   spec := "cyclic:" INT | "dihedral:" INT | "symmetric:" INT
///         | "quaternion" | "product:(" spec "," spec ")"
/// The same descriptor always yields the same table.
inline Group make_group(std::string_view spec) {
    detail::TableBuild t = detail::SpecParser(spec).parse_top();
    detail::check_group_axioms(t);

    Group g;
    g.n_ = t.n;
    g.mul_ = std::move(t.mul);
    g.spec_ = std::move(t.spec);

    g.inv_.assign(static_cast<std::size_t>(g.n_), 0);
    for (int a = 0; a < g.n_; ++a) {
        int found = -1;
        for (int b = 0; b < g.n_; ++b) {
            if (g.mul_raw(a, b) == 0) {
                found = b;
                break;
            }
        }
        if (found < 0 || g.mul_raw(found, a) != 0)
            throw std::logic_error("inverse law fails in " + g.spec_);
        g.inv_[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(found);
    }

    g.elem_order_.assign(static_cast<std::size_t>(g.n_), 0);
    for (int a = 0; a < g.n_; ++a) {
        int acc = a;
        int k = 1;
        while (acc != 0) {
            acc = g.mul_raw(acc, a);
            ++k;
        }
        if (g.n_ % k != 0)
            throw std::logic_error("element order does not divide group order in " + g.spec_);
        g.elem_order_[static_cast<std::size_t>(a)] = static_cast<std::uint16_t>(k);
    }
    return g;
}

/// Smallest k >= 1 with x^k = identity.
inline int element_order(const Group& g, int x) { return g.order_of(x); }

/// Smallest subgroup containing xs (always contains the identity).
inline GroupSet subgroup_generated(const Group& g, const GroupSet& xs) {
    if (xs.universe() != g.order()) throw DomainError("set does not live over this group");
    GroupSet closure(g.order());
    closure.add(0);
    std::vector<int> elems{0};
    std::vector<int> frontier = xs.elements();
    for (int x : frontier) {
        if (!closure.contains(x)) {
            closure.add(x);
            elems.push_back(x);
        }
    }
    // Closure under products; inverses follow since the group is finite.
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = 0; j < elems.size(); ++j) {
            for (int p : {g.mul(elems[i], elems[j]), g.mul(elems[j], elems[i])}) {
                if (!closure.contains(p)) {
                    closure.add(p);
                    elems.push_back(p);
                }
            }
        }
    }
    return closure;
}

/// All subgroups, sorted by (size, mask value). Includes {identity} and G.
inline std::vector<GroupSet> enumerate_subgroups(const Group& g) {
    if (g.order() > kMaxSubgroupEnumOrder)
        throw LimitError("subgroup enumeration capped at order " +
                         std::to_string(kMaxSubgroupEnumOrder));
    std::set<std::vector<std::uint64_t>> seen;
    std::vector<GroupSet> found;
    std::vector<std::size_t> todo;

    GroupSet trivial(g.order());
    trivial.add(0);
    seen.insert(trivial.words());
    found.push_back(trivial);
    todo.push_back(0);

    while (!todo.empty()) {
        GroupSet h = found[todo.back()];
        todo.pop_back();
        for (int x = 1; x < g.order(); ++x) {
            if (h.contains(x)) continue;
            GroupSet gen = h;
            gen.add(x);
            GroupSet k = subgroup_generated(g, gen);
            if (seen.insert(k.words()).second) {
                found.push_back(k);
                todo.push_back(found.size() - 1);
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const GroupSet& a, const GroupSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return GroupSet::mask_less(a, b);
    });
    return found;
}

/// p(G) = min size of a subgroup M with 2 <= |M| < |G|; nullopt when no such
/// subgroup exists (prime-order and trivial groups). Any minimal subgroup is
/// cyclic of prime order, so the minimum is the least prime order among
/// cyclic subgroups, computable from the element-order table.
inline std::optional<int> p_of_group(const Group& g) {
    if (g.order() > kMaxSubgroupEnumOrder)
        throw LimitError("p(G) capped at order " + std::to_string(kMaxSubgroupEnumOrder));
    std::optional<int> best;
    for (int x = 1; x < g.order(); ++x) {
        int m = g.order_of(x);
        int p = m;
        for (int d = 2; d * d <= m; ++d) {
            if (m % d == 0) {
                p = d;
                break;
            }
        }
        if (p < g.order() && (!best || p < *best)) best = p;
    }
    return best;
}

} // namespace wakeford
