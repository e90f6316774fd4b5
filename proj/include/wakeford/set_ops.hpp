#pragma once

#include <optional>

#include "wakeford/group.hpp"
#include "wakeford/group_set.hpp"

namespace wakeford {

enum class Side { left, right };

inline const char* to_string(Side s) { return s == Side::left ? "left" : "right"; }

namespace detail {
inline void check_over(const Group& g, const GroupSet& s, const char* what) {
    if (s.universe() != g.order())
        throw DomainError(std::string(what) + " does not live over this group");
}
} // namespace detail

/// {x*s : x in X, s in S}. Empty when either input is empty.
inline GroupSet mul_sets(const Group& g, const GroupSet& x, const GroupSet& s) {
    detail::check_over(g, x, "X");
    detail::check_over(g, s, "S");
    GroupSet out(g.order());
    x.for_each([&](int a) { s.for_each([&](int b) { out.add(g.mul(a, b)); }); });
    return out;
}

/// S with the identity adjoined.
inline GroupSet adjoin_identity(const GroupSet& s) {
    GroupSet out = s;
    out.add(0);
    return out;
}

inline GroupSet invert_set(const Group& g, const GroupSet& s) {
    detail::check_over(g, s, "S");
    GroupSet out(g.order());
    s.for_each([&](int x) { out.add(g.inv(x)); });
    return out;
}

inline GroupSet complement(const Group& g, const GroupSet& s) {
    detail::check_over(g, s, "S");
    return s.complemented();
}

/// Sa (right) or aS (left).
inline GroupSet translate(const Group& g, const GroupSet& s, int a, Side side) {
    detail::check_over(g, s, "S");
    GroupSet out(g.order());
    s.for_each([&](int x) { out.add(side == Side::right ? g.mul(x, a) : g.mul(a, x)); });
    return out;
}

/// Chowla test with an explicit order threshold: identity not in S and every
/// element's order >= min_order.
inline bool is_chowla_with_min_order(const Group& g, const GroupSet& s, int min_order) {
    detail::check_over(g, s, "S");
    if (s.empty()) throw PreconditionError("Chowla test requires a non-empty set");
    if (s.contains(0)) return false;
    bool ok = true;
    s.for_each([&](int x) { ok = ok && g.order_of(x) >= min_order; });
    return ok;
}

/// Standard threshold: every element's order >= |S|+1.
inline bool is_chowla(const Group& g, const GroupSet& s) {
    return is_chowla_with_min_order(g, s, s.size() + 1);
}

/// One progression presentation of a set: {a, ar, ..., ar^(k-1)} on the right
/// side, {a, ra, ..., r^(k-1)a} on the left.
struct ProgressionWitness {
    int ratio = 0;
    int start = 0;
    int length = 0;
    Side side = Side::right;
};

/// Builds {start, start*r, ...} (right) or {start, r*start, ...} (left).
/// Throws if the elements are not pairwise distinct.
inline GroupSet progression_set(const Group& g, int start, int ratio, int length, Side side) {
    if (length < 1) throw PreconditionError("progression length must be positive");
    GroupSet out(g.order());
    int cur = start;
    for (int i = 0; i < length; ++i) {
        if (out.contains(cur)) throw PreconditionError("progression elements are not distinct");
        out.add(cur);
        cur = side == Side::right ? g.mul(cur, ratio) : g.mul(ratio, cur);
    }
    return out;
}

/// Searches all (side, ratio, start) triples, right side first, then ratio,
/// then start, and returns the first presentation of S as a progression.
/// Singletons witness with ratio = identity.
inline std::optional<ProgressionWitness> progression_witness(const Group& g, const GroupSet& s) {
    detail::check_over(g, s, "S");
    if (s.empty()) throw PreconditionError("progression test requires a non-empty set");
    int k = s.size();
    for (Side side : {Side::right, Side::left}) {
        for (int r = 0; r < g.order(); ++r) {
            if (k > 1 && r == 0) continue;
            for (int a = 0; a < g.order(); ++a) {
                if (!s.contains(a)) continue;
                GroupSet built(g.order());
                int cur = a;
                bool good = true;
                for (int i = 0; i < k; ++i) {
                    if (!s.contains(cur) || built.contains(cur)) {
                        good = false;
                        break;
                    }
                    built.add(cur);
                    cur = side == Side::right ? g.mul(cur, r) : g.mul(r, cur);
                }
                if (good) return ProgressionWitness{r, a, k, side};
            }
        }
        if (k == 1) break;  // identical witness on the left
    }
    return std::nullopt;
}

/// Erdos-Heilbronn function: |Tx \ T| (right) or |xT \ T| (left).
inline int lambda(const Group& g, const GroupSet& t, int x, Side side) {
    detail::check_over(g, t, "T");
    if (x < 0 || x >= g.order()) throw DomainError("lambda: element out of range");
    int count = 0;
    t.for_each([&](int e) {
        int image = side == Side::right ? g.mul(e, x) : g.mul(x, e);
        if (!t.contains(image)) ++count;
    });
    return count;
}

} // namespace wakeford
