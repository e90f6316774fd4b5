#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "wakeford/group.hpp"
#include "wakeford/set_ops.hpp"

namespace wakeford {

/// kappa enumerates every subset of <S>.
inline constexpr int kMaxKappaAmbient = 24;

enum class BoundaryDir { forward, backward };

/// (TS)\T (forward) or (TS^-1)\T (backward). Requires the identity in S.
inline GroupSet boundary(const Group& g, const GroupSet& t, const GroupSet& s, BoundaryDir dir) {
    detail::check_over(g, t, "T");
    detail::check_over(g, s, "S");
    if (!s.contains(0)) throw PreconditionError("boundary requires the identity in S");
    GroupSet prod = dir == BoundaryDir::forward ? mul_sets(g, t, s)
                                                : mul_sets(g, t, invert_set(g, s));
    return prod - t;
}

/// G \ (TS). Together with T and its boundary this partitions G.
inline GroupSet exterior(const Group& g, const GroupSet& t, const GroupSet& s) {
    detail::check_over(g, t, "T");
    detail::check_over(g, s, "S");
    if (!s.contains(0)) throw PreconditionError("exterior requires the identity in S");
    return mul_sets(g, t, s).complemented();
}

struct ConnectivityReport {
    int k = 1;
    int kappa = 0;
    /// A minimizing fragment (smallest |X|, then smallest mask). Absent when
    /// no subset qualifies.
    std::optional<GroupSet> fragment;
    bool empty_range = false;
    /// q = |<S>|.
    int ambient_order = 0;
};

/// kth isoperimetric connectivity of S:
///   min |XS \ X| over X inside <S> with |X| >= k and |XS| <= |<S>| - k,
/// by exhaustive subset enumeration; |<S>| - k + 1 when no X qualifies.
inline ConnectivityReport kappa(const Group& g, const GroupSet& s, int k) {
    detail::check_over(g, s, "S");
    if (k < 1) throw PreconditionError("kappa requires k >= 1");
    if (!s.contains(0)) throw PreconditionError("kappa requires the identity in S");

    GroupSet ambient = subgroup_generated(g, s);
    int q = ambient.size();
    if (q > kMaxKappaAmbient)
        throw LimitError("kappa capped at |<S>| <= " + std::to_string(kMaxKappaAmbient));

    std::vector<int> h_elems = ambient.elements();
    std::vector<int> local(static_cast<std::size_t>(g.order()), -1);
    for (int i = 0; i < q; ++i) local[static_cast<std::size_t>(h_elems[static_cast<std::size_t>(i)])] = i;

    // per-element product row, in local coordinates of <S>
    std::vector<std::uint32_t> row(static_cast<std::size_t>(q), 0);
    for (int i = 0; i < q; ++i) {
        int h = h_elems[static_cast<std::size_t>(i)];
        s.for_each([&](int e) {
            row[static_cast<std::size_t>(i)] |=
                std::uint32_t{1} << local[static_cast<std::size_t>(g.mul(h, e))];
        });
    }

    // XS for a subset mask is reassembled from two half-tables
    int lo_bits = q / 2;
    int hi_bits = q - lo_bits;
    std::vector<std::uint32_t> lo_table(std::size_t{1} << lo_bits, 0);
    std::vector<std::uint32_t> hi_table(std::size_t{1} << hi_bits, 0);
    for (std::uint32_t m = 1; m < lo_table.size(); ++m)
        lo_table[m] = lo_table[m & (m - 1)] | row[static_cast<std::size_t>(std::countr_zero(m))];
    for (std::uint32_t m = 1; m < hi_table.size(); ++m)
        hi_table[m] =
            hi_table[m & (m - 1)] | row[static_cast<std::size_t>(lo_bits + std::countr_zero(m))];

    std::uint32_t lo_mask = (lo_bits == 0) ? 0 : ((std::uint32_t{1} << lo_bits) - 1);
    int best_boundary = -1, best_size = 0;
    std::uint32_t best_mask = 0;
    std::uint64_t end = std::uint64_t{1} << q;
    for (std::uint64_t m = 1; m < end; ++m) {
        std::uint32_t mask = static_cast<std::uint32_t>(m);
        int xsize = std::popcount(mask);
        if (xsize < k) continue;
        std::uint32_t xs = lo_table[mask & lo_mask] | hi_table[mask >> lo_bits];
        int xs_size = std::popcount(xs);
        if (xs_size > q - k) continue;
        int bnd = xs_size - xsize;  // 1 in S, so X is inside XS
        if (best_boundary < 0 || bnd < best_boundary ||
            (bnd == best_boundary && xsize < best_size)) {
            best_boundary = bnd;
            best_size = xsize;
            best_mask = mask;
        }
    }

    ConnectivityReport report;
    report.k = k;
    report.ambient_order = q;
    if (best_boundary < 0) {
        report.empty_range = true;
        report.kappa = q - k + 1;
    } else {
        report.kappa = best_boundary;
        GroupSet fragment(g.order());
        std::uint32_t mask = best_mask;
        while (mask != 0) {
            fragment.add(h_elems[static_cast<std::size_t>(std::countr_zero(mask))]);
            mask &= mask - 1;
        }
        report.fragment = std::move(fragment);
    }
    return report;
}

/// kappa_1(S) = |S| - 1.
inline bool is_cauchy(const Group& g, const GroupSet& s) {
    return kappa(g, s, 1).kappa == s.size() - 1;
}

/// kappa_2(S) >= |S|.
inline bool is_vosper(const Group& g, const GroupSet& s) {
    return kappa(g, s, 2).kappa >= s.size();
}

/// Clause-by-clause verdict for the cofinite-set expansion statement: for
/// Cauchy S (1 in S) and T with non-empty complement of size <= |<S>| - 1,
///   (a)   |boundary_S(T)| >= |S| - 1,
///   (cf1) the exterior T^S lies in a single right coset of <S>,
/// and when S is also Vosper and |boundary_S(T)| = |S| - 1,
///   (cf2) (T^S)S^-1 equals the complement of T,
///   (cf3) |(T^S)S^-1| = |T^S| + |S| - 1.
struct CfVerdict {
    int q = 0;
    GroupSet boundary_set;
    GroupSet exterior_set;
    bool clause_a_holds = false;
    bool exterior_empty = false;  // degenerate: TS covers G
    bool cf1_holds = false;       // vacuous when the exterior is empty
    bool vosper_case = false;     // S Vosper and |boundary| = |S| - 1
    bool cf2_holds = true;        // only meaningful when vosper_case
    bool cf3_holds = true;
    GroupSet cf2_lhs;  // (T^S)S^-1, kept for failure reports

    bool all_pass() const {
        return clause_a_holds && cf1_holds && (!vosper_case || (cf2_holds && cf3_holds));
    }
};

/// The S-dependent (T-independent) inputs of the cofinite-expansion check;
/// sweeps compute this once per S and reuse it across every T.
struct CfContext {
    GroupSet ambient;
    GroupSet s_inverse;
    int q = 0;
    bool cauchy = false;
    bool vosper = false;
};

inline CfContext cf_context(const Group& g, const GroupSet& s) {
    detail::check_over(g, s, "S");
    if (!s.contains(0)) throw PreconditionError("verify_prop_cf requires the identity in S");
    CfContext ctx;
    ctx.ambient = subgroup_generated(g, s);
    ctx.s_inverse = invert_set(g, s);
    ctx.q = ctx.ambient.size();
    ctx.cauchy = is_cauchy(g, s);
    ctx.vosper = is_vosper(g, s);
    return ctx;
}

inline CfVerdict verify_prop_cf_ctx(const Group& g, const GroupSet& s, const GroupSet& t,
                                    const CfContext& ctx) {
    detail::check_over(g, t, "T");
    int q = ctx.q;
    GroupSet t_bar = t.complemented();
    if (t_bar.empty()) throw PreconditionError("verify_prop_cf requires a non-empty complement of T");
    if (t_bar.size() > q - 1)
        throw PreconditionError("verify_prop_cf requires |complement(T)| <= |<S>| - 1");
    if (!ctx.cauchy) throw PreconditionError("verify_prop_cf requires a Cauchy set S");

    CfVerdict v;
    v.q = q;
    v.boundary_set = boundary(g, t, s, BoundaryDir::forward);
    v.exterior_set = exterior(g, t, s);
    v.exterior_empty = v.exterior_set.empty();
    v.clause_a_holds = v.boundary_set.size() >= s.size() - 1;

    v.cf1_holds = true;
    if (!v.exterior_empty) {
        v.exterior_set.for_each([&](int a) {
            GroupSet shifted = translate(g, v.exterior_set, g.inv(a), Side::right);
            if (!shifted.subset_of(ctx.ambient)) v.cf1_holds = false;
        });
    }

    v.vosper_case = v.boundary_set.size() == s.size() - 1 && ctx.vosper;
    v.cf2_lhs = mul_sets(g, v.exterior_set, ctx.s_inverse);
    if (v.vosper_case) {
        v.cf2_holds = v.cf2_lhs == t_bar;
        v.cf3_holds = v.cf2_lhs.size() == v.exterior_set.size() + s.size() - 1;
    }
    return v;
}

inline CfVerdict verify_prop_cf(const Group& g, const GroupSet& s, const GroupSet& t) {
    return verify_prop_cf_ctx(g, s, t, cf_context(g, s));
}

} // namespace wakeford
