#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "wakeford/arith.hpp"
#include "wakeford/group.hpp"
#include "wakeford/set_ops.hpp"

namespace wakeford {

/// Exact-count cap: Ryser runs in O(2^n * n).
inline constexpr int kMaxExactCountSize = 20;
/// Brute-force oracle cap: all |B|! bijections.
inline constexpr int kMaxNaiveCountSize = 8;

/// Bipartite relation {(x,y) in B x A : xy not in A}. Its perfect matchings
/// are exactly the pairings phi: B -> A with x*phi(x) outside A.
struct WakefordGraph {
    const Group* group = nullptr;
    std::vector<int> b_elems;  // ascending element indices
    std::vector<int> a_elems;  // ascending element indices
    std::vector<GroupSet> rows;  // per-b bitmask over positions of a_elems

    int size() const { return static_cast<int>(b_elems.size()); }
};

inline WakefordGraph build_graph(const Group& g, const GroupSet& b, const GroupSet& a) {
    detail::check_over(g, b, "B");
    detail::check_over(g, a, "A");
    if (b.empty() || a.empty()) throw PreconditionError("B and A must be non-empty");
    if (b.size() != a.size()) throw PreconditionError("|B| and |A| must agree");

    WakefordGraph graph;
    graph.group = &g;
    graph.b_elems = b.elements();
    graph.a_elems = a.elements();
    int n = graph.size();
    graph.rows.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        GroupSet row(n);
        for (int j = 0; j < n; ++j) {
            if (!a.contains(g.mul(graph.b_elems[static_cast<std::size_t>(i)],
                                  graph.a_elems[static_cast<std::size_t>(j)])))
                row.add(j);
        }
        graph.rows.push_back(std::move(row));
    }
    return graph;
}

enum class CountMode { exact, existence_only };

struct MatchingReport {
    bool exists = false;
    /// Present iff exists: pairs (b, a) of element indices forming a pairing.
    std::optional<std::vector<std::pair<int, int>>> witness;
    /// Exact number of pairings when mu_exact, else a 0/1 placeholder.
    BigInt mu = 0;
    bool mu_exact = false;
    /// Present iff no pairing exists: X subset of B with |R(X)| < |X|.
    std::optional<GroupSet> hall_violator;
    int max_degree = 0;    // max row size
    int max_codegree = 0;  // max column size
};

namespace detail {

/// Hopcroft-Karp. Vertices are scanned in ascending position order so the
/// maximum matching, and therefore the violator certificate, is deterministic.
class HopcroftKarp {
public:
    explicit HopcroftKarp(const std::vector<GroupSet>& rows)
        : rows_(rows), n_(static_cast<int>(rows.size())),
          match_l_(static_cast<std::size_t>(n_), -1),
          match_r_(static_cast<std::size_t>(n_), -1),
          dist_(static_cast<std::size_t>(n_), 0) {}

    int run() {
        int matched = 0;
        while (bfs()) {
            for (int u = 0; u < n_; ++u)
                if (match_l_[static_cast<std::size_t>(u)] < 0 && dfs(u)) ++matched;
        }
        return matched;
    }

    const std::vector<int>& match_left() const { return match_l_; }

    /// B-positions reachable from unmatched B-positions by alternating paths.
    std::vector<int> alternating_reachable() const {
        std::vector<char> vis_l(static_cast<std::size_t>(n_), 0);
        std::vector<char> vis_r(static_cast<std::size_t>(n_), 0);
        std::deque<int> queue;
        for (int u = 0; u < n_; ++u) {
            if (match_l_[static_cast<std::size_t>(u)] < 0) {
                vis_l[static_cast<std::size_t>(u)] = 1;
                queue.push_back(u);
            }
        }
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            rows_[static_cast<std::size_t>(u)].for_each([&](int v) {
                if (vis_r[static_cast<std::size_t>(v)]) return;
                vis_r[static_cast<std::size_t>(v)] = 1;
                int w = match_r_[static_cast<std::size_t>(v)];
                if (w >= 0 && !vis_l[static_cast<std::size_t>(w)]) {
                    vis_l[static_cast<std::size_t>(w)] = 1;
                    queue.push_back(w);
                }
            });
        }
        std::vector<int> out;
        for (int u = 0; u < n_; ++u)
            if (vis_l[static_cast<std::size_t>(u)]) out.push_back(u);
        return out;
    }

private:
    static constexpr int kInf = 1 << 30;

    bool bfs() {
        std::deque<int> queue;
        for (int u = 0; u < n_; ++u) {
            if (match_l_[static_cast<std::size_t>(u)] < 0) {
                dist_[static_cast<std::size_t>(u)] = 0;
                queue.push_back(u);
            } else {
                dist_[static_cast<std::size_t>(u)] = kInf;
            }
        }
        bool found = false;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            rows_[static_cast<std::size_t>(u)].for_each([&](int v) {
                int w = match_r_[static_cast<std::size_t>(v)];
                if (w < 0) {
                    found = true;
                } else if (dist_[static_cast<std::size_t>(w)] == kInf) {
                    dist_[static_cast<std::size_t>(w)] = dist_[static_cast<std::size_t>(u)] + 1;
                    queue.push_back(w);
                }
            });
        }
        return found;
    }

    bool dfs(int u) {
        bool ok = false;
        rows_[static_cast<std::size_t>(u)].for_each([&](int v) {
            if (ok) return;
            int w = match_r_[static_cast<std::size_t>(v)];
            if (w < 0 ||
                (dist_[static_cast<std::size_t>(w)] == dist_[static_cast<std::size_t>(u)] + 1 &&
                 dfs(w))) {
                match_l_[static_cast<std::size_t>(u)] = v;
                match_r_[static_cast<std::size_t>(v)] = u;
                ok = true;
            }
        });
        if (!ok) dist_[static_cast<std::size_t>(u)] = kInf;
        return ok;
    }

    const std::vector<GroupSet>& rows_;
    int n_;
    std::vector<int> match_l_, match_r_;
    std::vector<int> dist_;
};

/// Ryser's inclusion-exclusion permanent with Gray-code iteration over column
/// subsets. Intermediate sums fit in 128 bits for n <= 20.
inline BigInt permanent_01(const std::vector<std::uint32_t>& row_masks) {
    int n = static_cast<int>(row_masks.size());
    if (n == 0) return 1;
    std::vector<std::uint32_t> col_masks(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (row_masks[static_cast<std::size_t>(i)] >> j & 1u)
                col_masks[static_cast<std::size_t>(j)] |= std::uint32_t{1} << i;

    std::vector<std::int8_t> row_sum(static_cast<std::size_t>(n), 0);
    __int128 total = 0;
    std::uint32_t gray = 0;
    std::uint64_t end = std::uint64_t{1} << n;
    for (std::uint64_t iter = 1; iter < end; ++iter) {
        int j = std::countr_zero(iter);
        std::uint32_t flipped = std::uint32_t{1} << j;
        bool added = (gray & flipped) == 0;
        gray ^= flipped;
        std::uint32_t column = col_masks[static_cast<std::size_t>(j)];
        while (column != 0) {
            int i = std::countr_zero(column);
            row_sum[static_cast<std::size_t>(i)] += added ? 1 : -1;
            column &= column - 1;
        }
        unsigned __int128 prod = 1;
        for (int i = 0; i < n; ++i) {
            prod *= static_cast<unsigned>(row_sum[static_cast<std::size_t>(i)]);
            if (prod == 0) break;
        }
        if (prod == 0) continue;
        int popcnt = std::popcount(gray);
        if ((n - popcnt) % 2 == 0)
            total += static_cast<__int128>(prod);
        else
            total -= static_cast<__int128>(prod);
    }
    bool negative = total < 0;
    unsigned __int128 mag = negative ? static_cast<unsigned __int128>(-total)
                                     : static_cast<unsigned __int128>(total);
    BigInt out = static_cast<std::uint64_t>(mag >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(mag);
    return negative ? -out : out;
}

inline std::vector<std::uint32_t> rows_as_masks(const WakefordGraph& graph) {
    std::vector<std::uint32_t> masks;
    masks.reserve(graph.rows.size());
    for (const GroupSet& row : graph.rows) {
        std::uint32_t m = 0;
        row.for_each([&](int j) { m |= std::uint32_t{1} << j; });
        masks.push_back(m);
    }
    return masks;
}

} // namespace detail

inline MatchingReport analyze(const WakefordGraph& graph, CountMode mode) {
    int n = graph.size();
    MatchingReport report;

    std::vector<int> col_degree(static_cast<std::size_t>(n), 0);
    for (const GroupSet& row : graph.rows) {
        report.max_degree = std::max(report.max_degree, row.size());
        row.for_each([&](int j) { ++col_degree[static_cast<std::size_t>(j)]; });
    }
    report.max_codegree = *std::max_element(col_degree.begin(), col_degree.end());

    detail::HopcroftKarp hk(graph.rows);
    int matched = hk.run();
    report.exists = matched == n;

    if (report.exists) {
        std::vector<std::pair<int, int>> witness;
        witness.reserve(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u)
            witness.emplace_back(graph.b_elems[static_cast<std::size_t>(u)],
                                 graph.a_elems[static_cast<std::size_t>(
                                     hk.match_left()[static_cast<std::size_t>(u)])]);
        report.witness = std::move(witness);
    } else {
        GroupSet violator(graph.group->order());
        for (int u : hk.alternating_reachable())
            violator.add(graph.b_elems[static_cast<std::size_t>(u)]);
        report.hall_violator = std::move(violator);
    }

    if (mode == CountMode::exact) {
        if (n > kMaxExactCountSize)
            throw LimitError("exact pairing count capped at size " +
                             std::to_string(kMaxExactCountSize));
        report.mu = detail::permanent_01(detail::rows_as_masks(graph));
        report.mu_exact = true;
    } else {
        report.mu = report.exists ? 1 : 0;
        report.mu_exact = false;
    }
    return report;
}

/// Exact number of pairings from B onto A.
inline BigInt mu(const Group& g, const GroupSet& b, const GroupSet& a) {
    return analyze(build_graph(g, b, a), CountMode::exact).mu;
}

/// Independent oracle: enumerates all |B|! bijections directly against the
/// Cayley table, without building the graph.
inline BigInt mu_naive(const Group& g, const GroupSet& b, const GroupSet& a) {
    detail::check_over(g, b, "B");
    detail::check_over(g, a, "A");
    if (b.empty() || a.empty()) throw PreconditionError("B and A must be non-empty");
    if (b.size() != a.size()) throw PreconditionError("|B| and |A| must agree");
    if (b.size() > kMaxNaiveCountSize)
        throw LimitError("naive pairing count capped at size " +
                         std::to_string(kMaxNaiveCountSize));
    std::vector<int> bs = b.elements();
    std::vector<int> as = a.elements();
    std::vector<int> perm(bs.size());
    std::iota(perm.begin(), perm.end(), 0);
    long long count = 0;
    do {
        bool good = true;
        for (std::size_t i = 0; i < bs.size(); ++i) {
            if (a.contains(g.mul(bs[i], as[static_cast<std::size_t>(perm[i])]))) {
                good = false;
                break;
            }
        }
        if (good) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

/// Decides mu == 1 in polynomial time at any size: a bipartite graph has a
/// unique perfect matching exactly when repeatedly removing a degree-1 row or
/// column together with its forced partner empties it.
inline bool has_unique_matching(const WakefordGraph& graph) {
    int n = graph.size();
    std::vector<GroupSet> rows = graph.rows;
    std::vector<int> row_deg(static_cast<std::size_t>(n), 0);
    std::vector<int> col_deg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        row_deg[static_cast<std::size_t>(i)] = rows[static_cast<std::size_t>(i)].size();
        rows[static_cast<std::size_t>(i)].for_each([&](int j) {
            ++col_deg[static_cast<std::size_t>(j)];
            col_rows[static_cast<std::size_t>(j)].push_back(i);
        });
    }
    std::vector<char> row_done(static_cast<std::size_t>(n), 0);
    std::vector<char> col_done(static_cast<std::size_t>(n), 0);

    auto remove_pair = [&](int i, int j) {
        row_done[static_cast<std::size_t>(i)] = 1;
        col_done[static_cast<std::size_t>(j)] = 1;
        rows[static_cast<std::size_t>(i)].for_each([&](int c) {
            if (!col_done[static_cast<std::size_t>(c)]) --col_deg[static_cast<std::size_t>(c)];
        });
        for (int r : col_rows[static_cast<std::size_t>(j)]) {
            if (!row_done[static_cast<std::size_t>(r)] &&
                rows[static_cast<std::size_t>(r)].contains(j)) {
                rows[static_cast<std::size_t>(r)].remove(j);
                --row_deg[static_cast<std::size_t>(r)];
            }
        }
    };

    for (int removed = 0; removed < n; ++removed) {
        int fi = -1, fj = -1;
        for (int i = 0; i < n && fi < 0; ++i) {
            if (row_done[static_cast<std::size_t>(i)]) continue;
            if (row_deg[static_cast<std::size_t>(i)] == 0) return false;  // mu = 0
            if (row_deg[static_cast<std::size_t>(i)] == 1) {
                fi = i;
                fj = rows[static_cast<std::size_t>(i)].first();
            }
        }
        if (fi < 0) {
            for (int j = 0; j < n && fi < 0; ++j) {
                if (col_done[static_cast<std::size_t>(j)]) continue;
                if (col_deg[static_cast<std::size_t>(j)] == 0) return false;  // mu = 0
                if (col_deg[static_cast<std::size_t>(j)] == 1) {
                    for (int r : col_rows[static_cast<std::size_t>(j)]) {
                        if (!row_done[static_cast<std::size_t>(r)] &&
                            rows[static_cast<std::size_t>(r)].contains(j)) {
                            fi = r;
                            fj = j;
                            break;
                        }
                    }
                }
            }
        }
        if (fi < 0) return false;  // all degrees >= 2: zero or at least two matchings
        remove_pair(fi, fj);
    }
    return true;
}

/// Both sides of the Hall-condition identity for X, a subset of B: the
/// relation neighborhood size |R(X)| and the complement form
/// |(inv-complement(A) * (X u {1})) \ inv-complement(A)|.
inline std::pair<int, int> hall_form_check(const Group& g, const GroupSet& b, const GroupSet& a,
                                           const GroupSet& x) {
    detail::check_over(g, b, "B");
    detail::check_over(g, a, "A");
    detail::check_over(g, x, "X");
    if (!x.subset_of(b)) throw PreconditionError("X must be a subset of B");

    GroupSet neighborhood(g.order());
    x.for_each([&](int e) {
        a.for_each([&](int y) {
            if (!a.contains(g.mul(e, y))) neighborhood.add(y);
        });
    });

    GroupSet c = complement(g, invert_set(g, a));
    int form = x.empty() ? 0 : (mul_sets(g, c, adjoin_identity(x)) - c).size();
    return {neighborhood.size(), form};
}

} // namespace wakeford
