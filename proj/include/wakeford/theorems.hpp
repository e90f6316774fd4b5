#pragma once

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wakeford/arith.hpp"
#include "wakeford/catalog.hpp"
#include "wakeford/group.hpp"
#include "wakeford/isoperimetry.hpp"
#include "wakeford/pairing.hpp"
#include "wakeford/rng.hpp"
#include "wakeford/set_ops.hpp"

namespace wakeford {

using nlohmann::json;

/// Machine-checkable statements. Each verifier evaluates one instance and
/// returns a reproducible record.
enum class StatementId {
    K1,            // Chowla B, |A|=|B|  =>  some pairing exists
    KAROLYI,       // 1 not in B, |B| < p(G)  =>  some pairing exists
    MCP,           // trichotomy: count bound / co-translate overlap / progression
    MUBB,          // mu(B,B) rational lower bound or B a^-1 a progression
    EHO,           // some x in S has lambda_T(x) above the connectivity bound
    EHOL,          // specialization of EHO at kappa_2 = |S| = |T|
    OLSON_XY,      // lambda_B(x) + lambda_B(y) >= lambda_B(xy)
    OLSON_CLIQUE,  // sum over C of lambda_B >= |B|(|C|-|B|+1)
    CCHOWLA,       // kappa_1 of an identity-adjoined Chowla set equals |S|
    VCHOWLA,       // identity-adjoined Chowla set is Vosper or a progression
    CF,            // cofinite-set expansion clauses
    TRANS,         // mu(B,A) = mu(B,Aa)
    DEG,           // graph row sizes equal the left Erdos-Heilbronn function
    KHC_FORM,      // Hall-condition complement-form identity
    LOSONCZY,      // subgroup-based non-matchable construction
    PROG_EXAMPLE_1,  // mu(rP,P) = 1 for progressions P
    PROG_EXAMPLE_2,  // mu(Q,P) = 1 for the perturbed progression
};

inline const char* to_string(StatementId id) {
    switch (id) {
        case StatementId::K1: return "K1";
        case StatementId::KAROLYI: return "KAROLYI";
        case StatementId::MCP: return "MCP";
        case StatementId::MUBB: return "MUBB";
        case StatementId::EHO: return "EHO";
        case StatementId::EHOL: return "EHOL";
        case StatementId::OLSON_XY: return "OLSON_XY";
        case StatementId::OLSON_CLIQUE: return "OLSON_CLIQUE";
        case StatementId::CCHOWLA: return "CCHOWLA";
        case StatementId::VCHOWLA: return "VCHOWLA";
        case StatementId::CF: return "CF";
        case StatementId::TRANS: return "TRANS";
        case StatementId::DEG: return "DEG";
        case StatementId::KHC_FORM: return "KHC_FORM";
        case StatementId::LOSONCZY: return "LOSONCZY";
        case StatementId::PROG_EXAMPLE_1: return "PROG_EXAMPLE_1";
        case StatementId::PROG_EXAMPLE_2: return "PROG_EXAMPLE_2";
    }
    return "?";
}

inline std::optional<StatementId> parse_statement_id(std::string_view text) {
    static constexpr StatementId all[] = {
        StatementId::K1, StatementId::KAROLYI, StatementId::MCP, StatementId::MUBB,
        StatementId::EHO, StatementId::EHOL, StatementId::OLSON_XY, StatementId::OLSON_CLIQUE,
        StatementId::CCHOWLA, StatementId::VCHOWLA, StatementId::CF, StatementId::TRANS,
        StatementId::DEG, StatementId::KHC_FORM, StatementId::LOSONCZY,
        StatementId::PROG_EXAMPLE_1, StatementId::PROG_EXAMPLE_2};
    for (StatementId id : all)
        if (text == to_string(id)) return id;
    return std::nullopt;
}

enum class Verdict { pass, fail, skipped };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::skipped: return "skipped";
    }
    return "?";
}

/// One checked instance. Fail records embed everything needed to replay them.
struct VerificationRecord {
    StatementId statement;
    std::string group_spec;
    json instance;  // explicit element lists and parameters
    Verdict verdict = Verdict::skipped;
    json details;
};

namespace detail {

inline json set_json(const GroupSet& s) { return json(s.elements()); }

inline VerificationRecord record(StatementId id, const Group& g, json instance, Verdict v,
                                 json details) {
    return VerificationRecord{id, g.spec(), std::move(instance), v, std::move(details)};
}

inline VerificationRecord skipped(StatementId id, const Group& g, json instance,
                                  const std::string& why) {
    return record(id, g, std::move(instance), Verdict::skipped, json{{"reason", why}});
}

/// Lexicographic k-subsets of elems, as GroupSets over `universe`.
template <class F>
void for_each_combination(const std::vector<int>& elems, int universe, int k, F&& f) {
    int m = static_cast<int>(elems.size());
    if (k > m) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        GroupSet s(universe);
        for (int i : idx) s.add(elems[static_cast<std::size_t>(i)]);
        f(s);
        int pos = k - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == m - k + pos) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Per-instance verifiers
// ---------------------------------------------------------------------------

/// Chowla B with |A| = |B| always admits a pairing.
inline VerificationRecord verify_k1(const Group& g, const GroupSet& b, const GroupSet& a) {
    json inst{{"b", detail::set_json(b)}, {"a", detail::set_json(a)}};
    if (b.empty() || a.empty() || b.size() != a.size())
        return detail::skipped(StatementId::K1, g, inst, "requires non-empty |A| = |B|");
    if (!is_chowla(g, b)) return detail::skipped(StatementId::K1, g, inst, "B is not Chowla");
    MatchingReport r = analyze(build_graph(g, b, a), CountMode::existence_only);
    json details{{"matchable", r.exists},
                 {"max_degree", r.max_degree},
                 {"max_codegree", r.max_codegree}};
    if (!r.exists) details["hall_violator"] = detail::set_json(*r.hall_violator);
    return detail::record(StatementId::K1, g, inst, r.exists ? Verdict::pass : Verdict::fail,
                          details);
}

/// |B| below p(G) (and 1 outside B) always admits a pairing.
inline VerificationRecord verify_karolyi(const Group& g, const GroupSet& b, const GroupSet& a) {
    json inst{{"b", detail::set_json(b)}, {"a", detail::set_json(a)}};
    if (b.empty() || a.empty() || b.size() != a.size())
        return detail::skipped(StatementId::KAROLYI, g, inst, "requires non-empty |A| = |B|");
    if (b.contains(0)) return detail::skipped(StatementId::KAROLYI, g, inst, "identity is in B");
    std::optional<int> p = p_of_group(g);
    if (p && b.size() >= *p)
        return detail::skipped(StatementId::KAROLYI, g, inst, "|B| >= p(G)");
    MatchingReport r = analyze(build_graph(g, b, a), CountMode::existence_only);
    json details{{"matchable", r.exists}, {"p_of_group", p ? json(*p) : json("inf")}};
    if (!r.exists) details["hall_violator"] = detail::set_json(*r.hall_violator);
    return detail::record(StatementId::KAROLYI, g, inst, r.exists ? Verdict::pass : Verdict::fail,
                          details);
}

/// Trichotomy for Chowla B: the pairing count reaches max(Delta, Delta^-1),
/// or some translate A a^-1 overlaps B in all but one element, or some
/// translate A a^-1 is a progression.
inline VerificationRecord verify_mcp(const Group& g, const GroupSet& b, const GroupSet& a) {
    json inst{{"b", detail::set_json(b)}, {"a", detail::set_json(a)}};
    if (b.empty() || a.empty() || b.size() != a.size())
        return detail::skipped(StatementId::MCP, g, inst, "requires non-empty |A| = |B|");
    if (!is_chowla(g, b)) return detail::skipped(StatementId::MCP, g, inst, "B is not Chowla");

    MatchingReport r = analyze(build_graph(g, b, a), CountMode::exact);
    int delta = std::max(r.max_degree, r.max_codegree);
    bool branch_i = r.mu >= delta;

    std::vector<int> overlap_witnesses;
    std::vector<int> progression_witnesses;
    a.for_each([&](int elem) {
        GroupSet shifted = translate(g, a, g.inv(elem), Side::right);
        if ((shifted & b).size() == b.size() - 1) overlap_witnesses.push_back(elem);
        if (progression_witness(g, shifted)) progression_witnesses.push_back(elem);
    });
    bool branch_ii = !overlap_witnesses.empty();
    bool branch_iii = !progression_witnesses.empty();

    // the overlap branch phrased over w in A^-1 coincides with w = a^-1
    std::vector<int> w_witnesses;
    for (int elem : overlap_witnesses) w_witnesses.push_back(g.inv(elem));
    std::sort(w_witnesses.begin(), w_witnesses.end());

    bool pass = branch_i || branch_ii || branch_iii;
    json details{{"mu", to_decimal_string(r.mu)},
                 {"max_degree", r.max_degree},
                 {"max_codegree", r.max_codegree},
                 {"branch_count_bound", branch_i},
                 {"branch_overlap", branch_ii},
                 {"branch_progression", branch_iii},
                 {"overlap_witnesses", overlap_witnesses},
                 {"overlap_witnesses_w_form", w_witnesses},
                 {"progression_witnesses", progression_witnesses}};
    return detail::record(StatementId::MCP, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

/// mu(B,B) >= min((|B|+1)/3, |B|(q-|B|-1)/(2q-|B|-4)) or some B a^-1 is a
/// progression. Degenerate denominators make that term +infinity.
inline VerificationRecord verify_mubb(const Group& g, const GroupSet& b) {
    json inst{{"b", detail::set_json(b)}};
    if (b.empty()) return detail::skipped(StatementId::MUBB, g, inst, "B is empty");
    if (!is_chowla(g, b)) return detail::skipped(StatementId::MUBB, g, inst, "B is not Chowla");

    int q = subgroup_generated(g, b).size();
    int size = b.size();
    BigInt mu_bb = mu(g, b, b);

    ExtRat bound1 = ExtRat::of(size + 1, 3);
    long long den2 = 2LL * q - size - 4;
    ExtRat bound2 = den2 > 0 ? ExtRat::of(static_cast<long long>(size) * (q - size - 1), den2)
                             : ExtRat::inf();
    ExtRat bound = min(bound1, bound2);
    bool branch_i = bound.satisfied_by(mu_bb);

    std::optional<int> prog_witness;
    b.for_each([&](int elem) {
        if (prog_witness) return;
        if (progression_witness(g, translate(g, b, g.inv(elem), Side::right)))
            prog_witness = elem;
    });

    bool pass = branch_i || prog_witness.has_value();
    json details{{"mu", to_decimal_string(mu_bb)},
                 {"q", q},
                 {"bound1", bound1.str()},
                 {"bound2", bound2.str()},
                 {"bound", bound.str()},
                 {"branch_bound", branch_i},
                 {"branch_progression", prog_witness.has_value()}};
    if (prog_witness) details["progression_witness_a"] = *prog_witness;
    return detail::record(StatementId::MUBB, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

/// The S-dependent part of the lambda bound; cached by sweeps so the
/// connectivity computation runs once per S.
struct EhoContext {
    int q = 0;       // |<S>|
    int kappa2 = 0;  // second connectivity of S u {1}
};

inline EhoContext eho_context(const Group& g, const GroupSet& s) {
    ConnectivityReport k2 = kappa(g, adjoin_identity(s), 2);
    return EhoContext{k2.ambient_order, k2.kappa};
}

namespace detail {

struct EhoBound {
    ExtRat term1, term2, bound;
};

// Term rules outside the bound's implicit regime: a non-positive numerator
// satisfies that term outright; otherwise a non-positive denominator drops
// the term from the min.
inline EhoBound eho_terms(const EhoContext& ctx, long long ssize, long long tsize) {
    EhoBound out;
    long long num1 = tsize * (ssize + ctx.kappa2 - tsize + 1);
    out.term1 = num1 <= 0 ? ExtRat::auto_satisfied()
                          : ExtRat::of(num1, ssize + 2LL * ctx.kappa2);
    long long num2 = tsize * (ctx.q - tsize - 1);
    long long den2 = 2LL * ctx.q - ssize - 4;
    out.term2 = num2 <= 0 ? ExtRat::auto_satisfied()
                          : (den2 > 0 ? ExtRat::of(num2, den2) : ExtRat::inf());
    out.bound = min(out.term1, out.term2);
    return out;
}

inline std::pair<int, int> lambda_max_both(const Group& g, const GroupSet& s, const GroupSet& t) {
    int max_left = 0, max_right = 0;
    s.for_each([&](int x) {
        max_left = std::max(max_left, lambda(g, t, x, Side::left));
        max_right = std::max(max_right, lambda(g, t, x, Side::right));
    });
    return {max_left, max_right};
}

} // namespace detail

/// Evaluated pieces of one lambda-bound instance, without any serialization.
struct EhoOutcome {
    detail::EhoBound bound;
    int max_left = 0;
    int max_right = 0;
    bool holds_left = false;
    bool holds_right = false;

    bool holds(Side side) const { return side == Side::left ? holds_left : holds_right; }
};

inline EhoOutcome eho_outcome(const Group& g, const GroupSet& s, const GroupSet& t,
                              const EhoContext& ctx) {
    EhoOutcome out;
    out.bound = detail::eho_terms(ctx, s.size(), t.size());
    auto [max_left, max_right] = detail::lambda_max_both(g, s, t);
    out.max_left = max_left;
    out.max_right = max_right;
    out.holds_left = out.bound.bound.satisfied_by(static_cast<long long>(max_left));
    out.holds_right = out.bound.bound.satisfied_by(static_cast<long long>(max_right));
    return out;
}

inline VerificationRecord eho_record(const Group& g, const GroupSet& s, const GroupSet& t,
                                     Side side, const EhoContext& ctx, const EhoOutcome& out) {
    json inst{{"s", detail::set_json(s)}, {"t", detail::set_json(t)}, {"side", to_string(side)}};
    json details{{"q", ctx.q},
                 {"kappa2", ctx.kappa2},
                 {"term1", out.bound.term1.str()},
                 {"term2", out.bound.term2.str()},
                 {"bound", out.bound.bound.str()},
                 {"lambda_max_left", out.max_left},
                 {"lambda_max_right", out.max_right},
                 {"holds_left", out.holds_left},
                 {"holds_right", out.holds_right}};
    return detail::record(StatementId::EHO, g, inst,
                          out.holds(side) ? Verdict::pass : Verdict::fail, details);
}

/// Some x in S satisfies lambda_T(x) >= min(|T|(|S|+k2-|T|+1)/(|S|+2*k2),
/// |T|(q-|T|-1)/(2q-|S|-4)), with k2 the second connectivity of S u {1}.
/// The _ctx variant takes precomputed connectivity so sweeps can amortize it
/// over many T.
inline VerificationRecord verify_eho_ctx(const Group& g, const GroupSet& s, const GroupSet& t,
                                         Side side, const EhoContext& ctx) {
    if (s.empty() || t.empty() || s.contains(0)) {
        json inst{{"s", detail::set_json(s)}, {"t", detail::set_json(t)},
                  {"side", to_string(side)}};
        return detail::skipped(StatementId::EHO, g, inst,
                               s.contains(0) ? "identity is in S" : "S and T must be non-empty");
    }
    return eho_record(g, s, t, side, ctx, eho_outcome(g, s, t, ctx));
}

inline VerificationRecord verify_eho(const Group& g, const GroupSet& s, const GroupSet& t,
                                     Side side) {
    json inst{{"s", detail::set_json(s)}, {"t", detail::set_json(t)}, {"side", to_string(side)}};
    if (s.empty() || t.empty())
        return detail::skipped(StatementId::EHO, g, inst, "S and T must be non-empty");
    if (s.contains(0)) return detail::skipped(StatementId::EHO, g, inst, "identity is in S");
    try {
        return verify_eho_ctx(g, s, t, side, eho_context(g, s));
    } catch (const LimitError&) {
        return detail::skipped(StatementId::EHO, g, inst, "generated subgroup above kappa cap");
    }
}

/// Specialization at kappa_2 = |S| = |T|: bound min((|S|+1)/3,
/// |S|(q-|S|-1)/(2q-|S|-4)).
inline VerificationRecord verify_ehol_ctx(const Group& g, const GroupSet& s, const GroupSet& t,
                                          Side side, const EhoContext& ctx) {
    json inst{{"s", detail::set_json(s)}, {"t", detail::set_json(t)}, {"side", to_string(side)}};
    if (s.empty() || t.empty())
        return detail::skipped(StatementId::EHOL, g, inst, "S and T must be non-empty");
    if (s.contains(0)) return detail::skipped(StatementId::EHOL, g, inst, "identity is in S");
    if (ctx.kappa2 != s.size() || s.size() != t.size())
        return detail::skipped(StatementId::EHOL, g, inst, "needs kappa2 = |S| = |T|");

    long long ssize = s.size();
    ExtRat bound1 = ExtRat::of(ssize + 1, 3);
    long long num2 = ssize * (ctx.q - ssize - 1);
    long long den2 = 2LL * ctx.q - ssize - 4;
    ExtRat bound2 = num2 <= 0 ? ExtRat::auto_satisfied()
                              : (den2 > 0 ? ExtRat::of(num2, den2) : ExtRat::inf());
    ExtRat bound = min(bound1, bound2);

    auto [max_left, max_right] = detail::lambda_max_both(g, s, t);
    int max_here = side == Side::left ? max_left : max_right;
    bool pass = bound.satisfied_by(static_cast<long long>(max_here));
    json details{{"q", ctx.q},
                 {"kappa2", ctx.kappa2},
                 {"bound", bound.str()},
                 {"lambda_max_left", max_left},
                 {"lambda_max_right", max_right}};
    return detail::record(StatementId::EHOL, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

inline VerificationRecord verify_ehol(const Group& g, const GroupSet& s, const GroupSet& t,
                                      Side side) {
    json inst{{"s", detail::set_json(s)}, {"t", detail::set_json(t)}, {"side", to_string(side)}};
    if (s.empty() || t.empty())
        return detail::skipped(StatementId::EHOL, g, inst, "S and T must be non-empty");
    if (s.contains(0)) return detail::skipped(StatementId::EHOL, g, inst, "identity is in S");
    try {
        return verify_ehol_ctx(g, s, t, side, eho_context(g, s));
    } catch (const LimitError&) {
        return detail::skipped(StatementId::EHOL, g, inst, "generated subgroup above kappa cap");
    }
}

/// Subadditivity of the Erdos-Heilbronn function along products.
inline VerificationRecord verify_olson_xy(const Group& g, const GroupSet& b, int x, int y) {
    json inst{{"b", detail::set_json(b)}, {"x", x}, {"y", y}};
    if (b.empty()) return detail::skipped(StatementId::OLSON_XY, g, inst, "B is empty");
    int lx = lambda(g, b, x, Side::right);
    int ly = lambda(g, b, y, Side::right);
    int lxy = lambda(g, b, g.mul(x, y), Side::right);
    int lx_l = lambda(g, b, x, Side::left);
    int ly_l = lambda(g, b, y, Side::left);
    int lxy_l = lambda(g, b, g.mul(x, y), Side::left);
    bool pass = lx + ly >= lxy;
    json details{{"lambda_x", lx},
                 {"lambda_y", ly},
                 {"lambda_xy", lxy},
                 {"holds_left_side", lx_l + ly_l >= lxy_l}};
    return detail::record(StatementId::OLSON_XY, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

/// Averaging bound: sum over C of lambda_B >= |B| (|C| - |B| + 1), for C
/// avoiding the identity.
inline VerificationRecord verify_olson_clique(const Group& g, const GroupSet& b,
                                              const GroupSet& c) {
    json inst{{"b", detail::set_json(b)}, {"c", detail::set_json(c)}};
    if (b.empty() || c.empty())
        return detail::skipped(StatementId::OLSON_CLIQUE, g, inst, "B and C must be non-empty");
    if (c.contains(0))
        return detail::skipped(StatementId::OLSON_CLIQUE, g, inst, "identity is in C");
    long long lhs = 0;
    c.for_each([&](int x) { lhs += lambda(g, b, x, Side::right); });
    long long rhs = static_cast<long long>(b.size()) * (c.size() - b.size() + 1);
    bool pass = lhs >= rhs;
    json details{{"lhs", lhs}, {"rhs", rhs}};
    return detail::record(StatementId::OLSON_CLIQUE, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

/// kappa_1(S u {1}) = |S| for Chowla S.
inline VerificationRecord verify_cchowla(const Group& g, const GroupSet& s) {
    json inst{{"s", detail::set_json(s)}};
    if (s.empty()) return detail::skipped(StatementId::CCHOWLA, g, inst, "S is empty");
    if (!is_chowla(g, s)) return detail::skipped(StatementId::CCHOWLA, g, inst, "S is not Chowla");
    ConnectivityReport r;
    try {
        r = kappa(g, adjoin_identity(s), 1);
    } catch (const LimitError&) {
        return detail::skipped(StatementId::CCHOWLA, g, inst, "generated subgroup above kappa cap");
    }
    bool pass = r.kappa == s.size();
    json details{{"kappa1", r.kappa},
                 {"expected", s.size()},
                 {"q", r.ambient_order},
                 {"empty_range", r.empty_range}};
    if (r.fragment) details["fragment"] = detail::set_json(*r.fragment);
    return detail::record(StatementId::CCHOWLA, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

/// S u {1} is a Vosper set or a progression, for Chowla S.
inline VerificationRecord verify_vchowla(const Group& g, const GroupSet& s) {
    json inst{{"s", detail::set_json(s)}};
    if (s.empty()) return detail::skipped(StatementId::VCHOWLA, g, inst, "S is empty");
    if (!is_chowla(g, s)) return detail::skipped(StatementId::VCHOWLA, g, inst, "S is not Chowla");
    GroupSet s_tilde = adjoin_identity(s);
    std::optional<ProgressionWitness> prog = progression_witness(g, s_tilde);
    bool vosper = false;
    if (!prog) {
        try {
            vosper = is_vosper(g, s_tilde);
        } catch (const LimitError&) {
            return detail::skipped(StatementId::VCHOWLA, g, inst,
                                   "generated subgroup above kappa cap");
        }
    }
    bool pass = prog.has_value() || vosper;
    json details{{"is_progression", prog.has_value()}, {"is_vosper", vosper}};
    if (prog)
        details["progression"] = json{{"ratio", prog->ratio},
                                      {"start", prog->start},
                                      {"length", prog->length},
                                      {"side", to_string(prog->side)}};
    return detail::record(StatementId::VCHOWLA, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

/// Clause-by-clause check of the cofinite expansion statement; the instance
/// set s must contain the identity.
inline VerificationRecord verify_cf(const Group& g, const GroupSet& s, const GroupSet& t) {
    json inst{{"s", detail::set_json(s)}, {"t", detail::set_json(t)}};
    CfVerdict v;
    try {
        v = verify_prop_cf(g, s, t);
    } catch (const PreconditionError& e) {
        return detail::skipped(StatementId::CF, g, inst, e.what());
    } catch (const LimitError& e) {
        return detail::skipped(StatementId::CF, g, inst, e.what());
    }
    json details{{"q", v.q},
                 {"boundary_size", v.boundary_set.size()},
                 {"clause_a_threshold", s.size() - 1},
                 {"clause_a", v.clause_a_holds},
                 {"exterior_size", v.exterior_set.size()},
                 {"exterior_empty", v.exterior_empty},
                 {"cf1", v.cf1_holds},
                 {"vosper_case", v.vosper_case}};
    if (v.vosper_case) {
        details["cf2"] = v.cf2_holds;
        details["cf3"] = v.cf3_holds;
        if (!v.cf2_holds) details["cf2_lhs"] = detail::set_json(v.cf2_lhs);
    }
    bool pass = v.all_pass();
    return detail::record(StatementId::CF, g, inst, pass ? Verdict::pass : Verdict::fail, details);
}

/// mu is invariant under right translation of A.
inline VerificationRecord verify_trans(const Group& g, const GroupSet& b, const GroupSet& a,
                                       const std::vector<int>& translates) {
    json inst{{"b", detail::set_json(b)}, {"a", detail::set_json(a)}, {"translates", translates}};
    BigInt base = mu(g, b, a);
    bool pass = true;
    json values = json::array();
    for (int elem : translates) {
        BigInt shifted = mu(g, b, translate(g, a, elem, Side::right));
        values.push_back(to_decimal_string(shifted));
        if (shifted != base) pass = false;
    }
    json details{{"mu", to_decimal_string(base)}, {"translated_mu", values}};
    return detail::record(StatementId::TRANS, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

/// Row sizes of the Wakeford graph equal |xA \ A|.
inline VerificationRecord verify_deg(const Group& g, const GroupSet& b, const GroupSet& a) {
    json inst{{"b", detail::set_json(b)}, {"a", detail::set_json(a)}};
    WakefordGraph graph = build_graph(g, b, a);
    bool pass = true;
    bool right_matches = true;
    for (int i = 0; i < graph.size(); ++i) {
        int x = graph.b_elems[static_cast<std::size_t>(i)];
        int row = graph.rows[static_cast<std::size_t>(i)].size();
        if (row != lambda(g, a, x, Side::left)) pass = false;
        if (row != lambda(g, a, x, Side::right)) right_matches = false;
    }
    json details{{"left_side_matches", pass}, {"right_side_matches", right_matches}};
    return detail::record(StatementId::DEG, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

/// Both forms of the Hall condition agree on X.
inline VerificationRecord verify_khc_form(const Group& g, const GroupSet& b, const GroupSet& a,
                                          const GroupSet& x) {
    json inst{{"b", detail::set_json(b)}, {"a", detail::set_json(a)}, {"x", detail::set_json(x)}};
    auto [neighborhood, complement_form] = hall_form_check(g, b, a, x);
    bool pass = neighborhood == complement_form;
    json details{{"neighborhood", neighborhood}, {"complement_form", complement_form}};
    return detail::record(StatementId::KHC_FORM, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

/// B = (H \ {1}) u {a}, A = H for a proper subgroup H and a outside H; no
/// pairing can exist.
inline std::pair<GroupSet, GroupSet> losonczy_instance(const Group& g, const GroupSet& h,
                                                       int a_elem) {
    detail::check_over(g, h, "H");
    if (!h.contains(0) || h.size() < 2 || h.size() >= g.order())
        throw PreconditionError("H must be a proper subgroup with at least 2 elements");
    auto elems = h.elements();
    for (int x : elems)
        for (int y : elems)
            if (!h.contains(g.mul(x, y))) throw PreconditionError("H is not closed");
    if (h.contains(a_elem)) throw PreconditionError("a must lie outside H");
    GroupSet b = h;
    b.remove(0);
    b.add(a_elem);
    return {b, h};
}

inline VerificationRecord verify_losonczy(const Group& g, const GroupSet& h, int a_elem) {
    json inst{{"h", detail::set_json(h)}, {"a", a_elem}};
    std::pair<GroupSet, GroupSet> ba;
    try {
        ba = losonczy_instance(g, h, a_elem);
    } catch (const PreconditionError& e) {
        return detail::skipped(StatementId::LOSONCZY, g, inst, e.what());
    }
    inst["b"] = detail::set_json(ba.first);
    MatchingReport r = analyze(build_graph(g, ba.first, ba.second), CountMode::existence_only);
    GroupSet h_core = h;
    h_core.remove(0);
    bool violator_ok = !r.exists && r.hall_violator->subset_of(h_core);
    bool pass = !r.exists && violator_ok;
    json details{{"matchable", r.exists}};
    if (!r.exists) {
        details["hall_violator"] = detail::set_json(*r.hall_violator);
        details["violator_inside_h"] = violator_ok;
    }
    return detail::record(StatementId::LOSONCZY, g, inst, pass ? Verdict::pass : Verdict::fail,
                          details);
}

enum class ProgressionVariant { one, two };

/// Variant one: P = {1, r, ..., r^j}, returns (rP, P).
/// Variant two: P = {1, r^2, ..., r^(j+1)}, Q = {r^2, ..., r^(j+1), a},
/// returns (Q, P). Order floors guard against wrap-around regimes; pass
/// allow_wraparound to build instances outside them anyway.
inline std::pair<GroupSet, GroupSet> progression_instances(const Group& g, int r, int j,
                                                           ProgressionVariant variant,
                                                           std::optional<int> a_elem,
                                                           bool allow_wraparound = false) {
    if (j < 0) throw PreconditionError("j must be >= 0");
    int ord = g.order_of(r);
    if (variant == ProgressionVariant::one) {
        if (!allow_wraparound && ord < j + 2)
            throw PreconditionError("variant one requires elem_order[r] >= j+2");
        if (ord < j + 1) throw PreconditionError("P would repeat: elem_order[r] < j+1");
        GroupSet p(g.order());
        GroupSet rp(g.order());
        for (int i = 0; i <= j; ++i) {
            p.add(g.power(r, i));
            rp.add(g.power(r, i + 1));
        }
        return {rp, p};
    }
    if (!a_elem) throw PreconditionError("variant two needs an extra element a");
    if (!allow_wraparound && ord < 2 * j + 6)
        throw PreconditionError("variant two requires elem_order[r] >= 2j+6");
    GroupSet p(g.order());
    p.add(0);
    GroupSet q(g.order());
    for (int i = 2; i <= j + 1; ++i) {
        int e = g.power(r, i);
        if (p.contains(e) || e == 0) throw PreconditionError("P would repeat");
        p.add(e);
        q.add(e);
    }
    GroupSet excluded = p;
    excluded.add(g.power(r, j + 1));
    excluded.add(g.power(r, j + 2));
    if (excluded.contains(*a_elem))
        throw PreconditionError("a must avoid P, r^(j+1) and r^(j+2)");
    q.add(*a_elem);
    return {q, p};
}

namespace detail {

/// mu == 1 decided exactly: permanent within the exact cap (cross-checked
/// against the unique-matching trim), trim alone beyond it.
inline VerificationRecord check_mu_is_one(StatementId id, const Group& g, json inst,
                                          const GroupSet& b, const GroupSet& a,
                                          bool exploratory) {
    WakefordGraph graph = build_graph(g, b, a);
    bool unique = has_unique_matching(graph);
    json details{{"size", b.size()}, {"unique_matching", unique}};
    bool pass = unique;
    if (b.size() <= kMaxExactCountSize) {
        BigInt count = analyze(graph, CountMode::exact).mu;
        details["mu"] = to_decimal_string(count);
        bool routes_agree = (count == 1) == unique;
        details["count_routes_agree"] = routes_agree;
        pass = count == 1 && routes_agree;
    } else {
        details["mu"] = unique ? "1" : "!=1";
    }
    if (exploratory) details["exploratory"] = true;
    return record(id, g, std::move(inst), pass ? Verdict::pass : Verdict::fail,
                  std::move(details));
}

} // namespace detail

inline VerificationRecord verify_prog1(const Group& g, int r, int j,
                                       bool allow_wraparound = false) {
    json inst{{"r", r}, {"j", j}, {"variant", 1}};
    std::pair<GroupSet, GroupSet> ba;
    try {
        ba = progression_instances(g, r, j, ProgressionVariant::one, std::nullopt,
                                   allow_wraparound);
    } catch (const PreconditionError& e) {
        return detail::skipped(StatementId::PROG_EXAMPLE_1, g, inst, e.what());
    }
    inst["b"] = detail::set_json(ba.first);
    inst["a"] = detail::set_json(ba.second);
    bool exploratory = g.order_of(r) < j + 3;  // wrap-around regime
    return detail::check_mu_is_one(StatementId::PROG_EXAMPLE_1, g, inst, ba.first, ba.second,
                                   exploratory && allow_wraparound);
}

inline VerificationRecord verify_prog2(const Group& g, int r, int j, int a_elem,
                                       bool allow_wraparound = false) {
    json inst{{"r", r}, {"j", j}, {"a_elem", a_elem}, {"variant", 2}};
    std::pair<GroupSet, GroupSet> ba;
    try {
        ba = progression_instances(g, r, j, ProgressionVariant::two, a_elem, allow_wraparound);
    } catch (const PreconditionError& e) {
        return detail::skipped(StatementId::PROG_EXAMPLE_2, g, inst, e.what());
    }
    inst["b"] = detail::set_json(ba.first);
    inst["a"] = detail::set_json(ba.second);
    bool exploratory = g.order_of(r) < 2 * j + 6;
    return detail::check_mu_is_one(StatementId::PROG_EXAMPLE_2, g, inst, ba.first, ba.second,
                                   exploratory && allow_wraparound);
}

} // namespace wakeford
