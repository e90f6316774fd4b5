#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wakeford/theorems.hpp"

namespace wakeford {

/// Knobs for a verification sweep. Unset fields fall back to per-statement
/// defaults (the same families the acceptance suite runs).
struct SweepOptions {
    std::vector<std::string> groups;  // empty: per-statement default roster
    std::optional<int> max_order;
    std::optional<int> max_set_size;
    std::optional<int> sample_count;
    std::uint64_t seed = 1;
    bool allow_wraparound = false;
    // caps on stored per-instance records; counting is never truncated
    int pass_record_cap = 100;
    int fail_record_cap = 500;
    int skip_record_cap = 100;
};

struct SweepCounts {
    long long instances = 0;
    long long passes = 0;
    long long fails = 0;
    long long skips = 0;
    long long exploratory_fails = 0;
    bool truncated = false;
};

namespace detail {

/// Collects records in canonical generation order, keeping counts exact and
/// stored records within the configured caps.
class RecordSink {
public:
    RecordSink(StatementId id, const SweepOptions& opt) : id_(id), opt_(opt) {}

    void push(VerificationRecord r) {
        ++counts_.instances;
        bool exploratory = r.details.is_object() && r.details.value("exploratory", false);
        long long cap = 0;
        long long* bucket = nullptr;
        switch (r.verdict) {
            case Verdict::pass:
                bucket = &counts_.passes;
                cap = opt_.pass_record_cap;
                break;
            case Verdict::fail:
                bucket = exploratory ? &counts_.exploratory_fails : &counts_.fails;
                cap = opt_.fail_record_cap;
                break;
            case Verdict::skipped:
                bucket = &counts_.skips;
                cap = opt_.skip_record_cap;
                break;
        }
        long long seen = *bucket;
        ++*bucket;
        if (seen < cap)
            records_.push_back(std::move(r));
        else
            counts_.truncated = true;
    }

    std::vector<VerificationRecord> finish(json family) {
        VerificationRecord summary;
        summary.statement = id_;
        summary.group_spec = "*";
        summary.instance = json{{"family", std::move(family)}};
        summary.verdict = counts_.fails > 0 ? Verdict::fail : Verdict::pass;
        summary.details = json{{"summary", true},
                               {"instances", counts_.instances},
                               {"pass", counts_.passes},
                               {"fail", counts_.fails},
                               {"skipped", counts_.skips},
                               {"exploratory_fail", counts_.exploratory_fails},
                               {"records_truncated", counts_.truncated}};
        records_.push_back(std::move(summary));
        return std::move(records_);
    }

    const SweepCounts& counts() const { return counts_; }

private:
    StatementId id_;
    const SweepOptions& opt_;
    SweepCounts counts_;
    std::vector<VerificationRecord> records_;
};

inline GroupSet set_from_json(const Group& g, const json& arr) {
    GroupSet s(g.order());
    for (const auto& v : arr) s.add(v.get<int>());
    return s;
}

/// Elements whose order admits membership in a Chowla set of size `size`.
inline std::vector<int> chowla_eligible(const Group& g, int size) {
    std::vector<int> out;
    for (int x = 1; x < g.order(); ++x)
        if (g.order_of(x) >= size + 1) out.push_back(x);
    return out;
}

template <class F>
void for_each_chowla_set(const Group& g, int max_size, F&& f) {
    for (int size = 1; size <= max_size; ++size) {
        std::vector<int> eligible = chowla_eligible(g, size);
        for_each_combination(eligible, g.order(), size, [&](const GroupSet& s) { f(s); });
    }
}

/// All element indices, for exhaustive same-size A enumeration.
inline std::vector<int> all_elements(const Group& g) {
    std::vector<int> out(static_cast<std::size_t>(g.order()));
    for (int i = 0; i < g.order(); ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
}

inline std::vector<std::string> cyclic_range(int lo, int hi) {
    std::vector<std::string> out;
    for (int n = lo; n <= hi; ++n) out.push_back("cyclic:" + std::to_string(n));
    return out;
}

inline bool is_cyclic_spec(const std::string& spec) { return spec.rfind("cyclic:", 0) == 0; }

} // namespace detail

// ---------------------------------------------------------------------------
// sweep: run one statement over its instance family
// ---------------------------------------------------------------------------

inline std::vector<VerificationRecord> sweep(StatementId id, const SweepOptions& opt) {
    detail::RecordSink sink(id, opt);
    SplitMix64 rng(opt.seed);
    json family{{"statement", to_string(id)}, {"seed", opt.seed}};

    auto resolve_groups = [&](std::vector<std::string> fallback) {
        return opt.groups.empty() ? fallback : opt.groups;
    };

    switch (id) {
        case StatementId::K1: {
            int max_size = opt.max_set_size.value_or(3);
            std::vector<std::string> specs = resolve_groups([&] {
                std::vector<std::string> v = detail::cyclic_range(3, opt.max_order.value_or(10));
                for (const char* extra : {"dihedral:3", "dihedral:4", "quaternion", "symmetric:3"})
                    v.push_back(extra);
                return v;
            }());
            int samples = opt.sample_count.value_or(2000);
            family["groups"] = specs;
            family["max_set_size"] = max_size;
            family["samples_per_noncyclic_group"] = samples;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                if (detail::is_cyclic_spec(spec)) {
                    detail::for_each_chowla_set(g, max_size, [&](const GroupSet& b) {
                        detail::for_each_combination(
                            detail::all_elements(g), g.order(), b.size(),
                            [&](const GroupSet& a) { sink.push(verify_k1(g, b, a)); });
                    });
                } else {
                    // size -> eligible elements, skipping sizes with no Chowla sets
                    std::vector<std::vector<int>> eligible;
                    std::vector<int> sizes;
                    for (int s = 1; s <= max_size; ++s) {
                        auto e = detail::chowla_eligible(g, s);
                        if (static_cast<int>(e.size()) >= s) {
                            sizes.push_back(s);
                            eligible.push_back(std::move(e));
                        }
                    }
                    for (int i = 0; i < samples && !sizes.empty(); ++i) {
                        std::size_t pick = rng.below(sizes.size());
                        int s = sizes[pick];
                        GroupSet universe(g.order());
                        for (int x : eligible[pick]) universe.add(x);
                        GroupSet b = rng.subset_of(universe, s);
                        GroupSet a = rng.subset(g.order(), s);
                        sink.push(verify_k1(g, b, a));
                    }
                }
            }
            break;
        }

        case StatementId::KAROLYI: {
            int max_size = opt.max_set_size.value_or(3);
            int samples = opt.sample_count.value_or(1000);
            std::vector<std::string> specs =
                resolve_groups(catalog_specs(opt.max_order.value_or(12)));
            family["groups"] = specs;
            family["max_set_size"] = max_size;
            family["samples_per_group"] = samples;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                std::optional<int> p = p_of_group(g);
                int size_cap = max_size;
                if (p) size_cap = std::min(size_cap, *p - 1);
                size_cap = std::min(size_cap, g.order() - 1);
                if (size_cap < 1) continue;
                for (int i = 0; i < samples; ++i) {
                    int s = rng.range(1, size_cap);
                    GroupSet nonidentity = GroupSet::full(g.order());
                    nonidentity.remove(0);
                    GroupSet b = rng.subset_of(nonidentity, s);
                    GroupSet a = rng.subset(g.order(), s);
                    sink.push(verify_karolyi(g, b, a));
                }
            }
            break;
        }

        case StatementId::MCP: {
            int max_size = opt.max_set_size.value_or(4);
            int samples = opt.sample_count.value_or(500);
            std::vector<std::string> specs =
                resolve_groups(detail::cyclic_range(5, opt.max_order.value_or(13)));
            family["groups"] = specs;
            family["max_set_size"] = max_size;
            family["samples_per_group"] = samples;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                std::vector<GroupSet> chowla;
                detail::for_each_chowla_set(g, max_size,
                                            [&](const GroupSet& b) { chowla.push_back(b); });
                if (chowla.empty()) continue;
                for (int i = 0; i < samples; ++i) {
                    const GroupSet& b = chowla[static_cast<std::size_t>(i) % chowla.size()];
                    GroupSet a = rng.subset(g.order(), b.size());
                    sink.push(verify_mcp(g, b, a));
                }
            }
            break;
        }

        case StatementId::MUBB: {
            int max_size = opt.max_set_size.value_or(4);
            std::vector<std::string> specs =
                resolve_groups(detail::cyclic_range(5, opt.max_order.value_or(13)));
            family["groups"] = specs;
            family["max_set_size"] = max_size;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                detail::for_each_chowla_set(g, max_size,
                                            [&](const GroupSet& b) { sink.push(verify_mubb(g, b)); });
            }
            break;
        }

        case StatementId::EHO:
        case StatementId::EHOL: {
            int max_size = opt.max_set_size.value_or(4);
            std::vector<std::string> specs =
                resolve_groups(detail::cyclic_range(5, opt.max_order.value_or(16)));
            family["groups"] = specs;
            family["max_set_size"] = max_size;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                std::vector<int> nonidentity;
                for (int x = 1; x < g.order(); ++x) nonidentity.push_back(x);
                for (int ssize = 1; ssize <= max_size; ++ssize) {
                    detail::for_each_combination(nonidentity, g.order(), ssize, [&](const GroupSet& s) {
                        EhoContext ctx = eho_context(g, s);
                        for (int tsize = 1; tsize <= max_size; ++tsize) {
                            detail::for_each_combination(
                                detail::all_elements(g), g.order(), tsize, [&](const GroupSet& t) {
                                    if (id == StatementId::EHO) {
                                        sink.push(verify_eho_ctx(g, s, t, Side::right, ctx));
                                    } else if (ctx.kappa2 == s.size() && s.size() == t.size()) {
                                        sink.push(verify_ehol_ctx(g, s, t, Side::right, ctx));
                                    }
                                });
                        }
                    });
                }
            }
            break;
        }

        case StatementId::OLSON_XY:
        case StatementId::OLSON_CLIQUE: {
            int samples = opt.sample_count.value_or(1000);
            std::vector<std::string> specs =
                resolve_groups(catalog_specs(opt.max_order.value_or(24)));
            family["groups"] = specs;
            family["samples_per_group"] = samples;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                int n = g.order();
                for (int i = 0; i < samples; ++i) {
                    GroupSet b = rng.subset(n, rng.range(1, std::min(8, n)));
                    if (id == StatementId::OLSON_XY) {
                        int x = rng.range(0, n - 1);
                        int y = rng.range(0, n - 1);
                        sink.push(verify_olson_xy(g, b, x, y));
                    } else {
                        if (n < 2) continue;
                        GroupSet nonidentity = GroupSet::full(n);
                        nonidentity.remove(0);
                        GroupSet c = rng.subset_of(nonidentity, rng.range(1, std::min(8, n - 1)));
                        sink.push(verify_olson_clique(g, b, c));
                    }
                }
            }
            break;
        }

        case StatementId::CCHOWLA:
        case StatementId::VCHOWLA: {
            int max_size = opt.max_set_size.value_or(4);
            std::vector<std::string> specs =
                resolve_groups(catalog_specs(opt.max_order.value_or(16)));
            family["groups"] = specs;
            family["max_set_size"] = max_size;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                detail::for_each_chowla_set(g, max_size, [&](const GroupSet& s) {
                    sink.push(id == StatementId::CCHOWLA ? verify_cchowla(g, s)
                                                         : verify_vchowla(g, s));
                });
            }
            break;
        }

        case StatementId::CF: {
            int max_size = opt.max_set_size.value_or(4);
            std::vector<std::string> specs =
                resolve_groups(detail::cyclic_range(5, opt.max_order.value_or(12)));
            family["groups"] = specs;
            family["max_set_size"] = max_size;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                int n = g.order();
                std::vector<int> nonidentity;
                for (int x = 1; x < n; ++x) nonidentity.push_back(x);
                for (int ssize = 2; ssize <= max_size; ++ssize) {
                    detail::for_each_combination(
                        nonidentity, n, ssize - 1, [&](const GroupSet& rest) {
                            GroupSet s = adjoin_identity(rest);
                            if (!is_cauchy(g, s)) return;
                            // all T with both T and its complement non-empty
                            std::uint64_t end = std::uint64_t{1} << n;
                            for (std::uint64_t mask = 1; mask + 1 < end; ++mask) {
                                GroupSet t(n);
                                for (int x = 0; x < n; ++x)
                                    if (mask >> x & 1) t.add(x);
                                sink.push(verify_cf(g, s, t));
                            }
                        });
                }
            }
            break;
        }

        case StatementId::TRANS:
        case StatementId::DEG: {
            int total = opt.sample_count.value_or(500);
            int max_size = opt.max_set_size.value_or(7);
            std::vector<std::string> specs =
                resolve_groups(catalog_specs(opt.max_order.value_or(12)));
            family["groups"] = specs;
            family["instances"] = total;
            family["max_set_size"] = max_size;
            for (int i = 0; i < total; ++i) {
                Group g = make_group(specs[static_cast<std::size_t>(rng.below(specs.size()))]);
                int n = g.order();
                int s = rng.range(1, std::min(max_size, n));
                GroupSet b = rng.subset(n, s);
                GroupSet a = rng.subset(n, s);
                if (id == StatementId::TRANS) {
                    std::vector<int> translates;
                    for (int k = 0; k < 5; ++k) translates.push_back(rng.range(0, n - 1));
                    sink.push(verify_trans(g, b, a, translates));
                } else {
                    sink.push(verify_deg(g, b, a));
                }
            }
            break;
        }

        case StatementId::KHC_FORM: {
            int total = opt.sample_count.value_or(200);
            int max_size = opt.max_set_size.value_or(6);
            std::vector<std::string> specs =
                resolve_groups(catalog_specs(opt.max_order.value_or(12)));
            family["groups"] = specs;
            family["instances"] = total;
            family["max_set_size"] = max_size;
            for (int i = 0; i < total; ++i) {
                Group g = make_group(specs[static_cast<std::size_t>(rng.below(specs.size()))]);
                int n = g.order();
                int s = rng.range(1, std::min(max_size, n));
                GroupSet b = rng.subset(n, s);
                GroupSet a = rng.subset(n, s);
                std::vector<int> b_elems = b.elements();
                std::uint64_t subsets = std::uint64_t{1} << b.size();
                for (std::uint64_t mask = 0; mask < subsets; ++mask) {
                    GroupSet x(n);
                    for (int bit = 0; bit < b.size(); ++bit)
                        if (mask >> bit & 1) x.add(b_elems[static_cast<std::size_t>(bit)]);
                    sink.push(verify_khc_form(g, b, a, x));
                }
            }
            break;
        }

        case StatementId::LOSONCZY: {
            std::vector<std::string> specs =
                resolve_groups(catalog_specs(opt.max_order.value_or(24)));
            family["groups"] = specs;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                for (const GroupSet& h : enumerate_subgroups(g)) {
                    if (h.size() < 2 || h.size() >= g.order()) continue;
                    for (int a = 1; a < g.order(); ++a) {
                        if (h.contains(a)) continue;
                        sink.push(verify_losonczy(g, h, a));
                    }
                }
            }
            break;
        }

        case StatementId::PROG_EXAMPLE_1: {
            std::vector<std::string> specs =
                resolve_groups(detail::cyclic_range(4, opt.max_order.value_or(30)));
            family["groups"] = specs;
            family["allow_wraparound"] = opt.allow_wraparound;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                int n = g.order();
                for (int r = 1; r < n; ++r) {
                    if (g.order_of(r) != n) continue;  // progression ratio: a generator
                    int j_max = opt.allow_wraparound ? n - 2 : n - 3;
                    for (int j = 0; j <= j_max; ++j)
                        sink.push(verify_prog1(g, r, j, opt.allow_wraparound));
                }
            }
            break;
        }

        case StatementId::PROG_EXAMPLE_2: {
            int samples = opt.sample_count.value_or(20);
            std::vector<std::string> specs =
                resolve_groups(detail::cyclic_range(4, opt.max_order.value_or(30)));
            family["groups"] = specs;
            family["a_choices"] = samples;
            for (const std::string& spec : specs) {
                Group g = make_group(spec);
                int n = g.order();
                for (int r = 1; r < n; ++r) {
                    if (g.order_of(r) != n) continue;
                    for (int j = 0; 2 * j + 6 <= n; ++j) {
                        GroupSet excluded(n);
                        excluded.add(0);
                        for (int i = 2; i <= j + 2; ++i) excluded.add(g.power(r, i));
                        GroupSet candidates = excluded.complemented();
                        int take = std::min(samples, candidates.size());
                        GroupSet chosen = rng.subset_of(candidates, take);
                        chosen.for_each([&](int a) {
                            sink.push(verify_prog2(g, r, j, a, opt.allow_wraparound));
                        });
                    }
                }
            }
            break;
        }
    }

    return sink.finish(std::move(family));
}

/// The trailing aggregate record a sweep always ends with.
inline const VerificationRecord& sweep_summary(const std::vector<VerificationRecord>& records) {
    return records.back();
}

/// Re-runs the instance embedded in a record and returns the fresh record.
inline VerificationRecord replay(const VerificationRecord& rec) {
    if (rec.group_spec == "*") throw PreconditionError("summary records cannot be replayed");
    Group g = make_group(rec.group_spec);
    const json& inst = rec.instance;
    auto set_of = [&](const char* key) { return detail::set_from_json(g, inst.at(key)); };
    switch (rec.statement) {
        case StatementId::K1: return verify_k1(g, set_of("b"), set_of("a"));
        case StatementId::KAROLYI: return verify_karolyi(g, set_of("b"), set_of("a"));
        case StatementId::MCP: return verify_mcp(g, set_of("b"), set_of("a"));
        case StatementId::MUBB: return verify_mubb(g, set_of("b"));
        case StatementId::EHO:
            return verify_eho(g, set_of("s"), set_of("t"),
                              inst.at("side") == "left" ? Side::left : Side::right);
        case StatementId::EHOL:
            return verify_ehol(g, set_of("s"), set_of("t"),
                               inst.at("side") == "left" ? Side::left : Side::right);
        case StatementId::OLSON_XY:
            return verify_olson_xy(g, set_of("b"), inst.at("x").get<int>(),
                                   inst.at("y").get<int>());
        case StatementId::OLSON_CLIQUE:
            return verify_olson_clique(g, set_of("b"), set_of("c"));
        case StatementId::CCHOWLA: return verify_cchowla(g, set_of("s"));
        case StatementId::VCHOWLA: return verify_vchowla(g, set_of("s"));
        case StatementId::CF: return verify_cf(g, set_of("s"), set_of("t"));
        case StatementId::TRANS: {
            std::vector<int> translates = inst.at("translates").get<std::vector<int>>();
            return verify_trans(g, set_of("b"), set_of("a"), translates);
        }
        case StatementId::DEG: return verify_deg(g, set_of("b"), set_of("a"));
        case StatementId::KHC_FORM:
            return verify_khc_form(g, set_of("b"), set_of("a"), set_of("x"));
        case StatementId::LOSONCZY:
            return verify_losonczy(g, set_of("h"), inst.at("a").get<int>());
        case StatementId::PROG_EXAMPLE_1:
            return verify_prog1(g, inst.at("r").get<int>(), inst.at("j").get<int>(), true);
        case StatementId::PROG_EXAMPLE_2:
            return verify_prog2(g, inst.at("r").get<int>(), inst.at("j").get<int>(),
                                inst.at("a_elem").get<int>(), true);
    }
    throw PreconditionError("unknown statement");
}

} // namespace wakeford
