#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "wakeford/report.hpp"
#include "wakeford/set_literal.hpp"
#include "wakeford/version.hpp"

namespace wakeford {

struct CliResult {
    int exit_code = 0;
    std::string output;         // report bytes (also written to --out when given)
    std::string diagnostics;    // usage errors and notes
    std::string out_written_to; // non-empty when --out received the bytes
};

namespace detail {

struct CliConfig {
    std::string command;
    std::string group_spec;
    std::vector<std::string> groups;
    std::string b_literal, a_literal, s_literal, t_literal;
    int k = 1;
    std::string side = "right";
    std::string mode = "exact";
    std::optional<int> max_order;
    std::optional<int> max_set_size;
    std::optional<int> sample;
    std::uint64_t seed = 1;
    bool allow_wraparound = false;
    std::string format = "json";
    std::string out_path;
    std::string statement;

    json echo() const {
        json cfg{{"command", command}, {"seed", seed}, {"format", format}};
        if (!group_spec.empty()) cfg["group"] = group_spec;
        if (!groups.empty()) cfg["groups"] = groups;
        if (!b_literal.empty()) cfg["b"] = b_literal;
        if (!a_literal.empty()) cfg["a"] = a_literal;
        if (!s_literal.empty()) cfg["s"] = s_literal;
        if (!t_literal.empty()) cfg["t"] = t_literal;
        if (command == "kappa") cfg["k"] = k;
        if (!statement.empty()) cfg["statement"] = statement;
        cfg["side"] = side;
        cfg["mode"] = mode;
        if (max_order) cfg["max_order"] = *max_order;
        if (max_set_size) cfg["max_set_size"] = *max_set_size;
        if (sample) cfg["sample"] = *sample;
        if (allow_wraparound) cfg["allow_wraparound"] = true;
        if (!out_path.empty()) cfg["out"] = out_path;
        return cfg;
    }
};

inline json report_shell(const CliConfig& cfg) {
    return json{{"version", kVersion}, {"command", cfg.command}, {"config", cfg.echo()}};
}

inline int fails_in(const std::vector<VerificationRecord>& records) {
    const auto& s = sweep_summary(records);
    return s.details.at("fail").get<long long>() > 0 ? 1 : 0;
}

/// Single-instance verification from explicit flags, when the statement's
/// inputs map onto them; nullopt means "run the sweep".
inline std::optional<VerificationRecord> single_instance(const CliConfig& cfg, StatementId id) {
    bool has_instance = !cfg.b_literal.empty() || !cfg.s_literal.empty();
    if (cfg.group_spec.empty() || !has_instance) return std::nullopt;
    Group g = make_group(cfg.group_spec);
    auto set_of = [&](const std::string& lit) { return parse_set_literal(g, lit); };
    Side side = cfg.side == "left" ? Side::left : Side::right;
    switch (id) {
        case StatementId::K1: return verify_k1(g, set_of(cfg.b_literal), set_of(cfg.a_literal));
        case StatementId::KAROLYI:
            return verify_karolyi(g, set_of(cfg.b_literal), set_of(cfg.a_literal));
        case StatementId::MCP: return verify_mcp(g, set_of(cfg.b_literal), set_of(cfg.a_literal));
        case StatementId::DEG: return verify_deg(g, set_of(cfg.b_literal), set_of(cfg.a_literal));
        case StatementId::MUBB: return verify_mubb(g, set_of(cfg.b_literal));
        case StatementId::EHO:
            return verify_eho(g, set_of(cfg.s_literal), set_of(cfg.t_literal), side);
        case StatementId::EHOL:
            return verify_ehol(g, set_of(cfg.s_literal), set_of(cfg.t_literal), side);
        case StatementId::CCHOWLA: return verify_cchowla(g, set_of(cfg.s_literal));
        case StatementId::VCHOWLA: return verify_vchowla(g, set_of(cfg.s_literal));
        case StatementId::CF: return verify_cf(g, set_of(cfg.s_literal), set_of(cfg.t_literal));
        default: return std::nullopt;
    }
}

} // namespace detail

/// Parses and runs one CLI invocation. Exit status 0 on success, 1 when any
/// verification fails, 2 on usage errors.
inline CliResult run_cli(const std::vector<std::string>& args) {
    using detail::CliConfig;
    CliResult result;
    CliConfig cfg;

    CLI::App app{"exact Wakeford-pairing computations over finite groups"};
    app.require_subcommand(1);

    auto add_common = [&cfg](CLI::App* cmd) {
        cmd->add_option("--seed", cfg.seed, "seed for sampled sweeps");
        cmd->add_option("--format", cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--out", cfg.out_path, "write the report to this path");
    };

    CLI::App* mu_cmd = app.add_subcommand("mu", "count pairings from B onto A");
    mu_cmd->add_option("--group", cfg.group_spec)->required();
    mu_cmd->add_option("--b", cfg.b_literal)->required();
    mu_cmd->add_option("--a", cfg.a_literal)->required();
    mu_cmd->add_option("--mode", cfg.mode)->check(CLI::IsMember({"exact", "exists"}));
    add_common(mu_cmd);

    CLI::App* match_cmd = app.add_subcommand("matchable", "decide whether a pairing exists");
    match_cmd->add_option("--group", cfg.group_spec)->required();
    match_cmd->add_option("--b", cfg.b_literal)->required();
    match_cmd->add_option("--a", cfg.a_literal)->required();
    add_common(match_cmd);

    CLI::App* kappa_cmd = app.add_subcommand("kappa", "isoperimetric connectivity of S");
    kappa_cmd->add_option("--group", cfg.group_spec)->required();
    kappa_cmd->add_option("--s", cfg.s_literal)->required();
    kappa_cmd->add_option("--k", cfg.k)->check(CLI::PositiveNumber);
    add_common(kappa_cmd);

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "Chowla/Cauchy/Vosper/progression flags for S");
    classify_cmd->add_option("--group", cfg.group_spec)->required();
    classify_cmd->add_option("--s", cfg.s_literal)->required();
    add_common(classify_cmd);

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "run one statement over its instance family (or one explicit instance)");
    verify_cmd->add_option("statement", cfg.statement, "statement id, e.g. K1 or LOSONCZY")
        ->required();
    verify_cmd->add_option("--group", cfg.groups, "restrict the sweep to these groups");
    verify_cmd->add_option("--b", cfg.b_literal);
    verify_cmd->add_option("--a", cfg.a_literal);
    verify_cmd->add_option("--s", cfg.s_literal);
    verify_cmd->add_option("--t", cfg.t_literal);
    verify_cmd->add_option("--side", cfg.side)->check(CLI::IsMember({"left", "right"}));
    verify_cmd->add_option("--max-order", cfg.max_order);
    verify_cmd->add_option("--max-set-size", cfg.max_set_size);
    verify_cmd->add_option("--sample", cfg.sample);
    verify_cmd->add_flag("--allow-wraparound", cfg.allow_wraparound,
                         "build progression instances outside the safe order floor (exploratory)");
    add_common(verify_cmd);

    CLI::App* counter_cmd = app.add_subcommand(
        "counterexample", "enumerate the non-matchable subgroup construction");
    counter_cmd->add_option("kind", cfg.statement, "only 'losonczy'")->required();
    counter_cmd->add_option("--max-order", cfg.max_order);
    add_common(counter_cmd);

    std::vector<const char*> argv;
    argv.push_back("wakeford");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        result.output = app.help();
        result.exit_code = 0;
        return result;
    } catch (const CLI::ParseError& e) {
        result.diagnostics = e.what();
        result.exit_code = 2;
        return result;
    }

    try {
        json report;
        std::vector<VerificationRecord> records;
        bool have_records = false;

        if (mu_cmd->parsed() || match_cmd->parsed()) {
            cfg.command = mu_cmd->parsed() ? "mu" : "matchable";
            if (match_cmd->parsed()) cfg.mode = "exists";
            Group g = make_group(cfg.group_spec);
            GroupSet b = parse_set_literal(g, cfg.b_literal);
            GroupSet a = parse_set_literal(g, cfg.a_literal);
            MatchingReport r = analyze(build_graph(g, b, a),
                                       cfg.mode == "exact" ? CountMode::exact
                                                           : CountMode::existence_only);
            report = detail::report_shell(cfg);
            report["group"] = group_json(g);
            report["inputs"] = json{{"b", set_json(b)}, {"a", set_json(a)}};
            report["result"] = matching_report_json(r);
        } else if (kappa_cmd->parsed()) {
            cfg.command = "kappa";
            Group g = make_group(cfg.group_spec);
            GroupSet s = parse_set_literal(g, cfg.s_literal);
            ConnectivityReport r = kappa(g, s, cfg.k);
            report = detail::report_shell(cfg);
            report["group"] = group_json(g);
            report["inputs"] = json{{"s", set_json(s)}};
            report["result"] = connectivity_report_json(r);
        } else if (classify_cmd->parsed()) {
            cfg.command = "classify";
            Group g = make_group(cfg.group_spec);
            GroupSet s = parse_set_literal(g, cfg.s_literal);
            GroupSet with_identity = adjoin_identity(s);
            bool degenerate = with_identity.size() == 1;  // the identity singleton
            auto prog = progression_witness(g, s);
            json prog_json;
            if (prog)
                prog_json = json{{"ratio", prog->ratio},
                                 {"start", prog->start},
                                 {"length", prog->length},
                                 {"side", to_string(prog->side)}};
            ConnectivityReport k1 = kappa(g, with_identity, 1);
            ConnectivityReport k2 = kappa(g, with_identity, 2);
            report = detail::report_shell(cfg);
            report["group"] = group_json(g);
            report["inputs"] = json{{"s", set_json(s)}};
            report["result"] =
                json{{"chowla", s.contains(0) ? false : is_chowla(g, s)},
                     {"progression", prog ? prog_json : json(nullptr)},
                     {"classified_set", set_json(with_identity)},
                     {"degenerate", degenerate},
                     {"kappa1", k1.kappa},
                     {"kappa2", k2.kappa},
                     {"cauchy", k1.kappa == with_identity.size() - 1},
                     {"vosper", k2.kappa >= with_identity.size()}};
        } else if (verify_cmd->parsed() || counter_cmd->parsed()) {
            StatementId id;
            if (counter_cmd->parsed()) {
                cfg.command = "counterexample";
                if (cfg.statement != "losonczy")
                    throw ParseError("only 'losonczy' counterexamples are implemented");
                id = StatementId::LOSONCZY;
            } else {
                cfg.command = "verify";
                auto parsed = parse_statement_id(cfg.statement);
                if (!parsed) throw ParseError("unknown statement id '" + cfg.statement + "'");
                id = *parsed;
            }
            report = detail::report_shell(cfg);
            if (auto one = verify_cmd->parsed() ? detail::single_instance(cfg, id)
                                                : std::nullopt) {
                records.push_back(*one);
                report["result"] =
                    json{{"verdict", to_string(one->verdict)},
                         {"fail", one->verdict == Verdict::fail ? 1 : 0}};
                result.exit_code = one->verdict == Verdict::fail ? 1 : 0;
            } else {
                SweepOptions sweep_opt;
                sweep_opt.groups = cfg.groups;
                sweep_opt.max_order = cfg.max_order;
                sweep_opt.max_set_size = cfg.max_set_size;
                sweep_opt.sample_count = cfg.sample;
                sweep_opt.seed = cfg.seed;
                sweep_opt.allow_wraparound = cfg.allow_wraparound;
                records = sweep(id, sweep_opt);
                report["result"] = sweep_summary(records).details;
                result.exit_code = detail::fails_in(records);
            }
            have_records = true;
        }

        if (cfg.format == "csv" && have_records) {
            result.output = records_csv(records);
        } else {
            if (have_records) report["records"] = records_json(records);
            result.output = report.dump(2) + "\n";
        }
        if (!cfg.out_path.empty()) {
            std::ofstream out(cfg.out_path, std::ios::binary);
            if (!out) throw ParseError("cannot open output path " + cfg.out_path);
            out << result.output;
            result.out_written_to = cfg.out_path;
        }
    } catch (const ParseError& e) {
        result.diagnostics = e.what();
        result.exit_code = 2;
    } catch (const DomainError& e) {
        result.diagnostics = e.what();
        result.exit_code = 2;
    } catch (const PreconditionError& e) {
        result.diagnostics = e.what();
        result.exit_code = 2;
    } catch (const LimitError& e) {
        result.diagnostics = e.what();
        result.exit_code = 2;
    }
    return result;
}

} // namespace wakeford
