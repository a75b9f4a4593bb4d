#pragma once

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqdesign/io.hpp"
#include "eqdesign/oracle.hpp"

namespace eqdesign {
namespace cli {

inline constexpr int exit_yes = 0;
inline constexpr int exit_no = 1;
inline constexpr int exit_input_error = 2;
inline constexpr int exit_resource_cap = 3;

namespace detail {

inline std::string timestamp_utc() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

struct CommonOpts {
    std::string game_path, spec_path, support_path, witness_out, lp_dump_path;
    std::string mode = "weak";
    std::string welfare;
    std::string threshold;
    long long budget = 0;
    long long cap = 10000000;
    bool no_meta = false;
    bool budget_given = false;
};

inline void add_common(CLI::App* cmd, CommonOpts& o, bool with_budget, bool with_mode = true) {
    cmd->add_option("--game", o.game_path, "game file (JSON)")->required();
    cmd->add_option("--spec", o.spec_path, "GR(1) spec file (JSON)")->required();
    if (with_mode)
        cmd->add_option("--mode", o.mode, "weak or strong")
            ->check(CLI::IsMember({"weak", "strong"}));
    if (with_budget)
        cmd->add_option("--budget", o.budget, "reward budget (natural number)")
            ->check(CLI::NonNegativeNumber);
    cmd->add_option("--support", o.support_path, "slot file restricting rewardable (player,state) pairs");
    cmd->add_option("--welfare", o.welfare, "welfare measure: usw or esw")
        ->check(CLI::IsMember({"usw", "esw"}));
    cmd->add_option("--threshold", o.threshold, "welfare threshold, integer or p/q");
    cmd->add_option("--witness", o.witness_out, "write the certificate to this file on yes");
    cmd->add_option("--cap", o.cap, "max schemes examined before a resource-limit error");
    cmd->add_flag("--no-meta", o.no_meta, "omit the timestamp block for byte-stable output");
    cmd->add_option("--dump-lps", o.lp_dump_path, "append every solved LP in matrix form to this file");
}

struct Loaded {
    ConcurrentGame game;
    GR1Spec spec;
    Query query;
    std::ofstream lp_dump_file;
};

inline Loaded load_query(const CommonOpts& o) {
    Loaded l;
    l.game = load_game(load_json_file(o.game_path));
    l.spec = load_spec(load_json_file(o.spec_path), l.game);
    l.query.game = l.game;
    l.query.spec = l.spec;
    l.query.budget = o.budget;
    l.query.mode = o.mode == "strong" ? Mode::Strong : Mode::Weak;
    l.query.verify_cap = o.cap;
    if (!o.support_path.empty())
        l.query.support = load_support(load_json_file(o.support_path), l.game);
    if (!o.welfare.empty()) {
        if (o.threshold.empty())
            throw InputError("--welfare requires --threshold");
        l.query.welfare = WelfareConstraint{
            o.welfare == "usw" ? WelfareMeasure::Usw : WelfareMeasure::Esw,
            Rational::parse(o.threshold)};
    } else if (!o.threshold.empty()) {
        throw InputError("--threshold requires --welfare");
    }
    if (!o.lp_dump_path.empty()) {
        l.lp_dump_file.open(o.lp_dump_path, std::ios::app);
        if (!l.lp_dump_file)
            throw InputError("cannot open '" + o.lp_dump_path + "' for the LP dump");
        l.query.lp_dump = &l.lp_dump_file;
    }
    return l;
}

inline void emit(std::ostream& out, Json doc, const CommonOpts& o) {
    if (!o.no_meta)
        doc["meta"] = Json{{"generated_at", timestamp_utc()}};
    out << doc.dump(2) << "\n";
}

inline void write_witness_file(const CommonOpts& o, const ConcurrentGame& game, const Verdict& v) {
    if (o.witness_out.empty() || !v.certificate)
        return;
    std::ofstream f(o.witness_out);
    if (!f)
        throw InputError("cannot open '" + o.witness_out + "' for the witness");
    f << certificate_to_json(game, *v.certificate).dump(2) << "\n";
}

inline int selftest(std::ostream& out) {
    std::mt19937_64 rng(20240 + 17);
    int failures = 0;

    {
        int bad = 0;
        for (int round = 0; round < 40; ++round) {
            oracle::RandomGameParams params;
            params.states = 2 + static_cast<int>(rng() % 3);
            ConcurrentGame g = oracle::random_game(rng, params);
            PunishmentTable table = punishment_table(g);
            for (PlayerIdx i = 0; i < g.arena.player_count(); ++i) {
                auto brute = oracle::brute_pun_all(g, i);
                for (StateIdx s = 0; s < g.arena.state_count(); ++s)
                    if (table.value(i, s) != brute[s])
                        ++bad;
            }
        }
        out << (bad ? "FAIL" : "ok  ") << "  punishment values vs coalition enumeration (40 games)\n";
        failures += bad;
    }
    {
        int bad = 0;
        for (int round = 0; round < 40; ++round) {
            oracle::RandomGameParams params;
            params.states = 2 + static_cast<int>(rng() % 3);
            ConcurrentGame g = oracle::random_game(rng, params);
            PunishmentTable table = punishment_table(g);
            std::vector<Rational> z;
            for (PlayerIdx i = 0; i < g.arena.player_count(); ++i) {
                auto vs = table.value_set(i);
                z.push_back(vs[rng() % vs.size()]);
            }
            SecuredArena secured = build_secured(g, table, z);
            if (!secured.has_initial())
                continue;
            for (const auto& scc : scc_reachable(secured)) {
                Subgraph sg = make_scc_subgraph(secured, scc);
                if (sg.edges.size() > 10)
                    continue;
                bool viaLp = lp_feasible(build_existence_lp(sg, z)).has_value();
                bool viaFm = oracle::brute_cycle_feasible(g, sg.edges, z, {});
                if (viaLp != viaFm)
                    ++bad;
            }
        }
        out << (bad ? "FAIL" : "ok  ") << "  simplex vs cycle enumeration + Fourier-Motzkin (40 games)\n";
        failures += bad;
    }
    {
        int bad = 0;
        for (int round = 0; round < 12; ++round) {
            oracle::RandomGameParams params;
            params.states = 2 + static_cast<int>(rng() % 2);
            ConcurrentGame g = oracle::random_game(rng, params);
            GR1Spec spec = oracle::random_small_spec(rng, g.arena.atoms);
            long long beta = static_cast<long long>(rng() % 2);
            for (Mode mode : {Mode::Weak, Mode::Strong}) {
                Query q;
                q.game = g;
                q.spec = spec;
                q.budget = beta;
                q.mode = mode;
                if (check(q).yes != oracle::brute_check(g, spec, beta, mode))
                    ++bad;
            }
        }
        out << (bad ? "FAIL" : "ok  ") << "  solver vs exhaustive oracle (12 queries)\n";
        failures += bad;
    }
    out << (failures ? "selftest FAILED\n" : "selftest passed\n");
    return failures ? exit_no : exit_yes;
}

} // namespace detail

/// Command-line front end. Returns the process exit code:
/// 0 yes, 1 no, 2 input error, 3 resource cap.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"equilibrium design for concurrent mean-payoff games with GR(1) objectives"};
    app.require_subcommand(1);

    detail::CommonOpts o;
    std::string scheme_path;
    long long exact_budget = 0;

    CLI::App* c_check = app.add_subcommand("check", "is some admissible scheme an implementation?");
    detail::add_common(c_check, o, true);

    CLI::App* c_verify = app.add_subcommand("verify", "is this scheme an implementation?");
    detail::add_common(c_verify, o, true);
    c_verify->add_option("--scheme", scheme_path, "reward scheme file (or a saved certificate)")
        ->required();

    CLI::App* c_opt = app.add_subcommand("opt", "least budget with a positive check");
    detail::add_common(c_opt, o, false);

    CLI::App* c_exact = app.add_subcommand("exact", "is the given budget exactly the optimum?");
    detail::add_common(c_exact, o, false);
    c_exact->add_option("--budget", exact_budget, "candidate optimum budget")->required();

    CLI::App* c_uopt = app.add_subcommand("uopt", "is the optimal scheme unique?");
    detail::add_common(c_uopt, o, false);

    CLI::App* c_selftest = app.add_subcommand("selftest", "run the built-in oracle cross-checks");
    c_selftest->group(""); // hidden

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_yes;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_input_error;
    }

    try {
        if (c_selftest->parsed())
            return detail::selftest(out);

        detail::Loaded l = detail::load_query(o);

        if (c_check->parsed()) {
            Verdict v = check(l.query);
            detail::write_witness_file(o, l.game, v);
            detail::emit(out, verdict_to_json(l.game, v), o);
            return v.yes ? exit_yes : exit_no;
        }
        if (c_verify->parsed()) {
            RewardScheme k = load_scheme(load_json_file(scheme_path), l.game);
            if (c_verify->count("--budget") == 0)
                l.query.budget = scheme_cost(k); // efficient by default
            Verdict v = verify_scheme(l.query, k);
            detail::write_witness_file(o, l.game, v);
            detail::emit(out, verdict_to_json(l.game, v), o);
            return v.yes ? exit_yes : exit_no;
        }
        if (c_opt->parsed()) {
            OptResult r = opt(l.game, l.spec, l.query.mode, l.query.support, l.query.welfare,
                              l.query.verify_cap);
            Json doc;
            doc["answer"] = r.optimum ? "yes" : "no";
            if (r.optimum) {
                doc["optimum"] = *r.optimum;
                doc["scheme"] = scheme_to_json(l.game, *r.scheme);
            }
            detail::emit(out, doc, o);
            return r.optimum ? exit_yes : exit_no;
        }
        if (c_exact->parsed()) {
            bool yes = exact(l.game, l.spec, l.query.mode, exact_budget, l.query.support,
                             l.query.welfare, l.query.verify_cap);
            Json doc{{"answer", yes ? "yes" : "no"}, {"budget", exact_budget}};
            detail::emit(out, doc, o);
            return yes ? exit_yes : exit_no;
        }
        if (c_uopt->parsed()) {
            auto r = uopt(l.game, l.spec, l.query.mode, l.query.support, l.query.welfare,
                          l.query.verify_cap);
            Json doc;
            if (!r) {
                doc["answer"] = "no";
                doc["note"] = "no budget within the upper bound admits an implementation";
            } else {
                doc["answer"] = r->unique ? "yes" : "no";
                doc["optimum"] = r->optimum;
                doc["unique"] = r->unique;
                Json schemes = Json::array();
                for (const auto& k : r->schemes)
                    schemes.push_back(scheme_to_json(l.game, k));
                doc["optimal_schemes"] = std::move(schemes);
            }
            detail::emit(out, doc, o);
            return (r && r->unique) ? exit_yes : exit_no;
        }
    } catch (const ResourceLimitError& e) {
        err << "resource limit: " << e.what() << "\n";
        return exit_resource_cap;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_input_error;
    }
    err << "no subcommand\n";
    return exit_input_error;
}

} // namespace cli
} // namespace eqdesign
