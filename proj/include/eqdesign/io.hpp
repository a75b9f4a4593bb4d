#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqdesign/solver.hpp"

namespace eqdesign {

using Json = nlohmann::ordered_json;

namespace io_detail {

inline Rational rational_from_json(const Json& v, const std::string& where) {
    if (v.is_number_integer())
        return Rational(v.get<long long>());
    if (v.is_string())
        return Rational::parse(v.get<std::string>());
    throw InputError(where + ": expected an integer or a \"p/q\" string");
}

inline const Json& field(const Json& obj, const std::string& key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw InputError(where + ": missing field '" + key + "'");
    return *it;
}

} // namespace io_detail

/// Load a game document. Transition entries may use "*" for a player's
/// action to compress symmetric rows; expansion happens here and totality is
/// checked afterwards. Duplicate entries are rejected.
inline ConcurrentGame load_game(const Json& doc) {
    ConcurrentGame game;
    Arena& arena = game.arena;

    for (const auto& p : io_detail::field(doc, "players", "game"))
        arena.players.push_back(p.get<std::string>());
    if (doc.contains("atoms"))
        for (const auto& a : doc["atoms"])
            arena.atoms.push_back(a.get<std::string>());

    const Json& states = io_detail::field(doc, "states", "game");
    int n_players = arena.player_count();
    game.weights.assign(n_players, {});
    for (const auto& st : states) {
        std::string where = "states[" + std::to_string(arena.states.size()) + "]";
        std::string id = io_detail::field(st, "id", where).get<std::string>();
        if (std::find(arena.states.begin(), arena.states.end(), id) != arena.states.end())
            throw InputError(where + ": duplicate state id '" + id + "'");
        arena.states.push_back(id);

        std::vector<bool> label_bits(arena.atom_count(), false);
        if (st.contains("labels"))
            for (const auto& l : st["labels"])
                label_bits[arena.atom_index(l.get<std::string>())] = true;
        arena.labels.push_back(std::move(label_bits));

        const Json& weights = io_detail::field(st, "weights", where);
        for (PlayerIdx i = 0; i < n_players; ++i) {
            if (!weights.contains(arena.players[i]))
                throw InputError(where + ": missing weight for player '" + arena.players[i] + "'");
            game.weights[i].push_back(
                io_detail::rational_from_json(weights[arena.players[i]], where + ".weights"));
        }

        const Json& actions = io_detail::field(st, "actions", where);
        std::vector<std::vector<std::string>> per_player(n_players);
        for (PlayerIdx i = 0; i < n_players; ++i) {
            if (!actions.contains(arena.players[i]))
                throw InputError(where + ": missing actions for player '" + arena.players[i] + "'");
            for (const auto& a : actions[arena.players[i]])
                per_player[i].push_back(a.get<std::string>());
            if (per_player[i].empty())
                throw InputError(where + ": empty action list for player '" + arena.players[i] + "'");
        }
        arena.actions.push_back(std::move(per_player));
    }

    arena.initial = arena.state_index(io_detail::field(doc, "initial", "game").get<std::string>());

    arena.transitions.resize(arena.state_count());
    for (StateIdx s = 0; s < arena.state_count(); ++s)
        arena.transitions[s].assign(arena.profile_count(s), -1);

    const Json& transitions = io_detail::field(doc, "transitions", "game");
    int entry_no = 0;
    for (const auto& tr : transitions) {
        std::string where = "transitions[" + std::to_string(entry_no++) + "]";
        StateIdx from = arena.state_index(io_detail::field(tr, "from", where).get<std::string>());
        StateIdx to = arena.state_index(io_detail::field(tr, "to", where).get<std::string>());
        const Json& profile = io_detail::field(tr, "profile", where);

        // collect the action choices per player; "*" expands to all
        std::vector<std::vector<ActionIdx>> choices(arena.player_count());
        for (PlayerIdx i = 0; i < arena.player_count(); ++i) {
            if (!profile.contains(arena.players[i]))
                throw InputError(where + ": missing action for player '" + arena.players[i] + "'");
            std::string a = profile[arena.players[i]].get<std::string>();
            if (a == "*") {
                for (ActionIdx k = 0; k < arena.action_count(from, i); ++k)
                    choices[i].push_back(k);
            } else {
                const auto& names = arena.actions[from][i];
                auto it = std::find(names.begin(), names.end(), a);
                if (it == names.end())
                    throw InputError(where + ": unknown action '" + a + "' for player '" +
                                     arena.players[i] + "' at state '" + arena.states[from] + "'");
                choices[i].push_back(static_cast<ActionIdx>(it - names.begin()));
            }
        }
        std::vector<ActionIdx> acts(arena.player_count(), 0);
        std::vector<size_t> pos(arena.player_count(), 0);
        while (true) {
            for (PlayerIdx i = 0; i < arena.player_count(); ++i)
                acts[i] = choices[i][pos[i]];
            int code = arena.encode_profile(from, acts);
            if (arena.transitions[from][code] != -1)
                throw InputError(where + ": duplicate transition entry for state '" +
                                 arena.states[from] + "'");
            arena.transitions[from][code] = to;
            PlayerIdx i = arena.player_count();
            while (i-- > 0) {
                if (++pos[i] < choices[i].size())
                    break;
                pos[i] = 0;
                if (i == 0)
                    goto entry_done;
            }
        }
    entry_done:;
    }
    for (StateIdx s = 0; s < arena.state_count(); ++s)
        for (int p = 0; p < arena.profile_count(s); ++p)
            if (arena.transitions[s][p] == -1)
                throw InputError("transition function not total at state '" + arena.states[s] +
                                 "': profile " + std::to_string(p) + " missing");
    game.validate();
    return game;
}

inline GR1Spec load_spec(const Json& doc, const ConcurrentGame& game) {
    GR1Spec spec;
    if (doc.contains("assumptions"))
        for (const auto& f : doc["assumptions"])
            spec.assumptions.push_back(parse_formula(f.get<std::string>()));
    if (doc.contains("guarantees"))
        for (const auto& f : doc["guarantees"])
            spec.guarantees.push_back(parse_formula(f.get<std::string>()));
    for (const Formula& f : spec.assumptions)
        bind_check(game.arena, f);
    for (const Formula& f : spec.guarantees)
        bind_check(game.arena, f);
    return spec;
}

/// Accepts a scheme document, a saved certificate, or a whole verdict
/// document, whose certificate scheme is then used; this closes the
/// certificate round-trip.
inline RewardScheme load_scheme(const Json& doc, const ConcurrentGame& game) {
    if (doc.contains("certificate"))
        return load_scheme(doc["certificate"], game);
    if (doc.contains("scheme"))
        return load_scheme(doc["scheme"], game);
    RewardScheme k(game.arena.player_count(), game.arena.state_count());
    int entry_no = 0;
    for (const auto& r : io_detail::field(doc, "rewards", "scheme")) {
        std::string where = "rewards[" + std::to_string(entry_no++) + "]";
        PlayerIdx i = game.arena.player_index(io_detail::field(r, "player", where).get<std::string>());
        StateIdx s = game.arena.state_index(io_detail::field(r, "state", where).get<std::string>());
        const Json& amount = io_detail::field(r, "amount", where);
        if (!amount.is_number_integer())
            throw InputError(where + ": reward amounts must be integers");
        long long v = amount.get<long long>();
        if (v < 0)
            throw InputError(where + ": reward amounts must be non-negative");
        k.add(i, s, v);
    }
    return k;
}

inline std::vector<Slot> load_support(const Json& doc, const ConcurrentGame& game) {
    std::vector<Slot> slots;
    int entry_no = 0;
    for (const auto& r : io_detail::field(doc, "slots", "support")) {
        std::string where = "slots[" + std::to_string(entry_no++) + "]";
        slots.push_back({game.arena.player_index(io_detail::field(r, "player", where).get<std::string>()),
                         game.arena.state_index(io_detail::field(r, "state", where).get<std::string>())});
    }
    return slots;
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("file '" + path + "': " + e.what());
    }
}

inline Json scheme_to_json(const ConcurrentGame& game, const RewardScheme& k) {
    Json rewards = Json::array();
    for (const Slot& s : k.nonzero_slots())
        rewards.push_back({{"player", game.arena.players[s.player]},
                           {"state", game.arena.states[s.state]},
                           {"amount", k.amount(s.player, s.state)}});
    return Json{{"rewards", std::move(rewards)}, {"cost", scheme_cost(k)}};
}

namespace io_detail {

inline Json config_to_json(const ConcurrentGame& game, const Config& c) {
    Json profile;
    auto acts = game.arena.decode_profile(c.state, c.profile);
    for (PlayerIdx i = 0; i < game.arena.player_count(); ++i)
        profile[game.arena.players[i]] = game.arena.actions[c.state][i][acts[i]];
    return Json{{"state", game.arena.states[c.state]}, {"profile", std::move(profile)}};
}

inline Json configs_to_json(const ConcurrentGame& game, const std::vector<Config>& cs) {
    Json out = Json::array();
    for (const Config& c : cs)
        out.push_back(config_to_json(game, c));
    return out;
}

inline Json rationals_by_player(const ConcurrentGame& game, const std::vector<Rational>& xs) {
    Json out;
    for (PlayerIdx i = 0; i < game.arena.player_count(); ++i)
        out[game.arena.players[i]] = xs[i].str();
    return out;
}

} // namespace io_detail

inline Json witness_to_json(const ConcurrentGame& game, const WitnessSchedule& w) {
    Json cycles = Json::array();
    for (const auto& c : w.cycles)
        cycles.push_back({{"multiplicity", c.multiplicity.str()},
                          {"configurations", io_detail::configs_to_json(game, c.configs)}});
    Json connectors = Json::array();
    for (const auto& conn : w.connectors)
        connectors.push_back(io_detail::configs_to_json(game, conn));
    return Json{{"prefix", io_detail::configs_to_json(game, w.reach_prefix)},
                {"cycles", std::move(cycles)},
                {"connectors", std::move(connectors)},
                {"payoffs", io_detail::rationals_by_player(game, w.payoffs)}};
}

inline Json certificate_to_json(const ConcurrentGame& game, const Certificate& cert) {
    return Json{{"scheme", scheme_to_json(game, cert.scheme)},
                {"z", io_detail::rationals_by_player(game, cert.z)},
                {"payoffs", io_detail::rationals_by_player(game, cert.payoffs)},
                {"welfare", Json{{"usw", cert.usw.str()}, {"esw", cert.esw.str()}}},
                {"witness", witness_to_json(game, cert.witness)}};
}

inline Json verdict_to_json(const ConcurrentGame& game, const Verdict& v) {
    Json doc;
    doc["answer"] = v.yes ? "yes" : "no";
    if (v.certificate)
        doc["certificate"] = certificate_to_json(game, *v.certificate);
    Json stats{{"schemes_examined", v.diagnostics.schemes_examined},
               {"z_vectors_examined", v.diagnostics.z_vectors_examined},
               {"lps_solved", v.diagnostics.lps_solved}};
    doc["statistics"] = std::move(stats);
    if (v.diagnostics.bad_ne || !v.diagnostics.note.empty()) {
        Json diag;
        if (v.diagnostics.bad_ne)
            diag["bad_ne_witness"] =
                Json{{"z", io_detail::rationals_by_player(game, v.diagnostics.bad_ne->z)},
                     {"witness", witness_to_json(game, v.diagnostics.bad_ne->witness)}};
        if (!v.diagnostics.note.empty())
            diag["note"] = v.diagnostics.note;
        doc["diagnostics"] = std::move(diag);
    }
    return doc;
}

} // namespace eqdesign
