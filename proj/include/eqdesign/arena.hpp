#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "eqdesign/errors.hpp"
#include "eqdesign/rational.hpp"

namespace eqdesign {

using PlayerIdx = int;
using StateIdx = int;
using ActionIdx = int;

/// Game arena: players, states, per-state action sets, a total transition
/// function over full action profiles, and a propositional labelling.
///
/// An action profile at state s is stored as a mixed-radix code over the
/// per-player action lists at s, player 0 least significant.
struct Arena {
    std::vector<std::string> players;
    std::vector<std::string> states;
    std::vector<std::string> atoms; // declared alphabet
    StateIdx initial = 0;
    std::vector<std::vector<std::vector<std::string>>> actions; // [state][player] -> names
    std::vector<std::vector<bool>> labels;                      // [state][atom]
    std::vector<std::vector<StateIdx>> transitions;             // [state][profile code]

    int player_count() const { return static_cast<int>(players.size()); }
    int state_count() const { return static_cast<int>(states.size()); }
    int atom_count() const { return static_cast<int>(atoms.size()); }

    int action_count(StateIdx s, PlayerIdx i) const {
        return static_cast<int>(actions[s][i].size());
    }

    int profile_count(StateIdx s) const {
        int n = 1;
        for (PlayerIdx i = 0; i < player_count(); ++i)
            n *= action_count(s, i);
        return n;
    }

    StateIdx successor(StateIdx s, int profile) const { return transitions[s][profile]; }

    ActionIdx profile_action(StateIdx s, int profile, PlayerIdx i) const {
        for (PlayerIdx j = 0; j < i; ++j)
            profile /= action_count(s, j);
        return profile % action_count(s, i);
    }

    std::vector<ActionIdx> decode_profile(StateIdx s, int profile) const {
        std::vector<ActionIdx> out(player_count());
        for (PlayerIdx i = 0; i < player_count(); ++i) {
            out[i] = profile % action_count(s, i);
            profile /= action_count(s, i);
        }
        return out;
    }

    int encode_profile(StateIdx s, const std::vector<ActionIdx>& acts) const {
        int code = 0;
        for (PlayerIdx i = player_count() - 1; i >= 0; --i)
            code = code * action_count(s, i) + acts[i];
        return code;
    }

    /// The profile equal to `profile` except player i plays `a`.
    int profile_with_action(StateIdx s, int profile, PlayerIdx i, ActionIdx a) const {
        auto acts = decode_profile(s, profile);
        acts[i] = a;
        return encode_profile(s, acts);
    }

    int state_index(const std::string& id) const {
        auto it = std::find(states.begin(), states.end(), id);
        if (it == states.end())
            throw InputError("unknown state '" + id + "'");
        return static_cast<int>(it - states.begin());
    }

    int player_index(const std::string& id) const {
        auto it = std::find(players.begin(), players.end(), id);
        if (it == players.end())
            throw InputError("unknown player '" + id + "'");
        return static_cast<int>(it - players.begin());
    }

    int atom_index(const std::string& id) const {
        auto it = std::find(atoms.begin(), atoms.end(), id);
        if (it == atoms.end())
            throw InputError("unknown atom '" + id + "'");
        return static_cast<int>(it - atoms.begin());
    }

    /// Structural invariants: non-empty player/state lists, initial in range,
    /// non-empty action lists, transitions total and in range.
    void validate() const {
        if (players.empty())
            throw InputError("arena has no players");
        if (states.empty())
            throw InputError("arena has no states");
        if (initial < 0 || initial >= state_count())
            throw InputError("initial state out of range");
        if (static_cast<int>(actions.size()) != state_count() ||
            static_cast<int>(labels.size()) != state_count() ||
            static_cast<int>(transitions.size()) != state_count())
            throw InputError("arena tables do not cover every state");
        for (StateIdx s = 0; s < state_count(); ++s) {
            if (static_cast<int>(actions[s].size()) != player_count())
                throw InputError("action table incomplete at state " + states[s]);
            for (PlayerIdx i = 0; i < player_count(); ++i)
                if (actions[s][i].empty())
                    throw InputError("player " + players[i] + " has no action at state " + states[s]);
            if (static_cast<int>(labels[s].size()) != atom_count())
                throw InputError("label bitmap incomplete at state " + states[s]);
            if (static_cast<int>(transitions[s].size()) != profile_count(s))
                throw InputError("transition function not total at state " + states[s]);
            for (StateIdx t : transitions[s])
                if (t < 0 || t >= state_count())
                    throw InputError("transition target out of range at state " + states[s]);
        }
    }
};

/// Arena plus one rational weight per (player, state).
struct ConcurrentGame {
    Arena arena;
    std::vector<std::vector<Rational>> weights; // [player][state]

    const Rational& weight(PlayerIdx i, StateIdx s) const { return weights[i][s]; }

    void validate() const {
        arena.validate();
        if (static_cast<int>(weights.size()) != arena.player_count())
            throw InputError("weights missing for some player");
        for (const auto& row : weights)
            if (static_cast<int>(row.size()) != arena.state_count())
                throw InputError("weights missing for some state");
    }
};

/// One step of a path: the state and the joint action taken there.
struct Config {
    StateIdx state;
    int profile;
    friend bool operator==(const Config&, const Config&) = default;
    friend auto operator<=>(const Config&, const Config&) = default;
};

/// Ultimately periodic path, validated eagerly: consecutive configurations
/// respect the transition function, including the prefix-to-cycle junction
/// and the cycle wrap-around. Downstream code may assume well-formedness.
class Lasso {
public:
    Lasso(const Arena& arena, std::vector<Config> prefix, std::vector<Config> cycle)
        : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
        if (cycle_.empty())
            throw InputError("lasso cycle must be non-empty");
        auto check_step = [&](const Config& c, StateIdx expected_next, const char* where) {
            if (c.state < 0 || c.state >= arena.state_count())
                throw InputError(std::string("lasso state out of range in ") + where);
            if (c.profile < 0 || c.profile >= arena.profile_count(c.state))
                throw InputError(std::string("lasso profile out of range in ") + where);
            if (arena.successor(c.state, c.profile) != expected_next)
                throw InputError(std::string("lasso breaks the transition function in ") + where);
        };
        for (size_t k = 0; k + 1 < prefix_.size(); ++k)
            check_step(prefix_[k], prefix_[k + 1].state, "prefix");
        if (!prefix_.empty())
            check_step(prefix_.back(), cycle_.front().state, "prefix-cycle junction");
        for (size_t k = 0; k + 1 < cycle_.size(); ++k)
            check_step(cycle_[k], cycle_[k + 1].state, "cycle");
        check_step(cycle_.back(), cycle_.front().state, "cycle wrap-around");
    }

    const std::vector<Config>& prefix() const { return prefix_; }
    const std::vector<Config>& cycle() const { return cycle_; }

    StateIdx first_state() const { return prefix_.empty() ? cycle_.front().state : prefix_.front().state; }

    /// Whether the lasso can serve as a whole-game witness.
    bool starts_at_initial(const Arena& arena) const { return first_state() == arena.initial; }

private:
    std::vector<Config> prefix_;
    std::vector<Config> cycle_;
};

/// Mean payoff of the lasso under a per-state weight vector. The lim inf of
/// running averages of an ultimately periodic sequence is the cycle average,
/// so the prefix does not contribute.
inline Rational mean_payoff(const Lasso& lasso, const std::vector<Rational>& state_weight) {
    Rational sum;
    for (const Config& c : lasso.cycle())
        sum += state_weight[c.state];
    return sum / Rational(static_cast<long long>(lasso.cycle().size()));
}

inline Rational payoff(const ConcurrentGame& game, const Lasso& lasso, PlayerIdx player) {
    if (player < 0 || player >= game.arena.player_count())
        throw InputError("unknown player index");
    return mean_payoff(lasso, game.weights[player]);
}

} // namespace eqdesign
