#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "eqdesign/mpg.hpp"
#include "eqdesign/scheme.hpp"

namespace eqdesign {

class PunishmentTable;

/// Memo for repeated punishment computations during scheme enumeration:
/// pun_i depends only on player i's weight row, so schemes differing in the
/// other players' rewards share an entry. Keys carry the full weight row;
/// one cache must not outlive its arena.
struct PunishmentCache {
    struct Entry {
        TurnBasedMPG tb;
        std::vector<Rational> node_values;
    };
    std::map<std::pair<PlayerIdx, std::vector<Rational>>, Entry> entries;
};

/// Punishment values pun_i(s): the best mean payoff player i can secure
/// from s against the fully adversarial coalition of all other players,
/// computed via the commit-first turn-based game.
class PunishmentTable {
public:
    static PunishmentTable compute(const ConcurrentGame& game, PunishmentCache* cache = nullptr) {
        PunishmentTable table;
        int players = game.arena.player_count();
        table.values_.resize(players);
        table.games_.reserve(players);
        for (PlayerIdx i = 0; i < players; ++i) {
            TurnBasedMPG tb;
            std::vector<Rational> vals;
            PunishmentCache::Entry* hit = nullptr;
            if (cache) {
                auto it = cache->entries.find({i, game.weights[i]});
                if (it != cache->entries.end())
                    hit = &it->second;
            }
            if (hit) {
                tb = hit->tb;
                vals = hit->node_values;
            } else {
                tb = sequentialize(game, i);
                vals = mpg_values(tb);
                if (cache)
                    cache->entries[{i, game.weights[i]}] = {tb, vals};
            }
            table.values_[i].resize(game.arena.state_count());
            for (StateIdx s = 0; s < game.arena.state_count(); ++s)
                table.values_[i][s] = vals[tb.coalition_node[s]];
            table.node_values_.push_back(std::move(vals));
            table.games_.push_back(std::move(tb));
        }
        return table;
    }

    const Rational& value(PlayerIdx i, StateIdx s) const { return values_[i][s]; }

    int player_count() const { return static_cast<int>(values_.size()); }
    int state_count() const { return values_.empty() ? 0 : static_cast<int>(values_[0].size()); }

    /// Node count of the turn-based game backing player i's values; bounds
    /// the reduced denominator of every pun_i value (for integer weights).
    int turn_based_node_count(PlayerIdx i) const { return games_[i].node_count(); }

    /// Deduplicated, ascending list of {pun_i(s) : s in St}.
    std::vector<Rational> value_set(PlayerIdx i) const {
        std::vector<Rational> vs = values_[i];
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }

    /// Optimal memoryless coalition strategy against player i: one partial
    /// profile per state. Derived on demand from the stored turn-based game.
    std::vector<int> coalition_strategy(PlayerIdx i) const {
        const TurnBasedMPG& tb = games_[i];
        std::vector<int> node_choice = coalition_choices(tb, node_values_[i]);
        std::vector<int> per_state(state_count(), -1);
        for (StateIdx s = 0; s < state_count(); ++s) {
            int chosen = node_choice[tb.coalition_node[s]];
            per_state[s] = tb.player_key[chosen].second;
        }
        return per_state;
    }

private:
    std::vector<std::vector<Rational>> values_;      // [player][state]
    std::vector<std::vector<Rational>> node_values_; // [player][tb node]
    std::vector<TurnBasedMPG> games_;
};

inline PunishmentTable punishment_table(const ConcurrentGame& game,
                                        PunishmentCache* cache = nullptr) {
    return PunishmentTable::compute(game, cache);
}

/// A pair (s, a) is z-secure for player i when every unilateral deviation of
/// i, including staying with a_i, lands in a state of punishment value <= z.
inline bool is_z_secure(const ConcurrentGame& game, const PunishmentTable& table, StateIdx s,
                        int profile, PlayerIdx i, const Rational& z) {
    for (ActionIdx a = 0; a < game.arena.action_count(s, i); ++a) {
        StateIdx t = game.arena.successor(s, game.arena.profile_with_action(s, profile, i, a));
        if (table.value(i, t) > z)
            return false;
    }
    return true;
}

/// Any feasible design exists at some budget below
/// max(0, ceil(sum_i max(0, max_s pun_i(s)) * (|St| - 1))).
inline long long budget_upper_bound(const ConcurrentGame& game, const PunishmentTable& table) {
    Rational total;
    for (PlayerIdx i = 0; i < game.arena.player_count(); ++i) {
        Rational zi = table.value(i, 0);
        for (StateIdx s = 1; s < game.arena.state_count(); ++s)
            zi = max(zi, table.value(i, s));
        total += max(zi, Rational(0));
    }
    total *= Rational(game.arena.state_count() - 1);
    Int b = total.ceil();
    if (b < 0)
        return 0;
    return b.convert_to<long long>();
}

} // namespace eqdesign
