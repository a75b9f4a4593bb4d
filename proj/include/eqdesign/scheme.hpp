#pragma once

#include <optional>
#include <vector>

#include "eqdesign/arena.hpp"

namespace eqdesign {

/// A (player, state) pair eligible for a reward.
struct Slot {
    PlayerIdx player;
    StateIdx state;
    friend bool operator==(const Slot&, const Slot&) = default;
    friend auto operator<=>(const Slot&, const Slot&) = default;
};

/// The designer's lever: a natural-number reward per (player, state) pair,
/// zero by default.
class RewardScheme {
public:
    RewardScheme() = default;
    RewardScheme(int players, int states)
        : amounts_(players, std::vector<long long>(states, 0)) {}

    static RewardScheme zero_for(const ConcurrentGame& g) {
        return RewardScheme(g.arena.player_count(), g.arena.state_count());
    }

    long long amount(PlayerIdx i, StateIdx s) const { return amounts_[i][s]; }

    void set(PlayerIdx i, StateIdx s, long long v) {
        if (v < 0)
            throw InputError("reward amounts must be non-negative integers");
        amounts_[i][s] = v;
    }

    void add(PlayerIdx i, StateIdx s, long long v) { set(i, s, amounts_[i][s] + v); }

    int player_count() const { return static_cast<int>(amounts_.size()); }
    int state_count() const { return amounts_.empty() ? 0 : static_cast<int>(amounts_[0].size()); }

    bool is_zero() const {
        for (const auto& row : amounts_)
            for (long long v : row)
                if (v != 0)
                    return false;
        return true;
    }

    std::vector<Slot> nonzero_slots() const {
        std::vector<Slot> out;
        for (PlayerIdx i = 0; i < player_count(); ++i)
            for (StateIdx s = 0; s < state_count(); ++s)
                if (amounts_[i][s] != 0)
                    out.push_back({i, s});
        return out;
    }

    friend bool operator==(const RewardScheme&, const RewardScheme&) = default;

private:
    std::vector<std::vector<long long>> amounts_;
};

/// Sum of all reward entries.
inline long long scheme_cost(const RewardScheme& k) {
    long long total = 0;
    for (PlayerIdx i = 0; i < k.player_count(); ++i)
        for (StateIdx s = 0; s < k.state_count(); ++s)
            total += k.amount(i, s);
    return total;
}

/// New game with weights w + kappa, same arena. The input game is unchanged.
inline ConcurrentGame apply_scheme(const ConcurrentGame& game, const RewardScheme& k) {
    if (k.player_count() != game.arena.player_count() || k.state_count() != game.arena.state_count())
        throw InputError("reward scheme shape does not match the game");
    ConcurrentGame out = game;
    for (PlayerIdx i = 0; i < k.player_count(); ++i)
        for (StateIdx s = 0; s < k.state_count(); ++s)
            if (k.amount(i, s) != 0)
                out.weights[i][s] += Rational(k.amount(i, s));
    return out;
}

inline Int binomial(const Int& n, const Int& k) {
    if (k < 0 || k > n)
        return 0;
    Int r = 1;
    for (Int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1; // exact at every step
    }
    return r;
}

/// Number of reward schemes over m slots with cost at most beta:
/// ((beta+1)/m) * C(beta+m, beta+1), equivalently the sum over b <= beta of
/// the weak compositions of b into m parts.
inline Int scheme_count(long long m, long long beta) {
    if (m <= 0)
        throw InputError("scheme_count requires at least one slot");
    if (beta < 0)
        throw InputError("scheme_count requires a non-negative budget");
    Int c = binomial(Int(beta) + m, Int(beta) + 1) * (Int(beta) + 1);
    if (c % m != 0)
        throw InternalError("scheme_count divisibility failed");
    return c / m;
}

/// Deterministic stream of every scheme with cost <= beta over the given
/// slots, each exactly once: ascending total cost, then lexicographic over
/// the slot list (earlier slots carry larger amounts first). Replaces the
/// nondeterministic scheme guess with a canonical order.
class SchemeEnumerator {
public:
    SchemeEnumerator(std::vector<Slot> slots, long long beta, int players, int states)
        : slots_(std::move(slots)), beta_(beta), players_(players), states_(states) {}

    /// Next scheme in canonical order, or nullopt when exhausted.
    std::optional<RewardScheme> next() {
        if (done_)
            return std::nullopt;
        if (!started_) {
            started_ = true;
            cost_ = 0;
            if (!first_composition_of_current_cost())
                return std::nullopt;
            return materialize();
        }
        if (advance_composition())
            return materialize();
        ++cost_;
        if (cost_ > beta_ || !first_composition_of_current_cost()) {
            done_ = true;
            return std::nullopt;
        }
        return materialize();
    }

private:
    bool first_composition_of_current_cost() {
        if (slots_.empty()) {
            if (cost_ > 0) {
                done_ = true;
                return false;
            }
            parts_.clear();
            return true;
        }
        parts_.assign(slots_.size(), 0);
        parts_[0] = cost_;
        return true;
    }

    // Next weak composition of cost_ in descending lexicographic order:
    // move one unit from the rightmost positive non-final part to its right,
    // pulling everything strictly after back onto that position.
    bool advance_composition() {
        if (parts_.empty())
            return false;
        size_t n = parts_.size();
        long long tail = parts_[n - 1];
        for (size_t idx = n - 1; idx-- > 0;) {
            if (parts_[idx] > 0) {
                --parts_[idx];
                parts_[idx + 1] = tail + 1;
                for (size_t j = idx + 2; j < n; ++j)
                    parts_[j] = 0;
                return true;
            }
            tail += parts_[idx];
        }
        return false;
    }

    RewardScheme materialize() const {
        RewardScheme k(players_, states_);
        for (size_t j = 0; j < slots_.size(); ++j)
            if (parts_[j] != 0)
                k.set(slots_[j].player, slots_[j].state, parts_[j]);
        return k;
    }

    std::vector<Slot> slots_;
    long long beta_;
    int players_;
    int states_;
    long long cost_ = 0;
    std::vector<long long> parts_;
    bool started_ = false;
    bool done_ = false;
};

/// All (player, state) slots of a game in canonical order.
inline std::vector<Slot> all_slots(const ConcurrentGame& g) {
    std::vector<Slot> out;
    for (PlayerIdx i = 0; i < g.arena.player_count(); ++i)
        for (StateIdx s = 0; s < g.arena.state_count(); ++s)
            out.push_back({i, s});
    return out;
}

} // namespace eqdesign
