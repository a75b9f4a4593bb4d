#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "eqdesign/gr1.hpp"
#include "eqdesign/witness.hpp"

namespace eqdesign {

enum class Mode { Weak, Strong };
enum class WelfareMeasure { Usw, Esw };

struct WelfareConstraint {
    WelfareMeasure measure;
    Rational threshold;
};

/// One equilibrium-design question over a game.
struct Query {
    ConcurrentGame game;
    GR1Spec spec;
    long long budget = 0;
    Mode mode = Mode::Weak;
    std::optional<std::vector<Slot>> support; // slots eligible for rewards; all slots if absent
    std::optional<WelfareConstraint> welfare;
    long long verify_cap = 10000000; // max schemes examined per decision
    std::ostream* lp_dump = nullptr; // optional debug dump of every solved LP
    PunishmentCache* pun_cache = nullptr; // shared across budgets by opt/uopt
};

struct Certificate {
    RewardScheme scheme;
    std::vector<Rational> z;
    WitnessSchedule witness;
    std::vector<Rational> payoffs;
    Rational usw;
    Rational esw;
};

struct BadNEWitness {
    std::vector<Rational> z;
    WitnessSchedule witness;
};

struct Diagnostics {
    long long schemes_examined = 0;
    long long z_vectors_examined = 0;
    long long lps_solved = 0;
    std::optional<BadNEWitness> bad_ne; // strong-mode failure of the zero scheme
    std::string note;
};

struct Verdict {
    bool yes = false;
    std::optional<Certificate> certificate;
    Diagnostics diagnostics;
};

struct OptResult {
    std::optional<long long> optimum;
    std::optional<RewardScheme> scheme; // cost is exactly the optimum
    std::optional<bool> unique;         // filled by uopt
};

struct UOptOutcome {
    long long optimum = 0;
    bool unique = false;
    std::vector<RewardScheme> schemes; // all optimal schemes, canonical order
};

enum class PathPredicate { Any, SatSpec, ViolSpec };

struct NEWitnessFound {
    std::vector<Rational> z;
    WitnessSchedule witness;
};

namespace detail {

struct SpecSets {
    std::vector<std::vector<bool>> psi;   // sat states per assumption
    std::vector<std::vector<bool>> theta; // sat states per guarantee
};

inline SpecSets spec_sets(const ConcurrentGame& game, const GR1Spec& spec) {
    SpecSets out;
    for (const Formula& f : spec.assumptions)
        out.psi.push_back(sat_states(game, f));
    for (const Formula& f : spec.guarantees)
        out.theta.push_back(sat_states(game, f));
    return out;
}

inline std::optional<FeasiblePoint> solve(const LPInstance& lp, Diagnostics* diag,
                                          std::ostream* dump) {
    if (diag)
        ++diag->lps_solved;
    if (dump)
        *dump << lp.dump() << "---\n";
    return lp_feasible(lp);
}

/// Walk the product of per-player punishment value sets in canonical order:
/// ascending per player, player 0 most significant.
class ZProduct {
public:
    explicit ZProduct(const PunishmentTable& table) {
        for (PlayerIdx i = 0; i < table.player_count(); ++i)
            sets_.push_back(table.value_set(i));
        idx_.assign(sets_.size(), 0);
    }

    std::optional<std::vector<Rational>> next() {
        if (done_)
            return std::nullopt;
        std::vector<Rational> z;
        for (size_t i = 0; i < sets_.size(); ++i)
            z.push_back(sets_[i][idx_[i]]);
        for (size_t i = sets_.size(); i-- > 0;) {
            if (++idx_[i] < sets_[i].size())
                break;
            idx_[i] = 0;
            if (i == 0)
                done_ = true;
        }
        return z;
    }

private:
    std::vector<std::vector<Rational>> sets_;
    std::vector<size_t> idx_;
    bool done_ = false;
};

} // namespace detail

/// Search for an ultimately periodic NE path of `game` whose cycle content
/// matches the predicate: any, satisfying the spec, or violating it.
/// Iterates punishment vectors z over the product of per-player value sets;
/// for each z builds the secured arena and solves the per-component linear
/// programs. Returns the first witness in canonical z order.
///
/// With a welfare constraint, the per-player shift becomes max(z_i, t) for
/// the egalitarian measure, and the utilitarian measure adds one extra row
/// for the dummy sum-of-weights player shifted by t; both apply to every
/// predicate, mirroring the welfare-augmented formulas.
inline std::optional<NEWitnessFound>
ne_witness_exists(const ConcurrentGame& game, const PunishmentTable& table, PathPredicate pred,
                  const GR1Spec& spec, const std::optional<WelfareConstraint>& welfare,
                  Diagnostics* diag = nullptr, std::ostream* lp_dump = nullptr) {
    detail::SpecSets sets = detail::spec_sets(game, spec);

    UswRow usw_row;
    const UswRow* usw = nullptr;
    if (welfare && welfare->measure == WelfareMeasure::Usw) {
        usw_row.threshold = welfare->threshold;
        usw = &usw_row;
    }

    detail::ZProduct zs(table);
    while (auto z = zs.next()) {
        if (diag)
            ++diag->z_vectors_examined;
        std::vector<Rational> shift = *z;
        if (welfare && welfare->measure == WelfareMeasure::Esw)
            for (auto& s : shift)
                s = max(s, welfare->threshold);

        SecuredArena secured = build_secured(game, table, *z);
        if (!secured.has_initial())
            continue;
        for (const auto& scc : scc_reachable(secured)) {
            Subgraph sg = make_scc_subgraph(secured, scc);
            auto finish = [&](const Subgraph& part,
                              const FeasiblePoint& p) -> std::optional<NEWitnessFound> {
                return NEWitnessFound{*z, extract_witness(game, secured, part, p)};
            };
            switch (pred) {
            case PathPredicate::Any: {
                if (auto p = detail::solve(build_existence_lp(sg, shift, usw), diag, lp_dump))
                    return finish(sg, *p);
                break;
            }
            case PathPredicate::SatSpec: {
                if (auto p = detail::solve(build_guarantee_lp(sg, shift, sets.theta, usw), diag,
                                           lp_dump))
                    return finish(sg, *p);
                for (const auto& psi : sets.psi)
                    for (const auto& [part, lp] : build_assumption_lp(sg, shift, psi, usw))
                        if (auto p = detail::solve(lp, diag, lp_dump))
                            return finish(part, *p);
                break;
            }
            case PathPredicate::ViolSpec: {
                for (const auto& theta_r : sets.theta)
                    for (const auto& [part, lp] :
                         build_negspec_lp(sg, shift, sets.psi, theta_r, usw))
                        if (auto p = detail::solve(lp, diag, lp_dump))
                            return finish(part, *p);
                break;
            }
            }
        }
    }
    return std::nullopt;
}

namespace detail {

inline Certificate make_certificate(const RewardScheme& k, const NEWitnessFound& found) {
    Certificate cert;
    cert.scheme = k;
    cert.z = found.z;
    cert.witness = found.witness;
    cert.payoffs = found.witness.payoffs;
    cert.usw = usw_value(cert.payoffs);
    cert.esw = esw_value(cert.payoffs);
    return cert;
}

/// Decides membership of kappa in WI / SI for the applied game; fills
/// diagnostics and, in strong mode, surfaces the violating witness.
inline std::optional<Certificate> verify_applied(const Query& q, const RewardScheme& k,
                                                 Diagnostics& diag,
                                                 std::optional<BadNEWitness>* bad_out,
                                                 PunishmentCache* cache = nullptr) {
    ConcurrentGame applied = apply_scheme(q.game, k);
    PunishmentTable table = punishment_table(applied, cache);
    if (q.mode == Mode::Weak) {
        auto found = ne_witness_exists(applied, table, PathPredicate::SatSpec, q.spec, q.welfare,
                                       &diag, q.lp_dump);
        if (!found)
            return std::nullopt;
        return make_certificate(k, *found);
    }
    auto some = ne_witness_exists(applied, table, PathPredicate::Any, q.spec, q.welfare, &diag,
                                   q.lp_dump);
    if (!some)
        return std::nullopt; // no equilibrium at all: condition (a) fails
    auto bad = ne_witness_exists(applied, table, PathPredicate::ViolSpec, q.spec, q.welfare, &diag,
                                  q.lp_dump);
    if (bad) {
        if (bad_out)
            *bad_out = BadNEWitness{bad->z, bad->witness};
        return std::nullopt;
    }
    return make_certificate(k, *some);
}

inline void note_welfare(const Query& q, Diagnostics& diag) {
    if (q.welfare)
        diag.note = "welfare threshold constrains the certified equilibrium and the "
                    "violating-equilibrium check; the reading over all equilibria of the "
                    "rewarded game is not decided";
}

inline std::vector<Slot> query_slots(const Query& q) {
    if (!q.support)
        return all_slots(q.game);
    std::vector<Slot> slots = *q.support;
    std::sort(slots.begin(), slots.end());
    slots.erase(std::unique(slots.begin(), slots.end()), slots.end());
    for (const Slot& s : slots)
        if (s.player < 0 || s.player >= q.game.arena.player_count() || s.state < 0 ||
            s.state >= q.game.arena.state_count())
            throw InputError("support slot out of range");
    return slots;
}

} // namespace detail

/// Is kappa a weak (resp. strong) implementation of the query's spec?
inline Verdict verify_scheme(const Query& q, const RewardScheme& k) {
    if (k.player_count() != q.game.arena.player_count() ||
        k.state_count() != q.game.arena.state_count())
        throw InputError("reward scheme shape does not match the game");
    if (scheme_cost(k) > q.budget)
        throw InputError("reward scheme exceeds the budget");
    if (q.support) {
        auto slots = detail::query_slots(q);
        for (const Slot& s : k.nonzero_slots())
            if (!std::binary_search(slots.begin(), slots.end(), s))
                throw InputError("reward scheme uses a slot outside the support");
    }
    Verdict v;
    detail::note_welfare(q, v.diagnostics);
    v.diagnostics.schemes_examined = 1;
    std::optional<BadNEWitness> bad;
    auto cert = detail::verify_applied(q, k, v.diagnostics, &bad);
    v.yes = cert.has_value();
    v.certificate = std::move(cert);
    if (bad)
        v.diagnostics.bad_ne = std::move(bad);
    return v;
}

/// Weak / Strong Implementation: enumerate admissible schemes over the
/// support in canonical order and return the first one that implements the
/// spec, with a full certificate. The canonical order starts at the zero
/// scheme, so the surfaced strong-mode bad witness is the unrewarded game's
/// own bad equilibrium.
inline Verdict check(const Query& q) {
    std::vector<Slot> slots = detail::query_slots(q);
    if (!slots.empty()) {
        Int estimate = scheme_count(static_cast<long long>(slots.size()), q.budget);
        if (estimate > Int(q.verify_cap))
            throw ResourceLimitError("scheme search would examine " + estimate.str() +
                                     " candidates; cap is " + std::to_string(q.verify_cap));
    }
    Verdict v;
    detail::note_welfare(q, v.diagnostics);
    SchemeEnumerator en(slots, q.budget, q.game.arena.player_count(),
                        q.game.arena.state_count());
    PunishmentCache local_cache;
    PunishmentCache* cache = q.pun_cache ? q.pun_cache : &local_cache;
    bool first = true;
    while (auto k = en.next()) {
        ++v.diagnostics.schemes_examined;
        std::optional<BadNEWitness> bad;
        auto cert = detail::verify_applied(q, *k, v.diagnostics, &bad, cache);
        if (first && bad)
            v.diagnostics.bad_ne = std::move(bad);
        first = false;
        if (cert) {
            v.yes = true;
            v.certificate = std::move(cert);
            return v;
        }
    }
    return v;
}

/// Threshold social welfare variants share the search; the welfare field of
/// the query carries the measure and threshold.
inline Verdict check_threshold(const Query& q) {
    if (!q.welfare)
        throw InputError("check_threshold requires a welfare constraint");
    return check(q);
}

/// Least budget with a positive check, by binary search over
/// [0, budget_upper_bound]; valid because admissible scheme sets nest.
inline OptResult opt(const ConcurrentGame& game, const GR1Spec& spec, Mode mode,
                     const std::optional<std::vector<Slot>>& support = std::nullopt,
                     const std::optional<WelfareConstraint>& welfare = std::nullopt,
                     long long verify_cap = 10000000) {
    Query q;
    q.game = game;
    q.spec = spec;
    q.mode = mode;
    q.support = support;
    q.welfare = welfare;
    q.verify_cap = verify_cap;
    PunishmentCache cache;
    q.pun_cache = &cache;

    PunishmentTable base = punishment_table(game, &cache);
    long long hi = budget_upper_bound(game, base);
    q.budget = hi;
    Verdict at_bound = check(q);
    if (!at_bound.yes)
        return {};

    long long lo = 0;
    std::optional<Certificate> best = at_bound.certificate;
    while (lo < hi) {
        long long mid = lo + (hi - lo) / 2;
        q.budget = mid;
        Verdict v = check(q);
        if (v.yes) {
            hi = mid;
            best = v.certificate;
        } else {
            lo = mid + 1;
        }
    }
    OptResult out;
    out.optimum = lo;
    out.scheme = best->scheme;
    return out;
}

/// Is b exactly the optimum budget? Positive at b and negative at b-1.
inline bool exact(const ConcurrentGame& game, const GR1Spec& spec, Mode mode, long long b,
                  const std::optional<std::vector<Slot>>& support = std::nullopt,
                  const std::optional<WelfareConstraint>& welfare = std::nullopt,
                  long long verify_cap = 10000000) {
    Query q;
    q.game = game;
    q.spec = spec;
    q.mode = mode;
    q.support = support;
    q.welfare = welfare;
    q.verify_cap = verify_cap;
    PunishmentCache cache;
    q.pun_cache = &cache;
    q.budget = b;
    if (!check(q).yes)
        return false;
    if (b == 0)
        return true;
    q.budget = b - 1;
    return !check(q).yes;
}

/// Uniqueness at the optimum: enumerate the schemes of cost exactly the
/// optimum budget and test membership one by one.
inline std::optional<UOptOutcome> uopt(const ConcurrentGame& game, const GR1Spec& spec, Mode mode,
                                       const std::optional<std::vector<Slot>>& support = std::nullopt,
                                       const std::optional<WelfareConstraint>& welfare = std::nullopt,
                                       long long verify_cap = 10000000) {
    OptResult o = opt(game, spec, mode, support, welfare, verify_cap);
    if (!o.optimum)
        return std::nullopt;

    Query q;
    q.game = game;
    q.spec = spec;
    q.mode = mode;
    q.support = support;
    q.welfare = welfare;
    q.verify_cap = verify_cap;
    q.budget = *o.optimum;

    UOptOutcome out;
    out.optimum = *o.optimum;
    std::vector<Slot> slots = detail::query_slots(q);
    SchemeEnumerator en(slots, q.budget, game.arena.player_count(), game.arena.state_count());
    PunishmentCache cache;
    Diagnostics diag;
    while (auto k = en.next()) {
        if (scheme_cost(*k) != *o.optimum)
            continue;
        if (detail::verify_applied(q, *k, diag, nullptr, &cache))
            out.schemes.push_back(*k);
    }
    if (out.schemes.empty())
        throw InternalError("optimum reported but no scheme of that exact cost passes");
    out.unique = out.schemes.size() == 1;
    return out;
}

/// Independent replay of a yes-certificate: admissibility, z-membership,
/// z-security of every configuration, schedule payoffs at least z (and the
/// welfare threshold), and the spec on the realized lasso. Exact.
inline bool revalidate_certificate(const Query& q, const Certificate& cert) {
    if (scheme_cost(cert.scheme) > q.budget)
        return false;
    if (q.support) {
        auto slots = detail::query_slots(q);
        for (const Slot& s : cert.scheme.nonzero_slots())
            if (!std::binary_search(slots.begin(), slots.end(), s))
                return false;
    }
    ConcurrentGame applied = apply_scheme(q.game, cert.scheme);
    PunishmentTable table = punishment_table(applied);
    for (PlayerIdx i = 0; i < applied.arena.player_count(); ++i) {
        auto vs = table.value_set(i);
        if (!std::binary_search(vs.begin(), vs.end(), cert.z[i]))
            return false;
    }
    for (const Config& c : cert.witness.all_configs())
        for (PlayerIdx i = 0; i < applied.arena.player_count(); ++i)
            if (!is_z_secure(applied, table, c.state, c.profile, i, cert.z[i]))
                return false;

    // Payoffs of the schedule are the multiplicity-weighted cycle means.
    Int total_len = 0;
    for (const auto& c : cert.witness.cycles)
        total_len += c.multiplicity * static_cast<long long>(c.configs.size());
    for (PlayerIdx i = 0; i < applied.arena.player_count(); ++i) {
        Rational sum;
        for (const auto& c : cert.witness.cycles) {
            Rational cyc;
            for (const auto& cfg : c.configs)
                cyc += applied.weight(i, cfg.state);
            sum += cyc * Rational(c.multiplicity);
        }
        Rational mean = sum / Rational(total_len);
        if (mean != cert.payoffs[i])
            return false;
        if (mean < cert.z[i])
            return false;
    }
    if (q.welfare) {
        if (q.welfare->measure == WelfareMeasure::Usw && usw_value(cert.payoffs) < q.welfare->threshold)
            return false;
        if (q.welfare->measure == WelfareMeasure::Esw && esw_value(cert.payoffs) < q.welfare->threshold)
            return false;
    }

    Lasso lasso = cert.witness.realize(applied.arena, 1);
    if (!lasso.starts_at_initial(applied.arena))
        return false;
    return holds_on_lasso(q.spec, applied, lasso);
}

} // namespace eqdesign
