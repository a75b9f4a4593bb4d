#pragma once

#include <vector>

#include "eqdesign/arena.hpp"
#include "eqdesign/formula.hpp"

namespace eqdesign {

/// GR(1) specification: a conjunction of GF-assumptions implying a
/// conjunction of GF-guarantees, each over Boolean state predicates.
/// Empty lists follow the usual conventions: no assumptions means a
/// trivially true antecedent, no guarantees a trivially true consequent.
struct GR1Spec {
    std::vector<Formula> assumptions; // psi_1 .. psi_m
    std::vector<Formula> guarantees;  // theta_1 .. theta_n
};

/// Every atom of f must belong to the arena's declared alphabet.
inline void bind_check(const Arena& arena, const Formula& f) {
    std::vector<std::string> atoms;
    f.collect_atoms(atoms);
    for (const auto& a : atoms)
        arena.atom_index(a); // throws on unbound atom
}

inline bool state_satisfies(const Arena& arena, StateIdx s, const Formula& f) {
    return f.evaluate([&](const std::string& atom) {
        return arena.labels[s][arena.atom_index(atom)];
    });
}

/// Bitmap over states: exactly those whose label set satisfies f.
inline std::vector<bool> sat_states(const ConcurrentGame& game, const Formula& f) {
    bind_check(game.arena, f);
    std::vector<bool> out(game.arena.state_count(), false);
    for (StateIdx s = 0; s < game.arena.state_count(); ++s)
        out[s] = state_satisfies(game.arena, s, f);
    return out;
}

/// GR(1) semantics specialised to lasso words: a state occurs infinitely
/// often iff it lies on the cycle, so the spec holds iff some assumption has
/// no satisfying state in the cycle or every guarantee has one.
inline bool holds_on_lasso(const GR1Spec& spec, const ConcurrentGame& game, const Lasso& lasso) {
    auto cycle_hits = [&](const Formula& f) {
        for (const Config& c : lasso.cycle())
            if (state_satisfies(game.arena, c.state, f))
                return true;
        return false;
    };
    for (const Formula& psi : spec.assumptions)
        if (!cycle_hits(psi))
            return true;
    for (const Formula& theta : spec.guarantees)
        if (!cycle_hits(theta))
            return false;
    return true;
}

} // namespace eqdesign
