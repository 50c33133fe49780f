#pragma once

#include "natcalc/canonical.hpp"
#include "natcalc/residual.hpp"

#include <vector>

namespace natcalc {

/// All basic transitions of p. Openings happen at the smallest minted
/// channel not free in p. Every closing rule is applied exhaustively, which
/// may throw BudgetExceeded once nested openings run out of fresh channels.
TransitionSet basic_transitions(const Process &p, const ExplorationContext &ctx);
TransitionSet basic_transitions(const CanonicalTerm &t, const ExplorationContext &ctx);

/// The silent residual of p.
template <class T>
Residual<T> basic_silent(const T &p)
{
    return {Label::tau(), p};
}

/// Removes a silent layer from a nested residual: a silent outer layer
/// yields the inner residual, a silent inner layer keeps the outer label
/// over the inner target. Without a silent layer the result is empty.
template <class T>
std::vector<Residual<T>> basic_fuse(const Residual<Residual<T>> &n)
{
    if (n.label.silent()) {
        return {n.target};
    }
    if (n.target.label.silent()) {
        return {Residual<T>{n.label, n.target.target}};
    }
    return {};
}

} // namespace natcalc
