#pragma once

#include "natcalc/canonical.hpp"
#include "natcalc/residual.hpp"

#include <vector>

namespace natcalc {

/// Proper transitions: inputs, taus and outputs taken from the basic
/// system, plus outputs that bundle n >= 1 basic openings in front of an
/// output on the opened body. An opened channel need not be published by
/// the payload; such outputs are derivable and are kept.
TransitionSet proper_transitions(const Process &p, const ExplorationContext &ctx);
TransitionSet proper_transitions(const CanonicalTerm &t, const ExplorationContext &ctx);

/// Opened channels of an Output that appear neither in its payload nor free
/// in its target (positions into t.opened).
std::vector<std::size_t> unpublished_openings(const Transition &t, const ExplorationContext &ctx);

template <class T>
Residual<T> proper_silent(const T &p)
{
    return {Label::tau(), p};
}

} // namespace natcalc
