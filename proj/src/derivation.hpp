#pragma once

// Internal derivation engine shared by the basic and proper systems.

#include "natcalc/canonical.hpp"
#include "natcalc/residual.hpp"

#include <set>
#include <string>
#include <vector>

namespace natcalc::detail {

class Deriver {
public:
    explicit Deriver(const ExplorationContext &ctx) : ctx_(ctx) {}

    /// Basic transitions of p with openings avoiding `used`; `depth` bounds
    /// how far parallel and binder structure is unfolded.
    std::vector<Transition> basic(const Process &p, const std::set<ChannelId> &used, int depth);
    std::vector<Transition> proper(const Process &p, const std::set<ChannelId> &used, int depth);

    /// Builds a transition from a label whose payload still shows the
    /// concrete opened channels.
    Transition make(Label concrete, std::vector<ChannelId> opened, Process target, std::string rule) const;

    bool truncated() const { return truncated_; }
    int start_depth() const { return static_cast<int>(ctx_.universe().depth_budget); }
    std::set<ChannelId> free_in(const Process &p) const;

private:
    std::vector<Transition> base_rules(const Process &p, const std::set<ChannelId> &used, int depth);

    const ExplorationContext &ctx_;
    bool truncated_ = false;
};

/// Sorts by (label, abstraction) and keeps the first of each duplicate.
std::vector<Transition> normalise(std::vector<Transition> ts);

std::string residual_key(const Transition &t);

} // namespace natcalc::detail
