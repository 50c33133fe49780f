#pragma once

#include "natcalc/canonical.hpp"
#include "natcalc/residual.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace natcalc {

enum class TransitionSystem { Basic, Proper };

const char *to_string(TransitionSystem s);

using StateId = std::size_t;

struct State {
    Process process;
    CanonicalTerm term;
    std::set<ChannelId> free;
};

/// One concrete instantiation of an edge's binders together with the state
/// the target lands in.
struct EdgeInstance {
    std::vector<ChannelId> opened;
    StateId target = 0;
};

/// An edge is a residual: its label plus the abstracted target. Edges with
/// binders keep one instance per ascending choice of fresh channels not free
/// in the source, so two binding edges can be compared at a shared tuple.
struct Edge {
    Label label;
    CanonicalTerm abstraction;
    std::vector<EdgeInstance> instances;
    std::string rule;

    /// The instance opened at exactly these channels, if explored.
    const EdgeInstance *instance_at(const std::vector<ChannelId> &ids) const;
};

struct Limits {
    std::size_t max_states = 2000;
    std::size_t max_depth = 1000;
};

/// An explored fragment of a transition system.
class LtsGraph {
public:
    TransitionSystem system() const { return system_; }
    const Universe &universe() const { return universe_; }
    const std::set<ChannelId> &minted() const { return minted_; }

    std::size_t size() const { return states_.size(); }
    const State &state(StateId s) const { return states_.at(s); }
    const std::vector<Edge> &edges(StateId s) const { return edges_.at(s); }
    bool complete(StateId s) const { return complete_.at(s); }
    /// Whether the state's transitions were computed, even if some may be
    /// missing because its term hit the depth budget.
    bool expanded(StateId s) const { return expanded_.at(s); }
    bool all_complete() const;
    bool limit_reached() const { return limit_reached_; }
    const std::vector<StateId> &roots() const { return roots_; }
    std::size_t edge_count() const;

    std::optional<StateId> find(const CanonicalTerm &t) const;

    bool has_weak_edges() const { return !weak_edges_.empty(); }
    /// Weak edges, present after weak_saturate.
    const std::vector<Edge> &weak_edges(StateId s) const { return weak_edges_.at(s); }

    /// States reachable from `from` along strong edges (including `from`).
    std::vector<StateId> reachable(StateId from) const;

private:
    friend LtsGraph explore(const std::vector<Process> &, const Universe &, TransitionSystem, Limits);
    friend LtsGraph weak_saturate(const LtsGraph &);

    TransitionSystem system_ = TransitionSystem::Basic;
    Universe universe_;
    std::set<ChannelId> minted_;
    std::vector<State> states_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<bool> complete_;
    std::vector<bool> expanded_;
    std::map<std::string, StateId> index_;
    std::vector<StateId> roots_;
    bool limit_reached_ = false;
    std::vector<std::vector<Edge>> weak_edges_;
};

/// Breadth-first closure of the roots under the chosen transition relation.
/// States past the limits are kept but left unexpanded and marked
/// incomplete, as are states whose term or derivation hit the depth budget.
LtsGraph explore(const std::vector<Process> &roots, const Universe &u, TransitionSystem system, Limits limits = {});
LtsGraph explore(const Process &root, const Universe &u, TransitionSystem system, Limits limits = {});

/// Adds the least set of weak edges closed under the strong, empty and
/// compound rules with the system's silent and fuse relations. Throws
/// IncompleteStates if the graph is not fully explored.
LtsGraph weak_saturate(const LtsGraph &g);

} // namespace natcalc
