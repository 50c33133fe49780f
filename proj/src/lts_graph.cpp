#include "natcalc/lts_graph.hpp"

#include "natcalc/basic_lts.hpp"
#include "natcalc/errors.hpp"
#include "natcalc/proper_lts.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

namespace natcalc {

const char *to_string(TransitionSystem s) { return s == TransitionSystem::Basic ? "basic" : "proper"; }

const EdgeInstance *Edge::instance_at(const std::vector<ChannelId> &ids) const
{
    for (const EdgeInstance &inst : instances) {
        if (inst.opened == ids) {
            return &inst;
        }
    }
    return nullptr;
}

bool LtsGraph::all_complete() const
{
    return std::all_of(complete_.begin(), complete_.end(), [](bool c) { return c; });
}

std::size_t LtsGraph::edge_count() const
{
    std::size_t n = 0;
    for (const auto &es : edges_) {
        n += es.size();
    }
    return n;
}

std::optional<StateId> LtsGraph::find(const CanonicalTerm &t) const
{
    auto it = index_.find(t.key());
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<StateId> LtsGraph::reachable(StateId from) const
{
    std::vector<bool> seen(states_.size(), false);
    std::vector<StateId> order{from};
    seen[from] = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
        for (const Edge &e : edges_[order[k]]) {
            for (const EdgeInstance &inst : e.instances) {
                if (!seen[inst.target]) {
                    seen[inst.target] = true;
                    order.push_back(inst.target);
                }
            }
        }
    }
    return order;
}

namespace {

/// All ascending n-element tuples drawn from `pool`.
std::vector<std::vector<ChannelId>> ascending_tuples(const std::vector<ChannelId> &pool, std::size_t n)
{
    std::vector<std::vector<ChannelId>> out;
    std::vector<ChannelId> current;
    auto rec = [&](auto &self, std::size_t start) -> void {
        if (current.size() == n) {
            out.push_back(current);
            return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            current.push_back(pool[i]);
            self(self, i + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<ChannelId> fresh_outside(const std::set<ChannelId> &minted, const std::set<ChannelId> &free)
{
    std::vector<ChannelId> out;
    for (ChannelId c : minted) {
        if (!free.contains(c)) {
            out.push_back(c);
        }
    }
    return out;
}

} // namespace

LtsGraph explore(const std::vector<Process> &roots, const Universe &u, TransitionSystem system, Limits limits)
{
    if (limits.max_states == 0 || limits.max_depth == 0) {
        throw std::invalid_argument("explore: limits must be positive");
    }
    ExplorationContext ctx(u);
    LtsGraph g;
    g.system_ = system;
    g.universe_ = u;
    g.minted_ = ctx.minted();

    std::vector<std::size_t> depth;
    std::deque<StateId> queue;

    auto intern = [&](const Process &p, const CanonicalTerm &t, std::size_t d) {
        auto [it, inserted] = g.index_.emplace(t.key(), g.states_.size());
        if (inserted) {
            g.states_.push_back(State{p, t, free_channels(t)});
            g.edges_.emplace_back();
            g.complete_.push_back(false);
            g.expanded_.push_back(false);
            depth.push_back(d);
            queue.push_back(it->second);
        }
        return it->second;
    };

    for (const Process &p : roots) {
        g.roots_.push_back(intern(p, ctx.canonical(p), 0));
    }

    while (!queue.empty()) {
        const StateId s = queue.front();
        queue.pop_front();
        if (depth[s] >= limits.max_depth) {
            g.limit_reached_ = true;
            continue;
        }
        const State source = g.states_[s];
        TransitionSet ts =
            system == TransitionSystem::Basic ? basic_transitions(source.process, ctx) : proper_transitions(source.process, ctx);

        // Instantiate every transition before touching the graph, so a state
        // that would overflow max_states is left wholly unexpanded.
        const std::vector<ChannelId> available = fresh_outside(g.minted_, source.free);
        struct Pending {
            std::vector<ChannelId> opened;
            Process process;
            CanonicalTerm term;
        };
        std::vector<std::vector<Pending>> pending;
        std::set<std::string> new_keys;
        for (const Transition &t : ts.transitions) {
            std::vector<Pending> insts;
            if (t.label.arity == 0) {
                insts.push_back({{}, t.target, ctx.canonical(t.target)});
            } else {
                for (const auto &tuple : ascending_tuples(available, t.label.arity)) {
                    Process moved = rename(t.target, t.opened, tuple);
                    insts.push_back({tuple, moved, ctx.canonical(moved)});
                }
            }
            for (const Pending &p : insts) {
                if (!g.index_.contains(p.term.key())) {
                    new_keys.insert(p.term.key());
                }
            }
            pending.push_back(std::move(insts));
        }
        if (g.states_.size() + new_keys.size() > limits.max_states) {
            g.limit_reached_ = true;
            continue;
        }

        std::vector<Edge> edges;
        for (std::size_t k = 0; k < ts.transitions.size(); ++k) {
            const Transition &t = ts.transitions[k];
            Edge e{t.label, t.abstraction, {}, t.rule};
            for (const Pending &p : pending[k]) {
                e.instances.push_back({p.opened, intern(p.process, p.term, depth[s] + 1)});
            }
            edges.push_back(std::move(e));
        }
        g.edges_[s] = std::move(edges);
        g.expanded_[s] = true;
        g.complete_[s] = !ts.truncated && !source.term.contains_cut();
    }
    return g;
}

LtsGraph explore(const Process &root, const Universe &u, TransitionSystem system, Limits limits)
{
    return explore(std::vector<Process>{root}, u, system, limits);
}

LtsGraph weak_saturate(const LtsGraph &g)
{
    for (StateId s = 0; s < g.size(); ++s) {
        if (!g.complete(s)) {
            throw IncompleteStates("weak saturation needs a completely explored graph");
        }
    }
    ExplorationContext ctx(g.universe());

    // An instantiated weak residual: label, opened channels, target state.
    using Item = std::tuple<Label, std::vector<ChannelId>, StateId>;
    const std::size_t n = g.size();
    std::vector<std::map<Item, std::string>> weak(n);

    for (StateId p = 0; p < n; ++p) {
        for (const Edge &e : g.edges(p)) {
            for (const EdgeInstance &inst : e.instances) {
                weak[p].emplace(Item{e.label, inst.opened, inst.target}, "Strong transitions");
            }
        }
        weak[p].emplace(Item{Label::tau(), {}, p}, "Empty transitions");
    }

    auto avoids = [](const std::vector<ChannelId> &ids, const std::set<ChannelId> &free) {
        return std::none_of(ids.begin(), ids.end(), [&](ChannelId c) { return free.contains(c); });
    };

    // Compound transitions: p => c, c's target => w, and fuse drops one of the
    // two silent layers. Iterate to the least fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        for (StateId p = 0; p < n; ++p) {
            std::vector<Item> found;
            for (const auto &[c, rule_c] : weak[p]) {
                const auto &[label_c, ids_c, mid] = c;
                for (const auto &[w, rule_w] : weak[mid]) {
                    const auto &[label_w, ids_w, end] = w;
                    if (label_c.silent() && avoids(ids_w, g.state(p).free)) {
                        found.push_back(w);
                    }
                    if (label_w.silent()) {
                        found.push_back(Item{label_c, ids_c, end});
                    }
                }
            }
            for (Item &d : found) {
                if (weak[p].emplace(std::move(d), "Compound transitions").second) {
                    changed = true;
                }
            }
        }
    }

    LtsGraph out = g;
    out.weak_edges_.assign(n, {});
    std::map<std::pair<std::vector<ChannelId>, StateId>, CanonicalTerm> abstractions;
    for (StateId p = 0; p < n; ++p) {
        std::map<std::pair<Label, CanonicalTerm>, Edge> grouped;
        for (const auto &[item, rule] : weak[p]) {
            const auto &[label, ids, target] = item;
            auto key = std::make_pair(ids, target);
            auto it = abstractions.find(key);
            if (it == abstractions.end()) {
                CanonicalTerm abs = ids.empty() ? g.state(target).term
                                                : ctx.canonical(abstract_over(g.state(target).process, ids),
                                                                static_cast<std::uint32_t>(ids.size()));
                it = abstractions.emplace(key, abs).first;
            }
            auto [slot, inserted] = grouped.try_emplace({label, it->second}, Edge{label, it->second, {}, rule});
            slot->second.instances.push_back({ids, target});
        }
        for (auto &[key, edge] : grouped) {
            out.weak_edges_[p].push_back(std::move(edge));
        }
    }
    return out;
}

} // namespace natcalc
