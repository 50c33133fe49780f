#include "natcalc/basic_lts.hpp"

#include "derivation.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace natcalc {

const char *to_string(LabelKind k)
{
    switch (k) {
    case LabelKind::Send:
        return "send";
    case LabelKind::Receive:
        return "receive";
    case LabelKind::Tau:
        return "tau";
    case LabelKind::Open:
        return "open";
    case LabelKind::Input:
        return "input";
    case LabelKind::Output:
        return "output";
    }
    return "?";
}

std::string to_string(const Label &l)
{
    switch (l.kind) {
    case LabelKind::Send:
        return to_string(l.chan) + "<" + to_string(l.value) + ">";
    case LabelKind::Receive:
    case LabelKind::Input:
        return to_string(l.chan) + "(" + to_string(l.value) + ")";
    case LabelKind::Tau:
        return "tau";
    case LabelKind::Open:
        return "nu b0";
    case LabelKind::Output: {
        std::string out = to_string(l.chan) + "<";
        if (l.arity > 0) {
            out += "nu";
            for (std::uint32_t i = 0; i < l.arity; ++i) {
                out += " " + to_string(bound_channel(i));
            }
            out += ". ";
        }
        return out + to_string(l.value) + ">";
    }
    }
    return "?";
}

Process abstract_over(const Process &target, const std::vector<ChannelId> &ids)
{
    if (ids.empty()) {
        return target;
    }
    ChannelId first = ids.front();
    std::vector<ChannelId> rest(ids.begin() + 1, ids.end());
    return Process::new_channel(
        [target, first, rest](ChannelId x) { return abstract_over(target.swapped(first, x), rest); });
}

namespace detail {

namespace {

Process close_over(ChannelId f, const Process &body)
{
    return Process::new_channel([body, f](ChannelId x) { return body.swapped(f, x); });
}

} // namespace

std::string residual_key(const Transition &t)
{
    std::string key = to_string(t.label.kind);
    key += '|';
    if (t.label.has_channel()) {
        key += to_string(t.label.chan);
        key += '|';
        encode(t.label.value, key);
    }
    key += '|';
    key += std::to_string(t.label.arity);
    key += '|';
    key += t.abstraction.key();
    return key;
}

std::vector<Transition> normalise(std::vector<Transition> ts)
{
    std::stable_sort(ts.begin(), ts.end(), [](const Transition &x, const Transition &y) {
        if (auto c = x.label <=> y.label; c != 0) {
            return c < 0;
        }
        return x.abstraction < y.abstraction;
    });
    auto same = [](const Transition &x, const Transition &y) {
        return x.label == y.label && x.abstraction == y.abstraction;
    };
    ts.erase(std::unique(ts.begin(), ts.end(), same), ts.end());
    return ts;
}

std::set<ChannelId> Deriver::free_in(const Process &p) const { return free_channels(ctx_.canonical(p)); }

Transition Deriver::make(Label concrete, std::vector<ChannelId> opened, Process target, std::string rule) const
{
    Transition t;
    if (concrete.has_channel() && !opened.empty()) {
        concrete.value = concrete.value.map_channels([&](ChannelId c) {
            for (std::size_t i = 0; i < opened.size(); ++i) {
                if (opened[i] == c) {
                    return bound_channel(static_cast<std::uint32_t>(i));
                }
            }
            return c;
        });
    }
    t.label = std::move(concrete);
    t.abstraction = opened.empty()
                        ? ctx_.canonical(target)
                        : ctx_.canonical(abstract_over(target, opened), static_cast<std::uint32_t>(opened.size()));
    t.opened = std::move(opened);
    t.target = std::move(target);
    t.rule = std::move(rule);
    return t;
}

std::vector<Transition> Deriver::base_rules(const Process &p, const std::set<ChannelId> &used, int depth)
{
    std::vector<Transition> out;
    ProcessView view = p.view();
    if (const auto *s = std::get_if<SendView>(&view)) {
        out.push_back(make(Label::send(s->chan, s->value), {}, Process::stop(), "Sending"));
    } else if (const auto *r = std::get_if<ReceiveView>(&view)) {
        for (const Value &v : ctx_.enumeration()) {
            out.push_back(make(Label::receive(r->chan, v), {}, r->cont(v), "Receiving"));
        }
    } else if (const auto *par = std::get_if<ParallelView>(&view)) {
        if (depth <= 1) {
            truncated_ = true;
            return out;
        }
        std::vector<Transition> left = basic(par->left, used, depth - 1);
        std::vector<Transition> right = basic(par->right, used, depth - 1);
        for (const Transition &l : left) {
            if (l.label.kind == LabelKind::Open) {
                out.push_back(make(Label::open(), l.opened, Process::parallel(l.target, par->right),
                                   "Scope opening within a subsystem"));
            } else {
                out.push_back(make(l.label, {}, Process::parallel(l.target, par->right), "Acting within a subsystem"));
            }
        }
        for (const Transition &r : right) {
            if (r.label.kind == LabelKind::Open) {
                out.push_back(make(Label::open(), r.opened, Process::parallel(par->left, r.target),
                                   "Scope opening within a subsystem"));
            } else {
                out.push_back(make(r.label, {}, Process::parallel(par->left, r.target), "Acting within a subsystem"));
            }
        }
        for (const Transition &l : left) {
            for (const Transition &r : right) {
                bool l_sends = l.label.kind == LabelKind::Send && r.label.kind == LabelKind::Receive;
                bool r_sends = l.label.kind == LabelKind::Receive && r.label.kind == LabelKind::Send;
                if ((l_sends || r_sends) && l.label.chan == r.label.chan && l.label.value == r.label.value) {
                    out.push_back(make(Label::tau(), {}, Process::parallel(l.target, r.target), "Communication"));
                }
            }
        }
    } else if (const auto *nu = std::get_if<NewView>(&view)) {
        ChannelId f = ctx_.pick_fresh(used);
        out.push_back(make(Label::open(), {f}, nu->cont(f), "Scope opening"));
    } else if (std::holds_alternative<CutView>(view)) {
        truncated_ = true;
    }
    return out;
}

std::vector<Transition> Deriver::basic(const Process &p, const std::set<ChannelId> &used, int depth)
{
    std::vector<Transition> out = base_rules(p, used, depth);
    std::unordered_set<std::string> seen;
    std::deque<std::size_t> openings;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (seen.insert(residual_key(out[i])).second && out[i].label.kind == LabelKind::Open) {
            openings.push_back(i);
        }
    }

    auto add = [&](Transition t) {
        if (seen.insert(residual_key(t)).second) {
            out.push_back(std::move(t));
            return true;
        }
        return false;
    };

    // Both closing rules take any opening of p, whichever rule produced it,
    // and continue from the opened target.
    while (!openings.empty()) {
        const Transition opening = out[openings.front()];
        openings.pop_front();
        const ChannelId f = opening.opened.front();
        if (depth <= 1) {
            truncated_ = true;
            continue;
        }
        std::set<ChannelId> inner_used = used;
        inner_used.insert(f);
        for (const Transition &c : basic(opening.target, inner_used, depth - 1)) {
            if (c.label.kind == LabelKind::Open) {
                if (add(make(Label::open(), c.opened, close_over(f, c.target),
                             "Scope closing after another scope opening"))) {
                    openings.push_back(out.size() - 1);
                }
            } else if (!c.label.mentions(f)) {
                add(make(c.label, {}, close_over(f, c.target), "Scope closing after acting"));
            }
        }
    }
    return normalise(std::move(out));
}

} // namespace detail

TransitionSet basic_transitions(const Process &p, const ExplorationContext &ctx)
{
    detail::Deriver d(ctx);
    TransitionSet result;
    result.transitions = d.basic(p, d.free_in(p), d.start_depth());
    result.truncated = d.truncated();
    return result;
}

TransitionSet basic_transitions(const CanonicalTerm &t, const ExplorationContext &ctx)
{
    TransitionSet result = basic_transitions(reflect(t), ctx);
    result.truncated = result.truncated || t.contains_cut();
    return result;
}

} // namespace natcalc
