#include "natcalc/proper_lts.hpp"

#include "derivation.hpp"

namespace natcalc {

namespace detail {

std::vector<Transition> Deriver::proper(const Process &p, const std::set<ChannelId> &used, int depth)
{
    std::vector<Transition> out;
    for (const Transition &b : basic(p, used, depth)) {
        switch (b.label.kind) {
        case LabelKind::Send:
            out.push_back(make(Label::output(b.label.chan, b.label.value), {}, b.target, "Sending"));
            break;
        case LabelKind::Receive:
            out.push_back(make(Label::input(b.label.chan, b.label.value), {}, b.target, "Receiving"));
            break;
        case LabelKind::Tau:
            out.push_back(make(Label::tau(), {}, b.target, "Communication"));
            break;
        case LabelKind::Open: {
            const ChannelId f = b.opened.front();
            if (depth <= 1) {
                truncated_ = true;
                break;
            }
            std::set<ChannelId> inner_used = used;
            inner_used.insert(f);
            for (const Transition &o : proper(b.target, inner_used, depth - 1)) {
                if (o.label.kind != LabelKind::Output || o.label.chan == f) {
                    continue;
                }
                std::vector<ChannelId> opened{f};
                opened.insert(opened.end(), o.opened.begin(), o.opened.end());
                // Put the concrete payload back before re-abstracting over the
                // longer binder list.
                Value payload = o.label.value.map_channels([&](ChannelId c) {
                    return is_bound(c) && bound_level(c) < o.opened.size() ? o.opened[bound_level(c)] : c;
                });
                std::string rule = "Opening " + std::to_string(opened.size()) +
                                   (opened.size() == 1 ? " channel" : " channels");
                out.push_back(make(Label::output(o.label.chan, std::move(payload),
                                                 static_cast<std::uint32_t>(opened.size())),
                                   opened, o.target, std::move(rule)));
            }
            break;
        }
        default:
            break;
        }
    }
    return normalise(std::move(out));
}

} // namespace detail

TransitionSet proper_transitions(const Process &p, const ExplorationContext &ctx)
{
    detail::Deriver d(ctx);
    TransitionSet result;
    result.transitions = d.proper(p, d.free_in(p), d.start_depth());
    result.truncated = d.truncated();
    return result;
}

TransitionSet proper_transitions(const CanonicalTerm &t, const ExplorationContext &ctx)
{
    TransitionSet result = proper_transitions(reflect(t), ctx);
    result.truncated = result.truncated || t.contains_cut();
    return result;
}

std::vector<std::size_t> unpublished_openings(const Transition &t, const ExplorationContext &ctx)
{
    std::vector<std::size_t> out;
    if (t.label.kind != LabelKind::Output || t.opened.empty()) {
        return out;
    }
    const std::set<ChannelId> in_target = free_channels(ctx.canonical(t.target));
    for (std::size_t i = 0; i < t.opened.size(); ++i) {
        if (!t.label.value.mentions(bound_channel(static_cast<std::uint32_t>(i))) && !in_target.contains(t.opened[i])) {
            out.push_back(i);
        }
    }
    return out;
}

} // namespace natcalc
