#include "natcalc/process.hpp"

#include <stdexcept>
#include <vector>

namespace natcalc {

namespace detail {

struct ProcessNode {
    enum class Kind { Stop, Send, Receive, Parallel, New, Cut, Replicate, Swapped };

    Kind kind = Kind::Stop;
    ChannelId chan;
    Value value;
    ReceiveCont receive;
    NewCont fresh;
    std::shared_ptr<const ProcessNode> left;
    std::shared_ptr<const ProcessNode> right;
    ChannelId swap_a;
    ChannelId swap_b;
};

} // namespace detail

using detail::ProcessNode;

namespace {

std::shared_ptr<const ProcessNode> stop_node()
{
    static const auto node = std::make_shared<const ProcessNode>();
    return node;
}

ProcessView swap_view(const ProcessView &inner, ChannelId a, ChannelId b)
{
    auto sw = [a, b](ChannelId c) { return swap_channel(c, a, b); };
    return std::visit(
        [&](const auto &v) -> ProcessView {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, SendView>) {
                return SendView{sw(v.chan), v.value.swapped(a, b)};
            } else if constexpr (std::is_same_v<V, ReceiveView>) {
                ReceiveCont k = v.cont;
                return ReceiveView{sw(v.chan), [k, a, b](const Value &x) {
                                       return k(x.swapped(a, b)).swapped(a, b);
                                   }};
            } else if constexpr (std::is_same_v<V, ParallelView>) {
                return ParallelView{v.left.swapped(a, b), v.right.swapped(a, b)};
            } else if constexpr (std::is_same_v<V, NewView>) {
                NewCont k = v.cont;
                return NewView{[k, a, b, sw](ChannelId c) { return k(sw(c)).swapped(a, b); }};
            } else {
                return v;
            }
        },
        inner);
}

} // namespace

Process::Process() : node_(stop_node()) {}

Process Process::stop() { return Process{}; }

Process Process::send(ChannelId chan, Value value)
{
    auto node = std::make_shared<ProcessNode>();
    node->kind = ProcessNode::Kind::Send;
    node->chan = chan;
    node->value = std::move(value);
    return Process{std::move(node)};
}

Process Process::receive(ChannelId chan, ReceiveCont cont)
{
    auto node = std::make_shared<ProcessNode>();
    node->kind = ProcessNode::Kind::Receive;
    node->chan = chan;
    node->receive = std::move(cont);
    return Process{std::move(node)};
}

Process Process::parallel(Process left, Process right)
{
    auto node = std::make_shared<ProcessNode>();
    node->kind = ProcessNode::Kind::Parallel;
    node->left = std::move(left.node_);
    node->right = std::move(right.node_);
    return Process{std::move(node)};
}

Process Process::new_channel(NewCont cont)
{
    auto node = std::make_shared<ProcessNode>();
    node->kind = ProcessNode::Kind::New;
    node->fresh = std::move(cont);
    return Process{std::move(node)};
}

Process Process::cut()
{
    static const auto node = [] {
        auto n = std::make_shared<ProcessNode>();
        n->kind = ProcessNode::Kind::Cut;
        return n;
    }();
    return Process{node};
}

ProcessView Process::view() const
{
    const ProcessNode &n = *node_;
    switch (n.kind) {
    case ProcessNode::Kind::Stop:
        return StopView{};
    case ProcessNode::Kind::Send:
        return SendView{n.chan, n.value};
    case ProcessNode::Kind::Receive:
        return ReceiveView{n.chan, n.receive};
    case ProcessNode::Kind::Parallel:
        return ParallelView{Process{n.left}, Process{n.right}};
    case ProcessNode::Kind::New:
        return NewView{n.fresh};
    case ProcessNode::Kind::Cut:
        return CutView{};
    case ProcessNode::Kind::Replicate:
        return ParallelView{Process{n.left}, *this};
    case ProcessNode::Kind::Swapped:
        return swap_view(Process{n.left}.view(), n.swap_a, n.swap_b);
    }
    throw std::logic_error("corrupt process node");
}

Process Process::swapped(ChannelId a, ChannelId b) const
{
    if (a == b) {
        return *this;
    }
    const ProcessNode &n = *node_;
    if (n.kind == ProcessNode::Kind::Stop || n.kind == ProcessNode::Kind::Cut) {
        return *this;
    }
    // Swapping twice with the same pair is the identity.
    if (n.kind == ProcessNode::Kind::Swapped &&
        ((n.swap_a == a && n.swap_b == b) || (n.swap_a == b && n.swap_b == a))) {
        return Process{n.left};
    }
    auto node = std::make_shared<ProcessNode>();
    node->kind = ProcessNode::Kind::Swapped;
    node->left = node_;
    node->swap_a = a;
    node->swap_b = b;
    return Process{std::move(node)};
}

Process replicate(Process p)
{
    auto node = std::make_shared<ProcessNode>();
    node->kind = ProcessNode::Kind::Replicate;
    node->left = std::move(p.node_);
    return Process{std::move(node)};
}

Process rename(const Process &p, const std::vector<ChannelId> &from, const std::vector<ChannelId> &to)
{
    if (from.size() != to.size()) {
        throw std::invalid_argument("rename: length mismatch");
    }
    // Route through scratch ids so overlapping source and target sets stay
    // a plain substitution.
    Process result = p;
    for (std::size_t i = 0; i < from.size(); ++i) {
        result = result.swapped(from[i], scratch_channel(static_cast<std::uint32_t>(i)));
    }
    for (std::size_t i = 0; i < from.size(); ++i) {
        result = result.swapped(scratch_channel(static_cast<std::uint32_t>(i)), to[i]);
    }
    return result;
}

} // namespace natcalc
