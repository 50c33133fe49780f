#pragma once

#include "natcalc/value.hpp"

#include <functional>
#include <memory>
#include <variant>
#include <vector>

namespace natcalc {

class Process;

using ReceiveCont = std::function<Process(const Value &)>;
using NewCont = std::function<Process(ChannelId)>;

struct StopView {};
struct SendView;
struct ReceiveView;
struct ParallelView;
struct NewView;
/// Marks a term cut off by depth truncation; it has no known behaviour.
struct CutView {};

namespace detail {
struct ProcessNode;
}

/// A process term built from host-language continuations. Receive and
/// NewChannel bodies are functions, so binders, shadowing and renaming are
/// handled by the host. Terms may be infinite (see replicate); they are only
/// ever unfolded one constructor at a time through view().
class Process {
public:
    /// Defaults to Stop.
    Process();

    static Process stop();
    static Process send(ChannelId chan, Value value);
    static Process receive(ChannelId chan, ReceiveCont cont);
    static Process parallel(Process left, Process right);
    static Process new_channel(NewCont cont);
    static Process cut();

    /// Head constructor of the term.
    std::variant<StopView, SendView, ReceiveView, ParallelView, NewView, CutView> view() const;

    /// The same term with channels a and b exchanged everywhere, including
    /// inside continuations.
    Process swapped(ChannelId a, ChannelId b) const;

private:
    explicit Process(std::shared_ptr<const detail::ProcessNode> node) : node_(std::move(node)) {}

    friend Process replicate(Process p);

    std::shared_ptr<const detail::ProcessNode> node_;
};

struct SendView {
    ChannelId chan;
    Value value;
};

struct ReceiveView {
    ChannelId chan;
    ReceiveCont cont;
};

struct ParallelView {
    Process left;
    Process right;
};

struct NewView {
    NewCont cont;
};

using ProcessView = std::variant<StopView, SendView, ReceiveView, ParallelView, NewView, CutView>;

/// The infinite term r with r = p | r, unfolded on demand.
Process replicate(Process p);

/// Renames channels pairwise: from[i] becomes to[i]. The targets must not
/// occur free in p unless they are themselves among the sources.
Process rename(const Process &p, const std::vector<ChannelId> &from, const std::vector<ChannelId> &to);

} // namespace natcalc
