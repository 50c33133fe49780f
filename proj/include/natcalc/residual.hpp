#pragma once

#include "natcalc/canonical.hpp"
#include "natcalc/process.hpp"
#include "natcalc/value.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace natcalc {

/// Label kinds of both transition systems. The basic system uses Send,
/// Receive, Tau and Open; the proper system uses Input, Tau and Output.
enum class LabelKind : std::uint8_t { Send, Receive, Tau, Open, Input, Output };

/// A transition label with its binders abstracted. An Open label binds one
/// channel; an Output label binds `arity` channels, and inside `value` the
/// i-th of them appears as bound_channel(i). Tau and Open carry no channel
/// or value.
struct Label {
    LabelKind kind = LabelKind::Tau;
    ChannelId chan;
    Value value;
    std::uint32_t arity = 0;

    static Label send(ChannelId c, Value v) { return {LabelKind::Send, c, std::move(v), 0}; }
    static Label receive(ChannelId c, Value v) { return {LabelKind::Receive, c, std::move(v), 0}; }
    static Label tau() { return {LabelKind::Tau, {}, {}, 0}; }
    static Label open() { return {LabelKind::Open, {}, {}, 1}; }
    static Label input(ChannelId c, Value v) { return {LabelKind::Input, c, std::move(v), 0}; }
    static Label output(ChannelId c, Value v, std::uint32_t arity = 0) { return {LabelKind::Output, c, std::move(v), arity}; }

    bool silent() const { return kind == LabelKind::Tau; }
    bool has_channel() const { return kind != LabelKind::Tau && kind != LabelKind::Open; }
    /// True if the label's channel or payload is c.
    bool mentions(ChannelId c) const { return has_channel() && (chan == c || value.mentions(c)); }

    friend auto operator<=>(const Label &, const Label &) = default;
    friend bool operator==(const Label &, const Label &) = default;
};

const char *to_string(LabelKind k);
std::string to_string(const Label &l);

/// Label plus target, the unit both transition relations relate processes
/// to. For binding labels the target is the body under the label's binders;
/// the algebra treats it as instantiated at one shared fresh channel.
template <class T>
struct Residual {
    Label label;
    T target;

    friend auto operator<=>(const Residual &, const Residual &) = default;
    friend bool operator==(const Residual &, const Residual &) = default;
};

template <class T>
using BasicResidual = Residual<T>;
template <class T>
using ProperResidual = Residual<T>;
using NestedResidual = Residual<Residual<CanonicalTerm>>;

/// One derived transition. `opened` lists the fresh channels the binders of
/// the label were instantiated at (outermost first), `target` is the target
/// process at those channels and `abstraction` is its canonical form with
/// the opened channels bound again by `label.arity` New layers.
struct Transition {
    Label label;
    std::vector<ChannelId> opened;
    Process target;
    CanonicalTerm abstraction;
    std::string rule;

    Residual<CanonicalTerm> residual() const { return {label, abstraction}; }
};

struct TransitionSet {
    /// Sorted by (label, abstraction), without duplicates.
    std::vector<Transition> transitions;
    /// Set when some part of the term was cut off by the depth budget, so
    /// the listing may be missing transitions.
    bool truncated = false;
};

/// Wraps `target` in one New per id, outermost first, binding ids[i].
Process abstract_over(const Process &target, const std::vector<ChannelId> &ids);

} // namespace natcalc
