#include "natcalc/value.hpp"

namespace natcalc {

Value Value::pair(Value first, Value second)
{
    Value v{Kind::Pair, 0};
    v.pair_ = std::make_shared<const std::pair<Value, Value>>(std::move(first), std::move(second));
    return v;
}

bool Value::contains_channel() const
{
    switch (kind_) {
    case Kind::Chan:
        return true;
    case Kind::Pair:
        return first().contains_channel() || second().contains_channel();
    default:
        return false;
    }
}

bool Value::mentions(ChannelId c) const
{
    switch (kind_) {
    case Kind::Chan:
        return as_chan() == c;
    case Kind::Pair:
        return first().mentions(c) || second().mentions(c);
    default:
        return false;
    }
}

void Value::collect_channels(std::set<ChannelId> &out) const
{
    if (kind_ == Kind::Chan) {
        out.insert(as_chan());
    } else if (kind_ == Kind::Pair) {
        first().collect_channels(out);
        second().collect_channels(out);
    }
}

std::strong_ordering operator<=>(const Value &lhs, const Value &rhs)
{
    if (lhs.kind_ != rhs.kind_) {
        return lhs.kind_ <=> rhs.kind_;
    }
    if (lhs.kind_ == Value::Kind::Pair) {
        if (lhs.pair_ == rhs.pair_) {
            return std::strong_ordering::equal;
        }
        if (auto c = lhs.first() <=> rhs.first(); c != 0) {
            return c;
        }
        return lhs.second() <=> rhs.second();
    }
    return lhs.scalar_ <=> rhs.scalar_;
}

void encode(const Value &v, std::string &out)
{
    switch (v.kind()) {
    case Value::Kind::Unit:
        out += 'u';
        break;
    case Value::Kind::Bool:
        out += v.as_bool() ? 'T' : 'F';
        break;
    case Value::Kind::Nat:
        out += 'n';
        out += std::to_string(v.as_nat());
        break;
    case Value::Kind::Chan:
        out += to_string(v.as_chan());
        break;
    case Value::Kind::Pair:
        out += '(';
        encode(v.first(), out);
        out += ',';
        encode(v.second(), out);
        out += ')';
        break;
    }
}

std::string to_string(ChannelId c)
{
    if (is_bound(c)) {
        return "b" + std::to_string(bound_level(c));
    }
    if (is_scratch(c)) {
        return "s" + std::to_string(c.id - kScratchBase);
    }
    return "c" + std::to_string(c.id);
}

std::string to_string(const Value &v)
{
    switch (v.kind()) {
    case Value::Kind::Unit:
        return "()";
    case Value::Kind::Bool:
        return v.as_bool() ? "true" : "false";
    case Value::Kind::Nat:
        return std::to_string(v.as_nat());
    case Value::Kind::Chan:
        return to_string(v.as_chan());
    case Value::Kind::Pair:
        return "(" + to_string(v.first()) + ", " + to_string(v.second()) + ")";
    }
    return {};
}

} // namespace natcalc
