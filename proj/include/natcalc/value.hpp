#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>

namespace natcalc {

/// Opaque channel identity. Ids below the universe's pool size are public
/// channels, ids from the pool size upwards are fresh channels. Two reserved
/// ranges sit far above any id a universe hands out: bound-channel levels used
/// by canonical terms, and scratch ids used while renaming.
struct ChannelId {
    std::uint32_t id = 0;

    friend auto operator<=>(const ChannelId &, const ChannelId &) = default;
};

inline constexpr std::uint32_t kScratchBase = 1u << 29;
inline constexpr std::uint32_t kBoundBase = 1u << 30;

inline constexpr ChannelId bound_channel(std::uint32_t level) { return {kBoundBase + level}; }
inline constexpr ChannelId scratch_channel(std::uint32_t index) { return {kScratchBase + index}; }
inline constexpr bool is_bound(ChannelId c) { return c.id >= kBoundBase; }
inline constexpr bool is_scratch(ChannelId c) { return c.id >= kScratchBase && c.id < kBoundBase; }
inline constexpr std::uint32_t bound_level(ChannelId c) { return c.id - kBoundBase; }

/// Exchanges a and b, leaving every other channel alone.
inline constexpr ChannelId swap_channel(ChannelId c, ChannelId a, ChannelId b)
{
    if (c == a) {
        return b;
    }
    if (c == b) {
        return a;
    }
    return c;
}

/// Closed data carried by messages: unit, booleans, naturals, channels and
/// pairs. Ordered Unit < Bool < Nat < Chan < Pair, then by payload.
class Value {
public:
    enum class Kind : std::uint8_t { Unit, Bool, Nat, Chan, Pair };

    Value() = default;

    static Value unit() { return Value{}; }
    static Value boolean(bool b) { return Value{Kind::Bool, b ? 1u : 0u}; }
    static Value nat(std::uint64_t n) { return Value{Kind::Nat, n}; }
    static Value chan(ChannelId c) { return Value{Kind::Chan, c.id}; }
    static Value pair(Value first, Value second);

    Kind kind() const noexcept { return kind_; }
    bool is_chan() const noexcept { return kind_ == Kind::Chan; }
    bool as_bool() const noexcept { return scalar_ != 0; }
    std::uint64_t as_nat() const noexcept { return scalar_; }
    ChannelId as_chan() const noexcept { return {static_cast<std::uint32_t>(scalar_)}; }
    const Value &first() const { return pair_->first; }
    const Value &second() const { return pair_->second; }

    bool contains_channel() const;
    bool mentions(ChannelId c) const;
    void collect_channels(std::set<ChannelId> &out) const;

    template <class F>
    Value map_channels(F &&f) const
    {
        switch (kind_) {
        case Kind::Chan:
            return chan(f(as_chan()));
        case Kind::Pair:
            return pair(first().map_channels(f), second().map_channels(f));
        default:
            return *this;
        }
    }

    Value swapped(ChannelId a, ChannelId b) const
    {
        if (a == b) {
            return *this;
        }
        return map_channels([&](ChannelId c) { return swap_channel(c, a, b); });
    }

    friend std::strong_ordering operator<=>(const Value &lhs, const Value &rhs);
    friend bool operator==(const Value &lhs, const Value &rhs)
    {
        return (lhs <=> rhs) == std::strong_ordering::equal;
    }

private:
    Value(Kind kind, std::uint64_t scalar) : kind_(kind), scalar_(scalar) {}

    Kind kind_ = Kind::Unit;
    std::uint64_t scalar_ = 0;
    std::shared_ptr<const std::pair<Value, Value>> pair_;
};

/// Compact, unambiguous encoding used for canonical keys.
void encode(const Value &v, std::string &out);

/// Debug rendering with raw channel ids ("c3", "b0" for bound levels).
std::string to_string(const Value &v);
std::string to_string(ChannelId c);

} // namespace natcalc
