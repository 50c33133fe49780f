#pragma once

#include "natcalc/process.hpp"
#include "natcalc/value.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace natcalc {

/// The finite domain that makes receiving enumerable: channel-free data
/// values, a pool of public channels and a budget of fresh channels.
struct Universe {
    std::vector<Value> data_values{Value::unit()};
    std::uint32_t pool = 2;
    std::uint32_t fresh_budget = 3;
    std::uint32_t depth_budget = 6;

    /// Throws std::invalid_argument when an invariant is broken.
    void validate() const;

    ChannelId pool_channel(std::uint32_t i) const { return {i}; }
    ChannelId fresh_channel(std::uint32_t i) const { return {pool + i}; }
    bool is_fresh(ChannelId c) const { return c.id >= pool && c.id < pool + fresh_budget; }

    /// data_values, pool channels and the given minted channels, in value order.
    std::vector<Value> enumeration(const std::set<ChannelId> &minted) const;
};

namespace detail {
struct CanonicalNode;
}

/// First-order, alpha-normalised form of a process. Bound channels are
/// numbered by binder depth (bound_channel(level)), receive continuations are
/// tabulated over the enumeration values, and Cut marks depth truncation.
/// Identity is structural and backed by a serialised key.
class CanonicalTerm {
public:
    enum class Kind : std::uint8_t { Stop, Send, ReceiveTable, Parallel, New, Cut };
    using Table = std::vector<std::pair<Value, CanonicalTerm>>;

    CanonicalTerm();

    static CanonicalTerm stop();
    static CanonicalTerm send(ChannelId chan, Value value);
    static CanonicalTerm receive_table(ChannelId chan, Table table);
    static CanonicalTerm parallel(CanonicalTerm left, CanonicalTerm right);
    static CanonicalTerm new_channel(CanonicalTerm body);
    static CanonicalTerm cut();

    Kind kind() const;
    ChannelId chan() const;
    const Value &value() const;
    const Table &table() const;
    CanonicalTerm left() const;
    CanonicalTerm right() const;
    CanonicalTerm body() const;

    const std::string &key() const;
    bool contains_cut() const;

    friend bool operator==(const CanonicalTerm &a, const CanonicalTerm &b) { return a.key() == b.key(); }
    friend std::strong_ordering operator<=>(const CanonicalTerm &a, const CanonicalTerm &b)
    {
        return a.key().compare(b.key()) <=> 0;
    }

private:
    explicit CanonicalTerm(std::shared_ptr<const detail::CanonicalNode> node) : node_(std::move(node)) {}

    std::shared_ptr<const detail::CanonicalNode> node_;
};

/// Reifies p: receive continuations are applied to every value of
/// u.enumeration(minted) plus the bound channels in scope, NewChannel bodies
/// are instantiated at bound_channel(level), and anything below `depth` is
/// replaced by Cut. Leaves fit in depth 1; a constructor with children needs
/// at least 2. Throws BudgetExceeded when more than u.fresh_budget binders
/// nest along one path.
CanonicalTerm reify(const Process &p, const Universe &u, const std::set<ChannelId> &minted, int depth);

/// Same as reify but with an explicit cap on nested binders.
CanonicalTerm reify_with_binders(const Process &p, const Universe &u, const std::set<ChannelId> &minted,
                                 int depth, std::uint32_t max_binders);

/// Structural equality of the reifications at u.depth_budget, with no
/// minted channels.
bool alpha_equal(const Process &p, const Process &q, const Universe &u);

/// Free pool or minted channels. A receive table entry's key channels are
/// bound in that entry and do not count.
std::set<ChannelId> free_channels(const CanonicalTerm &t);

/// Reads a canonical term back as a process. Receiving a value missing from
/// a table continues as Stop.
Process reflect(const CanonicalTerm &t);

/// Debug rendering with raw channel ids.
std::string to_string(const CanonicalTerm &t);

/// Fresh-channel bookkeeping for one exploration. Not thread-safe; use one
/// context per activity.
class ExplorationContext {
public:
    /// Validates the universe and mints every fresh channel the budget allows,
    /// so receive enumeration is the same for every state explored here.
    explicit ExplorationContext(Universe u);

    const Universe &universe() const { return universe_; }
    const std::set<ChannelId> &minted() const { return minted_; }
    const std::vector<Value> &enumeration() const { return enumeration_; }

    /// Next fresh id from the counter; throws BudgetExceeded past fresh_budget.
    ChannelId mint();

    /// Smallest minted channel not in `used`; throws BudgetExceeded if none.
    ChannelId pick_fresh(const std::set<ChannelId> &used) const;

    CanonicalTerm canonical(const Process &p) const;
    CanonicalTerm canonical(const Process &p, std::uint32_t extra_binders) const;

private:
    Universe universe_;
    std::set<ChannelId> minted_;
    std::uint32_t next_fresh_ = 0;
    std::vector<Value> enumeration_;
};

} // namespace natcalc
