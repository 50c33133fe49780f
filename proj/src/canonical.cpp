#include "natcalc/canonical.hpp"

#include "natcalc/errors.hpp"

#include <algorithm>
#include <stdexcept>

namespace natcalc {

void Universe::validate() const
{
    if (pool < 1) {
        throw std::invalid_argument("universe: pool must be at least 1");
    }
    if (depth_budget < 1) {
        throw std::invalid_argument("universe: depth_budget must be at least 1");
    }
    for (const Value &v : data_values) {
        if (v.contains_channel()) {
            throw std::invalid_argument("universe: data values must not contain channels");
        }
    }
}

std::vector<Value> Universe::enumeration(const std::set<ChannelId> &minted) const
{
    std::vector<Value> values = data_values;
    for (std::uint32_t i = 0; i < pool; ++i) {
        values.push_back(Value::chan(pool_channel(i)));
    }
    for (ChannelId c : minted) {
        values.push_back(Value::chan(c));
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

namespace detail {

struct CanonicalNode {
    CanonicalTerm::Kind kind = CanonicalTerm::Kind::Stop;
    ChannelId chan;
    Value value;
    CanonicalTerm::Table table;
    std::shared_ptr<const CanonicalNode> left;
    std::shared_ptr<const CanonicalNode> right;
    std::string key;
    bool has_cut = false;
};

} // namespace detail

using detail::CanonicalNode;

namespace {

std::shared_ptr<const CanonicalNode> stop_node()
{
    static const auto node = [] {
        auto n = std::make_shared<CanonicalNode>();
        n->key = "0";
        return n;
    }();
    return node;
}

} // namespace

CanonicalTerm::CanonicalTerm() : node_(stop_node()) {}

CanonicalTerm CanonicalTerm::stop() { return CanonicalTerm{}; }

CanonicalTerm CanonicalTerm::send(ChannelId chan, Value value)
{
    auto n = std::make_shared<CanonicalNode>();
    n->kind = Kind::Send;
    n->chan = chan;
    n->value = std::move(value);
    n->key = "S" + to_string(chan) + "<";
    encode(n->value, n->key);
    n->key += '>';
    return CanonicalTerm{std::move(n)};
}

CanonicalTerm CanonicalTerm::receive_table(ChannelId chan, Table table)
{
    auto n = std::make_shared<CanonicalNode>();
    n->kind = Kind::ReceiveTable;
    n->chan = chan;
    n->key = "R" + to_string(chan) + "{";
    for (const auto &[v, t] : table) {
        encode(v, n->key);
        n->key += ':';
        n->key += t.key();
        n->key += ';';
        n->has_cut = n->has_cut || t.contains_cut();
    }
    n->key += '}';
    n->table = std::move(table);
    return CanonicalTerm{std::move(n)};
}

CanonicalTerm CanonicalTerm::parallel(CanonicalTerm left, CanonicalTerm right)
{
    auto n = std::make_shared<CanonicalNode>();
    n->kind = Kind::Parallel;
    n->key = "P(" + left.key() + "," + right.key() + ")";
    n->has_cut = left.contains_cut() || right.contains_cut();
    n->left = std::move(left.node_);
    n->right = std::move(right.node_);
    return CanonicalTerm{std::move(n)};
}

CanonicalTerm CanonicalTerm::new_channel(CanonicalTerm body)
{
    auto n = std::make_shared<CanonicalNode>();
    n->kind = Kind::New;
    n->key = "N(" + body.key() + ")";
    n->has_cut = body.contains_cut();
    n->left = std::move(body.node_);
    return CanonicalTerm{std::move(n)};
}

CanonicalTerm CanonicalTerm::cut()
{
    static const auto node = [] {
        auto n = std::make_shared<CanonicalNode>();
        n->kind = Kind::Cut;
        n->key = "#";
        n->has_cut = true;
        return n;
    }();
    return CanonicalTerm{node};
}

CanonicalTerm::Kind CanonicalTerm::kind() const { return node_->kind; }
ChannelId CanonicalTerm::chan() const { return node_->chan; }
const Value &CanonicalTerm::value() const { return node_->value; }
const CanonicalTerm::Table &CanonicalTerm::table() const { return node_->table; }
CanonicalTerm CanonicalTerm::left() const { return CanonicalTerm{node_->left}; }
CanonicalTerm CanonicalTerm::right() const { return CanonicalTerm{node_->right}; }
CanonicalTerm CanonicalTerm::body() const { return CanonicalTerm{node_->left}; }
const std::string &CanonicalTerm::key() const { return node_->key; }
bool CanonicalTerm::contains_cut() const { return node_->has_cut; }

namespace {

struct Reifier {
    const std::vector<Value> &base;
    std::uint32_t max_binders;

    CanonicalTerm run(const Process &p, int depth, std::uint32_t level) const
    {
        if (depth <= 0) {
            return CanonicalTerm::cut();
        }
        ProcessView view = p.view();
        if (std::holds_alternative<StopView>(view)) {
            return CanonicalTerm::stop();
        }
        if (std::holds_alternative<CutView>(view)) {
            return CanonicalTerm::cut();
        }
        if (const auto *s = std::get_if<SendView>(&view)) {
            return CanonicalTerm::send(s->chan, s->value);
        }
        if (depth == 1) {
            return CanonicalTerm::cut();
        }
        if (const auto *r = std::get_if<ReceiveView>(&view)) {
            std::vector<Value> keys = base;
            for (std::uint32_t k = 0; k < level; ++k) {
                keys.push_back(Value::chan(bound_channel(k)));
            }
            std::sort(keys.begin(), keys.end());
            CanonicalTerm::Table table;
            table.reserve(keys.size());
            for (Value &v : keys) {
                CanonicalTerm entry = run(r->cont(v), depth - 1, level);
                table.emplace_back(std::move(v), std::move(entry));
            }
            return CanonicalTerm::receive_table(r->chan, std::move(table));
        }
        if (const auto *par = std::get_if<ParallelView>(&view)) {
            return CanonicalTerm::parallel(run(par->left, depth - 1, level), run(par->right, depth - 1, level));
        }
        const auto &nu = std::get<NewView>(view);
        if (level >= max_binders) {
            throw BudgetExceeded("term nests more than " + std::to_string(max_binders) + " channel binders");
        }
        return CanonicalTerm::new_channel(run(nu.cont(bound_channel(level)), depth - 1, level + 1));
    }
};

ChannelId lookup_binding(ChannelId c, const std::vector<ChannelId> &bindings)
{
    if (is_bound(c) && bound_level(c) < bindings.size()) {
        return bindings[bound_level(c)];
    }
    return c;
}

Process reflect_with(const CanonicalTerm &t, const std::vector<ChannelId> &bindings)
{
    auto bind = [bindings](ChannelId c) { return lookup_binding(c, bindings); };
    switch (t.kind()) {
    case CanonicalTerm::Kind::Stop:
        return Process::stop();
    case CanonicalTerm::Kind::Cut:
        return Process::cut();
    case CanonicalTerm::Kind::Send:
        return Process::send(bind(t.chan()), t.value().map_channels(bind));
    case CanonicalTerm::Kind::ReceiveTable:
        return Process::receive(bind(t.chan()), [t, bindings, bind](const Value &v) {
            for (const auto &[key, entry] : t.table()) {
                if (key.map_channels(bind) == v) {
                    return reflect_with(entry, bindings);
                }
            }
            return Process::stop();
        });
    case CanonicalTerm::Kind::Parallel:
        return Process::parallel(reflect_with(t.left(), bindings), reflect_with(t.right(), bindings));
    case CanonicalTerm::Kind::New:
        return Process::new_channel([body = t.body(), bindings](ChannelId c) {
            auto inner = bindings;
            inner.push_back(c);
            return reflect_with(body, inner);
        });
    }
    return Process::stop();
}

void collect_free(const CanonicalTerm &t, std::set<ChannelId> &out)
{
    auto add = [&](ChannelId c) {
        if (!is_bound(c) && !is_scratch(c)) {
            out.insert(c);
        }
    };
    switch (t.kind()) {
    case CanonicalTerm::Kind::Stop:
    case CanonicalTerm::Kind::Cut:
        return;
    case CanonicalTerm::Kind::Send: {
        add(t.chan());
        std::set<ChannelId> in_value;
        t.value().collect_channels(in_value);
        for (ChannelId c : in_value) {
            add(c);
        }
        return;
    }
    case CanonicalTerm::Kind::ReceiveTable:
        add(t.chan());
        for (const auto &[key, entry] : t.table()) {
            std::set<ChannelId> inner;
            collect_free(entry, inner);
            std::set<ChannelId> received;
            key.collect_channels(received);
            for (ChannelId c : inner) {
                if (!received.contains(c)) {
                    out.insert(c);
                }
            }
        }
        return;
    case CanonicalTerm::Kind::Parallel:
        collect_free(t.left(), out);
        collect_free(t.right(), out);
        return;
    case CanonicalTerm::Kind::New:
        collect_free(t.body(), out);
        return;
    }
}

void render(const CanonicalTerm &t, std::string &out)
{
    switch (t.kind()) {
    case CanonicalTerm::Kind::Stop:
        out += "0";
        return;
    case CanonicalTerm::Kind::Cut:
        out += "<cut>";
        return;
    case CanonicalTerm::Kind::Send:
        out += to_string(t.chan()) + "<" + to_string(t.value()) + ">";
        return;
    case CanonicalTerm::Kind::ReceiveTable:
        out += to_string(t.chan()) + "{";
        for (std::size_t i = 0; i < t.table().size(); ++i) {
            if (i > 0) {
                out += "; ";
            }
            out += to_string(t.table()[i].first) + " -> ";
            render(t.table()[i].second, out);
        }
        out += "}";
        return;
    case CanonicalTerm::Kind::Parallel:
        out += "(";
        render(t.left(), out);
        out += " | ";
        render(t.right(), out);
        out += ")";
        return;
    case CanonicalTerm::Kind::New:
        out += "new. ";
        render(t.body(), out);
        return;
    }
}

} // namespace

CanonicalTerm reify_with_binders(const Process &p, const Universe &u, const std::set<ChannelId> &minted, int depth,
                                 std::uint32_t max_binders)
{
    const std::vector<Value> base = u.enumeration(minted);
    return Reifier{base, max_binders}.run(p, depth, 0);
}

CanonicalTerm reify(const Process &p, const Universe &u, const std::set<ChannelId> &minted, int depth)
{
    return reify_with_binders(p, u, minted, depth, u.fresh_budget);
}

bool alpha_equal(const Process &p, const Process &q, const Universe &u)
{
    const int depth = static_cast<int>(u.depth_budget);
    return reify(p, u, {}, depth) == reify(q, u, {}, depth);
}

std::set<ChannelId> free_channels(const CanonicalTerm &t)
{
    std::set<ChannelId> out;
    collect_free(t, out);
    return out;
}

Process reflect(const CanonicalTerm &t) { return reflect_with(t, {}); }

std::string to_string(const CanonicalTerm &t)
{
    std::string out;
    render(t, out);
    return out;
}

ExplorationContext::ExplorationContext(Universe u) : universe_(std::move(u))
{
    universe_.validate();
    while (next_fresh_ < universe_.fresh_budget) {
        mint();
    }
}

ChannelId ExplorationContext::mint()
{
    if (next_fresh_ >= universe_.fresh_budget) {
        throw BudgetExceeded("fresh channel budget of " + std::to_string(universe_.fresh_budget) + " exhausted");
    }
    ChannelId c = universe_.fresh_channel(next_fresh_++);
    minted_.insert(c);
    enumeration_ = universe_.enumeration(minted_);
    return c;
}

ChannelId ExplorationContext::pick_fresh(const std::set<ChannelId> &used) const
{
    for (ChannelId c : minted_) {
        if (!used.contains(c)) {
            return c;
        }
    }
    throw BudgetExceeded("no fresh channel left (fresh_budget " + std::to_string(universe_.fresh_budget) + ")");
}

CanonicalTerm ExplorationContext::canonical(const Process &p) const { return canonical(p, 0); }

CanonicalTerm ExplorationContext::canonical(const Process &p, std::uint32_t extra_binders) const
{
    return Reifier{enumeration_, universe_.fresh_budget + extra_binders}.run(
        p, static_cast<int>(universe_.depth_budget + extra_binders), 0);
}

} // namespace natcalc
