#include "natcalc/residual_algebra.hpp"

#include <algorithm>

namespace natcalc {

std::string describe(const CanonicalTerm &t) { return to_string(t); }

ResidualStructure::ResidualStructure(std::string name, std::vector<Label> alphabet, RelatorMutation mutation)
    : name_(std::move(name)), alphabet_(std::move(alphabet)), mutation_(mutation)
{
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
}

std::optional<std::size_t> ResidualStructure::label_index(const Label &l) const
{
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), l);
    if (it == alphabet_.end() || !(*it == l)) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - alphabet_.begin());
}

NormalWeakStructure::NormalWeakStructure(ResidualStructure base, Label silent_label, Mutation mutation)
    : base_(std::move(base)), silent_label_(std::move(silent_label)), mutation_(mutation)
{
    auto idx = base_.label_index(silent_label_);
    if (!idx) {
        throw std::invalid_argument("silent label " + to_string(silent_label_) + " is not in the alphabet of " +
                                    base_.name());
    }
    silent_index_ = *idx;
}

WeakResidualStructure WeakResidualStructure::direct(ResidualStructure base, FuseRules rules)
{
    return WeakResidualStructure(NormalWeakStructure(std::move(base)), false, rules);
}

WeakResidualStructure WeakResidualStructure::derived(NormalWeakStructure normal)
{
    return WeakResidualStructure(std::move(normal), true, FuseRules{});
}

bool AxiomReport::passed() const
{
    return std::all_of(results.begin(), results.end(), [](const AxiomResult &r) { return r.passed; });
}

const AxiomResult *AxiomReport::find(const std::string &axiom) const
{
    for (const AxiomResult &r : results) {
        if (r.axiom == axiom) {
            return &r;
        }
    }
    return nullptr;
}

Universe algebra_universe()
{
    Universe u;
    u.pool = 1;
    u.data_values = {Value::unit()};
    u.fresh_budget = 2;
    u.depth_budget = 4;
    return u;
}

namespace {

std::vector<Value> payloads(const Universe &u)
{
    std::vector<Value> values = u.data_values;
    for (std::uint32_t i = 0; i < u.pool; ++i) {
        values.push_back(Value::chan(u.pool_channel(i)));
    }
    return values;
}

} // namespace

std::vector<Label> basic_alphabet(const Universe &u)
{
    std::vector<Label> out{Label::tau(), Label::open()};
    for (std::uint32_t i = 0; i < u.pool; ++i) {
        for (const Value &v : payloads(u)) {
            out.push_back(Label::send(u.pool_channel(i), v));
            out.push_back(Label::receive(u.pool_channel(i), v));
        }
    }
    return out;
}

std::vector<Label> proper_alphabet(const Universe &u)
{
    std::vector<Label> out{Label::tau()};
    for (std::uint32_t i = 0; i < u.pool; ++i) {
        const ChannelId c = u.pool_channel(i);
        for (const Value &v : payloads(u)) {
            out.push_back(Label::input(c, v));
            out.push_back(Label::output(c, v, 0));
            out.push_back(Label::output(c, v, 1));
        }
        out.push_back(Label::output(c, Value::chan(bound_channel(0)), 1));
    }
    return out;
}

ResidualStructure basic_structure(const Universe &u, RelatorMutation mutation)
{
    return ResidualStructure("basic", basic_alphabet(u), mutation);
}

ResidualStructure proper_structure(const Universe &u, RelatorMutation mutation)
{
    return ResidualStructure("proper", proper_alphabet(u), mutation);
}

CarrierPtr<CanonicalTerm> term_carrier(std::size_t n, const Universe &u)
{
    const ChannelId a = u.pool_channel(0);
    std::vector<Process> leaves = {
        Process::stop(),
        Process::send(a, Value::unit()),
        Process::send(a, Value::chan(a)),
        Process::receive(a, [](const Value &) { return Process::stop(); }),
        Process::receive(a, [](const Value &x) {
            return x.is_chan() ? Process::send(x.as_chan(), Value::unit()) : Process::stop();
        }),
        Process::new_channel([a](ChannelId x) { return Process::send(a, Value::chan(x)); }),
        Process::new_channel([](ChannelId x) { return Process::send(x, Value::unit()); }),
    };
    std::vector<Process> candidates = leaves;
    for (const Process &l : leaves) {
        for (const Process &r : leaves) {
            candidates.push_back(Process::parallel(l, r));
        }
    }
    std::vector<CanonicalTerm> terms;
    std::set<CanonicalTerm> seen;
    const int depth = static_cast<int>(u.depth_budget);
    for (const Process &p : candidates) {
        if (terms.size() == n) {
            break;
        }
        CanonicalTerm t = reify(p, u, {}, depth);
        if (seen.insert(t).second) {
            terms.push_back(t);
        }
    }
    if (terms.size() < n) {
        throw std::invalid_argument("term_carrier: at most " + std::to_string(terms.size()) + " terms available");
    }
    return make_carrier(std::move(terms));
}

} // namespace natcalc
