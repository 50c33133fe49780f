#include <doctest.h>

#include "natcalc/basic_lts.hpp"
#include "natcalc/errors.hpp"
#include "natcalc/proper_lts.hpp"

#include <algorithm>
#include <random>

using namespace natcalc;

namespace {

const ChannelId a{0};
const ChannelId b{1};

Universe one_channel()
{
    Universe u;
    u.pool = 1;
    u.data_values = {Value::unit()};
    u.fresh_budget = 3;
    u.depth_budget = 8;
    return u;
}

Process send(ChannelId c, Value v) { return Process::send(c, std::move(v)); }
Process stop() { return Process::stop(); }
Process par(Process l, Process r) { return Process::parallel(std::move(l), std::move(r)); }

Process recv_then_stop(ChannelId c)
{
    return Process::receive(c, [](const Value &) { return Process::stop(); });
}

bool has(const TransitionSet &ts, const Label &label, const CanonicalTerm &target)
{
    return std::any_of(ts.transitions.begin(), ts.transitions.end(),
                       [&](const Transition &t) { return t.label == label && t.abstraction == target; });
}

CanonicalTerm C(const Process &p, const ExplorationContext &ctx) { return ctx.canonical(p); }

// Swaps the components of the first parallel node found under New layers.
CanonicalTerm swap_components(const CanonicalTerm &t)
{
    if (t.kind() == CanonicalTerm::Kind::New) {
        return CanonicalTerm::new_channel(swap_components(t.body()));
    }
    if (t.kind() == CanonicalTerm::Kind::Parallel) {
        return CanonicalTerm::parallel(t.right(), t.left());
    }
    return t;
}

Process random_process(std::mt19937_64 &rng, int depth)
{
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 4);
    switch (pick(rng)) {
    case 0:
        return stop();
    case 1:
        return send(a, Value::unit());
    case 2: {
        Process k = random_process(rng, depth - 1);
        return Process::receive(a, [k](const Value &v) { return v.is_chan() ? send(v.as_chan(), Value::unit()) : k; });
    }
    case 3:
        return par(random_process(rng, depth - 1), random_process(rng, depth - 1));
    default: {
        Process k = random_process(rng, depth - 1);
        return Process::new_channel([k](ChannelId x) { return par(send(a, Value::chan(x)), k); });
    }
    }
}

} // namespace

TEST_CASE("sending")
{
    ExplorationContext ctx(one_channel());
    TransitionSet ts = basic_transitions(send(a, Value::unit()), ctx);
    REQUIRE(ts.transitions.size() == 1);
    CHECK(ts.transitions[0].label == Label::send(a, Value::unit()));
    CHECK(ts.transitions[0].abstraction == CanonicalTerm::stop());
    CHECK(ts.transitions[0].rule == "Sending");
    CHECK_FALSE(ts.truncated);
}

TEST_CASE("stop has no transitions")
{
    ExplorationContext ctx(one_channel());
    CHECK(basic_transitions(stop(), ctx).transitions.empty());
    CHECK(proper_transitions(stop(), ctx).transitions.empty());
}

TEST_CASE("receiving enumerates data, pool and minted channels")
{
    ExplorationContext ctx(one_channel());
    TransitionSet ts = basic_transitions(recv_then_stop(a), ctx);
    // Unit, the pool channel and three minted channels.
    CHECK(ts.transitions.size() == 5);
    for (const Transition &t : ts.transitions) {
        CHECK(t.label.kind == LabelKind::Receive);
        CHECK(t.rule == "Receiving");
    }
}

TEST_CASE("communication")
{
    ExplorationContext ctx(one_channel());
    Process p = par(send(a, Value::unit()), recv_then_stop(a));
    TransitionSet ts = basic_transitions(p, ctx);
    CHECK(has(ts, Label::tau(), C(par(stop(), stop()), ctx)));
    CHECK(has(ts, Label::send(a, Value::unit()), C(par(stop(), recv_then_stop(a)), ctx)));
    // One tau plus the send plus five receives.
    CHECK(ts.transitions.size() == 7);
}

TEST_CASE("scope opening and closing after acting")
{
    ExplorationContext ctx(one_channel());
    auto body = [](ChannelId x) { return par(send(x, Value::unit()), recv_then_stop(x)); };
    Process p = Process::new_channel(body);
    TransitionSet ts = basic_transitions(p, ctx);
    REQUIRE(ts.transitions.size() == 2);
    CHECK(has(ts, Label::open(), C(p, ctx)));
    CHECK(has(ts, Label::tau(), C(Process::new_channel([](ChannelId) { return par(stop(), stop()); }), ctx)));

    const Transition &open = ts.transitions[1].label.kind == LabelKind::Open ? ts.transitions[1] : ts.transitions[0];
    CHECK(open.rule == "Scope opening");
    REQUIRE(open.opened.size() == 1);
    CHECK(ctx.universe().is_fresh(open.opened[0]));
    CHECK(C(open.target, ctx) == C(body(open.opened[0]), ctx));
}

TEST_CASE("communication with scope closing")
{
    ExplorationContext ctx(one_channel());
    Process publish = Process::new_channel([](ChannelId x) { return send(a, Value::chan(x)); });
    Process use = Process::receive(a, [](const Value &v) { return v.is_chan() ? send(v.as_chan(), Value::unit()) : stop(); });
    TransitionSet ts = basic_transitions(par(publish, use), ctx);
    Process expected = Process::new_channel([](ChannelId x) { return par(stop(), send(x, Value::unit())); });
    auto it = std::find_if(ts.transitions.begin(), ts.transitions.end(),
                           [](const Transition &t) { return t.label.silent(); });
    REQUIRE(it != ts.transitions.end());
    CHECK(it->abstraction == C(expected, ctx));
    CHECK(it->rule == "Scope closing after acting");
    CHECK(std::count_if(ts.transitions.begin(), ts.transitions.end(),
                        [](const Transition &t) { return t.label.silent(); }) == 1);
}

TEST_CASE("closing after another opening keeps both binder orders")
{
    ExplorationContext ctx(one_channel());
    Process p = Process::new_channel([](ChannelId x) {
        return Process::new_channel([x](ChannelId y) { return send(a, Value::pair(Value::chan(x), Value::chan(y))); });
    });
    TransitionSet ts = basic_transitions(p, ctx);
    std::vector<const Transition *> opens;
    for (const Transition &t : ts.transitions) {
        if (t.label.kind == LabelKind::Open) {
            opens.push_back(&t);
        }
    }
    REQUIRE(opens.size() == 2);
    bool closing_rule = std::any_of(opens.begin(), opens.end(), [](const Transition *t) {
        return t->rule == "Scope closing after another scope opening";
    });
    CHECK(closing_rule);
    // The inner binder opened first: nu y. nu x. a<(x, y)> re-abstracted.
    Process swapped = Process::new_channel([](ChannelId y) {
        return Process::new_channel([y](ChannelId x) { return send(a, Value::pair(Value::chan(x), Value::chan(y))); });
    });
    CHECK(has(ts, Label::open(), C(swapped, ctx)));
    CHECK(has(ts, Label::open(), C(p, ctx)));
}

TEST_CASE("parallel composition is symmetric")
{
    ExplorationContext ctx(one_channel());
    std::mt19937_64 rng(5);
    for (int i = 0; i < 30; ++i) {
        Process p = random_process(rng, 2);
        Process q = random_process(rng, 2);
        std::vector<Residual<CanonicalTerm>> pq, qp;
        for (const Transition &t : basic_transitions(par(p, q), ctx).transitions) {
            pq.push_back({t.label, swap_components(t.abstraction)});
        }
        for (const Transition &t : basic_transitions(par(q, p), ctx).transitions) {
            qp.push_back(t.residual());
        }
        std::sort(pq.begin(), pq.end());
        std::sort(qp.begin(), qp.end());
        CHECK(pq == qp);
    }
}

TEST_CASE("derivation is deterministic")
{
    ExplorationContext ctx(one_channel());
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
        Process p = random_process(rng, 3);
        TransitionSet x = basic_transitions(p, ctx);
        TransitionSet y = basic_transitions(p, ctx);
        REQUIRE(x.transitions.size() == y.transitions.size());
        for (std::size_t k = 0; k < x.transitions.size(); ++k) {
            CHECK(x.transitions[k].residual() == y.transitions[k].residual());
            CHECK(x.transitions[k].opened == y.transitions[k].opened);
        }
    }
}

TEST_CASE("too many nested binders exhaust the fresh budget")
{
    Universe u = one_channel();
    u.fresh_budget = 1;
    ExplorationContext ctx(u);
    Process p = Process::new_channel([](ChannelId) {
        return Process::new_channel([](ChannelId y) { return send(a, Value::chan(y)); });
    });
    CHECK_THROWS_AS(basic_transitions(p, ctx), BudgetExceeded);
}

TEST_CASE("basic silent and fuse")
{
    CanonicalTerm p = CanonicalTerm::send(a, Value::unit());
    CHECK(basic_silent(CanonicalTerm::stop()) == Residual<CanonicalTerm>{Label::tau(), CanonicalTerm::stop()});
    CHECK(basic_silent(p) == Residual<CanonicalTerm>{Label::tau(), p});

    Residual<CanonicalTerm> act{Label::send(a, Value::unit()), CanonicalTerm::stop()};
    CHECK(basic_fuse(NestedResidual{Label::tau(), act}) == std::vector<Residual<CanonicalTerm>>{act});
    Residual<CanonicalTerm> open_tau{Label::tau(), p};
    CHECK(basic_fuse(NestedResidual{Label::open(), open_tau}) ==
          std::vector<Residual<CanonicalTerm>>{{Label::open(), p}});
    Residual<CanonicalTerm> recv{Label::receive(a, Value::unit()), p};
    CHECK(basic_fuse(NestedResidual{Label::send(a, Value::unit()), recv}).empty());
}

TEST_CASE("proper outputs bundle openings")
{
    ExplorationContext ctx(one_channel());
    Process one = Process::new_channel([](ChannelId x) { return send(a, Value::chan(x)); });
    TransitionSet ts = proper_transitions(one, ctx);
    REQUIRE(ts.transitions.size() == 1);
    const Transition &t = ts.transitions[0];
    CHECK(t.label == Label::output(a, Value::chan(bound_channel(0)), 1));
    CHECK(t.abstraction == CanonicalTerm::new_channel(CanonicalTerm::stop()));
    CHECK(t.rule == "Opening 1 channel");
    CHECK(unpublished_openings(t, ctx).empty());

    Process two = Process::new_channel([](ChannelId x) {
        return Process::new_channel([x](ChannelId y) { return send(a, Value::pair(Value::chan(x), Value::chan(y))); });
    });
    TransitionSet ts2 = proper_transitions(two, ctx);
    Value xy = Value::pair(Value::chan(bound_channel(0)), Value::chan(bound_channel(1)));
    Value yx = Value::pair(Value::chan(bound_channel(1)), Value::chan(bound_channel(0)));
    CanonicalTerm empty2 = CanonicalTerm::new_channel(CanonicalTerm::new_channel(CanonicalTerm::stop()));
    CHECK(has(ts2, Label::output(a, xy, 2), empty2));
    // Opening the inner binder first publishes the pair in the other order.
    CHECK(has(ts2, Label::output(a, yx, 2), empty2));
    CHECK(ts2.transitions.size() == 2);
}

TEST_CASE("opening without publication is derivable and flagged")
{
    ExplorationContext ctx(one_channel());
    Process p = Process::new_channel([](ChannelId) { return send(a, Value::unit()); });
    TransitionSet ts = proper_transitions(p, ctx);
    CHECK(has(ts, Label::output(a, Value::unit(), 1), CanonicalTerm::new_channel(CanonicalTerm::stop())));
    for (const Transition &t : ts.transitions) {
        if (t.label.arity == 1) {
            CHECK(unpublished_openings(t, ctx) == std::vector<std::size_t>{0});
        }
    }
    // The closed send is there too, through the basic system.
    CHECK(has(ts, Label::output(a, Value::unit(), 0), CanonicalTerm::new_channel(CanonicalTerm::stop())));
}

TEST_CASE("proper transitions delegate to basic ones")
{
    ExplorationContext ctx(one_channel());
    std::mt19937_64 rng(17);
    for (int i = 0; i < 20; ++i) {
        Process p = random_process(rng, 3);
        TransitionSet basic = basic_transitions(p, ctx);
        for (const Transition &t : proper_transitions(p, ctx).transitions) {
            if (t.label.arity > 0) {
                continue;
            }
            LabelKind expected = t.label.kind == LabelKind::Input    ? LabelKind::Receive
                                 : t.label.kind == LabelKind::Output ? LabelKind::Send
                                                                     : LabelKind::Tau;
            Label witness{expected, t.label.chan, t.label.value, 0};
            CHECK(has(basic, witness, t.abstraction));
        }
    }
}
