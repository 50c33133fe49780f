#include <doctest.h>

#include "natcalc/basic_lts.hpp"
#include "natcalc/residual_algebra.hpp"

#include <set>
#include <utility>

using namespace natcalc;

namespace {

using Pairs = std::set<std::pair<std::size_t, std::size_t>>;

template <class A, class B>
Pairs pairs_of(const Relation<A, B> &r)
{
    Pairs out;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) {
            if (r.holds(i, j)) {
                out.insert({i, j});
            }
        }
    }
    return out;
}

Pairs naive_compose(const Pairs &x, const Pairs &y)
{
    Pairs out;
    for (auto [a, b] : x) {
        for (auto [b2, c] : y) {
            if (b == b2) {
                out.insert({a, c});
            }
        }
    }
    return out;
}

const Universe U = algebra_universe();
const ChannelId a{0};

} // namespace

TEST_CASE("relation composition agrees with a pair-set oracle")
{
    auto c = term_carrier(12, U);
    auto samples = sample_relations(c, 30, 3);
    for (std::size_t i = 0; i + 2 < samples.size(); ++i) {
        const auto &x = samples[i];
        const auto &y = samples[i + 1];
        const auto &z = samples[i + 2];
        CHECK(pairs_of(compose(x, y)) == naive_compose(pairs_of(x), pairs_of(y)));
        CHECK(compose(compose(x, y), z) == compose(x, compose(y, z)));
        CHECK(x.converse().converse() == x);
        CHECK(compose(x, y).converse() == compose(y.converse(), x.converse()));
        CHECK(x.leq(x.unite(y)));
    }
}

TEST_CASE("carriers are checked")
{
    auto c = term_carrier(5, U);
    auto d = term_carrier(6, U);
    auto c_copy = make_carrier(c->elements());
    CHECK_NOTHROW(compose(Relation<CanonicalTerm, CanonicalTerm>::identity(c),
                          Relation<CanonicalTerm, CanonicalTerm>::identity(c_copy)));
    CHECK_THROWS_AS(compose(Relation<CanonicalTerm, CanonicalTerm>::identity(c),
                            Relation<CanonicalTerm, CanonicalTerm>::identity(d)),
                    CarrierMismatch);
    ResidualStructure s = basic_structure(U);
    CHECK_THROWS_AS(check_relator_axioms(s, c, sample_relations(d, 2, 1)), CarrierMismatch);
}

TEST_CASE("alphabets")
{
    CHECK(basic_alphabet(U).size() == 6);
    CHECK(proper_alphabet(U).size() == 8);
    CHECK(term_carrier(30, U)->size() == 30);
}

TEST_CASE("basic lift examples")
{
    auto c = term_carrier(10, U);
    ResidualStructure s = basic_structure(U);
    CanonicalTerm stop = CanonicalTerm::stop();
    auto lifted_eq = s.lift(Relation<CanonicalTerm, CanonicalTerm>::identity(c));
    CHECK(lifted_eq.holds(Residual<CanonicalTerm>{Label::tau(), stop}, Residual<CanonicalTerm>{Label::tau(), stop}));

    auto full = s.lift(Relation<CanonicalTerm, CanonicalTerm>::full(c, c));
    for (const CanonicalTerm &p : *c) {
        for (const CanonicalTerm &q : *c) {
            CHECK_FALSE(full.holds(Residual<CanonicalTerm>{Label::send(a, Value::unit()), p},
                                   Residual<CanonicalTerm>{Label::receive(a, Value::unit()), q}));
        }
    }
    // Lifting is label-wise: the oracle checks every residual pair directly.
    auto x = sample_relations(c, 1, 9).back();
    auto lx = s.lift(x);
    auto fc = s.apply(c);
    for (std::size_t i = 0; i < fc->size(); ++i) {
        for (std::size_t j = 0; j < fc->size(); ++j) {
            const auto &r1 = (*fc)[i];
            const auto &r2 = (*fc)[j];
            CHECK(lx.holds(i, j) == (r1.label == r2.label && x.holds(r1.target, r2.target)));
        }
    }
}

TEST_CASE("relator axioms hold for the shipped lifts")
{
    auto c = term_carrier(20, U);
    auto samples = sample_relations(c, 50, 42);
    for (const ResidualStructure &s : {basic_structure(U), proper_structure(U)}) {
        AxiomReport report = check_relator_axioms(s, c, samples);
        CHECK(report.passed());
        CHECK(report.results.size() == 3);
        CHECK(report.find("composition")->cases == samples.size());
    }
}

TEST_CASE("a lift that drops opening pairs breaks composition")
{
    auto c = term_carrier(10, U);
    auto samples = sample_relations(c, 50, 42);
    ResidualStructure broken = basic_structure(U, RelatorMutation::DropOpeningPairs);
    AxiomReport report = check_relator_axioms(broken, c, samples);
    CHECK(report.find("equality")->passed);
    CHECK(report.find("conversion")->passed);
    const AxiomResult *comp = report.find("composition");
    REQUIRE_FALSE(comp->passed);
    REQUIRE(comp->counterexample);
    CHECK(comp->counterexample->left.find("{nu b0}") == 0);
    CHECK(replay_relator(broken, c, samples, *comp));
    // The intact structure does not reproduce it.
    CHECK_FALSE(replay_relator(basic_structure(U), c, samples, *comp));
}

TEST_CASE("monad axioms for the basic structure with direct fuse")
{
    auto c = term_carrier(10, U);
    auto samples = sample_relations(c, 40, 7);
    WeakResidualStructure w = WeakResidualStructure::direct(basic_structure(U));
    AxiomReport report = check_monad_axioms(w, c, samples);
    for (const AxiomResult &r : report.results) {
        INFO(r.axiom);
        CHECK(r.passed);
    }

    // silent OO fuse relates each residual to itself only.
    auto fc = basic_structure(U).apply(c);
    auto left = compose(w.silent(fc), w.fuse(c));
    for (std::size_t i = 0; i < fc->size(); ++i) {
        std::vector<std::size_t> row;
        left.for_row(i, [&](std::size_t j) { row.push_back(j); });
        CHECK(row == std::vector<std::size_t>{i});
    }
}

TEST_CASE("direct fuse matches the fuse rules function")
{
    auto c = term_carrier(10, U);
    WeakResidualStructure w = WeakResidualStructure::direct(basic_structure(U));
    auto fuse = w.fuse(c);
    auto oracle = Relation<NestedResidual, Residual<CanonicalTerm>>::graph(
        fuse.left(), fuse.right(), [](const NestedResidual &n) { return basic_fuse(n); });
    CHECK(fuse == oracle);
}

TEST_CASE("dropping the acting-silent rule breaks right-neutrality")
{
    auto c = term_carrier(10, U);
    auto samples = sample_relations(c, 10, 7);
    FuseRules rules;
    rules.acting_silent = false;
    WeakResidualStructure w = WeakResidualStructure::direct(basic_structure(U), rules);
    AxiomReport report = check_monad_axioms(w, c, samples);
    const AxiomResult *right = report.find("right-neutrality");
    REQUIRE_FALSE(right->passed);
    CHECK(replay_monad(w, c, samples, *right));
    CHECK(report.find("left-neutrality")->passed);
}

TEST_CASE("normal silent axioms")
{
    auto c = term_carrier(10, U);
    auto samples = sample_relations(c, 40, 5);
    for (const ResidualStructure &s : {basic_structure(U), proper_structure(U)}) {
        CHECK(check_normal_silent_axioms(NormalWeakStructure(s), c, samples).passed());
    }

    NormalWeakStructure mutant(basic_structure(U), Label::tau(), NormalWeakStructure::Mutation::SharedSilentResidual);
    AxiomReport report = check_normal_silent_axioms(mutant, c, samples);
    const AxiomResult *left = report.find("left-uniqueness-totality");
    REQUIRE_FALSE(left->passed);
    CHECK(replay_normal(mutant, c, samples, *left));
    CHECK_THROWS_AS(derive_fuse(mutant, c, samples), SilentAxiomsViolated);
}

TEST_CASE("derived fuse equals the direct fuse")
{
    auto c = term_carrier(10, U);
    auto samples = sample_relations(c, 20, 5);
    WeakResidualStructure derived = derive_fuse(NormalWeakStructure(basic_structure(U)), c, samples);
    WeakResidualStructure direct = WeakResidualStructure::direct(basic_structure(U));
    CHECK(derived.fuse(c) == direct.fuse(c));
    CHECK(check_monad_axioms(derived, c, samples).passed());
}

TEST_CASE("the two halves of the derived fuse")
{
    auto c = term_carrier(10, U);
    NormalWeakStructure n(basic_structure(U));
    CanonicalTerm p = (*c)[3];
    auto back = n.silent(c).converse();
    CHECK(back.holds(Residual<CanonicalTerm>{Label::tau(), p}, p));
    auto lifted = n.base().lift(back);
    Label alpha = Label::send(a, Value::unit());
    CHECK(lifted.holds(NestedResidual{alpha, {Label::tau(), p}}, Residual<CanonicalTerm>{alpha, p}));
}

TEST_CASE("derived proper fuse")
{
    auto c = term_carrier(10, U);
    auto samples = sample_relations(c, 20, 5);
    WeakResidualStructure w = derive_fuse(NormalWeakStructure(proper_structure(U)), c, samples);
    auto fuse = w.fuse(c);
    CanonicalTerm p = (*c)[2];
    Residual<CanonicalTerm> tau_p{Label::tau(), p};
    Residual<CanonicalTerm> out{Label::output(a, Value::unit()), p};
    CHECK(fuse.holds(NestedResidual{Label::tau(), tau_p}, tau_p));
    CHECK(fuse.holds(NestedResidual{Label::tau(), out}, out));
    CHECK(check_monad_axioms(w, c, samples).passed());
}

TEST_CASE("any single silent label yields a lawful derived fuse")
{
    auto c = term_carrier(8, U);
    auto samples = sample_relations(c, 10, 13);
    for (const ResidualStructure &s : {basic_structure(U), proper_structure(U)}) {
        for (const Label &l : s.alphabet()) {
            NormalWeakStructure n(s, l);
            REQUIRE(check_normal_silent_axioms(n, c, samples).passed());
            INFO(to_string(l));
            CHECK(check_monad_axioms(derive_fuse(n, c, samples), c, samples).passed());
        }
    }
}
