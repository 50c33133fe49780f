#include "natcalc/axiom_runner.hpp"

#include <json.hpp>

namespace natcalc {

bool SuiteRun::passed() const
{
    for (const AxiomReport &r : reports) {
        if (!r.passed()) {
            return false;
        }
    }
    return true;
}

const char *to_string(SuiteTarget t)
{
    switch (t) {
    case SuiteTarget::Basic:
        return "basic";
    case SuiteTarget::Proper:
        return "proper";
    case SuiteTarget::NormalDerived:
        return "normal-derived";
    }
    return "?";
}

namespace {

using Samples = std::vector<Relation<CanonicalTerm, CanonicalTerm>>;

template <class Replay>
void record(SuiteRun &run, AxiomReport report, Replay &&replay)
{
    for (const AxiomResult &r : report.results) {
        if (!r.passed) {
            run.replays[report.suite + "/" + r.axiom] = replay(r);
        }
    }
    run.reports.push_back(std::move(report));
}

void relator(SuiteRun &run, const ResidualStructure &s, const CarrierPtr<CanonicalTerm> &c, const Samples &samples)
{
    record(run, check_relator_axioms(s, c, samples),
           [&](const AxiomResult &r) { return replay_relator(s, c, samples, r); });
}

void monad(SuiteRun &run, const WeakResidualStructure &w, const CarrierPtr<CanonicalTerm> &c, const Samples &samples)
{
    record(run, check_monad_axioms(w, c, samples),
           [&](const AxiomResult &r) { return replay_monad(w, c, samples, r); });
}

/// Returns false when the silent axioms fail, so no fuse can be derived.
bool silent(SuiteRun &run, const NormalWeakStructure &n, const CarrierPtr<CanonicalTerm> &c, const Samples &samples)
{
    AxiomReport report = check_normal_silent_axioms(n, c, samples);
    const bool ok = report.passed();
    record(run, std::move(report), [&](const AxiomResult &r) { return replay_normal(n, c, samples, r); });
    return ok;
}

} // namespace

SuiteRun run_axiom_suites(const SuiteOptions &o)
{
    const Universe u = algebra_universe();
    const auto c = term_carrier(o.states, u);
    const Samples samples = sample_relations(c, o.cases, o.seed);
    const RelatorMutation lift_mutation =
        o.mutant == InjectedMutant::Relator ? RelatorMutation::DropOpeningPairs : RelatorMutation::None;
    const auto silent_mutation = o.mutant == InjectedMutant::Silent ? NormalWeakStructure::Mutation::SharedSilentResidual
                                                                    : NormalWeakStructure::Mutation::None;
    FuseRules rules;
    rules.acting_silent = o.mutant != InjectedMutant::Monad;

    SuiteRun run;
    switch (o.target) {
    case SuiteTarget::Basic: {
        ResidualStructure s = basic_structure(u, lift_mutation);
        relator(run, s, c, samples);
        monad(run, WeakResidualStructure::direct(s, rules), c, samples);
        silent(run, NormalWeakStructure(s, Label::tau(), silent_mutation), c, samples);
        break;
    }
    case SuiteTarget::Proper: {
        ResidualStructure s = proper_structure(u, lift_mutation);
        relator(run, s, c, samples);
        NormalWeakStructure n(s, Label::tau(), silent_mutation);
        if (silent(run, n, c, samples)) {
            monad(run, WeakResidualStructure::derived(n), c, samples);
        }
        break;
    }
    case SuiteTarget::NormalDerived: {
        ResidualStructure s = basic_structure(u, lift_mutation);
        NormalWeakStructure n(s, Label::tau(), silent_mutation);
        if (!silent(run, n, c, samples)) {
            break;
        }
        WeakResidualStructure derived = WeakResidualStructure::derived(n);
        WeakResidualStructure direct = WeakResidualStructure::direct(s, rules);
        AxiomReport agreement{"derivation", s.name(), {}};
        AxiomResult eq;
        eq.axiom = "derived-equals-direct";
        eq.cases = 1;
        eq.counterexample = detail::compare_equal(derived.fuse(c), direct.fuse(c), {});
        eq.passed = !eq.counterexample;
        agreement.results.push_back(eq);
        // Comparing two fixed relations again is the replay.
        record(run, std::move(agreement), [&](const AxiomResult &) {
            return detail::compare_equal(derived.fuse(c), direct.fuse(c), {}).has_value();
        });
        monad(run, derived, c, samples);
        break;
    }
    }
    return run;
}

std::string to_json(const SuiteRun &run)
{
    nlohmann::json reports = nlohmann::json::array();
    for (const AxiomReport &r : run.reports) {
        nlohmann::json results = nlohmann::json::array();
        for (const AxiomResult &a : r.results) {
            nlohmann::json item = {{"axiom", a.axiom}, {"passed", a.passed}, {"cases", a.cases}};
            if (a.counterexample) {
                const Counterexample &ce = *a.counterexample;
                item["counterexample"] = {{"samples", ce.samples}, {"row", ce.row},        {"col", ce.col},
                                          {"left", ce.left},       {"right", ce.right},    {"in_lhs", ce.in_lhs},
                                          {"replays", run.replays.at(r.suite + "/" + a.axiom)}};
            }
            results.push_back(item);
        }
        reports.push_back({{"suite", r.suite}, {"structure", r.structure}, {"results", results}});
    }
    return nlohmann::json{{"passed", run.passed()}, {"reports", reports}}.dump(2) + "\n";
}

} // namespace natcalc
