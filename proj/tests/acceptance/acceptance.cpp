// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Every threshold is pinned below.

#include "corpus.hpp"
#include "natcalc/basic_lts.hpp"
#include "natcalc/bisimilarity.hpp"
#include "natcalc/errors.hpp"
#include "natcalc/proper_lts.hpp"
#include "natcalc/residual_algebra.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace natcalc;

namespace {

// Criterion 1
constexpr std::size_t kRelatorCarrier = 30;
constexpr std::size_t kRelatorRelations = 200;
constexpr double kRelatorSeconds = 60.0;
// Criterion 2
constexpr std::size_t kMonadCarrier = 30;
constexpr std::size_t kMonadCases = 200;
constexpr double kMonadSeconds = 120.0;
// Criterion 3
constexpr std::size_t kDerivationCarrier = 10;
// Criteria 4, 5
constexpr std::size_t kMinCorpusTerms = 25;
// Criterion 6
constexpr std::size_t kMinPairs = 50;
// Criterion 9
constexpr std::size_t kFuzzInputs = 10000;

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const Universe U = testing::corpus_universe();

const std::vector<testing::CorpusEntry> &corpus()
{
    static const std::vector<testing::CorpusEntry> c = testing::load_corpus(NATCALC_SOURCE_DIR "/corpus", U);
    return c;
}

constexpr TransitionSystem kSystems[] = {TransitionSystem::Basic, TransitionSystem::Proper};
constexpr Mode kModes[] = {Mode::Strong, Mode::Weak, Mode::Mixed};

// ---------------------------------------------------------------------------
// Residual algebra

std::string failures(const AxiomReport &r)
{
    std::string out;
    for (const AxiomResult &a : r.results) {
        if (!a.passed) {
            out += " " + r.structure + "/" + a.axiom;
        }
    }
    return out;
}

Outcome relator_suite()
{
    const auto t0 = Clock::now();
    const Universe u = algebra_universe();
    const auto c = term_carrier(kRelatorCarrier, u);
    const auto samples = sample_relations(c, kRelatorRelations, kSeed);
    bool ok = c->size() <= kRelatorCarrier && samples.size() >= kRelatorRelations;
    std::string bad;
    std::size_t pair_cases = 0;
    for (const ResidualStructure &s : {basic_structure(u), proper_structure(u)}) {
        AxiomReport r = check_relator_axioms(s, c, samples);
        ok = ok && r.passed() && r.results.size() == 3;
        bad += failures(r);
        const AxiomResult *comp = r.find("composition");
        pair_cases = comp ? comp->cases : 0;
    }
    const double secs = seconds_since(t0);
    ok = ok && secs < kRelatorSeconds;
    return {ok, fmt("basic+proper lifts, %zu states, %zu relations (%zu composition pairs), %.2f s (limit %.0f s)%s",
                    c->size(), samples.size(), pair_cases, secs, kRelatorSeconds, bad.c_str())};
}

// Axioms with a relation argument run once per sample; the sample-free
// ones (neutrality, associativity) are one extensional check per carrier,
// so they are also checked on seeded random sub-carriers.
Outcome monad_suite()
{
    const auto t0 = Clock::now();
    const Universe u = algebra_universe();
    const auto c = term_carrier(kMonadCarrier, u);
    const ResidualStructure basic_s = basic_structure(u);
    const ResidualStructure proper_s = proper_structure(u);
    bool ok = true;
    std::string bad;
    std::size_t sampled_cases = SIZE_MAX;
    std::size_t carriers = 0;

    auto run = [&](const CarrierPtr<CanonicalTerm> &carrier, std::size_t relations, std::uint64_t seed) {
        const auto samples = sample_relations(carrier, relations, seed);
        const WeakResidualStructure basic = WeakResidualStructure::direct(basic_s);
        const WeakResidualStructure proper = derive_fuse(NormalWeakStructure(proper_s), carrier, samples);
        for (const WeakResidualStructure *w : {&basic, &proper}) {
            AxiomReport r = check_monad_axioms(*w, carrier, samples);
            ok = ok && r.passed() && r.results.size() == 5;
            bad += failures(r);
            if (relations >= kMonadCases) {
                for (const AxiomResult &a : r.results) {
                    if (a.cases > 1) {
                        sampled_cases = std::min(sampled_cases, a.cases);
                    }
                }
            }
        }
        ++carriers;
    };

    run(c, kMonadCases, kSeed + 1);
    std::mt19937_64 rng(kSeed + 3);
    for (std::size_t k = 0; k < kMonadCases; ++k) {
        std::vector<CanonicalTerm> subset;
        for (const CanonicalTerm &t : *c) {
            if (rng() % 2) {
                subset.push_back(t);
            }
        }
        if (subset.empty()) {
            subset.push_back((*c)[rng() % c->size()]);
        }
        run(make_carrier(std::move(subset)), 2, kSeed + 100 + k);
    }
    const double secs = seconds_since(t0);
    ok = ok && sampled_cases >= kMonadCases && carriers > kMonadCases && secs < kMonadSeconds;
    return {ok, fmt("basic direct + proper derived fuse, 5 axioms; naturality on %zu relations each, "
                    "neutrality and associativity on %zu seeded carriers; %.2f s (limit %.0f s)%s",
                    sampled_cases, carriers, secs, kMonadSeconds, bad.c_str())};
}

Outcome derivation_oracle()
{
    const Universe u = algebra_universe();
    const auto c = term_carrier(kDerivationCarrier, u);
    const ResidualStructure s = basic_structure(u);
    const auto samples = sample_relations(c, 20, kSeed + 2);
    const auto derived = derive_fuse(NormalWeakStructure(s), c, samples).fuse(c);
    const auto direct = WeakResidualStructure::direct(s).fuse(c);
    // Third opinion: the graph of the fuse function applied to every nested
    // residual of the carrier.
    const auto nested = s.apply(s.apply(c));
    const auto by_function = Relation<NestedResidual, Residual<CanonicalTerm>>::graph(
        nested, s.apply(c), [](const NestedResidual &n) { return basic_fuse(n); });
    const bool ok = derived.leq(direct) && direct.leq(derived) && direct.leq(by_function) && by_function.leq(direct);
    return {ok, fmt("%zu nested residuals, %zu fuse pairs; derived, direct and functional fuse %s", nested->size(),
                    direct.count(), ok ? "coincide" : "differ")};
}

// ---------------------------------------------------------------------------
// Weak transitions

using Item = std::tuple<Label, std::vector<ChannelId>, StateId>;

std::set<StateId> tau_star(const LtsGraph &g, StateId p)
{
    std::set<StateId> seen{p};
    std::vector<StateId> todo{p};
    while (!todo.empty()) {
        const StateId s = todo.back();
        todo.pop_back();
        for (const Edge &e : g.edges(s)) {
            if (!e.label.silent()) {
                continue;
            }
            for (const EdgeInstance &i : e.instances) {
                if (seen.insert(i.target).second) {
                    todo.push_back(i.target);
                }
            }
        }
    }
    return seen;
}

// Observable weak moves by searching for s, t with p =tau=> s -x-> t =tau=> q.
// Binding moves open only channels that are fresh for p.
std::set<Item> triple_search(const LtsGraph &g, StateId p)
{
    std::set<Item> out;
    for (StateId s : tau_star(g, p)) {
        for (const Edge &e : g.edges(s)) {
            if (e.label.silent()) {
                continue;
            }
            for (const EdgeInstance &i : e.instances) {
                const bool fresh = std::none_of(i.opened.begin(), i.opened.end(),
                                                [&](ChannelId c) { return g.state(p).free.contains(c); });
                if (!fresh) {
                    continue;
                }
                for (StateId q : tau_star(g, i.target)) {
                    out.insert({e.label, i.opened, q});
                }
            }
        }
    }
    return out;
}

struct WeakSplit {
    std::set<StateId> tau;
    std::set<Item> observable;
};

WeakSplit weak_moves(const LtsGraph &g, StateId p)
{
    WeakSplit w;
    for (const Edge &e : g.weak_edges(p)) {
        for (const EdgeInstance &i : e.instances) {
            if (e.label.silent()) {
                w.tau.insert(i.target);
            } else {
                w.observable.insert({e.label, i.opened, i.target});
            }
        }
    }
    return w;
}

struct SaturatedCorpus {
    std::vector<std::pair<std::string, LtsGraph>> graphs;
    std::size_t terms = 0;
    std::string skipped;
};

const SaturatedCorpus &saturated_corpus()
{
    static const SaturatedCorpus sc = [] {
        SaturatedCorpus out;
        for (const auto &e : corpus()) {
            bool all = true;
            for (TransitionSystem sys : kSystems) {
                LtsGraph g = explore(e.process, U, sys);
                if (!g.all_complete()) {
                    all = false;
                    out.skipped += " " + e.name;
                    continue;
                }
                out.graphs.emplace_back(e.name + "/" + to_string(sys), weak_saturate(g));
            }
            out.terms += all ? 1 : 0;
        }
        return out;
    }();
    return sc;
}

Outcome weak_tau_oracle()
{
    const SaturatedCorpus &sc = saturated_corpus();
    std::size_t states = 0;
    std::string bad;
    for (const auto &[name, g] : sc.graphs) {
        for (StateId s = 0; s < g.size(); ++s) {
            ++states;
            if (weak_moves(g, s).tau != tau_star(g, s)) {
                bad += " " + name + "#" + std::to_string(s);
            }
        }
    }
    const bool ok = bad.empty() && sc.terms >= kMinCorpusTerms;
    return {ok, fmt("%zu terms x 2 systems, %zu states compared%s%s", sc.terms, states, bad.c_str(),
                    sc.skipped.empty() ? "" : (" skipped:" + sc.skipped).c_str())};
}

Outcome decomposition_oracle()
{
    const SaturatedCorpus &sc = saturated_corpus();
    std::size_t states = 0;
    std::size_t edges = 0;
    std::string bad;
    for (const auto &[name, g] : sc.graphs) {
        for (StateId s = 0; s < g.size(); ++s) {
            ++states;
            const std::set<Item> engine = weak_moves(g, s).observable;
            edges += engine.size();
            if (engine != triple_search(g, s)) {
                bad += " " + name + "#" + std::to_string(s);
            }
        }
    }
    const bool ok = bad.empty() && sc.terms >= kMinCorpusTerms;
    return {ok, fmt("%zu terms x 2 systems, %zu states, %zu observable weak moves in both directions%s", sc.terms,
                    states, edges, bad.c_str())};
}

// ---------------------------------------------------------------------------
// Bisimilarity over corpus pairs

const std::vector<Edge> &challenges(const LtsGraph &g, StateId s, Mode m)
{
    return m == Mode::Weak ? g.weak_edges(s) : g.edges(s);
}

const std::vector<Edge> &answers(const LtsGraph &g, StateId s, Mode m)
{
    return m == Mode::Strong ? g.edges(s) : g.weak_edges(s);
}

bool has_move(const std::vector<Edge> &edges, const Label &l, const std::vector<ChannelId> &opened,
              std::optional<StateId> target)
{
    for (const Edge &e : edges) {
        if (!(e.label == l)) {
            continue;
        }
        for (const EdgeInstance &i : e.instances) {
            if (i.opened == opened && (!target || i.target == *target)) {
                return true;
            }
        }
    }
    return false;
}

// Walks the play on the graph without the engine's help: every challenge and
// answer must be a move of the right kind, and the final challenge must have
// no same-label answer at the same opened channels, which are fresh for both
// states.
bool play_replays(const BisimResult &r)
{
    const LtsGraph &g = r.graph;
    if (r.play.rounds.empty() || (r.mode != Mode::Strong && !g.has_weak_edges())) {
        return false;
    }
    StateId left = r.left;
    StateId right = r.right;
    for (std::size_t k = 0; k < r.play.rounds.size(); ++k) {
        const PlayRound &round = r.play.rounds[k];
        if (round.left != left || round.right != right) {
            return false;
        }
        const StateId mover = round.left_moves ? left : right;
        const StateId other = round.left_moves ? right : left;
        if (!has_move(challenges(g, mover, r.mode), round.label, round.opened, round.challenge_target)) {
            return false;
        }
        if (k + 1 == r.play.rounds.size()) {
            const bool fresh = std::none_of(round.opened.begin(), round.opened.end(), [&](ChannelId c) {
                return g.state(left).free.contains(c) || g.state(right).free.contains(c);
            });
            return fresh && !round.answer_target &&
                   !has_move(answers(g, other, r.mode), round.label, round.opened, std::nullopt);
        }
        if (!round.answer_target ||
            !has_move(answers(g, other, r.mode), round.label, round.opened, *round.answer_target)) {
            return false;
        }
        left = round.left_moves ? round.challenge_target : *round.answer_target;
        right = round.left_moves ? *round.answer_target : round.challenge_target;
    }
    return false;
}

bool witness_sound(const BisimResult &r)
{
    const auto contains = std::find(r.witness.begin(), r.witness.end(), StatePair{r.left, r.right});
    return contains != r.witness.end() && is_simulation(r.witness, r.graph, r.mode) &&
           is_simulation(converse(r.witness), r.graph, r.mode);
}

struct PairStats {
    std::size_t pairs = 0;
    std::size_t skipped = 0;
    std::size_t strong_bisimilar = 0;
    std::size_t weak_bisimilar = 0;
    std::size_t implication_failures = 0;
    std::size_t weak_mixed_disagreements = 0;
    std::string theorem_notes;

    std::size_t bounded_runs = 0;
    std::size_t bounded_mismatches = 0;
    std::string bounded_notes;

    std::size_t witnesses = 0;
    std::size_t witness_failures = 0;
    std::size_t plays = 0;
    std::size_t play_failures = 0;
    std::string soundness_notes;
};

void check_soundness(PairStats &st, const BisimResult &r, const std::string &what)
{
    if (r.verdict == Verdict::Bisimilar) {
        ++st.witnesses;
        if (!witness_sound(r)) {
            ++st.witness_failures;
            st.soundness_notes += " witness:" + what;
        }
    } else if (r.verdict == Verdict::NotBisimilar) {
        ++st.plays;
        if (!play_replays(r) || !replay_play(r)) {
            ++st.play_failures;
            st.soundness_notes += " play:" + what;
        }
    }
}

const PairStats &pair_stats()
{
    static const PairStats stats = [] {
        PairStats st;
        const auto &c = corpus();
        for (TransitionSystem sys : kSystems) {
            for (std::size_t i = 0; i < c.size(); ++i) {
                for (std::size_t j = i; j < c.size(); ++j) {
                    const std::string what = c[i].name + "~" + c[j].name + "/" + to_string(sys);
                    BisimResult res[3];
                    bool usable = true;
                    for (int m = 0; m < 3 && usable; ++m) {
                        res[m] = bisimilarity(c[i].process, c[j].process, U, sys, kModes[m], Method::exact());
                        usable = res[m].verdict != Verdict::Inconclusive;
                    }
                    if (!usable) {
                        ++st.skipped;
                        continue;
                    }
                    ++st.pairs;
                    const bool strong = res[0].verdict == Verdict::Bisimilar;
                    const bool weak = res[1].verdict == Verdict::Bisimilar;
                    st.strong_bisimilar += strong;
                    st.weak_bisimilar += weak;
                    if (strong && !weak) {
                        ++st.implication_failures;
                        st.theorem_notes += " strong-not-weak:" + what;
                    }
                    if (res[1].verdict != res[2].verdict) {
                        ++st.weak_mixed_disagreements;
                        st.theorem_notes += " weak-vs-mixed:" + what;
                    }

                    for (int m = 0; m < 3; ++m) {
                        const BisimResult &exact = res[m];
                        check_soundness(st, exact, what + "/" + to_string(kModes[m]));
                        const LtsGraph &g = exact.graph;
                        const std::size_t product = g.reachable(exact.left).size() * g.reachable(exact.right).size();
                        for (std::size_t k : {product, product + 1, 3 * product}) {
                            ++st.bounded_runs;
                            BisimResult b = bisimilarity_on(g, exact.left, exact.right, kModes[m], Method::bounded(k));
                            const Verdict want =
                                exact.verdict == Verdict::Bisimilar ? Verdict::BoundedBisimilar : Verdict::NotBisimilar;
                            if (b.verdict != want) {
                                ++st.bounded_mismatches;
                                st.bounded_notes += " " + what + "/" + to_string(kModes[m]) + "@" + std::to_string(k);
                            }
                            check_soundness(st, b, what + "/" + to_string(kModes[m]) + "@" + std::to_string(k));
                        }
                    }
                }
            }
        }
        return st;
    }();
    return stats;
}

Outcome generic_theorems()
{
    const PairStats &st = pair_stats();
    const bool ok = st.pairs >= kMinPairs && st.implication_failures == 0 && st.weak_mixed_disagreements == 0;
    return {ok, fmt("%zu pairs (%zu skipped), %zu strong-bisimilar all weak-bisimilar, %zu weak-bisimilar, "
                    "weak/mixed disagreements %zu%s",
                    st.pairs, st.skipped, st.strong_bisimilar, st.weak_bisimilar, st.weak_mixed_disagreements,
                    st.theorem_notes.c_str())};
}

Outcome bounded_agreement()
{
    const PairStats &st = pair_stats();
    const bool ok = st.pairs >= kMinPairs && st.bounded_mismatches == 0;
    return {ok, fmt("%zu bounded runs at k = P, P+1, 3P (P = product of state counts), %zu mismatches%s",
                    st.bounded_runs, st.bounded_mismatches, st.bounded_notes.c_str())};
}

Outcome witness_soundness()
{
    const PairStats &st = pair_stats();
    const bool ok = st.witnesses > 0 && st.plays > 0 && st.witness_failures == 0 && st.play_failures == 0;
    return {ok, fmt("%zu witnesses simulate both ways (%zu failures), %zu plays replay (%zu failures)%s", st.witnesses,
                    st.witness_failures, st.plays, st.play_failures, st.soundness_notes.c_str())};
}

// ---------------------------------------------------------------------------
// Rule instances

bool has(const TransitionSet &ts, const Label &l, const CanonicalTerm &target)
{
    return std::any_of(ts.transitions.begin(), ts.transitions.end(),
                       [&](const Transition &t) { return t.label == l && t.abstraction == target; });
}

std::set<Residual<CanonicalTerm>> residuals(const TransitionSet &ts)
{
    std::set<Residual<CanonicalTerm>> out;
    for (const Transition &t : ts.transitions) {
        out.insert(t.residual());
    }
    return out;
}

Outcome rule_instances()
{
    const ExplorationContext ctx(U);
    const ChannelId a{0};
    auto C = [&](std::string_view src) { return ctx.canonical(parse_process(src, U)); };
    const Value unit = Value::unit();
    const CanonicalTerm stop = CanonicalTerm::stop();
    const Value b0 = Value::chan(bound_channel(0));
    const Value b1 = Value::chan(bound_channel(1));

    std::vector<std::pair<std::string, bool>> checks;
    {
        const TransitionSet ts = basic_transitions(parse_process("a<()>", U), ctx);
        checks.emplace_back("sending", residuals(ts) == std::set<Residual<CanonicalTerm>>{{Label::send(a, unit), stop}});
    }
    checks.emplace_back("communication",
                        has(basic_transitions(parse_process("a<()> | a(y). 0", U), ctx), Label::tau(), C("0 | 0")));
    {
        const CanonicalTerm body = C("new b. (b<()> | b(y). 0)");
        const std::set<Residual<CanonicalTerm>> want{{Label::open(), body}, {Label::tau(), C("new b. (0 | 0)")}};
        checks.emplace_back("opening and closing after acting",
                            residuals(basic_transitions(parse_process("new b. (b<()> | b(y). 0)", U), ctx)) == want);
    }
    checks.emplace_back("one-channel opening",
                        has(proper_transitions(parse_process("new b. a<b>", U), ctx), Label::output(a, b0, 1),
                            CanonicalTerm::new_channel(stop)));
    {
        const TransitionSet ts = proper_transitions(parse_process("new b. new c. a<(b, c)>", U), ctx);
        const CanonicalTerm two = CanonicalTerm::new_channel(CanonicalTerm::new_channel(stop));
        checks.emplace_back("two-channel opening", has(ts, Label::output(a, Value::pair(b0, b1), 2), two));
    }
    // nu b. (P b | Q b) with P b = (0 | b(y). 0) left after the send and
    // Q b = b<()> after receiving b.
    for (TransitionSystem sys : kSystems) {
        const Process p = parse_process("new b. (a<b> | b(y). 0) | a(x). x<()>", U);
        const TransitionSet ts = sys == TransitionSystem::Basic ? basic_transitions(p, ctx) : proper_transitions(p, ctx);
        checks.emplace_back(std::string("communication with scope closing/") + to_string(sys),
                            has(ts, Label::tau(), C("new b. ((0 | b(y). 0) | b<()>)")));
    }
    {
        const TransitionSet ts = proper_transitions(parse_process("new b. a<()>", U), ctx);
        bool flagged = false;
        for (const Transition &t : ts.transitions) {
            if (t.label == Label::output(a, unit, 1)) {
                flagged = unpublished_openings(t, ctx) == std::vector<std::size_t>{0};
            }
        }
        checks.emplace_back("opening without publication",
                            has(ts, Label::output(a, unit, 1), CanonicalTerm::new_channel(stop)) && flagged);
    }

    bool ok = true;
    std::string missing;
    for (const auto &[name, held] : checks) {
        ok = ok && held;
        if (!held) {
            missing += " " + name;
        }
    }
    return {ok, fmt("%zu instances derived%s%s", checks.size(), missing.empty() ? "" : ", missing:", missing.c_str())};
}

// ---------------------------------------------------------------------------
// Concrete syntax

std::string fuzz_input(std::mt19937_64 &rng)
{
    static const std::vector<std::string> pieces{"a",   "b",    "x",     "y",      "(",       ")",     "<",  ">",
                                                 "|",   ".",    "!",     "=",      ",",       ";",     "0",  "()",
                                                 "42",  "new ", "if ",   " then ", " else ",  "true",  "#",  "\n",
                                                 " ",   "f2",   "false", "a(x). ", "new c. ", "a<()>", "\t", "\xff"};
    const auto &c = corpus();
    std::string s;
    switch (rng() % 3) {
    case 0: // raw bytes
        for (std::size_t n = rng() % 32; n > 0; --n) {
            s += static_cast<char>(rng() % 256);
        }
        break;
    case 1: // token soup
        for (std::size_t n = rng() % 24; n > 0; --n) {
            s += pieces[rng() % pieces.size()];
        }
        break;
    default: { // a mutated corpus file
        s = c[rng() % c.size()].source;
        for (std::size_t n = 1 + rng() % 4; n > 0 && !s.empty(); --n) {
            const std::size_t at = rng() % s.size();
            switch (rng() % 3) {
            case 0:
                s.erase(at, 1 + rng() % 3);
                break;
            case 1:
                s.insert(at, pieces[rng() % pieces.size()]);
                break;
            default:
                std::swap(s[at], s[rng() % s.size()]);
            }
        }
    }
    }
    return s;
}

Outcome parser_round_trip()
{
    const ExplorationContext ctx(U);
    std::size_t files = 0;
    std::string bad;
    for (const auto &e : corpus()) {
        ++files;
        const CanonicalTerm t = ctx.canonical(e.process);
        try {
            if (!alpha_equal(parse_process(pretty(t, U), U), e.process, U)) {
                bad += " " + e.name;
            }
        } catch (const Error &err) {
            bad += " " + e.name + "(" + err.what() + ")";
        }
    }

    std::mt19937_64 rng(kSeed + 9);
    std::size_t parsed = 0;
    std::size_t rejected = 0;
    std::size_t crashes = 0;
    std::size_t reprinted = 0;
    for (std::size_t i = 0; i < kFuzzInputs; ++i) {
        const std::string input = fuzz_input(rng);
        try {
            const Process p = parse_process(input, U);
            ++parsed;
            // Accepted inputs go round as well, when they are finite.
            const CanonicalTerm t = ctx.canonical(p);
            if (!t.contains_cut()) {
                ++reprinted;
                if (ctx.canonical(parse_process(pretty(t, U), U)) != t) {
                    bad += " fuzz#" + std::to_string(i);
                }
            }
        } catch (const SyntaxError &) {
            ++rejected;
        } catch (const UnboundIdentifier &) {
            ++rejected;
        } catch (const BudgetExceeded &) {
            ++rejected;
        } catch (const std::exception &err) {
            ++crashes;
            bad += " fuzz#" + std::to_string(i) + "(" + err.what() + ")";
        }
    }
    const bool ok = bad.empty() && crashes == 0 && files == corpus().size();
    return {ok, fmt("%zu corpus files alpha-equal after the round trip; %zu fuzz inputs: %zu parsed (%zu reprinted), "
                    "%zu rejected with a diagnostic, %zu crashes%s",
                    files, kFuzzInputs, parsed, reprinted, rejected, crashes, bad.c_str())};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"relator axiom suite", relator_suite},
        {"monad axiom suite", monad_suite},
        {"derived fuse equals direct fuse", derivation_oracle},
        {"weak tau edges equal tau closure", weak_tau_oracle},
        {"weak observable edges decompose as tau*-step-tau*", decomposition_oracle},
        {"strong implies weak, weak equals mixed", generic_theorems},
        {"rule instances", rule_instances},
        {"bounded agrees with exact", bounded_agreement},
        {"parser round trip and fuzzing", parser_round_trip},
        {"witness and play soundness", witness_soundness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s  %2zu  %-52s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
