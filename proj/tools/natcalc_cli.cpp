// natcalc: step, trace, bisim, axioms and export over .nat process files.

#include "natcalc/axiom_runner.hpp"
#include "natcalc/basic_lts.hpp"
#include "natcalc/bisimilarity.hpp"
#include "natcalc/config.hpp"
#include "natcalc/errors.hpp"
#include "natcalc/export.hpp"
#include "natcalc/proper_lts.hpp"
#include "natcalc/syntax.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace natcalc;

namespace {

enum Exit : int {
    kOk = 0,
    kInputError = 1,
    kBudget = 2,
    kNotBisimilar = 3,
    kInconclusive = 4,
    kAxiomFailure = 5,
};

struct Overrides {
    std::string config_path;
    std::vector<std::string> data;
    std::optional<std::uint32_t> pool, fresh, depth;
    std::optional<std::size_t> max_states, max_depth;
    std::optional<std::uint64_t> seed;
};

Config resolve_config(const Overrides &o)
{
    Config c;
    std::string path = o.config_path;
    if (path.empty()) {
        if (const char *env = std::getenv("NATCALC_CONFIG")) {
            path = env;
        }
    }
    if (!path.empty()) {
        c = load_config(path);
    }
    if (!o.data.empty()) {
        c.universe.data_values.clear();
        for (const std::string &v : o.data) {
            c.universe.data_values.push_back(parse_value(v));
        }
    }
    if (o.pool) c.universe.pool = *o.pool;
    if (o.fresh) c.universe.fresh_budget = *o.fresh;
    if (o.depth) c.universe.depth_budget = *o.depth;
    if (o.max_states) c.limits.max_states = *o.max_states;
    if (o.max_depth) c.limits.max_depth = *o.max_depth;
    if (o.seed) c.seed = *o.seed;
    c.universe.validate();
    if (c.limits.max_states == 0 || c.limits.max_depth == 0) {
        throw std::invalid_argument("limits must be positive");
    }
    return c;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Process load_term(const std::string &path, std::size_t index, const Universe &u)
{
    std::string text = read_file(path);
    std::vector<SourcePtr> terms;
    try {
        terms = parse_file(text);
    } catch (const SyntaxError &e) {
        throw InputError(path + ":" + e.what());
    }
    if (index >= terms.size()) {
        throw InputError(path + ": no term " + std::to_string(index) + " (file holds " + std::to_string(terms.size()) +
                         ")");
    }
    try {
        return desugar(terms[index], default_environment(u));
    } catch (const UnboundIdentifier &e) {
        throw InputError(path + ":" + e.what());
    }
}

TransitionSystem system_of(const std::string &s) { return s == "basic" ? TransitionSystem::Basic : TransitionSystem::Proper; }

// ---------------------------------------------------------------- step

int cmd_step(const Config &cfg, const std::string &file, std::size_t index, const std::string &system)
{
    Process p = load_term(file, index, cfg.universe);
    ExplorationContext ctx(cfg.universe);
    const bool proper = system_of(system) == TransitionSystem::Proper;
    TransitionSet ts = proper ? proper_transitions(p, ctx) : basic_transitions(p, ctx);
    for (const Transition &t : ts.transitions) {
        std::cout << pretty(t.label, cfg.universe) << "  ->  " << pretty(t.abstraction, cfg.universe) << "  ["
                  << t.rule << "]";
        if (proper && !unpublished_openings(t, ctx).empty()) {
            std::cout << "  (opens a channel it does not publish)";
        }
        std::cout << "\n";
    }
    if (ts.truncated) {
        std::cout << "# listing truncated at depth " << cfg.universe.depth_budget << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- trace

int cmd_trace(const Config &cfg, const std::string &file, std::size_t index, const std::string &system,
              std::size_t steps, std::size_t walks, bool exhaustive, std::size_t max_traces)
{
    Process p = load_term(file, index, cfg.universe);
    Limits limits = cfg.limits;
    limits.max_depth = std::max<std::size_t>(1, std::min(limits.max_depth, steps));
    LtsGraph g = explore(p, cfg.universe, system_of(system), limits);
    const Universe &u = cfg.universe;

    if (exhaustive) {
        std::size_t printed = 0;
        std::vector<std::string> labels;
        auto rec = [&](auto &self, StateId s) -> void {
            if (printed >= max_traces) {
                return;
            }
            const auto &es = g.edges(s);
            if (labels.size() == steps || es.empty()) {
                std::string line;
                for (const std::string &l : labels) {
                    line += (line.empty() ? "" : " . ") + l;
                }
                std::cout << (line.empty() ? "(empty)" : line) << (g.complete(s) || labels.size() == steps ? "" : "  ...")
                          << "\n";
                ++printed;
                return;
            }
            for (const Edge &e : es) {
                for (const EdgeInstance &inst : e.instances) {
                    labels.push_back(pretty(e.label, u, inst.opened));
                    self(self, inst.target);
                    labels.pop_back();
                }
            }
        };
        rec(rec, g.roots()[0]);
        if (printed >= max_traces) {
            std::cout << "# stopped after " << max_traces << " traces\n";
        }
        return kOk;
    }

    std::mt19937_64 rng(cfg.seed);
    for (std::size_t w = 0; w < walks; ++w) {
        std::cout << "walk " << w << ":\n";
        StateId s = g.roots()[0];
        std::cout << "  " << pretty(g.state(s).term, u) << "\n";
        for (std::size_t k = 0; k < steps; ++k) {
            std::vector<std::pair<const Edge *, const EdgeInstance *>> moves;
            for (const Edge &e : g.edges(s)) {
                for (const EdgeInstance &inst : e.instances) {
                    moves.emplace_back(&e, &inst);
                }
            }
            if (moves.empty()) {
                std::cout << (g.complete(s) ? "  (stuck)\n" : "  (unexplored)\n");
                break;
            }
            auto [e, inst] = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
            s = inst->target;
            std::cout << "  --" << pretty(e->label, u, inst->opened) << "--> " << pretty(g.state(s).term, u) << "\n";
        }
    }
    return kOk;
}

// ---------------------------------------------------------------- bisim

Method parse_method(const std::string &m)
{
    if (m == "exact") {
        return Method::exact();
    }
    if (m.rfind("bounded:", 0) == 0) {
        return Method::bounded(std::stoul(m.substr(8)));
    }
    throw InputError("method must be 'exact' or 'bounded:k'");
}

Mode parse_mode(const std::string &m) { return m == "weak" ? Mode::Weak : m == "mixed" ? Mode::Mixed : Mode::Strong; }

int cmd_bisim(const Config &cfg, const std::string &f1, const std::string &f2, std::size_t i1, std::size_t i2,
              const std::string &mode, const std::string &method, const std::string &system)
{
    const Universe &u = cfg.universe;
    Process p = load_term(f1, i1, u);
    Process q = load_term(f2, i2, u);
    BisimResult r = bisimilarity(p, q, u, system_of(system), parse_mode(mode), parse_method(method), cfg.limits);
    switch (r.verdict) {
    case Verdict::Bisimilar:
        std::cout << "Bisimilar\n";
        std::cout << "witness: " << r.witness.size() << " pairs over " << r.graph.size() << " states\n";
        return kOk;
    case Verdict::BoundedBisimilar:
        std::cout << "BoundedBisimilar(" << r.rounds << ")\n";
        return kOk;
    case Verdict::Inconclusive:
        std::cout << "Inconclusive(" << r.reason << ")\n";
        return kInconclusive;
    case Verdict::NotBisimilar:
        break;
    }
    std::cout << "NotBisimilar\n";
    const auto &g = r.graph;
    for (std::size_t k = 0; k < r.play.rounds.size(); ++k) {
        const PlayRound &pr = r.play.rounds[k];
        std::cout << "round " << k + 1 << ": " << pretty(g.state(pr.left).term, u) << "  vs  "
                  << pretty(g.state(pr.right).term, u) << "\n";
        std::cout << "  " << (pr.left_moves ? "left" : "right") << " plays " << pretty(pr.label, u, pr.opened)
                  << " to " << pretty(g.state(pr.challenge_target).term, u) << "\n";
        if (pr.answer_target) {
            std::cout << "  " << (pr.left_moves ? "right" : "left") << " answers to "
                      << pretty(g.state(*pr.answer_target).term, u) << "\n";
        } else {
            std::cout << "  " << (pr.left_moves ? "right" : "left") << " cannot answer\n";
        }
    }
    return kNotBisimilar;
}

// ---------------------------------------------------------------- axioms

int cmd_axioms(const Config &cfg, const std::string &structure, std::size_t cases, std::optional<std::uint64_t> seed,
               std::size_t states, const std::string &output, const std::string &mutant)
{
    SuiteOptions o;
    o.target = structure == "proper"           ? SuiteTarget::Proper
               : structure == "normal-derived" ? SuiteTarget::NormalDerived
                                               : SuiteTarget::Basic;
    o.cases = cases;
    o.seed = seed.value_or(cfg.seed);
    o.states = states;
    o.mutant = mutant == "relator" ? InjectedMutant::Relator
               : mutant == "monad" ? InjectedMutant::Monad
               : mutant == "silent" ? InjectedMutant::Silent
                                    : InjectedMutant::None;
    SuiteRun run = run_axiom_suites(o);
    for (const AxiomReport &r : run.reports) {
        for (const AxiomResult &a : r.results) {
            std::cout << (a.passed ? "PASS " : "FAIL ") << r.suite << "/" << a.axiom << " [" << r.structure << "] "
                      << a.cases << " case(s)\n";
            if (a.counterexample) {
                const Counterexample &ce = *a.counterexample;
                std::cout << "  counterexample: " << ce.left << " , " << ce.right << " is "
                          << (ce.in_lhs ? "only in the left-hand side" : "only in the right-hand side");
                if (!ce.samples.empty()) {
                    std::cout << " (samples";
                    for (std::size_t s : ce.samples) {
                        std::cout << " " << s;
                    }
                    std::cout << ")";
                }
                std::cout << "\n  replays: " << (run.replays.at(r.suite + "/" + a.axiom) ? "yes" : "no") << "\n";
            }
        }
    }
    if (!output.empty()) {
        std::ofstream(output) << to_json(run);
    }
    return run.passed() ? kOk : kAxiomFailure;
}

// ---------------------------------------------------------------- export

int cmd_export(const Config &cfg, const std::string &file, std::size_t index, const std::string &format,
               const std::string &system, bool weak, const std::string &output)
{
    Process p = load_term(file, index, cfg.universe);
    LtsGraph g = explore(p, cfg.universe, system_of(system), cfg.limits);
    if (weak) {
        if (!g.all_complete()) {
            std::cerr << "natcalc: weak edges need a complete exploration\n";
            return kInconclusive;
        }
        g = weak_saturate(g);
    }
    const std::string text = format == "dot" ? export_dot(g, weak) : export_json(g, weak);
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream(output, std::ios::binary) << text;
    }
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"natcalc: transitions, bisimilarity and axiom checks for a process calculus"};
    app.require_subcommand(1);

    Overrides o;
    app.add_option("--config", o.config_path, "JSON config file (default: $NATCALC_CONFIG)");
    app.add_option("--data", o.data, "Data values in concrete syntax, e.g. '()' 'true' '3'");
    app.add_option("--pool", o.pool, "Number of public channels");
    app.add_option("--fresh", o.fresh, "Fresh channel budget");
    app.add_option("--depth", o.depth, "Reification depth budget");
    app.add_option("--max-states", o.max_states, "Exploration state limit");
    app.add_option("--max-depth", o.max_depth, "Exploration depth limit");
    app.add_option("--seed", o.seed, "Seed for random walks and samples");

    const std::vector<std::string> systems{"basic", "proper"};
    std::string file, file2, system = "proper";
    std::size_t term = 0, term2 = 0;

    CLI::App *step = app.add_subcommand("step", "List the transitions of a term");
    step->add_option("file", file, "Process file")->required();
    step->add_option("--term", term, "Index of the term in the file");
    step->add_option("--system", system)->check(CLI::IsMember(systems))->capture_default_str();

    std::size_t steps = 10, walks = 1, max_traces = 1000;
    bool exhaustive = false;
    CLI::App *trace = app.add_subcommand("trace", "Random or exhaustive bounded walks");
    trace->add_option("file", file)->required();
    trace->add_option("--term", term);
    trace->add_option("--system", system)->check(CLI::IsMember(systems))->capture_default_str();
    trace->add_option("--steps", steps)->capture_default_str();
    trace->add_option("--walks", walks)->capture_default_str();
    trace->add_flag("--exhaustive", exhaustive, "Print every label sequence up to --steps");
    trace->add_option("--max-traces", max_traces)->capture_default_str();

    std::string mode = "strong", method = "exact";
    CLI::App *bisim = app.add_subcommand("bisim", "Decide bisimilarity of two terms");
    bisim->add_option("file1", file)->required();
    bisim->add_option("file2", file2)->required();
    bisim->add_option("--term1", term);
    bisim->add_option("--term2", term2);
    bisim->add_option("--mode", mode)->check(CLI::IsMember({"strong", "weak", "mixed"}))->capture_default_str();
    bisim->add_option("--method", method, "exact or bounded:k")->capture_default_str();
    bisim->add_option("--system", system)->check(CLI::IsMember(systems))->capture_default_str();

    std::string structure = "basic", report_path, mutant = "none";
    std::size_t cases = 200, carrier = 20;
    std::optional<std::uint64_t> axiom_seed;
    CLI::App *axioms = app.add_subcommand("axioms", "Run the relator, monad and silent axiom suites");
    axioms->add_option("--structure", structure)
        ->check(CLI::IsMember({"basic", "proper", "normal-derived"}))
        ->capture_default_str();
    axioms->add_option("--cases", cases, "Random relations per suite")->capture_default_str();
    axioms->add_option("--states", carrier, "Process carrier size")->capture_default_str();
    axioms->add_option("--output", report_path, "Write the report as JSON");
    axioms->add_option("--inject-mutant", mutant)
        ->check(CLI::IsMember({"none", "relator", "monad", "silent"}))
        ->group("");
    axioms->add_option("--seed", axiom_seed, "Sample seed (overrides the global seed)");

    std::string format = "json", output;
    bool weak = false;
    CLI::App *exp = app.add_subcommand("export", "Explore a term and write its graph");
    exp->add_option("file", file)->required();
    exp->add_option("--term", term);
    exp->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}))->capture_default_str();
    exp->add_option("--system", system)->check(CLI::IsMember(systems))->capture_default_str();
    exp->add_flag("--weak", weak, "Include weak edges");
    exp->add_option("--output,-o", output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    try {
        Config cfg = resolve_config(o);
        if (*step) {
            return cmd_step(cfg, file, term, system);
        }
        if (*trace) {
            return cmd_trace(cfg, file, term, system, steps, walks, exhaustive, max_traces);
        }
        if (*bisim) {
            return cmd_bisim(cfg, file, file2, term, term2, mode, method, system);
        }
        if (*axioms) {
            return cmd_axioms(cfg, structure, cases, axiom_seed, carrier, report_path, mutant);
        }
        if (*exp) {
            return cmd_export(cfg, file, term, format, system, weak, output);
        }
    } catch (const InputError &e) {
        std::cerr << "natcalc: " << e.what() << "\n";
        return kInputError;
    } catch (const BudgetExceeded &e) {
        std::cerr << "natcalc: budget exceeded: " << e.what() << "\n";
        return kBudget;
    } catch (const std::exception &e) {
        std::cerr << "natcalc: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}
