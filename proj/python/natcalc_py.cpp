#include "natcalc/axiom_runner.hpp"
#include "natcalc/basic_lts.hpp"
#include "natcalc/bisimilarity.hpp"
#include "natcalc/config.hpp"
#include "natcalc/errors.hpp"
#include "natcalc/export.hpp"
#include "natcalc/proper_lts.hpp"
#include "natcalc/syntax.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

namespace py = pybind11;
using namespace natcalc;

namespace {

TransitionSystem system_of(const std::string &s)
{
    if (s == "basic") {
        return TransitionSystem::Basic;
    }
    if (s == "proper") {
        return TransitionSystem::Proper;
    }
    throw std::invalid_argument("system must be 'basic' or 'proper', got '" + s + "'");
}

Mode mode_of(const std::string &m)
{
    if (m == "strong") {
        return Mode::Strong;
    }
    if (m == "weak") {
        return Mode::Weak;
    }
    if (m == "mixed") {
        return Mode::Mixed;
    }
    throw std::invalid_argument("mode must be 'strong', 'weak' or 'mixed', got '" + m + "'");
}

Method method_of(const std::string &m)
{
    if (m == "exact") {
        return Method::exact();
    }
    if (m.rfind("bounded:", 0) == 0) {
        return Method::bounded(std::stoul(m.substr(8)));
    }
    throw std::invalid_argument("method must be 'exact' or 'bounded:k', got '" + m + "'");
}

SuiteTarget structure_of(const std::string &s)
{
    for (SuiteTarget t : {SuiteTarget::Basic, SuiteTarget::Proper, SuiteTarget::NormalDerived}) {
        if (s == to_string(t)) {
            return t;
        }
    }
    throw std::invalid_argument("structure must be 'basic', 'proper' or 'normal-derived', got '" + s + "'");
}

py::list step(const std::string &source, const std::string &system, const std::string &config)
{
    const Config cfg = parse_config(config);
    const Process p = parse_process(source, cfg.universe);
    ExplorationContext ctx(cfg.universe);
    const bool proper = system_of(system) == TransitionSystem::Proper;
    const TransitionSet ts = proper ? proper_transitions(p, ctx) : basic_transitions(p, ctx);
    py::list out;
    for (const Transition &t : ts.transitions) {
        py::dict d;
        d["label"] = pretty(t.label, cfg.universe);
        d["target"] = pretty(t.abstraction, cfg.universe);
        d["rule"] = t.rule;
        d["unpublished"] = proper && !unpublished_openings(t, ctx).empty();
        out.append(d);
    }
    return out;
}

std::string export_graph(const std::string &source, const std::string &system, const std::string &format, bool weak,
                         const std::string &config)
{
    if (format != "json" && format != "dot") {
        throw std::invalid_argument("format must be 'json' or 'dot', got '" + format + "'");
    }
    const Config cfg = parse_config(config);
    LtsGraph g = explore(parse_process(source, cfg.universe), cfg.universe, system_of(system), cfg.limits);
    if (weak) {
        g = weak_saturate(g);
    }
    return format == "json" ? export_json(g, weak) : export_dot(g, weak);
}

py::dict bisim(const std::string &left, const std::string &right, const std::string &mode, const std::string &method,
               const std::string &system, const std::string &config)
{
    const Config cfg = parse_config(config);
    const Universe &u = cfg.universe;
    const BisimResult r = bisimilarity(parse_process(left, u), parse_process(right, u), u, system_of(system),
                                       mode_of(mode), method_of(method), cfg.limits);
    const LtsGraph &g = r.graph;
    auto term = [&](StateId s) { return pretty(g.state(s).term, u); };

    py::dict d;
    d["verdict"] = to_string(r.verdict);
    d["mode"] = to_string(r.mode);
    d["rounds"] = r.rounds;
    d["reason"] = r.reason;
    d["states"] = g.size();
    py::list witness;
    for (const auto &[p, q] : r.witness) {
        witness.append(py::make_tuple(term(p), term(q)));
    }
    d["witness"] = witness;
    py::list play;
    for (const PlayRound &pr : r.play.rounds) {
        py::dict round;
        round["left"] = term(pr.left);
        round["right"] = term(pr.right);
        round["mover"] = pr.left_moves ? "left" : "right";
        round["label"] = pretty(pr.label, u, pr.opened);
        round["challenge_target"] = term(pr.challenge_target);
        round["answer_target"] = pr.answer_target ? py::object(py::str(term(*pr.answer_target))) : py::none();
        play.append(round);
    }
    d["play"] = play;
    if (r.verdict == Verdict::Bisimilar) {
        d["witness_checked"] = is_simulation(r.witness, g, r.mode) && is_simulation(converse(r.witness), g, r.mode);
    }
    if (r.verdict == Verdict::NotBisimilar) {
        d["play_checked"] = replay_play(r);
    }
    return d;
}

std::string axioms(const std::string &structure, std::size_t cases, std::uint64_t seed, std::size_t states)
{
    SuiteOptions o;
    o.target = structure_of(structure);
    o.cases = cases;
    o.seed = seed;
    o.states = states;
    return to_json(run_axiom_suites(o));
}

std::string canonical_text(const std::string &source, const std::string &config)
{
    const Config cfg = parse_config(config);
    ExplorationContext ctx(cfg.universe);
    return pretty(ctx.canonical(parse_process(source, cfg.universe)), cfg.universe);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Bindings for the natcalc process-calculus engine";

    auto base = py::register_exception<Error>(m, "NatcalcError", PyExc_RuntimeError);
    py::register_exception<SyntaxError>(m, "ParseError", base.ptr());
    py::register_exception<UnboundIdentifier>(m, "UnboundIdentifierError", base.ptr());
    py::register_exception<BudgetExceeded>(m, "BudgetExceededError", base.ptr());
    py::register_exception<IncompleteStates>(m, "IncompleteStatesError", base.ptr());

    m.def("canonical", &canonical_text, py::arg("source"), py::arg("config") = "{}",
          "Canonical form of a process in concrete syntax.");
    m.def("step", &step, py::arg("source"), py::arg("system") = "proper", py::arg("config") = "{}",
          "One-step transitions as dicts with label, target, rule and unpublished.");
    m.def("export_graph", &export_graph, py::arg("source"), py::arg("system") = "proper", py::arg("format") = "json",
          py::arg("weak") = false, py::arg("config") = "{}", "Explored transition graph as JSON or DOT text.");
    m.def("bisimilarity", &bisim, py::arg("left"), py::arg("right"), py::arg("mode") = "strong",
          py::arg("method") = "exact", py::arg("system") = "proper", py::arg("config") = "{}",
          "Bisimilarity verdict with its witness or distinguishing play.");
    m.def("axioms", &axioms, py::arg("structure") = "basic", py::arg("cases") = 200, py::arg("seed") = 1,
          py::arg("states") = 20, "Axiom suite report as JSON text.");
}
