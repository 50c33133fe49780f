#include "natcalc/export.hpp"

#include "natcalc/syntax.hpp"

#include <json.hpp>
#include <sstream>

namespace natcalc {

namespace {

using nlohmann::json;

json label_json(const Label &l, const EdgeInstance &inst, const Universe &u)
{
    auto named = [&](ChannelId c) {
        return is_bound(c) && bound_level(c) < inst.opened.size() ? inst.opened[bound_level(c)] : c;
    };
    json out = {{"kind", to_string(l.kind)}};
    if (l.has_channel()) {
        out["chan"] = channel_name(named(l.chan), u);
    }
    if (l.kind != LabelKind::Tau && l.kind != LabelKind::Open) {
        out["value"] = pretty(l.value.map_channels(named), u);
    }
    json opened = json::array();
    for (ChannelId c : inst.opened) {
        opened.push_back(channel_name(c, u));
    }
    out["opened"] = opened;
    return out;
}

void add_edges(json &edges, const LtsGraph &g, StateId s, const std::vector<Edge> &es, bool weak)
{
    for (const Edge &e : es) {
        for (const EdgeInstance &inst : e.instances) {
            edges.push_back({{"from", s},
                             {"to", inst.target},
                             {"label", label_json(e.label, inst, g.universe())},
                             {"rule", e.rule},
                             {"weak", weak}});
        }
    }
}

std::string dot_escape(const std::string &s)
{
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
            out += c;
        } else if (c == '\n') {
            out += "\\n";
        } else {
            out += c;
        }
    }
    return out;
}

} // namespace

std::string export_json(const LtsGraph &g, bool include_weak)
{
    json states = json::array();
    json edges = json::array();
    for (StateId s = 0; s < g.size(); ++s) {
        states.push_back({{"id", s}, {"term", pretty(g.state(s).term, g.universe())}, {"complete", g.complete(s)}});
        add_edges(edges, g, s, g.edges(s), false);
    }
    if (include_weak && g.has_weak_edges()) {
        for (StateId s = 0; s < g.size(); ++s) {
            add_edges(edges, g, s, g.weak_edges(s), true);
        }
    }
    json j = {{"system", to_string(g.system())},
              {"complete", g.all_complete()},
              {"limit_reached", g.limit_reached()},
              {"states", states},
              {"edges", edges}};
    return j.dump(2) + "\n";
}

std::string export_dot(const LtsGraph &g, bool include_weak)
{
    std::ostringstream out;
    out << "digraph lts {\n  node [shape=box, fontname=monospace];\n";
    for (StateId s = 0; s < g.size(); ++s) {
        out << "  s" << s << " [label=\"" << dot_escape(pretty(g.state(s).term, g.universe())) << "\""
            << (g.complete(s) ? "" : ", style=dotted") << "];\n";
    }
    auto emit = [&](StateId s, const std::vector<Edge> &es, bool weak) {
        for (const Edge &e : es) {
            for (const EdgeInstance &inst : e.instances) {
                out << "  s" << s << " -> s" << inst.target << " [label=\""
                    << dot_escape(pretty(e.label, g.universe(), inst.opened)) << "\"" << (weak ? ", style=dashed" : "")
                    << "];\n";
            }
        }
    };
    for (StateId s = 0; s < g.size(); ++s) {
        emit(s, g.edges(s), false);
    }
    if (include_weak && g.has_weak_edges()) {
        for (StateId s = 0; s < g.size(); ++s) {
            emit(s, g.weak_edges(s), true);
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace natcalc
