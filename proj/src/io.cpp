#include "stdp/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace stdp {

using nlohmann::json;

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    try {
        int n = doc.at("n").get<int>();
        int s = doc.at("s").get<int>();
        int t = doc.at("t").get<int>();
        std::vector<std::array<long long, 3>> raw;
        for (const auto& e : doc.at("edges")) {
            if (!e.is_array() || e.size() != 3) throw ParseError("each edge must be [u, v, w]");
            raw.push_back({e[0].get<long long>(), e[1].get<long long>(), e[2].get<long long>()});
        }
        return build_instance(n, raw, s, t);
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad instance: ") + e.what());
    } catch (const GraphError& e) {
        throw ParseError(std::string("bad instance: ") + e.what());
    }
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string instance_to_json(const Instance& inst) {
    json edges = json::array();
    for (const Edge& e : inst.edges()) edges.push_back({e.u, e.v, e.w / 2});
    json doc = {{"n", inst.n()}, {"s", inst.s()}, {"t", inst.t()}, {"edges", edges}};
    return doc.dump();
}

std::string solution_to_json(const std::optional<Solution>& sol) {
    if (!sol) return json{{"feasible", false}}.dump();
    json doc = {{"feasible", true}, {"weight", sol->weight / 2}, {"paths", {sol->p1, sol->p2}}};
    return doc.dump();
}

std::string path_text(const Path& p) {
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) out += (i ? " " : "") + std::to_string(p[i]);
    return out;
}

std::string to_dot(const Instance& inst, const Solution* sol) {
    std::set<std::pair<int, int>> on[2];
    if (sol) {
        const Path* ps[2] = {&sol->p1, &sol->p2};
        for (int k = 0; k < 2; ++k)
            for (size_t i = 0; i + 1 < ps[k]->size(); ++i) {
                int a = (*ps[k])[i], b = (*ps[k])[i + 1];
                on[k].insert({std::min(a, b), std::max(a, b)});
            }
    }
    std::ostringstream out;
    out << "graph stdp {\n";
    out << "  " << inst.s() << " [shape=doublecircle, label=\"s=" << inst.s() << "\"];\n";
    out << "  " << inst.t() << " [shape=doublecircle, label=\"t=" << inst.t() << "\"];\n";
    for (const Edge& e : inst.edges()) {
        out << "  " << e.u << " -- " << e.v << " [label=\"" << e.w / 2 << "\"";
        if (e.w < 0) out << ", style=dashed";
        if (on[0].count({e.u, e.v})) out << ", color=blue, penwidth=2";
        if (on[1].count({e.u, e.v})) out << ", color=red, penwidth=2";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace stdp
