#include "bgg/game.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <nlohmann/json.hpp>

#include "bgg/errors.hpp"

namespace bgg {

using nlohmann::json;

bool GameGraph::is_target(int v) const {
    return std::binary_search(targets.begin(), targets.end(), v);
}

bool GameGraph::parity_complete() const {
    if (ids.empty()) return false;
    for (int x : parity)
        if (x <= 0) return false;
    return true;
}

bool GameGraph::has_edge(int from, int to) const {
    const auto& row = adj[static_cast<std::size_t>(from)];
    return std::binary_search(row.begin(), row.end(), to);
}

int GameGraph::vertex(const std::string& id) const {
    auto it = index.find(id);
    return it == index.end() ? -1 : it->second;
}

int GameGraph::require_vertex(const std::string& id) const {
    int v = vertex(id);
    if (v < 0) throw ValidationError("unknown vertex id '" + id + "'");
    return v;
}

GameGraph build_game(const std::vector<VertexSpec>& vertices,
                     const std::vector<std::pair<std::string, std::string>>& edges,
                     const std::vector<std::string>& targets) {
    GameGraph g;
    if (vertices.empty()) throw ValidationError("game has no vertices");
    for (const auto& vs : vertices) {
        if (vs.id.empty()) throw ValidationError("empty vertex id");
        if (g.index.count(vs.id)) throw ValidationError("duplicate vertex '" + vs.id + "'");
        g.index.emplace(vs.id, g.n());
        g.ids.push_back(vs.id);
        g.weight.push_back(vs.weight);
        if (vs.parity) {
            if (*vs.parity <= 0)
                throw ValidationError("vertex '" + vs.id + "': parity index must be a positive integer");
            g.parity.push_back(*vs.parity);
        } else {
            g.parity.push_back(0);
        }
    }

    std::vector<std::set<int>> out(static_cast<std::size_t>(g.n()));
    for (const auto& [from, to] : edges) {
        int a = g.vertex(from), b = g.vertex(to);
        if (a < 0 || b < 0)
            throw ValidationError("edge [" + from + ", " + to + "] references an undeclared vertex");
        out[static_cast<std::size_t>(a)].insert(b);
    }
    g.adj.resize(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        auto& row = out[static_cast<std::size_t>(v)];
        if (row.empty())
            throw ValidationError("sink vertex '" + g.ids[static_cast<std::size_t>(v)] +
                                  "' has no outgoing edge");
        g.adj[static_cast<std::size_t>(v)].assign(row.begin(), row.end());
        for (int u : row) g.edge_list.emplace_back(v, u);
    }

    std::set<int> tset;
    for (const auto& id : targets) {
        int v = g.vertex(id);
        if (v < 0) throw ValidationError("target '" + id + "' is not a declared vertex");
        tset.insert(v);
    }
    g.targets.assign(tset.begin(), tset.end());
    return g;
}

namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Rat weight_of(const json& j, const std::string& id) {
    try {
        if (j.is_number_integer()) return Rat(Int(j.get<long long>()), 1);
        if (j.is_string()) return parse_rational(j.get<std::string>(), /*allow_decimal=*/false);
    } catch (const std::invalid_argument& e) {
        throw ValidationError("vertex '" + id + "': " + e.what());
    }
    throw ValidationError("vertex '" + id + "': weight must be an integer or a \"p/q\" string");
}

} // namespace

GameGraph parse_game(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("game file: " + std::string(e.what()), line, col);
    }
    if (!doc.is_object()) throw ValidationError("game file: top level must be an object");
    if (!doc.contains("vertices") || !doc["vertices"].is_array())
        throw ValidationError("game file: missing 'vertices' array");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ValidationError("game file: missing 'edges' array");

    std::vector<VertexSpec> vertices;
    for (const auto& jv : doc["vertices"]) {
        if (!jv.is_object() || !jv.contains("id") || !jv["id"].is_string())
            throw ValidationError("game file: each vertex needs a string 'id'");
        VertexSpec vs;
        vs.id = jv["id"].get<std::string>();
        if (!jv.contains("weight"))
            throw ValidationError("vertex '" + vs.id + "': missing weight");
        vs.weight = weight_of(jv["weight"], vs.id);
        if (jv.contains("parity")) {
            if (!jv["parity"].is_number_integer())
                throw ValidationError("vertex '" + vs.id + "': parity must be an integer");
            vs.parity = jv["parity"].get<int>();
        }
        vertices.push_back(std::move(vs));
    }

    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& je : doc["edges"]) {
        if (!je.is_array() || je.size() != 2 || !je[0].is_string() || !je[1].is_string())
            throw ValidationError("game file: each edge must be a [from, to] pair of ids");
        edges.emplace_back(je[0].get<std::string>(), je[1].get<std::string>());
    }

    std::vector<std::string> targets;
    if (doc.contains("targets")) {
        if (!doc["targets"].is_array())
            throw ValidationError("game file: 'targets' must be an array of ids");
        for (const auto& jt : doc["targets"]) {
            if (!jt.is_string()) throw ValidationError("game file: targets must be vertex ids");
            targets.push_back(jt.get<std::string>());
        }
    }

    return build_game(vertices, edges, targets);
}

GameGraph negate_weights(const GameGraph& g) {
    GameGraph out = g;
    for (auto& w : out.weight) w = -w;
    return out;
}

GameGraph induced_subgame(const GameGraph& g, const std::vector<int>& keep,
                          std::vector<int>* old_to_new) {
    std::vector<int> map(static_cast<std::size_t>(g.n()), -1);
    std::vector<VertexSpec> vertices;
    for (int v : keep) {
        map[static_cast<std::size_t>(v)] = static_cast<int>(vertices.size());
        VertexSpec vs;
        vs.id = g.ids[static_cast<std::size_t>(v)];
        vs.weight = g.weight[static_cast<std::size_t>(v)];
        if (g.parity[static_cast<std::size_t>(v)] > 0) vs.parity = g.parity[static_cast<std::size_t>(v)];
        vertices.push_back(std::move(vs));
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (int v : keep)
        for (int u : g.out(v))
            if (map[static_cast<std::size_t>(u)] >= 0)
                edges.emplace_back(g.ids[static_cast<std::size_t>(v)], g.ids[static_cast<std::size_t>(u)]);
    std::vector<std::string> targets;
    for (int t : g.targets)
        if (map[static_cast<std::size_t>(t)] >= 0) targets.push_back(g.ids[static_cast<std::size_t>(t)]);
    if (old_to_new) *old_to_new = map;
    return build_game(vertices, edges, targets);
}

std::vector<int> bfs_dist_to(const GameGraph& g, const std::vector<int>& set) {
    std::vector<std::vector<int>> radj(static_cast<std::size_t>(g.n()));
    for (auto [a, b] : g.edge_list) radj[static_cast<std::size_t>(b)].push_back(a);
    std::vector<int> dist(static_cast<std::size_t>(g.n()), -1);
    std::deque<int> queue;
    for (int t : set) {
        dist[static_cast<std::size_t>(t)] = 0;
        queue.push_back(t);
    }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : radj[static_cast<std::size_t>(v)])
            if (dist[static_cast<std::size_t>(u)] < 0) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

} // namespace bgg
