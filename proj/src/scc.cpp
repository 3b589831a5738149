#include "bgg/scc.hpp"

#include <algorithm>
#include <set>

namespace bgg {

namespace {

// Iterative Tarjan; roots visited in index order keeps the output
// deterministic.
struct TarjanState {
    const std::vector<std::vector<int>>& adj;
    std::vector<int> dfn, low, comp;
    std::vector<bool> on_stack;
    std::vector<int> stack;
    int counter = 0;
    int ncomp = 0;
    std::vector<std::vector<int>> comps_reverse_topo;

    explicit TarjanState(const std::vector<std::vector<int>>& a)
        : adj(a),
          dfn(a.size(), -1),
          low(a.size(), 0),
          comp(a.size(), -1),
          on_stack(a.size(), false) {}

    void run(int root) {
        // explicit DFS stack: (vertex, next-edge-position)
        std::vector<std::pair<int, std::size_t>> frames;
        frames.emplace_back(root, 0);
        dfn[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < adj[static_cast<std::size_t>(v)].size()) {
                int u = adj[static_cast<std::size_t>(v)][pos++];
                if (dfn[u] < 0) {
                    dfn[u] = low[u] = counter++;
                    stack.push_back(u);
                    on_stack[u] = true;
                    frames.emplace_back(u, 0);
                } else if (on_stack[u]) {
                    low[v] = std::min(low[v], dfn[u]);
                }
            } else {
                if (low[v] == dfn[v]) {
                    std::vector<int> scc;
                    int x;
                    do {
                        x = stack.back();
                        stack.pop_back();
                        on_stack[x] = false;
                        comp[x] = ncomp;
                        scc.push_back(x);
                    } while (x != v);
                    std::sort(scc.begin(), scc.end());
                    comps_reverse_topo.push_back(std::move(scc));
                    ++ncomp;
                }
                int done = v;
                frames.pop_back();
                if (!frames.empty()) {
                    int parent = frames.back().first;
                    low[parent] = std::min(low[parent], low[done]);
                }
            }
        }
    }
};

} // namespace

SccDecomposition scc_of_adjacency(const std::vector<std::vector<int>>& adj) {
    TarjanState t(adj);
    for (int v = 0; v < static_cast<int>(adj.size()); ++v)
        if (t.dfn[v] < 0) t.run(v);

    SccDecomposition d;
    int ncomp = t.ncomp;
    // Tarjan emits components in reverse topological order.
    d.components.assign(t.comps_reverse_topo.rbegin(), t.comps_reverse_topo.rend());
    d.comp_of.assign(adj.size(), -1);
    for (int c = 0; c < ncomp; ++c)
        for (int v : d.components[static_cast<std::size_t>(c)])
            d.comp_of[static_cast<std::size_t>(v)] = c;

    std::set<std::pair<int, int>> cedges;
    for (int v = 0; v < static_cast<int>(adj.size()); ++v)
        for (int u : adj[static_cast<std::size_t>(v)]) {
            int a = d.comp_of[static_cast<std::size_t>(v)], b = d.comp_of[static_cast<std::size_t>(u)];
            if (a != b) cedges.emplace(a, b);
        }
    d.condensation_edges.assign(cedges.begin(), cedges.end());
    d.is_bottom.assign(static_cast<std::size_t>(ncomp), true);
    for (auto [a, b] : d.condensation_edges) {
        (void)b;
        d.is_bottom[static_cast<std::size_t>(a)] = false;
    }
    return d;
}

SccDecomposition scc_decompose(const GameGraph& g) { return scc_of_adjacency(g.adj); }

bool strongly_connected(const GameGraph& g) { return scc_decompose(g).size() == 1; }

} // namespace bgg
