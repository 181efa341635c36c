#include "rds/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>

namespace rds {

Graph::Graph(std::vector<std::vector<Vertex>> adjacency) {
    const std::size_t n = adjacency.size();
    offsets_.assign(n + 1, 0);
    for (std::size_t u = 0; u < n; ++u) {
        auto& list = adjacency[u];
        std::sort(list.begin(), list.end());
        offsets_[u + 1] = offsets_[u] + list.size();
    }
    neighbors_.reserve(offsets_[n]);
    for (const auto& list : adjacency) neighbors_.insert(neighbors_.end(), list.begin(), list.end());
    check_invariants();
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges, CleaningReport* report) {
    CleaningReport local;
    std::vector<Edge> oriented;
    oriented.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range: " + std::to_string(std::max(u, v)));
        if (u == v) {
            ++local.self_loops;
            continue;
        }
        oriented.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(oriented.begin(), oriented.end());
    const auto last = std::unique(oriented.begin(), oriented.end());
    local.duplicates = static_cast<std::size_t>(oriented.end() - last);
    oriented.erase(last, oriented.end());

    std::vector<std::size_t> offsets(n + 1, 0);
    for (auto [u, v] : oriented) {
        ++offsets[u + 1];
        ++offsets[v + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<Vertex> neighbors(offsets[n]);
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    // Both endpoints are filled in one scan, so lists come out interleaved.
    for (auto [u, v] : oriented) {
        neighbors[cursor[u]++] = v;
        neighbors[cursor[v]++] = u;
    }
    for (std::size_t u = 0; u < n; ++u)
        std::sort(neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[u]),
                  neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]));

    if (report) *report = local;
    return Graph(CsrTag{}, std::move(offsets), std::move(neighbors));
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::size_t> Graph::degrees() const {
    std::vector<std::size_t> d(num_vertices());
    for (std::size_t u = 0; u < d.size(); ++u) d[u] = degree(static_cast<Vertex>(u));
    return d;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < num_vertices(); ++u)
        for (Vertex v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

void Graph::check_invariants() const {
    const std::size_t n = num_vertices();
    for (Vertex u = 0; u < n; ++u) {
        const auto nb = neighbors(u);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            const Vertex v = nb[i];
            if (v >= n) throw std::invalid_argument("neighbour out of range at vertex " + std::to_string(u));
            if (v == u) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
            if (i > 0 && nb[i - 1] == v)
                throw std::invalid_argument("repeated neighbour at vertex " + std::to_string(u));
            if (!has_edge(v, u))
                throw std::invalid_argument("asymmetric adjacency between " + std::to_string(u) + " and " +
                                            std::to_string(v));
        }
    }
}

double mean_degree(const Graph& g) {
    if (g.num_vertices() == 0) throw std::domain_error("mean degree of an empty graph");
    return 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(g.num_vertices());
}

ComponentLabeling connected_components(const Graph& g) {
    const std::size_t n = g.num_vertices();
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    std::vector<std::uint32_t> raw(n, unset);
    std::vector<std::size_t> sizes;
    std::queue<Vertex> frontier;
    for (Vertex s = 0; s < n; ++s) {
        if (raw[s] != unset) continue;
        const auto id = static_cast<std::uint32_t>(sizes.size());
        sizes.push_back(0);
        raw[s] = id;
        frontier.push(s);
        while (!frontier.empty()) {
            const Vertex u = frontier.front();
            frontier.pop();
            ++sizes[id];
            for (Vertex v : g.neighbors(u)) {
                if (raw[v] == unset) {
                    raw[v] = id;
                    frontier.push(v);
                }
            }
        }
    }
    // Raw ids are already in order of smallest contained vertex, so a stable
    // sort by size gives the required tie-break.
    std::vector<std::uint32_t> order(sizes.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return sizes[a] > sizes[b]; });
    std::vector<std::uint32_t> rank(sizes.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

    ComponentLabeling out;
    out.label.resize(n);
    for (std::size_t u = 0; u < n; ++u) out.label[u] = rank[raw[u]];
    out.component_sizes.resize(sizes.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) out.component_sizes[i] = sizes[order[i]];
    return out;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    const auto shift = static_cast<Vertex>(a.num_vertices());
    std::vector<Edge> edges = a.edges();
    for (auto [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
    return Graph::from_edges(a.num_vertices() + b.num_vertices(), edges);
}

}  // namespace rds
