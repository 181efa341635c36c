#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace rds {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Counts of what was removed while building a simple graph from raw edges.
struct CleaningReport {
    std::size_t self_loops = 0;
    std::size_t duplicates = 0;
};

/// Immutable undirected simple graph in compressed sparse row form.
///
/// Neighbour lists are sorted ascending. The object is safe to share across
/// threads once constructed.
class Graph {
public:
    Graph() = default;

    /// Builds from per-vertex adjacency lists. Throws std::invalid_argument if
    /// the lists are not symmetric, contain self-loops or repeated entries, or
    /// reference out-of-range vertices. Lists need not be sorted.
    explicit Graph(std::vector<std::vector<Vertex>> adjacency);

    /// Builds a simple graph over vertices [0, n) from an arbitrary edge list,
    /// dropping self-loops and collapsing repeated edges.
    static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                            CleaningReport* report = nullptr);

    std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_edges() const { return neighbors_.size() / 2; }

    std::size_t degree(Vertex u) const { return offsets_[u + 1] - offsets_[u]; }

    std::span<const Vertex> neighbors(Vertex u) const {
        return {neighbors_.data() + offsets_[u], degree(u)};
    }

    bool has_edge(Vertex u, Vertex v) const;

    std::vector<std::size_t> degrees() const;

    /// Edges with u < v, in lexicographic order.
    std::vector<Edge> edges() const;

private:
    struct CsrTag {};
    Graph(CsrTag, std::vector<std::size_t> offsets, std::vector<Vertex> neighbors)
        : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {}

    void check_invariants() const;

    std::vector<std::size_t> offsets_;
    std::vector<Vertex> neighbors_;
};

/// (1/n) * sum of degrees. Throws std::domain_error on an empty graph.
double mean_degree(const Graph& g);

struct ComponentLabeling {
    std::vector<std::uint32_t> label;        // per vertex
    std::vector<std::size_t> component_sizes;  // indexed by label, descending
};

/// Breadth-first component labelling. Component 0 is the largest; ties are
/// ordered by the smallest vertex index they contain.
ComponentLabeling connected_components(const Graph& g);

/// Disjoint union; vertices of `b` are shifted by a.num_vertices().
Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace rds
