#pragma once

// Core data model: patterns (trees and bounded-degree graphs), edge-coloured
// host graphs with dense bit-set adjacency rows, embeddings, colour profiles
// and signed sums for two-coloured hosts.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace gdisc {

// Exhaustive versus randomized evaluation, for decision and counting
// procedures that offer both.
enum class DecisionMode { Exact, Sampled };

// Result of a counting procedure: an exact non-negative integer, or an
// unbiased estimate with its standard error.
struct CountEstimate {
    double count;
    bool exact;
    double stderrEstimate;  // 0 in exact mode
};

// Thrown when an operation that requires a ghost-free embedding meets a
// pattern edge whose image is absent from the host.
struct ghost_edge_error : std::runtime_error {
    int pu, pv;  // pattern endpoints of the offending edge
    ghost_edge_error(int u, int v)
        : std::runtime_error("ghost edge on pattern pair (" + std::to_string(u) + "," +
                             std::to_string(v) + ")"),
          pu(u),
          pv(v) {}
};

// Thrown by apply_switching when a replacement edge is absent from the host.
struct ghost_replacement_error : std::runtime_error {
    int hu, hv;  // host endpoints of the missing replacement edge
    ghost_replacement_error(int u, int v)
        : std::runtime_error("replacement edge (" + std::to_string(u) + "," +
                             std::to_string(v) + ") absent from host"),
          hu(u),
          hv(v) {}
};

// Simple undirected graph on vertices 0..n-1, adjacency lists kept sorted.
// Used for the embedded structures: trees and bounded-degree patterns.
class PatternGraph {
  public:
    PatternGraph() = default;
    explicit PatternGraph(int n) : n_(n), adj_(n) {}

    static PatternGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int n() const { return n_; }
    int m() const { return m_; }
    void add_edge(int u, int v);
    bool has_edge(int u, int v) const;
    const std::vector<int>& neighbours(int v) const { return adj_.at(v); }
    int degree(int v) const { return (int)adj_.at(v).size(); }
    int max_degree() const;
    bool connected() const;
    // Edges as (u,v) with u < v, lexicographic.
    std::vector<std::pair<int, int>> edges() const;

  private:
    int n_ = 0;
    int m_ = 0;
    std::vector<std::vector<int>> adj_;
};

// A validated tree. Construction checks connectivity and edge count.
class TreeGraph : public PatternGraph {
  public:
    TreeGraph() = default;
    explicit TreeGraph(const PatternGraph& g);
    static TreeGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
    static TreeGraph path(int n);
    static TreeGraph star(int n);
};

// Edge-coloured host graph.  Colours are 1..r; absent pairs read colour 0.
// Presence is mirrored in per-row bit sets for fast neighbourhood
// intersections; colours live in a flat byte matrix.
class HostColouredGraph {
  public:
    HostColouredGraph() = default;
    HostColouredGraph(int n, int r);

    // Complete host with every edge in colour c.
    static HostColouredGraph complete(int n, int r, int c);

    int n() const { return n_; }
    int r() const { return r_; }
    int words() const { return words_; }

    bool has_edge(int u, int v) const { return colour_[(size_t)u * n_ + v] != 0; }
    int colour(int u, int v) const { return colour_[(size_t)u * n_ + v]; }
    void set_edge(int u, int v, int c);
    void remove_edge(int u, int v);

    const uint64_t* row(int u) const { return &adj_[(size_t)u * words_]; }

    long long edge_count() const;
    int degree(int v) const;
    int min_degree() const;
    // counts[c] = number of edges in colour c, index 0 unused.
    std::vector<long long> class_sizes() const;
    // Host neighbours of v, ascending.
    std::vector<int> neighbours(int v) const;
    // All edges (u,v,c) with u < v, lexicographic.
    std::vector<std::tuple<int, int, int>> edges() const;

  private:
    int n_ = 0;
    int r_ = 0;
    int words_ = 0;
    std::vector<uint8_t> colour_;
    std::vector<uint64_t> adj_;
    void check_pair(int u, int v) const;
};

// Injective map from pattern vertices to host vertices.  Stored as a plain
// vector; validity (totality, injectivity, range) is checked by the
// operations that need it.
class Embedding {
  public:
    Embedding() = default;
    explicit Embedding(std::vector<int> toHost) : map_(std::move(toHost)) {}

    int size() const { return (int)map_.size(); }
    int operator()(int pv) const { return map_.at(pv); }
    int& at(int pv) { return map_.at(pv); }
    const std::vector<int>& map() const { return map_; }

    // Throws std::invalid_argument unless the map is total, injective and
    // within [0, hostN).
    void check_valid(int hostN) const;
    // inverse[h] = pattern vertex mapped to h, or -1.
    std::vector<int> inverse(int hostN) const;

    bool operator==(const Embedding& o) const { return map_ == o.map_; }

  private:
    std::vector<int> map_;
};

// Per-colour edge counts of an embedded copy.
struct ColourProfile {
    std::vector<long long> counts;  // index by colour id, [0] unused
    long long total() const;
    bool operator==(const ColourProfile& o) const { return counts == o.counts; }
};

// A maximal path whose internal vertices all have degree 2 in the tree.
struct BarePath {
    std::vector<int> vertices;  // endpoints first/last, internal between
    int internal_count() const { return (int)vertices.size() - 2; }
};

// Pattern edges whose images are absent from the host, lexicographic.
// Throws std::invalid_argument on a malformed embedding.
std::vector<std::pair<int, int>> validate_embedding(const PatternGraph& pattern,
                                                    const HostColouredGraph& host,
                                                    const Embedding& emb);

// Colour counts over the copy's edges.  Throws ghost_edge_error on a ghost.
ColourProfile colour_profile(const PatternGraph& pattern, const HostColouredGraph& host,
                             const Embedding& emb);

// Signed sum for 2-coloured hosts: colour 1 counts +1, colour 2 counts -1.
// Requires host.r() == 2.
int signed_sum(const PatternGraph& pattern, const HostColouredGraph& host, const Embedding& emb);
int signed_colour_value(int colour);

// Partition of E(T) into maximal bare paths.  Deterministic order: paths
// sorted by their smallest edge.  n = 1 yields an empty list.
std::vector<BarePath> bare_path_decomposition(const TreeGraph& tree);

// hist[d] = number of vertices of degree d, d = 1..max_degree.
std::vector<int> degree_histogram(const PatternGraph& g);

}  // namespace gdisc
