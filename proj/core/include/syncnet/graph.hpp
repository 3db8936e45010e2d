#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "syncnet/matrix.hpp"

namespace syncnet {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;  // stored with first < second

/// Simple undirected graph on vertices 0..n-1.
class Graph {
public:
    /// Throws InvalidGraph on self-loops, duplicate edges, or out-of-range endpoints.
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    bool has_edge(Vertex u, Vertex v) const;

    std::size_t min_degree() const noexcept;
    std::size_t max_degree() const noexcept;
    std::size_t component_count() const;
    bool is_connected() const { return component_count() == 1; }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_;
    std::vector<Edge> edges_;  // sorted
    std::vector<std::vector<Vertex>> adjacency_;  // each list sorted
};

enum class RegularKind { Complete, Star, Path, Ring };

std::string to_string(RegularKind kind);

/// Edge sets for the regular families. Star hub is vertex 0. Throws TooSmall
/// for n < 2 (n < 3 for Ring).
Graph build_regular(RegularKind kind, std::size_t n);

struct ErdosRenyi {
    double p;
};
struct WattsStrogatz {
    std::size_t k;  // even, ring-lattice degree
    double p;       // rewiring probability
};
struct BarabasiAlbert {
    std::size_t m;  // edges attached per new vertex
};
using RandomModel = std::variant<ErdosRenyi, WattsStrogatz, BarabasiAlbert>;

/// Connection attempts for ER/WS before giving up with Disconnected.
inline constexpr int kConnectRetries = 1000;

/// Deterministic for a given (model, n, seed). ER and WS are resampled until
/// connected; BA grows from an m-clique by preferential attachment.
Graph build_random(const RandomModel& model, std::size_t n, std::uint64_t seed);

/// L = D - A.
Matrix laplacian(const Graph& g);

/// Longest BFS shortest path. Throws Disconnected.
std::size_t diameter(const Graph& g);

inline constexpr double kZeroEigenvalueTol = 1e-9;

struct SpectrumOptions {
    std::size_t max_vertices = 500;
};

/// Laplacian eigendecomposition with lambda_1 clamped to 0 when within
/// kZeroEigenvalueTol.
SpectralDecomp spectrum(const Graph& g, SpectrumOptions opts = {});

/// Number of Laplacian eigenvalues below kZeroEigenvalueTol.
std::size_t zero_eigenvalue_count(const SpectralDecomp& s) noexcept;

/// Closed-form algebraic connectivity for the regular families.
double lambda2_analytic(RegularKind kind, std::size_t n);

struct Lambda2Bounds {
    double lower;  // 4 / (n d)
    double upper;  // n g_min / (n - 1)
};

Lambda2Bounds lambda2_bounds(const Graph& g);

/// Edge-list text: first line "n", then one "u v" pair per line (0-indexed).
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);
Graph load_edge_list(const std::string& path);
void save_edge_list(const std::string& path, const Graph& g);

}  // namespace syncnet
