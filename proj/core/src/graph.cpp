#include "syncnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <queue>
#include <sstream>

#include "syncnet/error.hpp"
#include "syncnet/random.hpp"

namespace syncnet {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)), adjacency_(n) {
    if (n_ == 0) {
        throw Error(ErrorCode::InvalidGraph, "graph needs at least one vertex");
    }
    for (auto& [u, v] : edges_) {
        if (u >= n_ || v >= n_) {
            throw Error(ErrorCode::InvalidGraph, "edge (" + std::to_string(u) + "," + std::to_string(v) +
                                                     ") out of range for n=" + std::to_string(n_));
        }
        if (u == v) {
            throw Error(ErrorCode::InvalidGraph, "self-loop at vertex " + std::to_string(u));
        }
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
        throw Error(ErrorCode::InvalidGraph, "duplicate edge (" + std::to_string(dup->first) + "," +
                                                 std::to_string(dup->second) + ")");
    }
    for (const auto& [u, v] : edges_) {
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return false;
    const auto& adj = adjacency_[u];
    return std::binary_search(adj.begin(), adj.end(), v);
}

std::size_t Graph::min_degree() const noexcept {
    std::size_t d = adjacency_.front().size();
    for (const auto& adj : adjacency_) d = std::min(d, adj.size());
    return d;
}

std::size_t Graph::max_degree() const noexcept {
    std::size_t d = 0;
    for (const auto& adj : adjacency_) d = std::max(d, adj.size());
    return d;
}

std::size_t Graph::component_count() const {
    std::vector<char> seen(n_, 0);
    std::size_t components = 0;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n_; ++s) {
        if (seen[s]) continue;
        ++components;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex u = stack.back();
            stack.pop_back();
            for (Vertex w : adjacency_[u]) {
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

std::string to_string(RegularKind kind) {
    switch (kind) {
        case RegularKind::Complete: return "complete";
        case RegularKind::Star: return "star";
        case RegularKind::Path: return "path";
        case RegularKind::Ring: return "ring";
    }
    return "unknown";
}

namespace {

std::size_t minimum_size(RegularKind kind) { return kind == RegularKind::Ring ? 3 : 2; }

void require_size(RegularKind kind, std::size_t n) {
    if (n < minimum_size(kind)) {
        throw Error(ErrorCode::TooSmall, to_string(kind) + " graph needs n >= " +
                                             std::to_string(minimum_size(kind)) + ", got " +
                                             std::to_string(n));
    }
}

}  // namespace

Graph build_regular(RegularKind kind, std::size_t n) {
    require_size(kind, n);
    std::vector<Edge> edges;
    switch (kind) {
        case RegularKind::Complete:
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
            break;
        case RegularKind::Star:
            for (Vertex v = 1; v < n; ++v) edges.emplace_back(0, v);
            break;
        case RegularKind::Path:
            for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
            break;
        case RegularKind::Ring:
            for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
            edges.emplace_back(0, n - 1);
            break;
    }
    return Graph(n, std::move(edges));
}

namespace {

class AdjacencyGrid {
public:
    explicit AdjacencyGrid(std::size_t n) : n_(n), bits_(n * n, 0) {}
    bool has(Vertex u, Vertex v) const { return bits_[u * n_ + v] != 0; }
    void set(Vertex u, Vertex v, bool on) { bits_[u * n_ + v] = bits_[v * n_ + u] = on ? 1 : 0; }
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v = u + 1; v < n_; ++v)
                if (has(u, v)) out.emplace_back(u, v);
        return out;
    }

private:
    std::size_t n_;
    std::vector<char> bits_;
};

Graph sample_erdos_renyi(std::size_t n, double p, Rng& rng) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

// Ring lattice with k/2 neighbours per side; each lattice edge (u, u+i) has its
// far endpoint moved, with probability p, to a uniform non-neighbour of u.
Graph sample_watts_strogatz(std::size_t n, std::size_t k, double p, Rng& rng) {
    AdjacencyGrid adj(n);
    for (Vertex u = 0; u < n; ++u)
        for (std::size_t i = 1; i <= k / 2; ++i) adj.set(u, (u + i) % n, true);

    std::vector<Vertex> candidates;
    for (std::size_t i = 1; i <= k / 2; ++i) {
        for (Vertex u = 0; u < n; ++u) {
            const Vertex v = (u + i) % n;
            if (!rng.bernoulli(p)) continue;
            candidates.clear();
            for (Vertex w = 0; w < n; ++w)
                if (w != u && !adj.has(u, w)) candidates.push_back(w);
            if (candidates.empty()) continue;
            const Vertex w = candidates[rng.below(candidates.size())];
            adj.set(u, v, false);
            adj.set(u, w, true);
        }
    }
    return Graph(n, adj.edges());
}

Graph grow_barabasi_albert(std::size_t n, std::size_t m, Rng& rng) {
    std::vector<Edge> edges;
    // One entry per edge endpoint, so a uniform pick is degree-proportional.
    std::vector<Vertex> endpoints;
    for (Vertex u = 0; u < m; ++u)
        for (Vertex v = u + 1; v < m; ++v) {
            edges.emplace_back(u, v);
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    std::vector<Vertex> targets;
    for (Vertex v = m; v < n; ++v) {
        targets.clear();
        while (targets.size() < m) {
            const Vertex t = endpoints.empty() ? static_cast<Vertex>(rng.below(v))
                                               : endpoints[rng.below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
        }
        for (Vertex t : targets) {
            edges.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return Graph(n, std::move(edges));
}

}  // namespace

Graph build_random(const RandomModel& model, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw Error(ErrorCode::TooSmall, "random graph needs n >= 1");
    }
    Rng rng(seed);
    return std::visit(
        [&](const auto& m) -> Graph {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, BarabasiAlbert>) {
                if (m.m < 1 || m.m >= n) {
                    throw Error(ErrorCode::InvalidParams, "BA requires 1 <= m < n");
                }
                return grow_barabasi_albert(n, m.m, rng);
            } else {
                if (!(m.p >= 0.0 && m.p <= 1.0)) {
                    throw Error(ErrorCode::InvalidParams, "probability must lie in [0, 1]");
                }
                if constexpr (std::is_same_v<M, WattsStrogatz>) {
                    if (m.k % 2 != 0 || m.k >= n) {
                        throw Error(ErrorCode::InvalidParams, "WS requires even k < n");
                    }
                }
                for (int attempt = 0; attempt < kConnectRetries; ++attempt) {
                    Graph g = [&] {
                        if constexpr (std::is_same_v<M, ErdosRenyi>) {
                            return sample_erdos_renyi(n, m.p, rng);
                        } else {
                            return sample_watts_strogatz(n, m.k, m.p, rng);
                        }
                    }();
                    if (g.is_connected()) return g;
                }
                throw Error(ErrorCode::Disconnected, "no connected sample after " +
                                                         std::to_string(kConnectRetries) + " attempts");
            }
        },
        model);
}

Matrix laplacian(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<double> d(n * n, 0.0);
    for (Vertex v = 0; v < n; ++v) d[v * n + v] = static_cast<double>(g.degree(v));
    for (const auto& [u, v] : g.edges()) {
        d[u * n + v] = -1.0;
        d[v * n + u] = -1.0;
    }
    return Matrix(n, n, std::move(d));
}

std::size_t diameter(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::size_t best = 0;
    std::vector<std::size_t> dist(n);
    std::queue<Vertex> frontier;
    for (Vertex s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), SIZE_MAX);
        dist[s] = 0;
        frontier.push(s);
        std::size_t reached = 1;
        while (!frontier.empty()) {
            const Vertex u = frontier.front();
            frontier.pop();
            for (Vertex w : g.neighbors(u)) {
                if (dist[w] == SIZE_MAX) {
                    dist[w] = dist[u] + 1;
                    best = std::max(best, dist[w]);
                    ++reached;
                    frontier.push(w);
                }
            }
        }
        if (reached != n) {
            throw Error(ErrorCode::Disconnected, "diameter undefined for a disconnected graph");
        }
    }
    return best;
}

SpectralDecomp spectrum(const Graph& g, SpectrumOptions opts) {
    if (g.vertex_count() > opts.max_vertices) {
        throw Error(ErrorCode::SizeOverflow, "spectrum limited to " + std::to_string(opts.max_vertices) +
                                                 " vertices");
    }
    SpectralDecomp s = jacobi_eig(laplacian(g));
    if (std::abs(s.eigenvalues.front()) <= kZeroEigenvalueTol) s.eigenvalues.front() = 0.0;
    return s;
}

std::size_t zero_eigenvalue_count(const SpectralDecomp& s) noexcept {
    return static_cast<std::size_t>(std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                                                  [](double l) { return l < kZeroEigenvalueTol; }));
}

double lambda2_analytic(RegularKind kind, std::size_t n) {
    require_size(kind, n);
    const double nn = static_cast<double>(n);
    switch (kind) {
        case RegularKind::Complete: return nn;
        case RegularKind::Star: return n == 2 ? 2.0 : 1.0;
        case RegularKind::Path: return 2.0 - 2.0 * std::cos(std::numbers::pi / nn);
        case RegularKind::Ring: return 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / nn);
    }
    return 0.0;
}

Lambda2Bounds lambda2_bounds(const Graph& g) {
    if (g.vertex_count() < 2) {
        throw Error(ErrorCode::TooSmall, "lambda2 bounds need at least two vertices");
    }
    const double n = static_cast<double>(g.vertex_count());
    const double d = static_cast<double>(diameter(g));
    return {4.0 / (n * d), n * static_cast<double>(g.min_degree()) / (n - 1.0)};
}

Graph read_edge_list(std::istream& in) {
    std::string line;
    auto next_content_line = [&]() -> bool {
        while (std::getline(in, line)) {
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_content_line()) {
        throw Error(ErrorCode::Parse, "edge list is empty");
    }
    long long n = -1;
    {
        std::istringstream header(line);
        std::string rest;
        if (!(header >> n) || (header >> rest) || n < 1) {
            throw Error(ErrorCode::Parse, "first line must be a positive vertex count");
        }
    }
    std::vector<Edge> edges;
    std::size_t lineno = 1;
    while (next_content_line()) {
        ++lineno;
        std::istringstream row(line);
        long long u = -1, v = -1;
        std::string rest;
        if (!(row >> u >> v) || (row >> rest) || u < 0 || v < 0) {
            throw Error(ErrorCode::Parse, "bad edge on line " + std::to_string(lineno) + ": '" + line + "'");
        }
        edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return Graph(static_cast<std::size_t>(n), std::move(edges));
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.vertex_count() << '\n';
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::Parse, "cannot open edge list '" + path + "'");
    }
    return read_edge_list(in);
}

void save_edge_list(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::Parse, "cannot write edge list '" + path + "'");
    }
    write_edge_list(out, g);
}

}  // namespace syncnet
