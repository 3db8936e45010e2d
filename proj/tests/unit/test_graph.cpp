#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <sstream>

#include "syncnet/error.hpp"
#include "syncnet/graph.hpp"

using namespace syncnet;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no syncnet::Error thrown";
    return ErrorCode::Parse;
}

std::vector<Graph> random_corpus() {
    std::vector<Graph> out;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 8 + seed % 23;
        switch (seed % 3) {
            case 0: out.push_back(build_random(ErdosRenyi{0.35}, n, seed)); break;
            case 1: out.push_back(build_random(WattsStrogatz{4, 0.2}, n, seed)); break;
            default: out.push_back(build_random(BarabasiAlbert{1 + seed % 3}, n, seed)); break;
        }
    }
    return out;
}

}  // namespace

TEST(GraphTest, ValidationRejectsLoopsDuplicatesAndRange) {
    EXPECT_EQ(code_of([] { Graph(3, {{0, 0}}); }), ErrorCode::InvalidGraph);
    EXPECT_EQ(code_of([] { Graph(3, {{0, 1}, {1, 0}}); }), ErrorCode::InvalidGraph);
    EXPECT_EQ(code_of([] { Graph(3, {{0, 3}}); }), ErrorCode::InvalidGraph);
    const Graph g(3, {{2, 0}, {1, 0}});
    EXPECT_EQ(g.edges(), (std::vector<Edge>{{0, 1}, {0, 2}}));
    EXPECT_TRUE(g.has_edge(2, 0));
    EXPECT_FALSE(g.has_edge(1, 2));
}

TEST(BuildRegularTest, Examples) {
    EXPECT_EQ(build_regular(RegularKind::Complete, 3).edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}));
    EXPECT_EQ(build_regular(RegularKind::Star, 4).edges(), (std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}}));
    EXPECT_EQ(build_regular(RegularKind::Ring, 4).edges(), (std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}, {2, 3}}));
    EXPECT_EQ(build_regular(RegularKind::Path, 3).edges(), (std::vector<Edge>{{0, 1}, {1, 2}}));
}

TEST(BuildRegularTest, TooSmall) {
    EXPECT_EQ(code_of([] { build_regular(RegularKind::Complete, 1); }), ErrorCode::TooSmall);
    EXPECT_EQ(code_of([] { build_regular(RegularKind::Ring, 2); }), ErrorCode::TooSmall);
    EXPECT_NO_THROW(build_regular(RegularKind::Path, 2));
}

TEST(BuildRandomTest, DegenerateModels) {
    EXPECT_EQ(build_random(ErdosRenyi{1.0}, 4, 123), build_regular(RegularKind::Complete, 4));
    EXPECT_EQ(build_random(WattsStrogatz{2, 0.0}, 5, 99), build_regular(RegularKind::Ring, 5));
}

TEST(BuildRandomTest, DeterministicPerSeed) {
    EXPECT_EQ(build_random(ErdosRenyi{0.3}, 20, 5), build_random(ErdosRenyi{0.3}, 20, 5));
    EXPECT_EQ(build_random(WattsStrogatz{4, 0.3}, 20, 5), build_random(WattsStrogatz{4, 0.3}, 20, 5));
    EXPECT_NE(build_random(ErdosRenyi{0.3}, 20, 5), build_random(ErdosRenyi{0.3}, 20, 6));
}

TEST(BuildRandomTest, ErdosRenyiThatCannotConnect) {
    EXPECT_EQ(code_of([] { build_random(ErdosRenyi{0.0}, 5, 1); }), ErrorCode::Disconnected);
}

TEST(BuildRandomTest, WattsStrogatzKeepsEdgeCount) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Graph g = build_random(WattsStrogatz{4, 0.5}, 25, seed);
        EXPECT_EQ(g.edge_count(), 50u);
        EXPECT_TRUE(g.is_connected());
    }
}

TEST(BuildRandomTest, BarabasiAlbertRegressionFixture) {
    const Graph g = build_random(BarabasiAlbert{2}, 30, 7);
    EXPECT_TRUE(g.is_connected());
    // clique of 2 plus 28 vertices attaching 2 edges each
    EXPECT_EQ(g.edge_count(), 57u);
    const double mean = 2.0 * static_cast<double>(g.edge_count()) / 30.0;
    EXPECT_GE(static_cast<double>(g.max_degree()), 1.5 * mean);

    std::map<std::size_t, std::size_t> histogram;
    for (Vertex v = 0; v < 30; ++v) ++histogram[g.degree(v)];
    const std::map<std::size_t, std::size_t> frozen{{2, 16}, {3, 3}, {4, 3}, {5, 2}, {6, 2}, {7, 2}, {10, 1}, {15, 1}};
    EXPECT_EQ(histogram, frozen);
}

TEST(LaplacianTest, Examples) {
    EXPECT_EQ(laplacian(build_regular(RegularKind::Complete, 2)), (Matrix{{1, -1}, {-1, 1}}));
    EXPECT_EQ(laplacian(build_regular(RegularKind::Star, 3)), (Matrix{{2, -1, -1}, {-1, 1, 0}, {-1, 0, 1}}));
    const Matrix r4 = laplacian(build_regular(RegularKind::Ring, 4));
    EXPECT_EQ(r4.row(0)[0], 2.0);
    EXPECT_EQ(r4.row(0)[1], -1.0);
    EXPECT_EQ(r4.row(0)[2], 0.0);
    EXPECT_EQ(r4.row(0)[3], -1.0);
}

TEST(DiameterTest, Examples) {
    EXPECT_EQ(diameter(build_regular(RegularKind::Complete, 5)), 1u);
    EXPECT_EQ(diameter(build_regular(RegularKind::Path, 4)), 3u);
    EXPECT_EQ(diameter(build_regular(RegularKind::Ring, 6)), 3u);
    EXPECT_EQ(diameter(build_regular(RegularKind::Ring, 7)), 3u);
    EXPECT_EQ(code_of([] { diameter(Graph(4, {{0, 1}, {2, 3}})); }), ErrorCode::Disconnected);
}

TEST(SpectrumTest, Examples) {
    const auto k3 = spectrum(build_regular(RegularKind::Complete, 3)).eigenvalues;
    EXPECT_EQ(k3[0], 0.0);
    EXPECT_NEAR(k3[1], 3.0, 1e-12);
    EXPECT_NEAR(k3[2], 3.0, 1e-12);

    const auto s4 = spectrum(build_regular(RegularKind::Star, 4)).eigenvalues;
    EXPECT_NEAR(s4[1], 1.0, 1e-12);
    EXPECT_NEAR(s4[2], 1.0, 1e-12);
    EXPECT_NEAR(s4[3], 4.0, 1e-12);

    const SpectralDecomp split = spectrum(Graph(4, {{0, 1}, {2, 3}}));
    EXPECT_EQ(zero_eigenvalue_count(split), 2u);
    EXPECT_EQ(Graph(4, {{0, 1}, {2, 3}}).component_count(), 2u);
}

TEST(SpectrumTest, VertexCap) {
    EXPECT_EQ(code_of([] { spectrum(build_regular(RegularKind::Path, 10), SpectrumOptions{9}); }),
              ErrorCode::SizeOverflow);
}

TEST(SpectrumTest, StarMultiplicities) {
    for (std::size_t n = 3; n <= 40; ++n) {
        const auto ev = spectrum(build_regular(RegularKind::Star, n)).eigenvalues;
        std::size_t ones = 0;
        for (double v : ev) ones += std::abs(v - 1.0) < 1e-9;
        EXPECT_EQ(ones, n - 2) << n;
        EXPECT_EQ(ev[0], 0.0);
        EXPECT_NEAR(ev.back(), static_cast<double>(n), 1e-9);
    }
}

TEST(Lambda2AnalyticTest, Examples) {
    EXPECT_EQ(lambda2_analytic(RegularKind::Complete, 10), 10.0);
    EXPECT_NEAR(lambda2_analytic(RegularKind::Ring, 4), 2.0, 1e-15);
    EXPECT_NEAR(lambda2_analytic(RegularKind::Path, 2), 2.0, 1e-15);
    EXPECT_EQ(lambda2_analytic(RegularKind::Star, 7), 1.0);
}

TEST(Lambda2AnalyticTest, MatchesNumericSpectrum) {
    for (RegularKind kind : {RegularKind::Complete, RegularKind::Star, RegularKind::Path, RegularKind::Ring}) {
        for (std::size_t n = 3; n <= 40; ++n) {
            const double numeric = spectrum(build_regular(kind, n)).eigenvalues[1];
            EXPECT_NEAR(numeric, lambda2_analytic(kind, n), 1e-9) << to_string(kind) << ' ' << n;
        }
    }
}

TEST(Lambda2BoundsTest, Examples) {
    const Lambda2Bounds k4 = lambda2_bounds(build_regular(RegularKind::Complete, 4));
    EXPECT_DOUBLE_EQ(k4.lower, 1.0);
    EXPECT_DOUBLE_EQ(k4.upper, 4.0);
    const Lambda2Bounds p3 = lambda2_bounds(build_regular(RegularKind::Path, 3));
    EXPECT_DOUBLE_EQ(p3.lower, 4.0 / 6.0);
    EXPECT_DOUBLE_EQ(p3.upper, 1.5);
    const Lambda2Bounds r6 = lambda2_bounds(build_regular(RegularKind::Ring, 6));
    EXPECT_DOUBLE_EQ(r6.lower, 4.0 / 18.0);
    EXPECT_DOUBLE_EQ(r6.upper, 2.4);
    EXPECT_NEAR(2.0 - 2.0 * std::cos(std::numbers::pi / 3.0), 1.0, 1e-15);
}

TEST(GraphProperties, LaplacianInvariantsOnRandomGraphs) {
    for (const Graph& g : random_corpus()) {
        ASSERT_TRUE(g.is_connected());
        const std::size_t n = g.vertex_count();
        const Matrix l = laplacian(g);
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                EXPECT_EQ(l(i, j), l(j, i));
                row += l(i, j);
            }
            EXPECT_EQ(row, 0.0);
            trace += l(i, i);
        }
        EXPECT_EQ(trace, 2.0 * static_cast<double>(g.edge_count()));

        const SpectralDecomp s = spectrum(g);
        EXPECT_GE(s.eigenvalues.front(), -1e-9);
        EXPECT_EQ(zero_eigenvalue_count(s), 1u);
        const double first = s.eigenvectors(0, 0);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(s.eigenvectors(i, 0), first, 1e-8);
    }
}

TEST(GraphProperties, Lambda2BoundsHoldOnRandomGraphs) {
    std::size_t violations = 0;
    for (const Graph& g : random_corpus()) {
        const Lambda2Bounds b = lambda2_bounds(g);
        const double l2 = spectrum(g).eigenvalues[1];
        violations += !(b.lower <= l2 + 1e-12 && l2 <= b.upper + 1e-12);
    }
    EXPECT_EQ(violations, 0u);
}

TEST(EdgeListTest, RoundTripPreservesLaplacian) {
    const Graph g = build_random(WattsStrogatz{4, 0.3}, 15, 3);
    std::stringstream buf;
    write_edge_list(buf, g);
    const Graph back = read_edge_list(buf);
    EXPECT_EQ(back, g);
    EXPECT_EQ(laplacian(back), laplacian(g));

    const auto path = std::filesystem::temp_directory_path() / "syncnet_edge_list_test.txt";
    save_edge_list(path.string(), g);
    EXPECT_EQ(load_edge_list(path.string()), g);
    std::filesystem::remove(path);
}

TEST(EdgeListTest, ReaderRejectsBadInput) {
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return read_edge_list(in);
    };
    EXPECT_EQ(code_of([&] { parse("3\n0 1\n1 1\n"); }), ErrorCode::InvalidGraph);
    EXPECT_EQ(code_of([&] { parse("3\n0 1\n1 0\n"); }), ErrorCode::InvalidGraph);
    EXPECT_EQ(code_of([&] { parse("3\n0 x\n"); }), ErrorCode::Parse);
    EXPECT_EQ(code_of([&] { parse(""); }), ErrorCode::Parse);
    EXPECT_EQ(parse("3\n0 1\n\n1 2\n").edge_count(), 2u);
    EXPECT_EQ(code_of([] { load_edge_list("/nonexistent/syncnet/graph.txt"); }), ErrorCode::Parse);
}
