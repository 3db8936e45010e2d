#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace syncnet {

struct Rk4Buffers {
    std::vector<double> k1, k2, k3, k4, stage;

    explicit Rk4Buffers(std::size_t n) : k1(n), k2(n), k3(n), k4(n), stage(n) {}
};

/// One classical RK4 step of x' = rhs(t, x, out), in place.
template <class Rhs>
void rk4_step(Rhs&& rhs, double t, double dt, std::span<double> x, Rk4Buffers& b) {
    const std::size_t n = x.size();
    const double half = 0.5 * dt;
    rhs(t, std::span<const double>(x), std::span<double>(b.k1));
    for (std::size_t i = 0; i < n; ++i) b.stage[i] = x[i] + half * b.k1[i];
    rhs(t + half, std::span<const double>(b.stage), std::span<double>(b.k2));
    for (std::size_t i = 0; i < n; ++i) b.stage[i] = x[i] + half * b.k2[i];
    rhs(t + half, std::span<const double>(b.stage), std::span<double>(b.k3));
    for (std::size_t i = 0; i < n; ++i) b.stage[i] = x[i] + dt * b.k3[i];
    rhs(t + dt, std::span<const double>(b.stage), std::span<double>(b.k4));
    const double sixth = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i) x[i] += sixth * (b.k1[i] + 2.0 * b.k2[i] + 2.0 * b.k3[i] + b.k4[i]);
}

}  // namespace syncnet
