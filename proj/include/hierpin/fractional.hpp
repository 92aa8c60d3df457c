#pragma once

// Scalars of the fractional-moment method. For theta in (0,1] the map
//   g_theta(x) = (x^s + (b-1)^theta) / b^theta
// drives the moment bound u_{i+1} <= g_theta(u_i) once a_theta <= 1, and
//   x_theta = max { x : g_theta(x) <= x }
// is its absorbing threshold. x_theta does not exist for every theta.

#include <cmath>
#include <optional>
#include <stdexcept>

#include "hierpin/common.hpp"
#include "hierpin/disorder.hpp"
#include "hierpin/params.hpp"

namespace hierpin {

inline double g_theta(double x, int s, double b, double theta) {
    require(x >= 0.0, "g_theta: x must be >= 0");
    return (std::pow(x, (double)s) + std::pow(b - 1.0, theta)) / std::pow(b, theta);
}

// Largest root of x^s - b^theta x + (b-1)^theta = 0 in (0,1], or nullopt when
// the sublevel set {g_theta(x) <= x} is empty. Scans [0,1] plus the vertex of
// the convex residual (the sublevel set can be narrower than the scan step
// near the definability threshold), then bisects the rightmost crossing.
inline std::optional<double> x_theta(int s, double b, double theta) {
    require(s >= 2 && b > 1.0, "x_theta: need s >= 2 and b > 1");
    require(theta > 0.0 && theta <= 1.0, "x_theta: theta must be in (0,1]");
    const double bt = std::pow(b, theta);
    const double ct = std::pow(b - 1.0, theta);
    auto q = [&](double x) { return std::pow(x, (double)s) - bt * x + ct; };

    if (q(1.0) <= 0.0) return 1.0;  // theta = 1 (or numerically at it)

    // q is convex with q(0) > 0; its minimum sits at (b^theta / s)^{1/(s-1)}
    const double vertex = std::pow(bt / (double)s, 1.0 / (s - 1));
    double inside = -1.0;  // rightmost known point with q <= 0
    if (vertex > 0.0 && vertex < 1.0 && q(vertex) <= 0.0) inside = vertex;
    const int grid = 10000;
    for (int k = grid - 1; k >= 1; --k) {
        const double x = (double)k / grid;
        if (x <= inside) break;
        if (q(x) <= 0.0) {
            inside = x;
            break;
        }
    }
    if (inside < 0.0) return std::nullopt;

    double lo = inside, hi = 1.0;  // q(lo) <= 0 < q(hi)
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (q(mid) <= 0.0 ? lo : hi) = mid;
    }
    return lo;
}

// a_theta = E[A^theta] = exp(theta (h - log M(beta)) + log M(theta beta)),
// the theta-moment of one Boltzmann site weight.
inline double a_theta(const DisorderModel& d, double beta, double h, double theta) {
    require(theta > 0.0 && theta < 1.0, "a_theta: theta must be in (0,1)");
    return std::exp(theta * (h - log_mgf(d, beta)) + log_mgf(d, theta * beta));
}

// largest h with a_theta <= 1 at this (beta, theta)
inline double a_theta_h_cap(const DisorderModel& d, double beta, double theta) {
    return log_mgf(d, beta) - log_mgf(d, theta * beta) / theta;
}

}  // namespace hierpin
