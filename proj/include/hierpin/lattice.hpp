#pragma once

// Geometry of the rank-n diamond lattice. Interior wall sites are indexed
// 1..s^n-1; V_i groups the sites introduced at recursion step i -> i+1
// (s^i divides j, s^{i+1} does not). A site from V_i sits at construction
// depth n-i and is visited with probability b^{-(n-i)}.

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "hierpin/common.hpp"
#include "hierpin/params.hpp"

namespace hierpin {

// visit probability of a site that appeared at construction level i (1 = coarsest)
inline double green_site(int i, double b) {
    require(i >= 1, "green_site: level index must be >= 1");
    require(b > 1.0, "green_site: b must be > 1");
    return std::pow(b, -(double)i);
}

// |V_i| = (s-1) s^{n-1-i} as an exact integer; throws on overflow
inline std::uint64_t vi_size(int i, int n, int s) {
    if (i < 0 || i >= n) throw std::out_of_range("vi_size: need 0 <= i < n");
    require(s >= 2, "vi_size: s must be >= 2");
    std::uint64_t r = (std::uint64_t)(s - 1);
    for (int k = 0; k < n - 1 - i; ++k) {
        if (r > UINT64_MAX / (std::uint64_t)s)
            throw std::overflow_error("vi_size: value exceeds 64 bits");
        r *= (std::uint64_t)s;
    }
    return r;
}

// same quantity in double precision, for cost sums at ranks where the exact
// integer no longer fits
inline double vi_size_real(int i, int n, int s) {
    if (i < 0 || i >= n) throw std::out_of_range("vi_size_real: need 0 <= i < n");
    return (double)(s - 1) * std::pow((double)s, (double)(n - 1 - i));
}

// expected number of wall contacts of the uniform directed path on the rank-n
// lattice: sum_{k=1..n} b^{-k} (s-1) s^{k-1} = (s-1)((s/b)^n - 1)/(s-b),
// with the b = s limit n (s-1)/s.
inline double expected_contacts(int n, const ModelParams& p) {
    require(n >= 0, "expected_contacts: n must be >= 0");
    require(p.s >= 2 && p.b > 1.0, "expected_contacts: invalid (s,b)");
    if (std::fabs(p.b - (double)p.s) <= 1e-14 * p.s)
        return (double)n * (p.s - 1) / (double)p.s;
    const double ratio = (double)p.s / p.b;
    return (p.s - 1) * (std::pow(ratio, (double)n) - 1.0) / ((double)p.s - p.b);
}

}  // namespace hierpin
