// Tabulate the annealed free energy F(0,h) on the marginal lattice and fit
// the small-h exponent 1/alpha.

#include <cstdio>
#include <vector>

#include "hierpin/hierpin.hpp"

int main() {
    using namespace hierpin;
    const ModelParams base{4, 2.0, 0.0, 0.0};
    std::printf("s=%d b=%g  alpha=%g (expect F ~ h^%g)\n\n", base.s, base.b,
                alpha_exponent(base.s, base.b), 1.0 / alpha_exponent(base.s, base.b));
    std::printf("%14s %16s\n", "h", "F(0,h)");
    std::vector<double> hs, fs;
    for (double h = 1e-8; h <= 1.001e-3; h *= 10.0) {
        ModelParams p = base;
        p.h = h;
        const double f = annealed_free_energy(p);
        hs.push_back(h);
        fs.push_back(f);
        std::printf("%14.6e %16.8e\n", h, f);
    }
    const PowerLawFit fit = fit_power_law(hs, fs);
    std::printf("\nfit: F ~ %.4f * h^%.4f  (r^2 = %.6f)\n", fit.prefactor, fit.exponent,
                fit.r_squared);
    return 0;
}
