#include "ncforce/quadrature.hpp"

#include <cmath>

#include "ncforce/constants.hpp"

namespace ncforce {

double offresonant_integral(double kA, double kB, double R, Vec3 muA, Vec3 muB, Vec3 rhat) {
    if (!(kA > 0.0 && kB > 0.0 && R > 0.0))
        throw std::invalid_argument("offresonant_integral: kA, kB, R must be positive");

    // q^2 muA.G(iqR).muB = -(e^{-qR}/4piR) [ q^2 a + (q/R + 1/R^2) b ]
    // with a = muA.alpha.muB, b = muA.beta.muB.
    const double mm = dot(muA, muB);
    const double mr = dot(muA, rhat) * dot(muB, rhat);
    const double a = mm - mr;
    const double b = mm - 3.0 * mr;
    const double kk = kA * kB;
    const double kA2 = kA * kA, kB2 = kB * kB;

    auto integrand = [=](double q) {
        const double damp = std::exp(-q * R);
        if (damp == 0.0) return 0.0; // keeps the mapped tail free of 0 * inf
        const double q2 = q * q;
        const double g = -damp / (4.0 * constants::pi * R) *
                         (q2 * a + (q / R + 1.0 / (R * R)) * b);
        return (q2 - kk) * g / ((q2 + kA2) * (q2 + kB2)) / constants::pi;
    };

    const double split = std::max(10.0 / R, 5.0 * std::max(kA, kB));
    return integrate_semi_infinite(integrand, split, 1e-10).value;
}

} // namespace ncforce
