#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ncforce/vec3.hpp"

namespace ncforce {

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
};

struct QuadratureNonConvergence : std::runtime_error {
    QuadratureResult partial;
    explicit QuadratureNonConvergence(QuadratureResult p)
        : std::runtime_error("adaptive_integrate: panel budget exhausted"), partial(p) {}
};

namespace detail {

// Gauss 7 / Kronrod 15 on [-1, 1]: node, Gauss weight, Kronrod weight.
inline constexpr double gk15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0,               0.204432940075298},
    {0.586087235467691, 0.0,               0.169004726639267},
    {0.864864423359769, 0.0,               0.104790010322250},
    {0.991455371120813, 0.0,               0.022935322010529},
};

struct Panel {
    double a, b;
    double value;  // K15 estimate
    double error;  // |K15 - G7|
    double abssum; // K15 of |f|
};

template <class F>
Panel gk15_panel(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = gk15[0][1] * f0;
    double k15 = gk15[0][2] * f0;
    double kabs = gk15[0][2] * std::abs(f0);
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gk15[i][0];
        const double fp = f(mid + dx);
        const double fm = f(mid - dx);
        g7 += gk15[i][1] * (fp + fm);
        k15 += gk15[i][2] * (fp + fm);
        kabs += gk15[i][2] * (std::abs(fp) + std::abs(fm));
    }
    return {a, b, k15 * half, std::abs(k15 - g7) * half, kabs * std::abs(half)};
}

} // namespace detail

// Adaptive Gauss-Kronrod bisection on [a, b].  Converged when the summed panel
// error drops below max(rel_tol * |value|, abs floor); the floor is the larger
// of 1e-300 and the roundoff level of the accumulated sum, so integrals that
// cancel to zero terminate instead of splitting forever.  Throws
// QuadratureNonConvergence (carrying the partial result) past 2000 panels.
// Panels are summed left to right, so the result is deterministic.
template <class F>
QuadratureResult adaptive_integrate(F&& f, double a, double b, double rel_tol,
                                    int max_panels = 2000) {
    if (!(std::isfinite(a) && std::isfinite(b) && a < b))
        throw std::invalid_argument("adaptive_integrate: need finite a < b");
    if (!(rel_tol >= 1e-14 && rel_tol <= 1e-2))
        throw std::invalid_argument("adaptive_integrate: rel_tol outside [1e-14, 1e-2]");

    std::vector<detail::Panel> panels;
    panels.reserve(64);
    panels.push_back(detail::gk15_panel(f, a, b));
    std::int64_t evals = 15;

    auto totals = [&panels] {
        // Left-to-right accumulation: order independent of split history.
        std::vector<const detail::Panel*> sorted;
        sorted.reserve(panels.size());
        for (const auto& p : panels) sorted.push_back(&p);
        std::sort(sorted.begin(), sorted.end(),
                  [](const detail::Panel* x, const detail::Panel* y) { return x->a < y->a; });
        double value = 0.0, error = 0.0, abssum = 0.0;
        for (const auto* p : sorted) {
            value += p->value;
            error += p->error;
            abssum += p->abssum;
        }
        return std::array<double, 3>{value, error, abssum};
    };

    while (true) {
        const auto [value, error, abssum] = totals();
        // The error cannot honestly drop below the roundoff of the accumulated
        // sum; 100 eps |f|_1 absorbs the constant in the G-K error estimator.
        const double floor =
            std::max(1e-300, 100.0 * abssum * std::numeric_limits<double>::epsilon());
        if (error <= std::max(rel_tol * std::abs(value), floor))
            return {value, error, evals, true};
        if (static_cast<int>(panels.size()) >= max_panels)
            throw QuadratureNonConvergence({value, error, evals, false});

        // Split the worst panel (ties: leftmost, for determinism).
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].error > panels[worst].error ||
                (panels[i].error == panels[worst].error && panels[i].a < panels[worst].a))
                worst = i;
        }
        const detail::Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (!(p.a < mid && mid < p.b))
            throw QuadratureNonConvergence({value, error, evals, false});
        panels[worst] = detail::gk15_panel(f, p.a, mid);
        panels.push_back(detail::gk15_panel(f, mid, p.b));
        evals += 30;
    }
}

// Integral over [0, inf): [0, split] directly plus the tail mapped to (0, 1]
// through q = split / t, dq = split / t^2 dt.
template <class F>
QuadratureResult integrate_semi_infinite(F&& f, double split, double rel_tol) {
    if (!(std::isfinite(split) && split > 0.0))
        throw std::invalid_argument("integrate_semi_infinite: split must be positive");
    const QuadratureResult head = adaptive_integrate(f, 0.0, split, rel_tol);
    const QuadratureResult tail = adaptive_integrate(
        [&f, split](double t) {
            const double q = split / t;
            return f(q) * q / t;
        },
        0.0, 1.0, rel_tol);
    return {head.value + tail.value, head.abs_error_estimate + tail.abs_error_estimate,
            head.evaluations + tail.evaluations, head.converged && tail.converged};
}

// Off-resonant imaginary-axis integral
//   (1/pi) int_0^inf dq (q^2 - kA kB) q^2 muA.G(iqR).muB / ((q^2+kA^2)(q^2+kB^2)).
// The q^2 G(iqR) product is combined analytically so the integrand is regular
// at q = 0.  Split point max(10/R, 5 max(kA,kB)); relative tolerance 1e-10.
double offresonant_integral(double kA, double kB, double R, Vec3 muA, Vec3 muB, Vec3 rhat);

} // namespace ncforce
