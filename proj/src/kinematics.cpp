#include "ncforce/kinematics.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "ncforce/constants.hpp"
#include "ncforce/errors.hpp"
#include "ncforce/quadrature.hpp"

namespace ncforce {

namespace {

// Upper limit standing in for infinity in FullDecay integrals: the envelope is
// e^{-60} there, below double roundoff relative to the integral.
constexpr double full_decay_lifetimes = 60.0;

double decay_envelope(double gamma, double t) {
    return (1.0 - gamma * t) * std::exp(-gamma * t);
}

Vec3 leading_force_at_zero(const TwoAtomSystem& system, AtomId which) {
    return which == AtomId::A ? force_closed_A(system, 0.0) : force_closed_B(system, 0.0);
}

} // namespace

Vec3 longitudinal_momentum(const TwoAtomSystem& system, double T, AtomId which) {
    if (!(std::isfinite(T) && T >= 0.0))
        throw std::invalid_argument("longitudinal_momentum: T must be nonnegative");
    const Vec3 F0 = leading_force_at_zero(system, which);
    if (T == 0.0) return {};
    const double gamma = system.atomA.gamma;
    const double q =
        adaptive_integrate([gamma](double t) { return decay_envelope(gamma, t); }, 0.0, T, 1e-12)
            .value;
    return -q * F0;
}

Vec3 displacement_from_profile(Vec3 F0, double mass,
                               const std::function<double(double)>& envelope,
                               double T_final, double rel_tol) {
    if (!(std::isfinite(T_final) && T_final > 0.0))
        throw std::invalid_argument("displacement_from_profile: T_final must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("displacement_from_profile: mass must be positive");
    auto impulse = [&](double t) {
        return adaptive_integrate(envelope, 0.0, t, rel_tol).value;
    };
    const double s =
        adaptive_integrate([&](double t) { return t > 0.0 ? impulse(t) : 0.0; }, 0.0, T_final,
                           rel_tol)
            .value;
    return (s / mass) * F0;
}

Vec3 displacement(const TwoAtomSystem& system, double T_final, AtomId which,
                  DisplacementConvention convention) {
    if (!(std::isfinite(T_final) && T_final > 0.0))
        throw std::invalid_argument("displacement: T_final must be positive");
    const double gamma = system.atomA.gamma;
    const double upper = convention == DisplacementConvention::FullDecay
                             ? full_decay_lifetimes / gamma
                             : T_final;
    const Vec3 F0 = leading_force_at_zero(system, which);
    return displacement_from_profile(
        F0, which == AtomId::A ? system.atomA.mass : system.atomB.mass,
        [gamma](double t) { return decay_envelope(gamma, t); }, upper);
}

double shape_A(double v) {
    const double v2 = v * v;
    return ((2.0 * v2 - 1.0) * std::cos(2.0 * v) - (2.0 * v - v2 * v) * std::sin(2.0 * v)) /
           (v2 * v2 * v);
}

double shape_B(double v) {
    const double v2 = v * v;
    return -(1.0 + v2) / (v2 * v2 * v);
}

DisplacementCurve hydrogen_displacement_curve(std::span<const double> v_grid,
                                              DisplacementConvention convention) {
    if (v_grid.empty()) throw std::invalid_argument("hydrogen_displacement_curve: empty grid");
    for (std::size_t i = 0; i < v_grid.size(); ++i) {
        if (!(v_grid[i] >= 1.0 && v_grid[i] <= 100.0))
            throw std::invalid_argument("hydrogen_displacement_curve: grid outside [1, 100]");
        if (i > 0 && !(v_grid[i] > v_grid[i - 1]))
            throw std::invalid_argument("hydrogen_displacement_curve: grid must be increasing");
    }
    const double k0 = hydrogen::omega0() / constants::c;
    const double gamma = hydrogen::gamma0();

    DisplacementCurve curve;
    curve.convention = convention;
    curve.v_grid.assign(v_grid.begin(), v_grid.end());
    const std::size_t n = v_grid.size();
    curve.S_A.resize(n);
    curve.S_B.resize(n);
    curve.shape_A.resize(n);
    curve.shape_B.resize(n);

    auto compute = [&](std::size_t i) {
        const double v = v_grid[i];
        const TwoAtomSystem system = hydrogen_preset(v / k0);
        curve.S_A[i] = displacement(system, 1.0 / gamma, AtomId::A, convention);
        curve.S_B[i] = displacement(system, 1.0 / gamma, AtomId::B, convention);
        curve.shape_A[i] = shape_A(v);
        curve.shape_B[i] = shape_B(v);
    };

    // Grid points are independent; split them across threads, outputs land in
    // preassigned slots so the result is identical for any worker count.
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(n));
    if (workers <= 1 || n < 8) {
        for (std::size_t i = 0; i < n; ++i) compute(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) compute(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    return curve;
}

namespace detail {

double first_sign_change(const std::function<double(double)>& f, double lo, double hi,
                         int scan_steps, double tol) {
    const double step = (hi - lo) / scan_steps;
    double a = lo, fa = f(a);
    double b = 0.0, fb = 0.0;
    bool found = false;
    for (int i = 1; i <= scan_steps; ++i) {
        b = lo + i * step;
        fb = f(b);
        if (fa == 0.0) return a;
        if ((fa < 0.0) != (fb < 0.0)) {
            found = true;
            break;
        }
        a = b;
        fa = fb;
    }
    if (!found) throw RootNotFound("first_sign_change: no sign change in bracket");
    while (b - a > tol) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fa < 0.0) != (fm < 0.0)) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    return 0.5 * (a + b);
}

} // namespace detail

double same_direction_threshold(const TwoAtomSystem& system) {
    if (!system.identical())
        throw std::invalid_argument("same_direction_threshold: identical-atom system required");
    const double k0 = system.atomA.wavenumber();
    const double vstar = detail::first_sign_change(shape_A, 1.0, 5.0, 4000, 1e-10);
    return vstar / k0;
}

} // namespace ncforce
