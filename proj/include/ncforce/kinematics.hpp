#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ncforce/atom.hpp"
#include "ncforce/forces.hpp"

namespace ncforce {

enum class DisplacementConvention {
    TruncateAtLifetime, // integrate the force to T = 1/Gamma0
    FullDecay           // integrate the full decay envelope
};

// Transverse displacement curves on a grid of dimensionless separations.
struct DisplacementCurve {
    std::vector<double> v_grid;
    std::vector<Vec3> S_A, S_B;            // m
    std::vector<double> shape_A, shape_B;  // pure shape functions f_A, f_B
    DisplacementConvention convention = DisplacementConvention::TruncateAtLifetime;
    bool perturbative_warning = false;     // any v < 1 in the grid
};

// Change of the longitudinal-EM-momentum partner of the atom's kinetic
// momentum: -int_0^T F(t) dt with the leading-tier force.
Vec3 longitudinal_momentum(const TwoAtomSystem& system, double T, AtomId which);

// S(T) = (1/m) int_0^T dt int_0^t dt' F(t'), leading-tier force, frozen R.
// TruncateAtLifetime integrates to the caller's T_final (canonically 1/Gamma0);
// FullDecay integrates the whole envelope and ignores T_final.
Vec3 displacement(const TwoAtomSystem& system, double T_final, AtomId which,
                  DisplacementConvention convention);

// Double time integral of F0 * envelope(t), the numerical path behind
// displacement(); exposed so tests can inject synthetic force profiles.
Vec3 displacement_from_profile(Vec3 F0, double mass,
                               const std::function<double(double)>& envelope,
                               double T_final, double rel_tol = 1e-12);

// Transverse displacement shapes: f_A oscillates and changes sign,
// f_B = -(1+v^2)/v^5 does not.
double shape_A(double v);
double shape_B(double v);

// Hydrogen pair displacement curves over v = k0 R (grid within [1, 100]).
DisplacementCurve hydrogen_displacement_curve(std::span<const double> v_grid,
                                              DisplacementConvention convention);

// Smallest separation above lambda0/2pi where S_A and S_B stop pointing the
// same way (first zero of f_A).  Returns R* in meters.
double same_direction_threshold(const TwoAtomSystem& system);

namespace detail {
// First sign change of f on [lo, hi]: coarse scan then bisection to tol.
double first_sign_change(const std::function<double(double)>& f, double lo, double hi,
                         int scan_steps, double tol);
} // namespace detail

} // namespace ncforce
