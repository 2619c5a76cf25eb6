#pragma once

#include <vector>

#include "ncforce/vec3.hpp"

namespace ncforce {

// Two-level atom: one ground state, an n-fold degenerate excited manifold.
// One transition dipole vector per excited sublevel.
struct Atom {
    double omega0; // transition angular frequency, rad/s
    double gamma;  // natural linewidth, 1/s
    double mass;   // kg
    std::vector<Vec3> dipoles; // C m, one per sublevel

    Atom(double omega0_, double gamma_, double mass_, std::vector<Vec3> dipoles_);

    double wavenumber() const; // omega0 / c
};

// Two atoms with separation pointing from B to A: separation = R_A - R_B.
struct TwoAtomSystem {
    Atom atomA;
    Atom atomB;
    Vec3 separation; // m

    TwoAtomSystem(Atom a, Atom b, Vec3 separation_);

    double distance() const { return separation.norm(); }
    Vec3 rhat() const { return separation / distance(); }
    double detuning() const { return atomA.omega0 - atomB.omega0; } // omega_A - omega_B
    bool identical() const {
        return atomA.omega0 == atomB.omega0 && atomA.gamma == atomB.gamma;
    }
    // k0 R >= 1 is required for the perturbative expressions to apply.
    // Out-of-regime systems are flagged, not rejected.
    bool perturbative() const { return atomA.wavenumber() * distance() >= 1.0; }
};

struct DimensionlessGroups {
    double v;              // k0 R
    double tau;            // Gamma0 T
    double force_scale;    // k0^6 mu^4 / (8 pi^2 eps0^2 hbar c), N
    double detuning_ratio; // (omega_A - omega_B) / Gamma_A
};

struct DipoleSplit {
    double par; // mu . rhat, C m
    Vec3 perp;  // mu - par * rhat
};

// Orthogonal decomposition of a dipole along/transverse to the interatomic axis.
// rhat must be unit length to 1e-12.
DipoleSplit decompose_dipole(Vec3 mu, Vec3 rhat);

// Lyman-alpha Hydrogen pair: lambda0 = 121.6 nm, lifetime 1.6 ns,
// atom A excited along (x+z)/sqrt(2), atom B with the three 2p sublevels.
// The atoms sit on the z axis with B above A (separation = R_A - R_B = -R zhat);
// this orientation puts the transverse displacements on the -x side.
TwoAtomSystem hydrogen_preset(double R);

DimensionlessGroups dimensionless(const TwoAtomSystem& system, double T);

namespace hydrogen {
double omega0();   // 2 pi c / 121.6 nm
double gamma0();   // 1 / 1.6 ns
double dipole();   // 1s-2p matrix element magnitude, C m
double mass();     // m_p + m_e
} // namespace hydrogen

} // namespace ncforce
