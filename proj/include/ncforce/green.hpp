#pragma once

#include "ncforce/vec3.hpp"

namespace ncforce {

// One evaluation point of the free-space dipole Green functions.
struct GreenEval {
    double k;          // wavenumber, 1/m
    Vec3 rvec;         // m
    CMat3 electric;    // 1/m
    cdouble magnetic;  // 1/m
};

// Electric dyadic Green function of a unit dipole at the origin,
//   G(kr) = -(k e^{ikr}/4pi) [ alpha/kr + i beta/(kr)^2 - beta/(kr)^3 ],
// alpha = I - rr, beta = I - 3rr.  Symmetric; singular at r = 0.
CMat3 electric_green(double k, Vec3 rvec);

// Magnetic Green scalar g(kr) = -(k e^{ikr}/4pi) (1/kr + i/(kr)^2).
// The full magnetic tensor is g(kr) E.rhat (see curl_electric_green).
cdouble magnetic_green(double k, double r);

// G evaluated at k = iq.  Purely real, decays like e^{-qr}.
// Dedicated real-arithmetic formula (hot path of the off-resonant quadrature).
Mat3 electric_green_imag_axis(double q, Vec3 rvec);

// curl G = ik g(kr) M with M_ij = eps_ilj rhat_l (the cross-product matrix of rhat,
// validated against the finite-difference curl).  Antisymmetric.
CMat3 curl_electric_green(double k, Vec3 rvec);

// ik g(kr) [ (mu1.rhat) mu2_perp - (mu1_perp . mu2_perp) rhat ]:
// the projected-curl bracket that separates axial from orthogonal force
// components.  Equals -mu1 x (curl_electric_green . mu2); the relative sign
// is the orientation convention of the bracket, fixed by the force formulas.
CVec3 cross_projected_curl(Vec3 mu1, Vec3 mu2, double k, Vec3 rvec);

// d/domega [ omega^n G(omega r / c) ] at omega = c k, analytic.  weight_power = n.
CMat3 green_frequency_derivative(double k, Vec3 rvec, int weight_power);

// d/domega [ omega^n g(omega r / c) ] at omega = c k, analytic.
cdouble magnetic_green_frequency_derivative(double k, double r, int weight_power);

// Angular integrals of the vacuum field correlators:
//   ee = -(8 pi^2 hbar c / eps0) Im G(kr)
//   be = -(8 pi^2 i hbar / (eps0 k)) curl Im G(kr)
struct VacuumCorrelators {
    CMat3 ee; // (V/m)^2-weighted tensor; real-valued
    CMat3 be; // purely imaginary
};
VacuumCorrelators vacuum_correlators(double k, Vec3 rvec);

GreenEval green_eval(double k, Vec3 rvec);

} // namespace ncforce
