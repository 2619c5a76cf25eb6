#include "ncforce/green.hpp"

#include <cmath>
#include <stdexcept>

#include "ncforce/constants.hpp"
#include "ncforce/errors.hpp"

namespace ncforce {

namespace {

constexpr double four_pi = 4.0 * constants::pi;

void check_k(double k) {
    if (!(std::isfinite(k) && k > 0.0)) throw std::invalid_argument("green: k must be positive");
}

double check_r(Vec3 rvec) {
    const double r = rvec.norm();
    if (!(r > 0.0)) throw SingularSeparation("green: evaluation at zero separation");
    return r;
}

// S(u) = cos(u)/u^2 - sin(u)/u^3.  The two terms cancel to -1/3 + O(u^2) at
// small u, so the difference is series-evaluated below the switch point.
double s_beta(double u) {
    if (u < 0.25) {
        const double u2 = u * u;
        return -1.0 / 3.0 +
               u2 * (1.0 / 30.0 +
                     u2 * (-1.0 / 840.0 +
                           u2 * (1.0 / 45360.0 +
                                 u2 * (-1.0 / 3991680.0 + u2 * (1.0 / 518918400.0)))));
    }
    return std::cos(u) / (u * u) - std::sin(u) / (u * u * u);
}

struct Projectors {
    Mat3 alpha; // I - rr
    Mat3 beta;  // I - 3rr
};

Projectors projectors(Vec3 rhat) {
    const Mat3 rr = Mat3::outer(rhat, rhat);
    return {Mat3::identity() - rr, Mat3::identity() - rr * 3.0};
}

// Cross-product matrix: M v = rhat x v, i.e. M_ij = eps_ilj rhat_l.
Mat3 cross_matrix(Vec3 rhat) {
    Mat3 m;
    m(0, 1) = -rhat.z; m(0, 2) = rhat.y;
    m(1, 0) = rhat.z;  m(1, 2) = -rhat.x;
    m(2, 0) = -rhat.y; m(2, 1) = rhat.x;
    return m;
}

} // namespace

CMat3 electric_green(double k, Vec3 rvec) {
    check_k(k);
    const double r = check_r(rvec);
    const Vec3 rhat = rvec / r;
    const auto [alpha, beta] = projectors(rhat);
    const double u = k * r;
    const double cu = std::cos(u), su = std::sin(u);
    // Re: -(k/4pi) [ cos(u) alpha/u - beta (cos(u)/u^3 + sin(u)/u^2) ]
    // Im: -(k/4pi) [ sinc(u) alpha   + beta (cos(u)/u^2 - sin(u)/u^3) ]
    const double pref = -k / four_pi;
    const Mat3 re = pref * (alpha * (cu / u) - beta * (cu / (u * u * u) + su / (u * u)));
    const Mat3 im = pref * (alpha * (su / u) + beta * s_beta(u));
    return CMat3::from(re, im);
}

cdouble magnetic_green(double k, double r) {
    check_k(k);
    if (!(r > 0.0)) throw SingularSeparation("magnetic_green: r must be positive");
    const double u = k * r;
    const double pref = -k / four_pi;
    // Re: u S(u); Im: sin(u)/u + cos(u)/u^2.
    return {pref * u * s_beta(u), pref * (std::sin(u) / u + std::cos(u) / (u * u))};
}

Mat3 electric_green_imag_axis(double q, Vec3 rvec) {
    if (!(std::isfinite(q) && q > 0.0))
        throw std::invalid_argument("electric_green_imag_axis: q must be positive");
    const double r = check_r(rvec);
    const Vec3 rhat = rvec / r;
    const auto [alpha, beta] = projectors(rhat);
    const double s = q * r;
    const double pref = -std::exp(-s) / (four_pi * r);
    return pref * (alpha + beta * (1.0 / s + 1.0 / (s * s)));
}

CMat3 curl_electric_green(double k, Vec3 rvec) {
    check_k(k);
    const double r = check_r(rvec);
    const cdouble ikg = cdouble{0.0, k} * magnetic_green(k, r);
    const Mat3 m = cross_matrix(rvec / r);
    return ikg * CMat3::from_real(m);
}

CVec3 cross_projected_curl(Vec3 mu1, Vec3 mu2, double k, Vec3 rvec) {
    check_k(k);
    const double r = check_r(rvec);
    const Vec3 rhat = rvec / r;
    const double p1 = dot(mu1, rhat);
    const Vec3 perp1 = mu1 - p1 * rhat;
    const Vec3 perp2 = mu2 - dot(mu2, rhat) * rhat;
    const Vec3 bracket = p1 * perp2 - dot(perp1, perp2) * rhat;
    return (cdouble{0.0, k} * magnetic_green(k, r)) * bracket;
}

CMat3 green_frequency_derivative(double k, Vec3 rvec, int weight_power) {
    check_k(k);
    if (weight_power < 0)
        throw std::invalid_argument("green_frequency_derivative: weight_power must be >= 0");
    const double r = check_r(rvec);
    const Vec3 rhat = rvec / r;
    const auto [alpha, beta] = projectors(rhat);
    const double u = k * r;
    const double cu = std::cos(u), su = std::sin(u);
    // dG/domega = -(1/4pi c) e^{iu} [ i alpha - beta/u - 2i beta/u^2 + 2 beta/u^3 ]
    const double pref = -1.0 / (four_pi * constants::c);
    const Mat3 re = pref * (beta * (2.0 * (cu / (u * u * u) + su / (u * u)) - cu / u) - alpha * su);
    const Mat3 im = pref * (alpha * cu - beta * (su / u + 2.0 * s_beta(u)));
    const CMat3 dG = CMat3::from(re, im);

    const double omega = constants::c * k;
    if (weight_power == 0) return dG;
    const double wn1 = std::pow(omega, weight_power - 1);
    return static_cast<double>(weight_power) * wn1 * electric_green(k, rvec) +
           (wn1 * omega) * dG;
}

cdouble magnetic_green_frequency_derivative(double k, double r, int weight_power) {
    check_k(k);
    if (!(r > 0.0)) throw SingularSeparation("magnetic_green_frequency_derivative: r must be positive");
    if (weight_power < 0)
        throw std::invalid_argument("magnetic_green_frequency_derivative: weight_power must be >= 0");
    const double u = k * r;
    const double cu = std::cos(u), su = std::sin(u);
    // dg/domega = -(1/4pi c) e^{iu} (i - 1/u - i/u^2)
    const double pref = -1.0 / (four_pi * constants::c);
    const cdouble dg{pref * (-u * s_beta(u) - su),
                     pref * (cu - cu / (u * u) - su / u)};
    const double omega = constants::c * k;
    if (weight_power == 0) return dg;
    const double wn1 = std::pow(omega, weight_power - 1);
    return static_cast<double>(weight_power) * wn1 * magnetic_green(k, r) + wn1 * omega * dg;
}

VacuumCorrelators vacuum_correlators(double k, Vec3 rvec) {
    using namespace constants;
    check_k(k);
    const double r = check_r(rvec);
    const Mat3 imG = electric_green(k, rvec).imag();
    const CMat3 ee = CMat3::from_real(imG * (-8.0 * pi * pi * hbar * c / eps0));
    // curl Im G = Im(ik g) M = k Re(g) M
    const Mat3 curl_im = (k * magnetic_green(k, r).real()) * cross_matrix(rvec / r);
    const CMat3 be = cdouble{0.0, -8.0 * pi * pi * hbar / eps0} * CMat3::from_real(curl_im);
    return {ee, be};
}

GreenEval green_eval(double k, Vec3 rvec) {
    return {k, rvec, electric_green(k, rvec), magnetic_green(k, rvec.norm())};
}

} // namespace ncforce
