#include "ncforce/forces.hpp"

#include <cmath>
#include <stdexcept>

#include "ncforce/constants.hpp"
#include "ncforce/errors.hpp"
#include "ncforce/green.hpp"
#include "ncforce/quadrature.hpp"

namespace ncforce {

namespace {

using namespace constants;

double envelope(double tau) { return (1.0 - tau) * std::exp(-tau); }

double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

void require_identical(const TwoAtomSystem& system, const char* op) {
    if (!system.identical())
        throw WrongTier(std::string(op) +
                        ": dissimilar atoms; use force_full_dissimilar for this system");
}

void validate_leading(const TwoAtomSystem& system, double T, const char* op) {
    require_identical(system, op);
    if (!(std::isfinite(T) && T >= 0.0))
        throw std::invalid_argument(std::string(op) + ": T must be nonnegative");
    const double v = system.atomA.wavenumber() * system.distance();
    if (v < 0.1)
        throw std::invalid_argument(std::string(op) +
                                    ": k0 R < 0.1 is far outside the validity regime");
}

// Force bracket [mu1_par mu2_perp - (mu1_perp . mu2_perp) rhat].
Vec3 force_bracket(Vec3 mu1, Vec3 mu2, Vec3 rhat) {
    const double p1 = dot(mu1, rhat);
    const Vec3 perp1 = mu1 - p1 * rhat;
    const Vec3 perp2 = mu2 - dot(mu2, rhat) * rhat;
    return p1 * perp2 - dot(perp1, perp2) * rhat;
}

// Closed spatial shapes multiplying alpha and beta for atom A.
double coef_alpha_A(double v) {
    return (std::sin(2.0 * v) + std::cos(2.0 * v) / v) / (v * v);
}
double coef_beta_A(double v) {
    const double c2 = std::cos(2.0 * v), s2 = std::sin(2.0 * v);
    return (c2 - 2.0 * s2 / v - c2 / (v * v)) / (v * v * v);
}

Vec3 closed_force(const TwoAtomSystem& system, double T, AtomId which) {
    const DimensionlessGroups dg = dimensionless(system, T);
    const double v = dg.v;
    const Vec3 rhat = system.rhat();
    const Mat3 rr = Mat3::outer(rhat, rhat);
    const Mat3 alpha = Mat3::identity() - rr;
    const Mat3 beta = Mat3::identity() - rr * 3.0;

    Mat3 shape;
    if (which == AtomId::A) {
        shape = alpha * coef_alpha_A(v) + beta * coef_beta_A(v);
    } else {
        const double v3 = v * v * v;
        shape = (beta - alpha) * (1.0 / v3) + beta * (1.0 / (v3 * v * v));
    }

    // Dimensionless internally: dipoles in units of |mu_A|, force in units of
    // force_scale, converted back at return.
    const double mu0 = system.atomA.dipoles.front().norm();
    const Vec3 muA = system.atomA.dipoles.front() / mu0;
    Vec3 f{};
    for (const Vec3& d : system.atomB.dipoles) {
        const Vec3 mub = d / mu0;
        const Vec3 bracket = which == AtomId::A ? force_bracket(muA, mub, rhat)
                                                : force_bracket(mub, muA, rhat);
        f += bracket * (-contract(muA, shape, mub));
    }
    return dg.force_scale * envelope(dg.tau) * f;
}

struct GreenPieces {
    Mat3 reG, imG;
    double reg, img; // magnetic scalar
};

GreenPieces green_pieces(double k, const TwoAtomSystem& system) {
    const CMat3 G = electric_green(k, system.separation);
    const cdouble g = magnetic_green(k, system.distance());
    return {G.real(), G.imag(), g.real(), g.imag()};
}

// a d + b c and a d - b c with one rounding (fma-compensated).  The composed
// force combinations cancel heavily at large k0 R; the naive product
// difference would lose ~ (k0 R)^3 digits against the closed forms.
double sum_of_products(double a, double d, double b, double c) {
    const double w = b * c;
    const double e = std::fma(b, c, -w);
    return std::fma(a, d, w) + e;
}
double diff_of_products(double a, double d, double b, double c) {
    const double w = b * c;
    const double e = std::fma(b, c, -w);
    return std::fma(a, d, -w) - e;
}

// V_re/V_im pair: mu1 x curl(Re G / Im G) . mu2 through the projected-curl bracket.
struct CurlPair {
    Vec3 re, im;
};

CurlPair curl_pair(Vec3 mu1, Vec3 mu2, double k, const TwoAtomSystem& system) {
    const CVec3 w = cross_projected_curl(mu1, mu2, k, system.separation);
    return {w.real(), w.imag()};
}

struct ScalarPair {
    double re, im;
};

ScalarPair green_scalar(Vec3 mub, Vec3 muA, double k, const TwoAtomSystem& system) {
    const cdouble s = contract(mub, electric_green(k, system.separation), muA);
    return {s.real(), s.imag()};
}

// d/domega [ omega^3 (V_re S_im + V_im S_re) ] evaluated at omega = c k,
// for the excited-atom resonant group.
Vec3 d3_xplus(Vec3 muA, Vec3 mub, double k, const TwoAtomSystem& system) {
    const double omega = c * k;
    const double w3 = omega * omega * omega;
    const CurlPair V = curl_pair(muA, mub, k, system);
    const ScalarPair S = green_scalar(mub, muA, k, system);
    // omega^3 W = (i/c) omega^4 g(kR) * bracket
    const Vec3 bracket = force_bracket(muA, mub, system.rhat());
    const cdouble dW3 = cdouble{0.0, 1.0 / c} *
                        magnetic_green_frequency_derivative(k, system.distance(), 4);
    const cdouble dS = contract(mub, green_frequency_derivative(k, system.separation, 0), muA);
    return dW3.real() * bracket * S.im + w3 * V.re * dS.imag() +
           dW3.imag() * bracket * S.re + w3 * V.im * dS.real();
}

// d/domega [ omega^2 S_im ] and [ omega^2 S_re ] for the de-excited-atom group.
ScalarPair d2_scalar(Vec3 mub, Vec3 muA, double k, const TwoAtomSystem& system) {
    const cdouble d = contract(mub, green_frequency_derivative(k, system.separation, 2), muA);
    return {d.real(), d.imag()};
}

constexpr double series_switch_dt = 1e-4;  // |Delta T| below which the pole
constexpr double series_switch_dw = 1e-6;  // group uses the analytic derivative
                                           // (also requires |Delta| << omega)

} // namespace

Vec3 force_leading_identical(const TwoAtomSystem& system, double T, AtomId which) {
    validate_leading(system, T, "force_leading_identical");
    const double k0 = system.atomA.wavenumber();
    const GreenPieces gp = green_pieces(k0, system);
    Mat3 combo;
    for (int e = 0; e < 9; ++e)
        combo.m[e] = which == AtomId::A
                         ? sum_of_products(gp.reg, gp.imG.m[e], gp.img, gp.reG.m[e])
                         : diff_of_products(gp.reg, gp.imG.m[e], gp.img, gp.reG.m[e]);
    const Vec3 rhat = system.rhat();
    const Vec3 muA = system.atomA.dipoles.front();
    const double w0 = system.atomA.omega0;
    const double pref = 2.0 * w0 * w0 * w0 * w0 * envelope(system.atomA.gamma * T) /
                        (-std::pow(c, 5) * eps0 * eps0 * hbar);
    Vec3 f{};
    for (const Vec3& mub : system.atomB.dipoles) {
        const Vec3 bracket = which == AtomId::A ? force_bracket(muA, mub, rhat)
                                                : force_bracket(mub, muA, rhat);
        f += bracket * contract(muA, combo, mub);
    }
    return pref * f;
}

Vec3 force_closed_A(const TwoAtomSystem& system, double T) {
    validate_leading(system, T, "force_closed_A");
    return closed_force(system, T, AtomId::A);
}

Vec3 force_closed_B(const TwoAtomSystem& system, double T) {
    validate_leading(system, T, "force_closed_B");
    return closed_force(system, T, AtomId::B);
}

Vec3 net_force(const TwoAtomSystem& system, double T) {
    validate_leading(system, T, "net_force");
    const double k0 = system.atomA.wavenumber();
    const GreenPieces gp = green_pieces(k0, system);
    const Mat3 symm = gp.reg * gp.imG;  // Re(g) Im(G)
    const Mat3 asym = gp.img * gp.reG;  // Im(g) Re(G)
    const Vec3 rhat = system.rhat();
    const Vec3 muA = system.atomA.dipoles.front();
    const double pA = dot(muA, rhat);
    const Vec3 perpA = muA - pA * rhat;
    const double w0 = system.atomA.omega0;
    const double pref = 2.0 * w0 * w0 * w0 * w0 * envelope(system.atomA.gamma * T) /
                        (-std::pow(c, 5) * eps0 * eps0 * hbar);
    Vec3 f{};
    for (const Vec3& mub : system.atomB.dipoles) {
        const double pb = dot(mub, rhat);
        const Vec3 perpb = mub - pb * rhat;
        const Vec3 sym_bracket = pA * perpb + pb * perpA - 2.0 * dot(perpA, perpb) * rhat;
        const Vec3 asym_bracket = pA * perpb - pb * perpA;
        f += sym_bracket * contract(muA, symm, mub) + asym_bracket * contract(muA, asym, mub);
    }
    return pref * f;
}

ReciprocalSplit reciprocal_split(Vec3 fa, Vec3 fb) {
    return {(fa - fb) * 0.5, fa + fb};
}

IdenticalTerms force_full_identical_terms(const TwoAtomSystem& system, double T, AtomId which) {
    require_identical(system, "force_full_identical");
    if (!(std::isfinite(T) && T >= 0.0))
        throw std::invalid_argument("force_full_identical: T must be nonnegative");

    const double w0 = system.atomA.omega0;
    const double g0 = system.atomA.gamma;
    const double k0 = system.atomA.wavenumber();
    const double R = system.distance();
    const Vec3 rhat = system.rhat();
    const Vec3 muA = system.atomA.dipoles.front();
    const double E = std::exp(-g0 * T);
    const double pref = 2.0 / (std::pow(c, 4) * eps0 * eps0 * hbar);
    const double pref3 = 2.0 / (std::pow(c, 3) * eps0 * eps0 * hbar);
    const double w02 = w0 * w0, w03 = w02 * w0;

    IdenticalTerms out;
    for (const Vec3& mub : system.atomB.dipoles) {
        const ScalarPair S = green_scalar(mub, muA, k0, system);
        const double Iq = offresonant_integral(k0, k0, R, muA, mub, rhat);
        if (which == AtomId::A) {
            const CurlPair V = curl_pair(muA, mub, k0, system);
            const Vec3 Xp = V.re * S.im + V.im * S.re;
            const Vec3 Ym = V.re * S.re - V.im * S.im;
            out.frequency_derivative += pref * g0 * E * d3_xplus(muA, mub, k0, system);
            out.leading += pref * w03 * (1.0 - g0 * T) * E * Ym;
            out.cross -= pref * w02 * g0 * E * Xp;
            out.offresonant += pref3 * w0 * g0 * E * Iq * V.im;
        } else {
            const CurlPair V = curl_pair(mub, muA, k0, system);
            const ScalarPair dS2 = d2_scalar(mub, muA, k0, system);
            const Vec3 Yp = V.re * S.re + V.im * S.im;
            const Vec3 Xm = V.re * S.im - V.im * S.re;
            out.frequency_derivative -= pref * g0 * w0 * E * (V.re * dS2.im + V.im * dS2.re);
            out.leading -= pref * w03 * (1.0 - g0 * T) * E * Yp;
            out.cross += pref * w02 * g0 * E * Xm;
            out.offresonant += pref3 * w0 * g0 * E * Iq * V.im;
        }
    }
    return out;
}

Vec3 force_full_identical(const TwoAtomSystem& system, double T, AtomId which) {
    return force_full_identical_terms(system, T, which).total();
}

DissimilarTerms force_full_dissimilar_terms(const TwoAtomSystem& system, double T, AtomId which) {
    if (system.detuning() == 0.0)
        throw WrongTier("force_full_dissimilar: zero detuning; use force_full_identical");
    if (!(std::isfinite(T) && T >= 0.0))
        throw std::invalid_argument("force_full_dissimilar: T must be nonnegative");

    const double wA = system.atomA.omega0, wB = system.atomB.omega0;
    const double gA = system.atomA.gamma, gb = system.atomB.gamma;
    const double D = system.detuning();
    const double Gs = gA + gb;
    const double kA = wA / c, kB = wB / c;
    const double R = system.distance();
    const Vec3 rhat = system.rhat();
    const Vec3 muA = system.atomA.dipoles.front();
    const double EA = std::exp(-gA * T);
    const double Es = std::exp(-Gs * T / 2.0);
    const double cT = std::cos(D * T), sT = std::sin(D * T);
    const double tsinc = T * sinc(D * T);                 // sin(DT)/D
    const double omc = 2.0 * std::pow(std::sin(D * T / 2.0), 2) / D; // (1-cos(DT))/D
    const double pref = 2.0 / (std::pow(c, 4) * eps0 * eps0 * hbar);
    const double pref3 = 2.0 / (std::pow(c, 3) * eps0 * eps0 * hbar);
    const double wmid = 0.5 * (wA + wB);
    const double kmid = wmid / c;
    const bool series = std::abs(D * T) < series_switch_dt &&
                        std::abs(D) < series_switch_dw * wmid;
    const double wA3 = wA * wA * wA, wB3 = wB * wB * wB;

    DissimilarTerms out;
    for (const Vec3& mub : system.atomB.dipoles) {
        const double Iq = offresonant_integral(kA, kB, R, muA, mub, rhat);
        if (which == AtomId::A) {
            const CurlPair VA = curl_pair(muA, mub, kA, system);
            const CurlPair VB = curl_pair(muA, mub, kB, system);
            const ScalarPair SA = green_scalar(mub, muA, kA, system);
            const ScalarPair SB = green_scalar(mub, muA, kB, system);
            const Vec3 XpA = VA.re * SA.im + VA.im * SA.re;
            const Vec3 XpB = VB.re * SB.im + VB.im * SB.re;
            const Vec3 YmB = VB.re * SB.re - VB.im * SB.im;

            // Pole group [gA wA^3 Xp(kA) EA - (Gs/2) wB^3 Xp(kB) Es cos(DT)] / D,
            // decomposed so each piece is regular at D -> 0.
            const Vec3 quotient =
                series ? d3_xplus(muA, mub, kmid, system)
                       : (wA3 * XpA - wB3 * XpB) / D;
            const Vec3 pole = gA * EA * quotient +
                              ((gA * EA - 0.5 * Gs * Es) / D) * wB3 * XpB +
                              0.5 * Gs * Es * omc * wB3 * XpB;
            out.resonant_cos += pref * (pole + wB3 * Es * cT * YmB);
            out.resonant_sin -= 0.5 * pref * wB3 * (2.0 * D + Gs) * Es * tsinc * YmB;
            out.quasi_stationary -= pref * wA3 * gA * EA / (wA + wB) * XpA;
            out.offresonant += 0.5 * pref3 * wB * Gs * Es * Iq * (cT * VB.im + sT * VB.re) +
                               pref3 * wB * D * Es * Iq * (sT * VB.im - cT * VB.re);
        } else {
            const CurlPair V = curl_pair(mub, muA, kA, system);
            const ScalarPair SA = green_scalar(mub, muA, kA, system);
            const ScalarPair SB = green_scalar(mub, muA, kB, system);
            const Vec3 Xm_AA = V.re * SA.im - V.im * SA.re;
            const Vec3 Xm_AB = V.re * SB.im - V.im * SB.re;
            const Vec3 Yp_AB = V.re * SB.re + V.im * SB.im;
            const double wA_wB2 = wA * wB * wB;

            Vec3 quotient;
            if (series) {
                const ScalarPair dS2 = d2_scalar(mub, muA, kmid, system);
                quotient = V.re * dS2.im - V.im * dS2.re;
            } else {
                quotient = (wA * wA * Xm_AA - wB * wB * Xm_AB) / D;
            }
            const Vec3 pole = -gA * EA * wA * quotient -
                              ((gA * EA - 0.5 * Gs * Es) / D) * wA_wB2 * Xm_AB -
                              0.5 * Gs * Es * omc * wA_wB2 * Xm_AB;
            out.resonant_cos += pref * (pole - wA_wB2 * Es * cT * Yp_AB);
            out.resonant_sin += 0.5 * pref * wA_wB2 * (2.0 * D + Gs) * Es * tsinc * Yp_AB;
            out.quasi_stationary += pref * wA3 * gA * EA / (wA + wB) * Xm_AA;
            out.offresonant += 0.5 * pref3 * wA * Gs * Es * Iq * (cT * V.im - sT * V.re) +
                               pref3 * wA * D * Es * Iq * (sT * V.im + cT * V.re);
        }
    }
    return out;
}

Vec3 force_full_dissimilar(const TwoAtomSystem& system, double T, AtomId which) {
    return force_full_dissimilar_terms(system, T, which).total();
}

ForceSample force_sample(const TwoAtomSystem& system, double T, FormulaTier tier) {
    ForceSample s;
    s.T = T;
    s.tier = tier;
    switch (tier) {
        case FormulaTier::LeadingClosed:
            s.F_A = force_closed_A(system, T);
            s.F_B = force_closed_B(system, T);
            break;
        case FormulaTier::LeadingComposed:
            s.F_A = force_leading_identical(system, T, AtomId::A);
            s.F_B = force_leading_identical(system, T, AtomId::B);
            break;
        case FormulaTier::FullIdentical:
            s.F_A = force_full_identical(system, T, AtomId::A);
            s.F_B = force_full_identical(system, T, AtomId::B);
            break;
        case FormulaTier::FullDissimilar:
            s.F_A = force_full_dissimilar(system, T, AtomId::A);
            s.F_B = force_full_dissimilar(system, T, AtomId::B);
            break;
    }
    s.F_net = s.F_A + s.F_B;
    const Vec3 rhat = system.rhat();
    s.F_A_par = dot(s.F_A, rhat) * rhat;
    s.F_A_perp = s.F_A - s.F_A_par;
    s.F_B_par = dot(s.F_B, rhat) * rhat;
    s.F_B_perp = s.F_B - s.F_B_par;
    return s;
}

} // namespace ncforce
