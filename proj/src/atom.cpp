#include "ncforce/atom.hpp"

#include <cmath>
#include <stdexcept>

#include "ncforce/constants.hpp"

namespace ncforce {

namespace {
void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}
} // namespace

Atom::Atom(double omega0_, double gamma_, double mass_, std::vector<Vec3> dipoles_)
    : omega0(omega0_), gamma(gamma_), mass(mass_), dipoles(std::move(dipoles_)) {
    require(std::isfinite(omega0) && omega0 > 0.0, "Atom: omega0 must be positive");
    require(std::isfinite(gamma) && gamma > 0.0, "Atom: gamma must be positive");
    require(gamma < omega0, "Atom: gamma must be smaller than omega0");
    require(std::isfinite(mass) && mass > 0.0, "Atom: mass must be positive");
    require(!dipoles.empty(), "Atom: at least one transition dipole required");
    for (const Vec3& d : dipoles) require(is_finite(d), "Atom: dipole components must be finite");
}

double Atom::wavenumber() const { return omega0 / constants::c; }

TwoAtomSystem::TwoAtomSystem(Atom a, Atom b, Vec3 separation_)
    : atomA(std::move(a)), atomB(std::move(b)), separation(separation_) {
    require(is_finite(separation), "TwoAtomSystem: separation must be finite");
    require(separation.norm() > 0.0, "TwoAtomSystem: separation must be nonzero");
}

DipoleSplit decompose_dipole(Vec3 mu, Vec3 rhat) {
    require(is_finite(mu), "decompose_dipole: dipole must be finite");
    require(std::abs(rhat.norm() - 1.0) <= 1e-12, "decompose_dipole: rhat must be unit length");
    const double par = dot(mu, rhat);
    return
        {par, mu - par * rhat};
}

namespace hydrogen {

namespace {
constexpr double lambda0 = 121.6e-9;   // m
constexpr double lifetime = 1.6e-9;    // s
} // namespace

double omega0() { return 2.0 * constants::pi * constants::c / lambda0; }
double gamma0() { return 1.0 / lifetime; }
double dipole() {
    // 1s-2p radial matrix element: (128 sqrt(2) / 243) e a0.
    return 128.0 * std::sqrt(2.0) / 243.0 * constants::e_charge * constants::a0;
}
double mass() { return constants::m_proton + constants::m_electron; }

} // namespace hydrogen

TwoAtomSystem hydrogen_preset(double R) {
    require(std::isfinite(R) && R > 0.0, "hydrogen_preset: R must be positive");
    const double mu = hydrogen::dipole();
    const double s = 1.0 / std::sqrt(2.0);
    Atom a{hydrogen::omega0(), hydrogen::gamma0(), hydrogen::mass(),
           {Vec3{mu * s, 0.0, mu * s}}};
    Atom b{hydrogen::omega0(), hydrogen::gamma0(), hydrogen::mass(),
           {Vec3{mu, 0.0, 0.0}, Vec3{0.0, mu, 0.0}, Vec3{0.0, 0.0, mu}}};
    return TwoAtomSystem{std::move(a), std::move(b), Vec3{0.0, 0.0, -R}};
}

DimensionlessGroups dimensionless(const TwoAtomSystem& system, double T) {
    require(std::isfinite(T) && T >= 0.0, "dimensionless: T must be nonnegative");
    using namespace constants;
    const double k0 = system.atomA.wavenumber();
    const double mu = system.atomA.dipoles.front().norm();
    const double k3 = k0 * k0 * k0;
    const double force_scale =
        k3 * k3 * mu * mu * mu * mu / (8.0 * pi * pi * eps0 * eps0 * hbar * c);
    return {k0 * system.distance(), system.atomA.gamma * T, force_scale,
            system.detuning() / system.atomA.gamma};
}

} // namespace ncforce
