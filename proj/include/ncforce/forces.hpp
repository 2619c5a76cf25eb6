#pragma once

#include "ncforce/atom.hpp"
#include "ncforce/vec3.hpp"

namespace ncforce {

enum class FormulaTier { LeadingClosed, LeadingComposed, FullIdentical, FullDissimilar };
enum class AtomId { A, B };

// One force evaluation with axial/orthogonal and pairwise decompositions.
struct ForceSample {
    double T = 0.0;
    Vec3 F_A, F_B, F_net;
    Vec3 F_A_par, F_A_perp;
    Vec3 F_B_par, F_B_perp;
    FormulaTier tier = FormulaTier::LeadingClosed;
};

struct ReciprocalSplit {
    Vec3 reciprocal;    // (F_A - F_B)/2, the action-reaction pair
    Vec3 nonreciprocal; // F_A + F_B, the net push on the pair
};

// Term-by-term audit of the full identical-atom force.
struct IdenticalTerms {
    Vec3 frequency_derivative;
    Vec3 leading;
    Vec3 cross;
    Vec3 offresonant;
    Vec3 total() const { return frequency_derivative + leading + cross + offresonant; }
};

// Term-by-term audit of the full dissimilar-atom force.
struct DissimilarTerms {
    Vec3 resonant_cos;
    Vec3 resonant_sin;
    Vec3 quasi_stationary;
    Vec3 offresonant;
    Vec3 total() const { return resonant_cos + resonant_sin + quasi_stationary + offresonant; }
};

// Leading-order force assembled from the Green-function composition
// Re(g) Im(G) +/- Im(g) Re(G) (plus for atom A, minus for atom B).
// Requires an identical-atom system and k0 R >= 0.1.
Vec3 force_leading_identical(const TwoAtomSystem& system, double T, AtomId which);

// The same force in closed spatial form, oscillating with wavelength pi/k0.
Vec3 force_closed_A(const TwoAtomSystem& system, double T);

// Closed form for the de-excited atom; decreases monotonically with R.
Vec3 force_closed_B(const TwoAtomSystem& system, double T);

// Net (nonreciprocal) force on the pair; equals closed_A + closed_B.
Vec3 net_force(const TwoAtomSystem& system, double T);

ReciprocalSplit reciprocal_split(Vec3 fa, Vec3 fb);

// Full identical-atom force: leading term plus the frequency-derivative,
// cross, and off-resonant quadrature corrections (each a factor Gamma0/omega0
// or R/cT smaller than the leading term).
Vec3 force_full_identical(const TwoAtomSystem& system, double T, AtomId which);
IdenticalTerms force_full_identical_terms(const TwoAtomSystem& system, double T, AtomId which);

// Full dissimilar-atom force: resonant beat terms (cos/sin of Delta T over
// Delta), the quasi-stationary 1/(omega_A+omega_B) term, and the off-resonant
// imaginary-axis quadrature terms.  The 1/Delta groups are evaluated in a
// cancellation-safe form whose Delta -> 0 limit is the identical-atom force.
Vec3 force_full_dissimilar(const TwoAtomSystem& system, double T, AtomId which);
DissimilarTerms force_full_dissimilar_terms(const TwoAtomSystem& system, double T, AtomId which);

// Dispatch by tier and assemble the decomposed sample.
ForceSample force_sample(const TwoAtomSystem& system, double T, FormulaTier tier);

} // namespace ncforce
