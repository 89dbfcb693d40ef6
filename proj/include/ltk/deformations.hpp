#pragma once

// Deformation records over truncated rings: Lubin-Tate classification by
// normal-form extraction, augmented deformations carrying a map from the
// Cohen ring of k((u)), the stabilizer group and its action, and the (j, gamma)
// point data used for cooperations.
//
// Conventions. The residue field k is a finite field F_{p^f}. Structure maps
// k -> R/m are powers of Frobenius, stored as the exponent e (a -> a^{p^e}).
// Gamma is the reduction of the universal Lubin-Tate law, so it is defined over
// F_p and every Frobenius twist of Gamma is Gamma itself.

#include <random>
#include <string>
#include <vector>

#include "ltk/fgl.hpp"

namespace ltk {

using AugRing = TruncPolyRing<SeriesRing>;

/// Image of a W_m(F_p) element in W_{m'}(k), m' <= m.
WittElem embed_prime(const WittElem& a, const WittRing& target);

/// a -> a^{p^e} on coefficients (e taken mod [k : F_p]).
WittElem frobenius_twist(const WittElem& a, int e);
PowerSeries<WittRing> frobenius_twist(const PowerSeries<WittRing>& f, int e);
FormalGroupLaw<WittRing> frobenius_twist(const FormalGroupLaw<WittRing>& G, int e);

/// The height-n law Gamma over k: the universal law reduced mod (p, u_1..u_{n-1}).
FormalGroupLaw<WittRing> residue_gamma(int p, int n, int D, const FiniteField& k);

struct Deformation {
    FormalGroupLaw<ParamRing> G;  // over W_m(k)[u_1..u_r] truncated
    int n;                        // height of the residue law
    int i_frob;                   // structure map k -> R/m
    PowerSeries<WittRing> alpha;  // Gamma tensored along i -> G mod m, over k
};

/// G reduced mod (p, u).
FormalGroupLaw<WittRing> residue_law(const Deformation& d);
/// Gamma over the residue field of d.
FormalGroupLaw<WittRing> gamma_of(const Deformation& d);
/// alpha is an isomorphism Gamma -> G mod m.
bool validate(const Deformation& d);

/// Lubin-Tate universal deformation over W_m(k)[u_1..u_{n-1}], identity structure map, alpha = x.
/// k defaults to F_{p^n}, where the whole stabilizer group is visible.
Deformation universal_deformation(int p, int n, int D, int m = 2);
Deformation universal_deformation(int p, int n, int D, int m, const FiniteField& k);

/// Pullback of the universal law along u_i -> images[i] (images in the target ring).
FormalGroupLaw<ParamRing> pullback_universal(const Deformation& universal, const ParamRing& target,
                                             const std::vector<TruncPoly<WittRing>>& images);

struct Classification {
    std::vector<TruncPoly<WittRing>> params;  // images of u_1..u_{n-1}
    PowerSeries<ParamRing> iso;               // d.G -> normal form, tie-break h'(0) = 1
    FormalGroupLaw<ParamRing> normal;         // the normal-form law
    int precision;                            // p-adic digits that survived normalization
};

/// Normalize, then read off Lubin-Tate parameters. Results live over W_precision(k).
/// NormalizationObstructed if the law is not already normal and its coefficients
/// leave W(F_p), or if no p-adic digit survives.
Classification classify(const Deformation& d);

// ---- augmented deformations ----

/// Local map Cohen(k((u))) -> R: Frobenius power on k and the image of u (a residue unit
/// with positive u-adic valuation). Formal parameters u_1..u_{n-2} map to themselves.
struct LambdaMap {
    int frob;
    LaurentSeries u_image;
};

LambdaMap identity_lambda_map(const SeriesRing& Lambda);
/// j applied to an element of Lambda.
LaurentSeries apply_lambda_map(const LambdaMap& j, const LaurentSeries& f);
/// First j, then j2.
LambdaMap compose_lambda_maps(const LambdaMap& j, const LambdaMap& j2);
bool validate(const LambdaMap& j);

struct AugmentedDeformation {
    FormalGroupLaw<AugRing> G;      // over W_m k((u))[u_1..u_{n-2}] truncated
    int n;                          // height of Gamma; the residue law H has height n - 1
    LambdaMap j;
    PowerSeries<SeriesRing> alpha;  // H along j-bar -> G mod m, over k((u))
};

/// H^u: the universal law with u_{n-1} -> u, over the truncated Cohen ring; n in {2, 3}.
AugmentedDeformation augmented_universal(int p, int n, int D, int m, const SeriesRing& residue_window);
/// The residue law H of the universal augmented deformation.
FormalGroupLaw<SeriesRing> residue_h(const AugmentedDeformation& d);
FormalGroupLaw<SeriesRing> residue_law(const AugmentedDeformation& d);
bool validate(const AugmentedDeformation& d);

/// Base change of every coefficient along j2.
AugmentedDeformation base_change(const AugmentedDeformation& d, const LambdaMap& j2);

struct AugmentedClassification {
    std::vector<TruncPoly<SeriesRing>> params;  // images of u_1..u_{n-2}
    LambdaMap j;
};

/// Reads (u_1, j(u)) off the normal form. NormalizationObstructed unless already normal.
AugmentedClassification classify_augmented(const AugmentedDeformation& d);

// ---- stabilizer group ----

struct StabilizerElement {
    int tau;                  // Frobenius exponent, reduced mod [k : F_p]
    PowerSeries<WittRing> g;  // isomorphism Gamma -> tau^* Gamma over k
};

StabilizerElement stabilizer_identity(const FormalGroupLaw<WittRing>& gamma);
bool validate(const StabilizerElement& s, const FormalGroupLaw<WittRing>& gamma);
/// (tau_a, g_a)(tau_b, g_b) = (tau_a tau_b, g_a o tau_a^*(g_b)).
StabilizerElement stabilizer_compose(const StabilizerElement& a, const StabilizerElement& b);
StabilizerElement stabilizer_inverse(const StabilizerElement& s);
/// tau and g = sum_Gamma c_j x^{p^j} with random c_j in F_{p^n} (c_0 nonzero).
StabilizerElement random_stabilizer(const FormalGroupLaw<WittRing>& gamma, int n, std::mt19937_64& rng);

/// (tau, g)(G, i, alpha) = (G, i + tau, alpha o tau_new^{-1 *}(g^-1)); a left action.
Deformation stabilizer_act(const StabilizerElement& s, const Deformation& d);

// ---- cooperation points ----

enum class CoopReason { Ok, BadStructureMap, NonUnitLeading, HeightMismatch, NotIsomorphism };
std::string to_string(CoopReason r);

struct CoopPoint {
    int j_frob;                   // k-embedding into R/m
    PowerSeries<WittRing> gamma;  // over R/m = k
};

struct CoopCheck {
    bool ok;
    CoopReason reason;
};

/// gamma must be an isomorphism from the residue of left twisted along j to right.
CoopCheck validate_coop_point(const CoopPoint& pt, const Deformation& left, const FormalGroupLaw<WittRing>& right);

}  // namespace ltk
