#pragma once

// Theta-algebra structures on truncations W_n k((x)). A structure is the
// Frobenius lift psi, a continuous endomorphism fixed by the image y of x and
// acting on coefficients through the Witt Frobenius; theta(f) = (psi(f) - f^p)/p.
// Structures are carried one p-digit above their output precision so that the
// division by p is exact.

#include <random>
#include <string>
#include <vector>

#include "ltk/laurent.hpp"

namespace ltk {

struct PipeEndo {
    SeriesRing ring;
    LaurentSeries y;  // image of x
    int sigma;        // Frobenius power acting on coefficients
};

/// NotUnit / NotTopologicallyNilpotent unless y reduces to a nonzero element of x k[[x]].
PipeEndo pipe_endo(const LaurentSeries& y, int sigma = 1);
LaurentSeries pipe_apply(const PipeEndo& e, const LaurentSeries& f);
/// y = x^p mod p and sigma is the Frobenius of k.
bool is_frobenius_lift(const PipeEndo& e);

struct ThetaStructure {
    PipeEndo endo;  // over W_{n+1}
    int n;          // output p-precision
};

/// NotFrobeniusLift, or GuardDigitMissing when the ring has no digit to spare.
ThetaStructure theta_structure(const PipeEndo& e);
/// y = x^p (plus_p false) or y = x^p + p over out_ring's window, carried at precision n + 1.
ThetaStructure standard_theta(const SeriesRing& out_ring, bool plus_p);
/// The ring theta values land in.
SeriesRing theta_output_ring(const ThetaStructure& t);

/// (psi(f) - f^p) / p; f must live in the guarded ring.
LaurentSeries theta_of(const ThetaStructure& t, const LaurentSeries& f);
/// theta on W(k): (sigma(a) - a^p) / p, one digit lower.
WittElem theta_of(const WittElem& a);
/// (m - m^p) / p.
i64 theta_integer(int p, i64 m);

struct ThetaReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};

/// Sum and product formulas and theta(0) = theta(1) = 0, compared exactly at output precision.
ThetaReport theta_axioms_check(const ThetaStructure& t, const LaurentSeries& f, const LaurentSeries& g);
/// theta(f + p^2 g) = theta(f) mod p.
bool theta_descent_check(const ThetaStructure& t, const LaurentSeries& f, const LaurentSeries& g);

// ---- the obstruction to intertwining x^p and x^p + p ----

/// f = a x + g + p h mod p^2 with a a unit, v_x(g) >= 2, h supported in degrees <= 0.
struct CandidateAut {
    WittElem a;
    LaurentSeries g;
    LaurentSeries h;
};

void validate_candidate(const CandidateAut& c);
LaurentSeries candidate_series(const CandidateAut& c);
/// g supported in [2, 12], h in [-6, 0]; h_zero forces h = 0 mod p.
CandidateAut random_candidate(const ThetaStructure& t, std::mt19937_64& rng, bool h_zero);
/// Window wide enough for the candidate space at prime p.
SeriesRing obstruction_ring(int p, const FiniteField& k);

/// theta(f) mod p for the y = x^p + p structure over W_2.
LaurentSeries obstruction_value(const ThetaStructure& t, const CandidateAut& c);

struct CertificateTerm {
    std::string name;
    LaurentSeries value;
    int v_x;       // kInfinity when the term vanishes
    int bound;     // required lower bound on v_x, or -1 when none
    bool holds;
    int alt_v_x;   // second reading of the valuation where the source is ambiguous, else -1
};

struct ObstructionCertificate {
    LaurentSeries value;
    std::vector<CertificateTerm> terms;
    bool h_zero_mod_p;
    bool h_negative_support;     // h mod p has a term of negative degree
    bool decomposition_matches;  // the terms sum to value
    bool bounds_hold;
    bool constant_is_a_p;        // v_x = 0 with constant term a^p; expected when h = 0 mod p
    bool negative_part_nonzero;  // expected when h_negative_support
    bool nonzero;
    /// Every structural assertion holds.
    bool ok() const;
};

ObstructionCertificate obstruction_certificate(const ThetaStructure& t, const CandidateAut& c);

}  // namespace ltk
