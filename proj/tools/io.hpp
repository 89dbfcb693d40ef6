#pragma once

// JSON forms and text parsing shared by the CLI and the acceptance suites.

#include <string>

#include "json.hpp"
#include "ltk/deformations.hpp"
#include "ltk/theta.hpp"
#include "ltk/tower.hpp"

namespace ltk::io {

using nlohmann::json;

/// {"p","n","d","rep"}
json witt_json(const WittElem& a);
/// {"ring":{"p","n","d","lo","hi"},"series":{"x_prec","coeffs":[[deg,rep],...]}}
json series_json(const LaurentSeries& f);
/// Coefficients of a one-variable series in canonical text form.
template <class R>
json power_series_json(const PowerSeries<R>& f) {
    json coeffs = json::array();
    for (int k = 0; k <= f.D(); ++k)
        if (!f[k].is_zero()) coeffs.push_back({k, elem_string(f[k])});
    return {{"D", f.D()}, {"coeffs", coeffs}};
}
/// {"D","terms":[[i,j,coeff],...]}, lexicographic; Witt coefficients as rep arrays.
template <class R>
json fgl_json(const FormalGroupLaw<R>& G) {
    json terms = json::array();
    for (int i = 0; i <= G.D; ++i)
        for (int j = 0; i + j <= G.D; ++j) {
            const auto& c = G.F.at(i, j);
            if (c.is_zero()) continue;
            if constexpr (std::is_same_v<R, WittRing>) terms.push_back({i, j, c.rep()});
            else terms.push_back({i, j, elem_string(c)});
        }
    return {{"D", G.D}, {"terms", terms}};
}
/// {"candidate":{"a","g","h"},"terms":[{"name","v_x",...}],"nonzero":bool,...}
json certificate_json(const CandidateAut& c, const ObstructionCertificate& cert);
/// Term list [[coeff, {symbol: exponent}], ...] plus the text form.
json sympoly_json(const SymPoly& f);
json aspoly_json(const ASPoly& q);

/// Integer-coefficient Laurent polynomial in x, e.g. "x^3 + 3", "2*x^-1 - x^2".
/// InvalidArgument on malformed text.
LaurentSeries parse_series(const SeriesRing& ring, const std::string& text);

}  // namespace ltk::io
