#include "io.hpp"

#include <cctype>

namespace ltk::io {

namespace {

json vx_json(int v) { return v == kInfinity ? json(nullptr) : json(v); }

}  // namespace

json witt_json(const WittElem& a) {
    const WittRing& r = a.ring();
    return {{"p", r.p()}, {"n", r.n()}, {"d", r.d()}, {"rep", a.rep()}};
}

json series_json(const LaurentSeries& f) {
    const SeriesRing& R = f.ring();
    json coeffs = json::array();
    for (const auto& [k, c] : f.terms()) coeffs.push_back({k, c.rep()});
    return {{"ring", {{"p", R.p()}, {"n", R.n()}, {"d", R.d()}, {"lo", R.lo()}, {"hi", R.hi()}}},
            {"series", {{"x_prec", f.x_prec()}, {"coeffs", coeffs}}}};
}

json certificate_json(const CandidateAut& c, const ObstructionCertificate& cert) {
    json terms = json::array();
    for (const auto& t : cert.terms) {
        json e = {{"name", t.name}, {"v_x", vx_json(t.v_x)}, {"holds", t.holds}};
        if (t.bound >= 0) e["bound"] = t.bound;
        if (t.alt_v_x >= 0) e["alt_v_x"] = t.alt_v_x;
        terms.push_back(e);
    }
    return {{"candidate", {{"a", witt_json(c.a)}, {"g", series_json(c.g)}, {"h", series_json(c.h)}}},
            {"terms", terms},
            {"value", series_json(cert.value)},
            {"v_x", vx_json(cert.value.is_zero() ? kInfinity : v_x(cert.value))},
            {"nonzero", cert.nonzero},
            {"h_zero_mod_p", cert.h_zero_mod_p},
            {"h_negative_support", cert.h_negative_support},
            {"decomposition_matches", cert.decomposition_matches},
            {"bounds_hold", cert.bounds_hold},
            {"constant_is_a_p", cert.constant_is_a_p},
            {"negative_part_nonzero", cert.negative_part_nonzero},
            {"ok", cert.ok()}};
}

json sympoly_json(const SymPoly& f) {
    json terms = json::array();
    for (const auto& [m, c] : f.terms()) terms.push_back({c, json(m)});
    return {{"text", f.to_string()}, {"terms", terms}};
}

json aspoly_json(const ASPoly& q) {
    return {{"var", q.var}, {"power", q.power}, {"a", sympoly_json(q.a)}, {"b", sympoly_json(q.b)},
            {"c", sympoly_json(q.c)}, {"text", q.to_string()}};
}

LaurentSeries parse_series(const SeriesRing& ring, const std::string& text) {
    std::map<int, i64> acc;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto bad = [&](const std::string& why) {
        fail(ErrorKind::InvalidArgument, "cannot parse series '" + text + "': " + why);
    };
    auto read_int = [&]() -> i64 {
        skip();
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
        const std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) bad("expected an integer");
        const i64 v = std::stoll(text.substr(start, i - start));
        return neg ? -v : v;
    };
    skip();
    if (i == text.size()) bad("empty");
    bool first = true;
    while (true) {
        skip();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            bad("expected + or -");
        }
        first = false;
        i64 coeff = 1;
        bool have_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = read_int();
            have_coeff = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
            } else {
                acc[0] += sign * coeff;
                continue;
            }
        }
        if (i >= text.size() || text[i] != 'x') bad(have_coeff ? "expected x after *" : "expected a term");
        ++i;
        int deg = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
            ++i;
            deg = static_cast<int>(read_int());
        }
        acc[deg] += sign * coeff;
    }
    std::map<int, WittElem> terms;
    for (const auto& [k, c] : acc) {
        if (k < ring.lo() || k >= ring.hi()) bad("degree " + std::to_string(k) + " outside the window");
        terms.insert_or_assign(k, ring.coeff().from_int(c));
    }
    return ring.from_terms(terms);
}

}  // namespace ltk::io
