#include "ltk/tower.hpp"

#include <algorithm>
#include <sstream>

namespace ltk {

namespace {

i64 mod_p(i64 c, int p) { return ((c % p) + p) % p; }

bool is_p_power(i64 v, int p) {
    if (v < p) return false;
    while (v % p == 0) v /= p;
    return v == 1;
}

}  // namespace

// ---- SymPoly ----

SymPoly SymPoly::constant(i64 c) { return monomial({}, c); }

SymPoly SymPoly::symbol(const std::string& name, int exponent) { return monomial({{name, exponent}}); }

SymPoly SymPoly::monomial(const Monomial& m, i64 c) {
    SymPoly r;
    Monomial clean;
    for (const auto& [s, e] : m)
        if (e != 0) clean[s] = e;
    r.add_term(clean, c);
    return r;
}

void SymPoly::add_term(const Monomial& m, i64 c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool SymPoly::contains(const std::string& name) const {
    for (const auto& [m, c] : terms_)
        if (m.count(name)) return true;
    return false;
}

SymPoly SymPoly::operator+(const SymPoly& o) const {
    SymPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

SymPoly SymPoly::operator-() const {
    SymPoly r;
    for (const auto& [m, c] : terms_) r.add_term(m, -c);
    return r;
}

SymPoly SymPoly::operator-(const SymPoly& o) const { return *this + (-o); }

SymPoly SymPoly::operator*(const SymPoly& o) const {
    SymPoly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma;
            for (const auto& [s, e] : mb) {
                if ((m[s] += e) == 0) m.erase(s);
            }
            r.add_term(m, ca * cb);
        }
    return r;
}

SymPoly SymPoly::pow(int e) const {
    require(e >= 0, ErrorKind::InvalidArgument, "SymPoly::pow: negative exponent");
    SymPoly r = constant(1), b = *this;
    for (; e > 0; e >>= 1) {
        if (e & 1) r = r * b;
        if (e > 1) b = b * b;
    }
    return r;
}

SymPoly SymPoly::substitute(const std::string& name, const SymPoly& image) const {
    SymPoly r;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(name);
        if (it == m.end()) {
            r.add_term(m, c);
            continue;
        }
        Monomial rest = m;
        rest.erase(name);
        const int e = it->second;
        SymPoly factor;
        if (e >= 0) {
            factor = image.pow(e);
        } else {
            require(image.terms_.size() == 1 && (image.terms_.begin()->second == 1 || image.terms_.begin()->second == -1),
                    ErrorKind::InvalidArgument, "substitute: negative power of a non-monomial image");
            Monomial inv;
            for (const auto& [s, k] : image.terms_.begin()->first) inv[s] = -k;
            factor = monomial(inv, image.terms_.begin()->second).pow(-e);
        }
        r = r + monomial(rest, c) * factor;
    }
    return r;
}

SymPoly SymPoly::reduce(int p) const {
    SymPoly r;
    for (const auto& [m, c] : terms_) r.add_term(m, mod_p(c, p));
    return r;
}

bool SymPoly::equal_mod(const SymPoly& o, int p) const { return (*this - o).reduce(p).is_zero(); }

SymPoly SymPoly::coefficient_of(const std::string& name, int e) const {
    SymPoly r;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(name);
        const int have = it == m.end() ? 0 : it->second;
        if (have != e) continue;
        Monomial rest = m;
        rest.erase(name);
        r.add_term(rest, c);
    }
    return r;
}

std::optional<int> SymPoly::degree(const std::map<std::string, int>& grading) const {
    std::optional<int> deg;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [s, e] : m) {
            auto it = grading.find(s);
            if (it != grading.end()) d += it->second * e;
        }
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg ? deg : std::optional<int>(0);
}

namespace {

// Symbols print in a fixed reading order: w first, then u-type symbols, then the rest.
int symbol_rank(const std::string& s) {
    if (s == kSymW) return 0;
    if (s == kSymU || s == kSymUF) return 1;
    if (s.rfind("v", 0) == 0) return 2;
    if (s.rfind("t_", 0) == 0) return 3;
    return 4;
}

std::string ordered_monomial_string(const Monomial& m) {
    std::vector<std::pair<std::string, int>> v(m.begin(), m.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return symbol_rank(a.first) < symbol_rank(b.first); });
    std::string out;
    for (const auto& [s, e] : v) {
        if (!out.empty()) out += "*";
        out += s;
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

// "c*m" pieces joined with signs; the first term keeps a leading minus.
std::string signed_sum(const std::vector<std::pair<i64, std::string>>& parts) {
    if (parts.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [c, body] : parts) {
        const i64 mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (body.empty()) out += std::to_string(mag);
        else if (mag == 1) out += body;
        else out += std::to_string(mag) + "*" + body;
        first = false;
    }
    return out;
}

}  // namespace

std::string SymPoly::to_string() const {
    std::vector<std::pair<i64, std::string>> parts;
    for (const auto& [m, c] : terms_) parts.emplace_back(c, ordered_monomial_string(m));
    return signed_sum(parts);
}

// ---- symbols and grading ----

std::string sym_v(int i) { return "v_" + std::to_string(i); }
std::string sym_vbar(int i) { return "vbar_" + std::to_string(i); }
std::string sym_t(int i) { return "t_" + std::to_string(i); }
std::string sym_s(int i) { return "s_" + std::to_string(i); }
std::string sym_u_param(int i) { return "u_" + std::to_string(i); }

std::map<std::string, int> bp_grading(int p, int max_index) {
    std::map<std::string, int> g{{kSymU, 2}, {kSymUF, 2}, {kSymW, 0}};
    for (int i = 1; i <= max_index; ++i) {
        const int d = static_cast<int>(2 * (ipow(p, i) - 1));
        g[sym_v(i)] = d;
        g[sym_vbar(i)] = d;
        g[sym_t(i)] = d;
        g[sym_s(i)] = 0;
        g[sym_u_param(i)] = 0;
    }
    return g;
}

// ---- congruence ----

std::string Congruence::to_string() const {
    std::ostringstream os;
    os << lhs.to_string() << " = " << rhs.to_string() << " mod (";
    for (std::size_t k = 0; k < modulus.size(); ++k) os << (k ? ", " : "") << modulus[k];
    os << ")";
    return os.str();
}

Congruence right_unit_congruence(int p, int n, int i) {
    require(i >= 1, ErrorKind::InvalidArgument, "right_unit_congruence: i must be >= 1");
    require(n >= 2, ErrorKind::InvalidArgument, "right_unit_congruence: n must be >= 2");
    const int P = static_cast<int>(ipow(p, n - 1));
    const int pi = static_cast<int>(ipow(p, i));
    Congruence c{p, n, i, SymPoly::symbol(sym_vbar(n - 1 + i)), {}, {"p"}, 0};
    c.rhs = SymPoly::symbol(sym_v(n - 1 + i)) + SymPoly::symbol(sym_v(n - 1)) * SymPoly::symbol(sym_t(i), P) -
            SymPoly::symbol(sym_v(n - 1), pi) * SymPoly::symbol(sym_t(i));
    for (int k = 1; k <= n - 2; ++k) c.modulus.push_back(sym_v(k));
    for (int k = 1; k < i; ++k) c.modulus.push_back(sym_t(k));
    const auto grading = bp_grading(p, n - 1 + i);
    const auto dl = c.lhs.degree(grading);
    const auto dr = c.rhs.degree(grading);
    if (!dl || !dr || *dl != *dr) fail(ErrorKind::DerivationMismatch, "right unit congruence is not homogeneous");
    c.degree = *dl;
    return c;
}

// ---- Artin-Schreier polynomials ----

std::string ASPoly::to_string() const {
    std::vector<std::pair<i64, std::string>> parts;
    auto push = [&](const SymPoly& coeff, const std::string& tail) {
        for (const auto& [m, c] : coeff.terms()) {
            std::string body = ordered_monomial_string(m);
            if (!tail.empty()) body += body.empty() ? tail : "*" + tail;
            parts.emplace_back(c, body);
        }
    };
    push(a, var + "^" + std::to_string(power));
    push(b, var);
    return signed_sum(parts) + " = " + (-c).to_string();
}

bool ASPoly::equal_mod(const ASPoly& o) const {
    return p == o.p && var == o.var && power == o.power && a.equal_mod(o.a, p) && b.equal_mod(o.b, p) &&
           c.equal_mod(o.c, p);
}

std::string TameRelation::to_string() const { return symbol + " = " + value.to_string(); }

ASPoly displayed_s1_relation(int p, int n) {
    const i64 P = ipow(p, n - 1);
    return {p, sym_s(1), P, SymPoly::symbol(kSymW, static_cast<int>(P - 1)),
            -SymPoly::symbol(kSymW, static_cast<int>(p * (P - 1))), SymPoly::constant(-1)};
}

S1Derivation derive_s1_relation(int p, int n) {
    const Congruence cong = right_unit_congruence(p, n, 1);
    const int P = static_cast<int>(ipow(p, n - 1));
    const int pn = static_cast<int>(ipow(p, n));

    // Left unit from the height n-1 side: v_{n-1} -> uF^{P-1}, v_n -> 0.
    // Right unit: vbar_{n-1} -> u^{P-1} u_{n-1}, vbar_n -> u^{p^n - 1}; t_1 = s_1 u^{p-1}.
    auto images = [&](SymPoly e) {
        e = e.substitute(sym_v(n - 1), SymPoly::symbol(kSymUF, P - 1));
        e = e.substitute(sym_v(n), SymPoly{});
        e = e.substitute(sym_vbar(n - 1), SymPoly::symbol(kSymU, P - 1) * SymPoly::symbol(sym_u_param(n - 1)));
        e = e.substitute(sym_vbar(n), SymPoly::symbol(kSymU, pn - 1));
        e = e.substitute(sym_t(1), SymPoly::symbol(sym_s(1)) * SymPoly::symbol(kSymU, p - 1));
        return e;
    };
    // Scale to degree zero and write uF = w u.
    auto to_degree_zero = [&](const SymPoly& e, int u_power) {
        SymPoly r = (e * SymPoly::symbol(kSymU, -u_power)).substitute(kSymUF, SymPoly::symbol(kSymW) * SymPoly::symbol(kSymU));
        const auto deg = r.degree(bp_grading(p, n));
        if (r.contains(kSymU) || !deg || *deg != 0)
            fail(ErrorKind::DerivationMismatch, "scaling did not reach u-degree zero: " + r.to_string());
        return r;
    };

    // rhs - lhs = 0, i.e. v_{n-1} t^P - v_{n-1}^p t - vbar_n = 0 after v_n -> 0.
    const SymPoly eq = to_degree_zero(images(cong.rhs - cong.lhs), pn - 1);
    const std::string s1 = sym_s(1);
    ASPoly rel{p, s1, P, eq.coefficient_of(s1, P), eq.coefficient_of(s1, 1), eq.coefficient_of(s1, 0)};
    if (!(SymPoly::symbol(s1, P) * rel.a + SymPoly::symbol(s1) * rel.b + rel.c == eq))
        fail(ErrorKind::DerivationMismatch, "s_1 relation has terms outside a s^P + b s + c");
    if (!rel.equal_mod(displayed_s1_relation(p, n)))
        fail(ErrorKind::DerivationMismatch, "derived " + rel.to_string() + ", expected " +
                                                displayed_s1_relation(p, n).to_string());

    // Tame generator from vbar_{n-1} = v_{n-1} mod I_{n-1}.
    const SymPoly tame_eq = to_degree_zero(images(SymPoly::symbol(sym_vbar(n - 1)) - SymPoly::symbol(sym_v(n - 1))), P - 1);
    const std::string un = sym_u_param(n - 1);
    const SymPoly lead = tame_eq.coefficient_of(un, 1);
    const SymPoly rest = tame_eq.coefficient_of(un, 0);
    if (!(SymPoly::symbol(un) * lead + rest == tame_eq) || !lead.equal_mod(SymPoly::constant(1), p))
        fail(ErrorKind::DerivationMismatch, "tame relation is not linear in " + un);
    TameRelation tame{un, (-rest).reduce(p), P - 1};
    if (!tame.value.equal_mod(SymPoly::symbol(kSymW, P - 1), p))
        fail(ErrorKind::DerivationMismatch, "tame relation " + tame.to_string());
    return {rel, tame};
}

bool etale_check(const ASPoly& q) {
    if (!is_p_power(q.power, q.p)) fail(ErrorKind::BadShape, "leading exponent is not a positive power of p");
    if (q.a.contains(q.var) || q.b.contains(q.var) || q.c.contains(q.var))
        fail(ErrorKind::BadShape, "coefficients involve " + q.var);
    if (q.a.reduce(q.p).is_zero()) fail(ErrorKind::BadShape, "leading coefficient vanishes mod p");
    // d/ds = power a s^{power-1} + b = b in characteristic p. Units of k((w)): nonzero, w-only.
    const SymPoly b = q.b.reduce(q.p);
    if (b.is_zero()) return false;
    for (const auto& [m, c] : b.terms())
        for (const auto& [s, e] : m)
            if (s != kSymW) return false;
    return true;
}

TowerPresentation build_tower(int p, int n, int depth, const std::vector<std::optional<SymPoly>>& f_list) {
    require(depth >= 1, ErrorKind::InvalidArgument, "build_tower: depth must be >= 1");
    const auto s1 = derive_s1_relation(p, n);
    TowerPresentation t{p, n, s1.tame, {{s1.relation, false}},
                        "levels i >= 2 are congruences with no stated modulus; only their shape is used"};
    const i64 P = ipow(p, n - 1);
    for (int i = 2; i <= depth; ++i) {
        const std::string si = sym_s(i);
        const auto idx = static_cast<std::size_t>(i - 2);
        const bool supplied = idx < f_list.size() && f_list[idx].has_value();
        const SymPoly f = supplied ? *f_list[idx] : SymPoly::symbol("f_" + std::to_string(i));
        for (const auto& [m, c] : f.terms())
            for (const auto& [s, e] : m)
                if (s.rfind("s_", 0) == 0 && std::stoi(s.substr(2)) >= i)
                    fail(ErrorKind::EtaleFailure, "f_" + std::to_string(i) + " involves " + s);
        ASPoly q{p, si, P, SymPoly::symbol(kSymW, static_cast<int>(P - 1)),
                 -SymPoly::symbol(kSymW, static_cast<int>(ipow(p, i) * (P - 1))), f};
        if (!etale_check(q)) fail(ErrorKind::EtaleFailure, "level " + std::to_string(i) + " is not etale");
        t.levels.push_back({q, !supplied});
    }
    for (const auto& level : t.levels)
        if (!etale_check(level.relation)) fail(ErrorKind::EtaleFailure, "level is not etale");
    return t;
}

}  // namespace ltk
