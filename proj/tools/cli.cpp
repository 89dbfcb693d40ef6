// ltk: command-line front end for the verification suites.
// Exit status: 0 every check passed, 1 a mathematical check failed, 2 invalid input.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "io.hpp"
#include "ltk/deformations.hpp"
#include "ltk/fgl.hpp"
#include "ltk/theta.hpp"
#include "ltk/tower.hpp"
#include "suites.hpp"

namespace {

using namespace ltk;
using suites::Mode;
using suites::Report;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct Global {
    bool json = false;
    std::uint64_t seed = 1;
};

Mode mode_of(const Global& g) { return g.json ? Mode::Json : Mode::Text; }

// LTK_SEED and LTK_JSON take precedence over the flags.
void apply_env(Global& g) {
    if (const char* s = std::getenv("LTK_SEED"); s && *s) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        require(end && *end == '\0', ErrorKind::InvalidArgument, std::string("LTK_SEED is not an integer: ") + s);
        g.seed = v;
    }
    if (const char* s = std::getenv("LTK_JSON"); s && *s) {
        const std::string v = s;
        if (v == "1" || v == "true") g.json = true;
        else if (v == "0" || v == "false") g.json = false;
        else fail(ErrorKind::InvalidArgument, "LTK_JSON must be 0, 1, true or false");
    }
}

int finish(const Report& r, const Global& g) {
    std::cout << suites::emit_report(r, mode_of(g));
    return r.pass() ? kExitPass : kExitFail;
}

// Prints a bare value: its text form, or {"value": ...} in JSON mode.
int print_value(const Global& g, const std::string& text, const json& value) {
    if (g.json) std::cout << json{{"value", value}}.dump(2) << "\n";
    else std::cout << text << "\n";
    return kExitPass;
}

// ---- witt ----

struct WittArgs {
    int p = 0, n = 1, d = 1;
    i64 a = 0;
};

WittElem field_element(const WittRing& k, i64 code) {
    require(code >= 0 && code < k.q(), ErrorKind::InvalidArgument, "--a must lie in [0, q)");
    std::vector<i64> rep(k.d());
    for (auto& c : rep) c = code % k.p(), code /= k.p();
    return k.from_rep(rep);
}

WittElem witt_element(const WittRing& W, i64 code) {
    require(code >= 0, ErrorKind::InvalidArgument, "--a must be nonnegative");
    std::vector<i64> rep(W.d());
    for (auto& c : rep) c = code % W.pn(), code /= W.pn();
    require(code == 0, ErrorKind::InvalidArgument, "--a exceeds the size of the ring");
    return W.from_rep(rep);
}

int witt_teich(const WittArgs& w, const Global& g) {
    require(w.n >= 1, ErrorKind::InvalidArgument, "--n must be >= 1");
    const WittRing W(FiniteField::standard(w.p, w.d), w.n);
    const WittElem t = teichmuller(W, field_element(W.residue_field(), w.a));
    return print_value(g, t.to_string(), io::witt_json(t));
}

int witt_digits(const WittArgs& w, const Global& g) {
    require(w.n >= 1, ErrorKind::InvalidArgument, "--n must be >= 1");
    const WittRing W(FiniteField::standard(w.p, w.d), w.n);
    const auto digits = teich_digits(witt_element(W, w.a));
    std::string text;
    json arr = json::array();
    for (const auto& b : digits) {
        text += (text.empty() ? "" : " ") + b.to_string();
        arr.push_back(b.rep());
    }
    return print_value(g, text, arr);
}

// ---- fgl ----

struct FglArgs {
    int p = 0, n = 1, deg = 8, prec = 2;
    bool reduce = false;
};

FormalGroupLaw<WittRing> honda_for(const FglArgs& f) {
    require(f.n >= 1, ErrorKind::InvalidArgument, "--n must be >= 1");
    require(f.prec >= 1, ErrorKind::InvalidArgument, "--prec must be >= 1");
    const auto G = honda_fgl(f.p, f.n, f.deg, f.prec);
    return f.reduce ? reduce_mod(G, 1) : G;
}

int fgl_pseries(const FglArgs& f, const Global& g) {
    const auto ps = p_series(honda_for(f));
    return print_value(g, ps.to_string(), io::power_series_json(ps));
}

int fgl_height(const FglArgs& f, const Global& g) {
    // Height is read from the reduction mod p whether or not the flag is given.
    const int h = height(reduce_mod(honda_for(f), 1));
    return print_value(g, std::to_string(h), h);
}

int fgl_params(const FglArgs& f, const Global& g) {
    const auto G = lubin_tate_fgl(f.p, f.n, f.deg, f.prec);
    const auto params = extract_lt_params(f.reduce ? reduce_mod(G, 1) : G, f.n);
    std::string text;
    json arr = json::array();
    for (const auto& u : params) {
        text += (text.empty() ? "" : ", ") + elem_string(u);
        arr.push_back(elem_string(u));
    }
    return print_value(g, text.empty() ? "(none)" : text, arr);
}

int fgl_axioms(const FglArgs& f, const Global& g) {
    const auto G = honda_for(f);
    const auto ax = check_axioms(G);
    Report r{"fgl_axioms", {{"p", f.p}, {"n", f.n}, {"deg", f.deg}, {"prec", f.reduce ? 1 : f.prec}}, {}};
    r.add("axioms", ax.ok(), ax.ok() ? json(nullptr) : json(ax.detail));
    r.add("height", height(reduce_mod(G, 1)) == f.n);
    return finish(r, g);
}

// ---- defo ----

struct DefoArgs {
    int p = 0, n = 2, deg = 8;
};

int defo_classify(const DefoArgs& a, const Global& g) {
    const auto U = universal_deformation(a.p, a.n, a.deg, 2);
    const ParamRing& R = U.G.ring;
    std::mt19937_64 rng(g.seed);
    std::uniform_int_distribution<i64> c(0, R.base().pn() - 1);
    // Pull back along u_i -> u_i + p u_i^2 + constant.
    std::vector<TruncPoly<WittRing>> images;
    for (int i = 0; i < R.nvars(); ++i)
        images.push_back(R.var(i) + R.from_int(a.p) * R.var(i) * R.var(i) + R.from_int(c(rng)));
    const Deformation d{pullback_universal(U, R, images), a.n, 0, U.alpha};
    const auto cls = classify(d);
    json imgs = json::array(), got = json::array();
    for (const auto& x : images) imgs.push_back(elem_string(x));
    for (const auto& x : cls.params) got.push_back(elem_string(x));
    Report r{"defo_classify", {{"p", a.p}, {"n", a.n}, {"deg", a.deg}, {"seed", g.seed}}, {}};
    r.add("deformation_valid", validate(d));
    r.add("params_recovered", cls.params == images, {{"images", imgs}, {"params", got}});
    r.add("iso_is_identity", cls.iso == d.G.x(), io::power_series_json(cls.iso));
    return finish(r, g);
}

int defo_act(const DefoArgs& a, const Global& g) {
    const auto U = universal_deformation(a.p, a.n, a.deg, 2);
    const auto gamma = gamma_of(U);
    std::mt19937_64 rng(g.seed);
    const auto s = random_stabilizer(gamma, a.n, rng);
    const auto t = random_stabilizer(gamma, a.n, rng);
    const auto one = stabilizer_act(s, stabilizer_act(t, U));
    const auto two = stabilizer_act(stabilizer_compose(s, t), U);
    Report r{"defo_act", {{"p", a.p}, {"n", a.n}, {"deg", a.deg}, {"seed", g.seed}}, {}};
    r.add("elements_valid", validate(s, gamma) && validate(t, gamma),
          {{"s", {{"tau", s.tau}, {"g", io::power_series_json(s.g)}}}, {"t", {{"tau", t.tau}, {"g", io::power_series_json(t.g)}}}});
    r.add("identity_acts_trivially", stabilizer_act(stabilizer_identity(gamma), U).alpha == U.alpha);
    r.add("left_action", one.i_frob == two.i_frob && one.alpha == two.alpha,
          {{"alpha", io::power_series_json(one.alpha)}, {"i", one.i_frob}});
    r.add("result_valid", validate(one));
    return finish(r, g);
}

// ---- theta ----

struct ThetaArgs {
    int p = 0, n = 2, deg = 20, samples = 10;
    std::string psi;
};

int theta_check(const ThetaArgs& a, const Global& g) {
    require(a.n >= 2, ErrorKind::InvalidArgument, "--n must be >= 2 (theta needs a guard digit)");
    require(a.deg >= 1, ErrorKind::InvalidArgument, "--deg must be >= 1");
    const SeriesRing R(WittRing(FiniteField::prime(a.p), a.n), -a.deg, a.deg);
    const auto y = io::parse_series(R, a.psi);
    const auto e = pipe_endo(y);
    Report r{"theta_check", {{"p", a.p}, {"n", a.n}, {"deg", a.deg}, {"psi", y.to_string()}}, {}};
    const bool lift = is_frobenius_lift(e);
    r.add("frobenius_lift", lift, {{"psi(x) - x^p mod p", (y - ls_pow(R.monomial(1), a.p)).reduce(1).to_string()}});
    if (lift) {
        const auto t = theta_structure(e);
        const auto th = theta_of(t, R.monomial(1));
        r.add("theta(x)", true, io::series_json(th));
    }
    return finish(r, g);
}

int theta_obstruct(const ThetaArgs& a, const Global& g) {
    require(a.samples >= 0, ErrorKind::InvalidArgument, "--samples must be >= 0");
    return finish(suites::theta_obstruct_suite(a.p, a.samples, g.seed), g);
}

// ---- tower ----

struct TowerArgs {
    int p = 0, n = 2, depth = 2;
};

int tower_build(const TowerArgs& a, const Global& g) {
    const auto tw = build_tower(a.p, a.n, a.depth);
    if (!g.json) {
        std::cout << tw.tame.to_string() << "\n";
        for (const auto& level : tw.levels) std::cout << level.relation.to_string() << (level.placeholder ? "  (f placeholder)" : "") << "\n";
        if (!tw.note.empty()) std::cout << "note: " << tw.note << "\n";
        return kExitPass;
    }
    json levels = json::array();
    for (const auto& level : tw.levels) {
        json l = io::aspoly_json(level.relation);
        l["placeholder"] = level.placeholder;
        levels.push_back(l);
    }
    json out = {{"p", a.p}, {"n", a.n}, {"depth", a.depth}, {"levels", levels}, {"note", tw.note},
                {"tame", {{"symbol", tw.tame.symbol}, {"exponent", tw.tame.exponent}, {"value", io::sympoly_json(tw.tame.value)},
                          {"text", tw.tame.to_string()}}}};
    std::cout << out.dump(2) << "\n";
    return kExitPass;
}

int tower_etale(const TowerArgs& a, const Global& g) {
    const auto tw = build_tower(a.p, a.n, a.depth);
    Report r{"tower_etale", {{"p", a.p}, {"n", a.n}, {"depth", a.depth}}, {}};
    for (std::size_t i = 0; i < tw.levels.size(); ++i)
        r.add("level_" + std::to_string(i + 1), etale_check(tw.levels[i].relation), tw.levels[i].relation.to_string());
    return finish(r, g);
}

// ---- all ----

int run_all(const Global& g) {
    json out = json::array();
    bool ok = true;
    std::string text;
    for (const auto& c : suites::criteria()) {
        const Report r = c.run(g.seed);
        ok = ok && r.pass();
        out.push_back({{"id", c.id}, {"title", c.title}, {"report", suites::report_json(r)}});
        text += "criterion " + std::to_string(c.id) + ": " + (r.pass() ? "pass" : "FAIL") + "  " + c.title + "\n";
        if (!r.pass()) text += suites::emit_report(r, Mode::Text);
    }
    if (g.json) std::cout << json{{"criteria", out}, {"seed", g.seed}, {"status", ok ? "pass" : "fail"}}.dump(2) << "\n";
    else std::cout << text;
    return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ltk: truncated Witt vectors, formal groups and theta-algebra checks"};
    app.require_subcommand(1);
    Global g;
    auto add_global = [&](CLI::App* sub) {
        sub->add_flag("--json", g.json, "machine-readable output");
        sub->add_option("--seed", g.seed, "random seed");
    };
    std::function<int()> action;

    WittArgs wa;
    auto* witt = app.add_subcommand("witt", "Witt vector arithmetic")->require_subcommand(1);
    auto witt_common = [&](CLI::App* s) {
        s->add_option("--p", wa.p, "prime")->required();
        s->add_option("--n", wa.n, "Witt length");
        s->add_option("--d", wa.d, "residue field degree");
        add_global(s);
    };
    auto* teich = witt->add_subcommand("teich", "Teichmueller lift of a field element");
    witt_common(teich);
    teich->add_option("--a", wa.a, "field element, base-p digits are its coefficients")->required();
    teich->callback([&] { action = [&] { return witt_teich(wa, g); }; });
    auto* digits = witt->add_subcommand("digits", "Teichmueller digits of a Witt vector");
    witt_common(digits);
    digits->add_option("--a", wa.a, "Witt vector, base-p^n digits are its coefficients")->required();
    digits->callback([&] { action = [&] { return witt_digits(wa, g); }; });
    auto* wcheck = witt->add_subcommand("check", "Witt arithmetic and Teichmueller suite");
    add_global(wcheck);
    wcheck->callback([&] { action = [&] { return finish(suites::witt_suite(g.seed), g); }; });

    FglArgs fa;
    auto* fgl = app.add_subcommand("fgl", "Honda and Lubin-Tate formal group laws")->require_subcommand(1);
    auto fgl_sub = [&](const char* name, const char* desc, int (*fn)(const FglArgs&, const Global&)) {
        auto* s = fgl->add_subcommand(name, desc);
        s->add_option("--p", fa.p, "prime")->required();
        s->add_option("--n,--height", fa.n, "height");
        s->add_option("--deg", fa.deg, "truncation degree");
        s->add_option("--prec", fa.prec, "p-adic digits");
        s->add_flag("--reduce-mod-p", fa.reduce, "reduce coefficients mod p");
        add_global(s);
        s->callback([&, fn] { action = [&, fn] { return fn(fa, g); }; });
    };
    fgl_sub("pseries", "p-series of the Honda law", fgl_pseries);
    fgl_sub("height", "height of the Honda law", fgl_height);
    fgl_sub("params", "Lubin-Tate parameters of the universal law", fgl_params);
    fgl_sub("axioms", "formal group law axioms", fgl_axioms);

    DefoArgs da;
    auto* defo = app.add_subcommand("defo", "deformations")->require_subcommand(1);
    auto defo_sub = [&](const char* name, const char* desc, int (*fn)(const DefoArgs&, const Global&)) {
        auto* s = defo->add_subcommand(name, desc);
        s->add_option("--p", da.p, "prime")->required();
        s->add_option("--n", da.n, "height");
        s->add_option("--deg", da.deg, "truncation degree");
        add_global(s);
        s->callback([&, fn] { action = [&, fn] { return fn(da, g); }; });
    };
    defo_sub("classify", "classify a pullback of the universal deformation", defo_classify);
    defo_sub("act", "stabilizer group action", defo_act);

    ThetaArgs ta;
    auto* theta = app.add_subcommand("theta", "theta-algebra structures")->require_subcommand(1);
    auto* tcheck = theta->add_subcommand("check", "is x -> psi a Frobenius lift");
    tcheck->add_option("--psi", ta.psi, "image of x, e.g. x^3 + 3")->required();
    tcheck->add_option("--p", ta.p, "prime")->required();
    tcheck->add_option("--n", ta.n, "p-adic digits");
    tcheck->add_option("--deg", ta.deg, "x-window half width");
    add_global(tcheck);
    tcheck->callback([&] { action = [&] { return theta_check(ta, g); }; });
    auto* tobs = theta->add_subcommand("obstruct", "obstruction certificates on random candidates");
    tobs->add_option("--p", ta.p, "prime")->required();
    tobs->add_option("--samples", ta.samples, "number of candidates");
    add_global(tobs);
    tobs->callback([&] { action = [&] { return theta_obstruct(ta, g); }; });

    TowerArgs wt;
    auto* tower = app.add_subcommand("tower", "Artin-Schreier tower")->require_subcommand(1);
    auto tower_sub = [&](const char* name, const char* desc, int (*fn)(const TowerArgs&, const Global&)) {
        auto* s = tower->add_subcommand(name, desc);
        s->add_option("--p", wt.p, "prime")->required();
        s->add_option("--n", wt.n, "height");
        s->add_option("--depth", wt.depth, "number of levels");
        add_global(s);
        s->callback([&, fn] { action = [&, fn] { return fn(wt, g); }; });
    };
    tower_sub("build", "presentation of the tower", tower_build);
    tower_sub("etale", "etale check at every level", tower_etale);

    auto* all = app.add_subcommand("all", "every acceptance suite");
    add_global(all);
    all->callback([&] { action = [&] { return run_all(g); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitInvalid;
    }
    try {
        apply_env(g);
        return action();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}
