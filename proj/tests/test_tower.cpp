#include "doctest.h"
#include "ltk/tower.hpp"

using namespace ltk;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::InvalidArgument;
}

SymPoly w(int e) { return SymPoly::symbol(kSymW, e); }

}  // namespace

TEST_CASE("symbolic polynomials") {
    const auto x = SymPoly::symbol("x");
    const auto y = SymPoly::symbol("y");
    CHECK((x + y).pow(2) == x * x + SymPoly::constant(2) * x * y + y * y);
    CHECK((x + y).pow(3).equal_mod(x.pow(3) + y.pow(3), 3));
    CHECK_FALSE((x + y).pow(3).equal_mod(x.pow(3) + y.pow(3), 2));
    CHECK((x * SymPoly::symbol("x", -1)) == SymPoly::constant(1));
    CHECK(SymPoly::symbol("x", -2).substitute("x", SymPoly::constant(-1) * y) == SymPoly::symbol("y", -2));
    CHECK(kind_of([&] { (void)SymPoly::symbol("x", -1).substitute("x", x + y); }) == ErrorKind::InvalidArgument);
    CHECK((x * y + x).coefficient_of("y", 1) == x);
    CHECK((x * y + x).coefficient_of("y", 0) == x);
    CHECK((x - x).is_zero());
    const std::map<std::string, int> g{{"x", 1}, {"y", 2}};
    CHECK((x * x + y).degree(g) == 2);
    CHECK_FALSE((x + y).degree(g).has_value());
    CHECK((SymPoly::constant(2) * x - y).to_string() == "2*x - y");
}

TEST_CASE("right unit congruence") {
    const auto c = right_unit_congruence(3, 2, 1);
    CHECK(c.to_string() == "vbar_2 = -v_1^3*t_1 + v_1*t_1^3 + v_2 mod (p)");
    CHECK(c.degree == 16);
    const auto c2 = right_unit_congruence(2, 3, 2);
    CHECK(c2.degree == 2 * (16 - 1));
    CHECK(c2.modulus == std::vector<std::string>{"p", "v_1", "t_1"});
    CHECK(kind_of([] { (void)right_unit_congruence(2, 2, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("s_1 relation") {
    const auto r32 = derive_s1_relation(3, 2);
    CHECK(r32.relation.to_string() == "w^2*s_1^3 - w^6*s_1 = 1");
    CHECK(r32.tame.to_string() == "u_1 = w^2");
    CHECK(r32.tame.exponent == 2);
    const auto r22 = derive_s1_relation(2, 2);
    CHECK(r22.relation.to_string() == "w*s_1^2 - w^2*s_1 = 1");
    CHECK(r22.tame.to_string() == "u_1 = w");
    for (int p : {2, 3, 5})
        for (int n : {2, 3}) {
            const auto r = derive_s1_relation(p, n);
            const i64 P = ipow(p, n - 1);
            CHECK(r.relation.equal_mod(displayed_s1_relation(p, n)));
            CHECK(r.relation.a == w(static_cast<int>(P - 1)));
            CHECK(r.relation.b == -w(static_cast<int>(p * (P - 1))));
            CHECK(r.relation.c == SymPoly::constant(-1));
            CHECK(r.tame.exponent == P - 1);
            CHECK(r.tame.symbol == sym_u_param(n - 1));
            CHECK(etale_check(r.relation));
        }
}

TEST_CASE("etale check") {
    const SymPoly c = SymPoly::symbol("c");
    CHECK(etale_check({3, "s", 3, SymPoly::constant(1), SymPoly::constant(-1), c}));
    CHECK_FALSE(etale_check({3, "s", 3, w(1), SymPoly{}, SymPoly{}}));
    CHECK_FALSE(etale_check({3, "s", 3, w(1), SymPoly::constant(3), SymPoly{}}));
    CHECK_FALSE(etale_check({3, "s", 3, w(1), SymPoly::symbol(sym_s(1)), SymPoly{}}));
    CHECK(kind_of([&] { (void)etale_check({3, "s", 1, w(1), w(2), c}); }) == ErrorKind::BadShape);
    CHECK(kind_of([&] { (void)etale_check({3, "s", 6, w(1), w(2), c}); }) == ErrorKind::BadShape);
    CHECK(kind_of([&] { (void)etale_check({3, "s", 3, w(1), w(2), SymPoly::symbol("s")}); }) == ErrorKind::BadShape);
    CHECK(kind_of([&] { (void)etale_check({3, "s", 3, SymPoly::constant(3), w(2), c}); }) == ErrorKind::BadShape);
}

TEST_CASE("tower presentations") {
    const auto t = build_tower(3, 2, 1);
    REQUIRE(t.levels.size() == 1);
    CHECK(t.tame.exponent == 2);
    CHECK(t.levels[0].relation.to_string() == "w^2*s_1^3 - w^6*s_1 = 1");

    for (int p : {2, 3, 5})
        for (int n : {2, 3}) {
            const auto tw = build_tower(p, n, 3);
            REQUIRE(tw.levels.size() == 3);
            const i64 P = ipow(p, n - 1);
            CHECK(tw.tame.exponent == P - 1);
            const auto& l2 = tw.levels[1];
            CHECK(l2.placeholder);
            CHECK(l2.relation.b == -w(static_cast<int>(p * p * (P - 1))));
            CHECK(l2.relation.c == SymPoly::symbol("f_2"));
            for (const auto& level : tw.levels) CHECK(etale_check(level.relation));
        }

    const SymPoly f2 = SymPoly::symbol(sym_s(1), 2) * w(-1) + SymPoly::constant(1);
    const auto ts = build_tower(3, 2, 2, {f2});
    CHECK_FALSE(ts.levels[1].placeholder);
    CHECK(ts.levels[1].relation.c == f2);
    CHECK(kind_of([] { (void)build_tower(3, 2, 2, {SymPoly::symbol(sym_s(2))}); }) == ErrorKind::EtaleFailure);
    CHECK(kind_of([] { (void)build_tower(3, 2, 3, {std::nullopt, SymPoly::symbol(sym_s(4))}); }) ==
          ErrorKind::EtaleFailure);
    CHECK(kind_of([] { (void)build_tower(3, 2, 0); }) == ErrorKind::InvalidArgument);
}
