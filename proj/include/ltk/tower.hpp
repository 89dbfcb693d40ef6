#pragma once

// Artin-Schreier presentation of the degree-zero cooperations mod I_{n-1}:
// a tame generator w with u_{n-1} = w^{p^{n-1}-1}, then levels
// a s_i^{p^{n-1}} + b s_i + c = 0 whose s-derivative b is a unit in k((w)).
//
// Symbolic values are Laurent polynomials in named symbols. Coefficients are
// kept as integer lifts so signs print naturally; equality is mod p.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ltk/witt.hpp"

namespace ltk {

using Monomial = std::map<std::string, int>;  // symbol -> nonzero exponent

class SymPoly {
public:
    SymPoly() = default;
    static SymPoly constant(i64 c);
    static SymPoly symbol(const std::string& name, int exponent = 1);
    static SymPoly monomial(const Monomial& m, i64 c = 1);

    const std::map<Monomial, i64>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool contains(const std::string& name) const;

    SymPoly operator+(const SymPoly& o) const;
    SymPoly operator-(const SymPoly& o) const;
    SymPoly operator-() const;
    SymPoly operator*(const SymPoly& o) const;
    SymPoly pow(int e) const;

    /// Replace a symbol; negative exponents need a single-monomial image.
    SymPoly substitute(const std::string& name, const SymPoly& image) const;
    /// Coefficients reduced into [0, p).
    SymPoly reduce(int p) const;
    bool equal_mod(const SymPoly& o, int p) const;
    /// Coefficient of name^e, as a polynomial in the remaining symbols.
    SymPoly coefficient_of(const std::string& name, int e) const;
    /// Total degree under a grading, or nullopt when not homogeneous (zero is homogeneous of any degree).
    std::optional<int> degree(const std::map<std::string, int>& grading) const;

    std::string to_string() const;
    bool operator==(const SymPoly& o) const { return terms_ == o.terms_; }

private:
    void add_term(const Monomial& m, i64 c);
    std::map<Monomial, i64> terms_;
};

/// Symbol names used by the module.
std::string sym_v(int i);     // v_i
std::string sym_vbar(int i);  // image of v_i under the right unit
std::string sym_t(int i);
std::string sym_s(int i);
std::string sym_u_param(int i);  // deformation parameter u_i
inline const std::string kSymU = "u";
inline const std::string kSymUF = "uF";
inline const std::string kSymW = "w";

/// |v_i| = |t_i| = 2(p^i - 1), |u| = |uF| = 2, degree-zero w, s_i, u_i.
std::map<std::string, int> bp_grading(int p, int max_index);

struct Congruence {
    int p, n, i;
    SymPoly lhs;                       // vbar_{n-1+i}
    SymPoly rhs;                       // v_{n-1+i} + v_{n-1} t_i^{p^{n-1}} - v_{n-1}^{p^i} t_i
    std::vector<std::string> modulus;  // "p", v_1..v_{n-2}, t_1..t_{i-1}
    int degree;
    std::string to_string() const;
};

/// InvalidArgument unless i >= 1 and n >= 2.
Congruence right_unit_congruence(int p, int n, int i);

/// a var^power + b var + c = 0 over a symbolic base.
struct ASPoly {
    int p;
    std::string var;
    i64 power;
    SymPoly a, b, c;
    /// "a*var^power + b*var = -c"
    std::string to_string() const;
    bool equal_mod(const ASPoly& o) const;
};

struct TameRelation {
    std::string symbol;  // u_{n-1}
    SymPoly value;       // w^{p^{n-1}-1}
    i64 exponent;
    std::string to_string() const;
};

struct S1Derivation {
    ASPoly relation;
    TameRelation tame;
};

/// Substitutes the unit images into the i = 1 congruence and scales to degree zero.
/// DerivationMismatch if the result differs from 1 = w^{P-1} s_1^P - w^{p(P-1)} s_1, P = p^{n-1}.
S1Derivation derive_s1_relation(int p, int n);
/// The displayed form of that relation, built directly.
ASPoly displayed_s1_relation(int p, int n);

/// BadShape unless power is p^m with m >= 1 and a, b, c are free of var with a != 0 mod p.
/// True iff the s-derivative b is a unit of k((w)).
bool etale_check(const ASPoly& q);

struct TowerLevel {
    ASPoly relation;
    bool placeholder;  // c is the symbol f_i rather than supplied data
};

struct TowerPresentation {
    int p, n;
    TameRelation tame;
    std::vector<TowerLevel> levels;
    std::string note;  // the deeper congruences carry no stated modulus
};

/// Level i >= 2: w^{P-1} s_i^P - w^{p^i (P-1)} s_i + f_i = 0, f_i from f_list[i-2] or a placeholder.
/// EtaleFailure if a supplied f_i involves s_j for j >= i or a level fails etale_check.
TowerPresentation build_tower(int p, int n, int depth,
                              const std::vector<std::optional<SymPoly>>& f_list = {});

}  // namespace ltk
