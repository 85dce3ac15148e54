#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clusterlab/errors.hpp"
#include "clusterlab/intvec.hpp"
#include "clusterlab/numeric.hpp"

namespace clusterlab {

// Exact multivariate Laurent polynomial over arbitrary-precision integers.
// Terms are a map from integer exponent vectors to nonzero coefficients; the
// map order (lex on exponent vectors) is the canonical term order.
struct LaurentPoly {
    int nvars = 0;
    std::map<std::vector<int>, Int> terms;

    LaurentPoly() = default;
    explicit LaurentPoly(int n) : nvars(n) {}

    static LaurentPoly zero(int n) { return LaurentPoly(n); }
    static LaurentPoly constant(int n, Int c);
    static LaurentPoly one(int n) { return constant(n, 1); }
    static LaurentPoly variable(int n, int i, int power = 1);
    static LaurentPoly monomial(int n, const std::vector<int>& expo, Int c = 1);

    bool is_zero() const { return terms.empty(); }
    bool is_one() const;

    void insert_term(const std::vector<int>& expo, const Int& c);
};

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly sub(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly neg(const LaurentPoly& f);
LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g);
LaurentPoly pow(const LaurentPoly& f, unsigned e);

inline LaurentPoly operator+(const LaurentPoly& f, const LaurentPoly& g) { return add(f, g); }
inline LaurentPoly operator-(const LaurentPoly& f, const LaurentPoly& g) { return sub(f, g); }
inline LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) { return mul(f, g); }
inline bool operator==(const LaurentPoly& f, const LaurentPoly& g) {
    return f.nvars == g.nvars && f.terms == g.terms;
}
inline bool operator!=(const LaurentPoly& f, const LaurentPoly& g) { return !(f == g); }

// Exact quotient f/g in the Laurent ring; throws DivisibilityError if g does
// not divide f, ArgumentError if g = 0.
LaurentPoly exact_div(const LaurentPoly& f, const LaurentPoly& g);
std::optional<LaurentPoly> try_exact_div(const LaurentPoly& f, const LaurentPoly& g);

// delta(f): d_i = -(min exponent of u_i over the terms of f).  Entries may be
// negative.  Throws ArgumentError on f = 0.
IntVec denominator_vector(const LaurentPoly& f);

// The reduced numerator P with all minimal exponents shifted to zero, so that
// f = P / prod_i u_i^{d_i} with d = denominator_vector(f).
LaurentPoly reduced_numerator(const LaurentPoly& f);

// Evaluation of a polynomial with nonnegative exponents at an integer point.
Int evaluate_at(const LaurentPoly& p, const std::vector<Int>& z);

// Ring-homomorphic substitution u_i -> images[i].  Strict mode insists the
// result is a Laurent polynomial (exact division of the denominator part) and
// throws DivisibilityError otherwise.
LaurentPoly substitute(const LaurentPoly& f, const std::vector<LaurentPoly>& images);

// Extended mode: carries an exact fraction when the denominator part does not
// divide out.
struct LaurentFraction {
    LaurentPoly num;
    LaurentPoly den; // never zero
};
LaurentFraction substitute_extended(const LaurentPoly& f, const std::vector<LaurentPoly>& images);

enum class Positivity { Certified, Falsified, Unknown };

struct PositivityResult {
    Positivity kind = Positivity::Unknown;
    IntVec witness; // point z with <= 1 zero component and P(z) <= 0, when Falsified
};

// Semi-decision of weak positivity of the reduced numerator on N^n points
// with at most one vanishing component.  Certified only under the sound
// sufficient test (nonnegative coefficients, positive at the all-ones point
// and at each single-zero pattern point).
PositivityResult weak_positivity_certificate(const LaurentPoly& f, std::uint64_t seed = 2024);

// Canonical text rendering, e.g. "(1 + u1 + u2) / (u1*u2)".  Terms sorted by
// exponent vector lexicographically with u1 least significant; this string is
// the stable key used in reports.
std::string render(const LaurentPoly& f, const std::string& varprefix = "u");

} // namespace clusterlab
