#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "clusterlab/laurent.hpp"

using namespace clusterlab;

namespace {

LaurentPoly u(int n, int i, int p = 1) { return LaurentPoly::variable(n, i, p); }

// Random Laurent polynomial; nonnegative coefficients when positive=true.
LaurentPoly random_poly(std::mt19937_64& rng, int n, bool positive) {
    std::uniform_int_distribution<int> nterms(1, 6), expo(-3, 3), coef(1, 9);
    LaurentPoly f(n);
    int t = nterms(rng);
    for (int k = 0; k < t; ++k) {
        std::vector<int> e(static_cast<size_t>(n));
        for (auto& x : e) x = expo(rng);
        long long c = coef(rng);
        if (!positive && rng() % 2) c = -c;
        f.insert_term(e, Int(c));
    }
    if (f.is_zero()) f = LaurentPoly::one(n);
    return f;
}

// Independent grid oracle for weak positivity over a small box.
bool positive_on_grid(const LaurentPoly& f, long long box) {
    LaurentPoly P = reduced_numerator(f);
    int n = f.nvars;
    std::vector<long long> z(static_cast<size_t>(n), 0);
    while (true) {
        int zeros = 0;
        for (auto x : z)
            if (x == 0) ++zeros;
        if (zeros <= 1) {
            std::vector<Int> zz(z.begin(), z.end());
            if (evaluate_at(P, zz) <= 0) return false;
        }
        size_t i = 0;
        while (i < z.size() && z[i] == box) { z[i] = 0; ++i; }
        if (i == z.size()) break;
        ++z[i];
    }
    return true;
}

} // namespace

TEST_CASE("arithmetic basics") {
    int n = 2;
    CHECK(mul(u(n, 0), u(n, 0, -1)).is_one());           // u1 * u1^-1 = 1
    LaurentPoly f = add(u(n, 0), u(n, 1));
    CHECK(add(f, LaurentPoly::zero(n)) == f);            // f + 0 = f
    LaurentPoly p = mul(add(LaurentPoly::one(n), u(n, 0)), add(LaurentPoly::one(n), u(n, 1)));
    CHECK(exact_div(p, add(LaurentPoly::one(n), u(n, 1))) == add(LaurentPoly::one(n), u(n, 0)));
}

TEST_CASE("exact_div errors and roundtrip") {
    int n = 2;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        LaurentPoly f = random_poly(rng, n, false);
        LaurentPoly g = random_poly(rng, n, false);
        CHECK(exact_div(mul(f, g), g) == f);
    }
    CHECK_THROWS_AS(exact_div(add(LaurentPoly::one(n), u(n, 0)), LaurentPoly::constant(n, 2)),
                    DivisibilityError);
    CHECK_THROWS_AS(exact_div(u(n, 0), LaurentPoly::zero(n)), ArgumentError);
}

TEST_CASE("denominator vectors") {
    int n = 2;
    // (1+u1+u2)/(u1 u2) -> (1,1)
    LaurentPoly f = add(add(LaurentPoly::one(n), u(n, 0)), u(n, 1));
    f = exact_div(f, mul(u(n, 0), u(n, 1)));
    CHECK(denominator_vector(f) == IntVec{1, 1});
    // u1 -> (-1, 0)
    CHECK(denominator_vector(u(n, 0)) == IntVec{-1, 0});
    // (u1 + u1 u2)/u1^2 reduces to (1+u2)/u1 -> (1, 0)
    LaurentPoly g = exact_div(add(u(n, 0), mul(u(n, 0), u(n, 1))), mul(u(n, 0), u(n, 0)));
    CHECK(denominator_vector(g) == IntVec{1, 0});
    CHECK_THROWS_AS(denominator_vector(LaurentPoly::zero(n)), ArgumentError);
}

TEST_CASE("reduced-form roundtrip") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        LaurentPoly f = random_poly(rng, 3, false);
        IntVec d = denominator_vector(f);
        LaurentPoly P = reduced_numerator(f);
        // Rebuild f = P / prod u^d.
        std::vector<int> back(d.size());
        for (size_t i = 0; i < d.size(); ++i) back[i] = -static_cast<int>(d[i]);
        CHECK(mul(P, LaurentPoly::monomial(3, back)) == f);
        // P is divisible by no u_i: some term has exponent 0 in each variable.
        for (int i = 0; i < 3; ++i) {
            bool hit = false;
            for (const auto& [e, c] : P.terms)
                if (e[static_cast<size_t>(i)] == 0) hit = true;
            CHECK(hit);
        }
    }
}

TEST_CASE("weak positivity certificate") {
    int n = 2;
    // (1+u2)/u1 -> Certified
    LaurentPoly f = exact_div(add(LaurentPoly::one(n), u(n, 1)), u(n, 0));
    CHECK(weak_positivity_certificate(f).kind == Positivity::Certified);
    // (1-u2)/u1 -> Falsified at (1,1)
    LaurentPoly g = exact_div(sub(LaurentPoly::one(n), u(n, 1)), u(n, 0));
    auto rg = weak_positivity_certificate(g);
    CHECK(rg.kind == Positivity::Falsified);
    LaurentPoly P = reduced_numerator(g);
    std::vector<Int> w(rg.witness.begin(), rg.witness.end());
    CHECK(evaluate_at(P, w) <= 0);
    // u1^2 - u1 u2 + u2^2: weakly positive in fact, but the certificate
    // correctly declines (coefficient test fails).
    LaurentPoly h = add(sub(mul(u(n, 0), u(n, 0)), mul(u(n, 0), u(n, 1))), mul(u(n, 1), u(n, 1)));
    CHECK(positive_on_grid(h, 6));
    CHECK(weak_positivity_certificate(h).kind == Positivity::Unknown);
}

TEST_CASE("certificate soundness audit") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long long> coord(0, 9);
    int audited = 0;
    for (int trial = 0; trial < 200; ++trial) {
        LaurentPoly f = random_poly(rng, 2, rng() % 2 == 0);
        auto r = weak_positivity_certificate(f);
        if (r.kind == Positivity::Certified) {
            LaurentPoly P = reduced_numerator(f);
            for (int pt = 0; pt < 50; ++pt) {
                std::vector<Int> z{Int(coord(rng)), Int(coord(rng))};
                if (z[0] == 0 && z[1] == 0) z[1] = 1;
                CHECK(evaluate_at(P, z) > 0);
                ++audited;
            }
        } else if (r.kind == Positivity::Falsified) {
            LaurentPoly P = reduced_numerator(f);
            std::vector<Int> w(r.witness.begin(), r.witness.end());
            CHECK(evaluate_at(P, w) <= 0);
        }
    }
    CHECK(audited > 0);
}

TEST_CASE("denominator lemma on certified pairs") {
    std::mt19937_64 rng(31);
    int done = 0;
    while (done < 200) {
        LaurentPoly f = random_poly(rng, 3, true);
        LaurentPoly g = random_poly(rng, 3, true);
        if (weak_positivity_certificate(f).kind != Positivity::Certified) continue;
        if (weak_positivity_certificate(g).kind != Positivity::Certified) continue;
        CHECK(denominator_vector(add(f, g)) ==
              ivec_max(denominator_vector(f), denominator_vector(g)));
        CHECK(denominator_vector(mul(f, g)) ==
              ivec_add(denominator_vector(f), denominator_vector(g)));
        CHECK(weak_positivity_certificate(add(f, g)).kind == Positivity::Certified);
        ++done;
    }
}

TEST_CASE("substitution") {
    int n = 2;
    LaurentPoly f = mul(u(n, 0), u(n, 1));
    std::vector<LaurentPoly> id_imgs{u(n, 0), u(n, 1)};
    CHECK(substitute(f, id_imgs) == f);

    // x1^-1 with image (1+u2)/u1 is not Laurent: strict errors, extended
    // carries the fraction.
    LaurentPoly x1inv = u(n, 0, -1);
    std::vector<LaurentPoly> imgs{exact_div(add(LaurentPoly::one(n), u(n, 1)), u(n, 0)), u(n, 1)};
    CHECK_THROWS_AS(substitute(x1inv, imgs), DivisibilityError);
    auto fr = substitute_extended(x1inv, imgs);
    // fr is the exact reciprocal of the image of x1: fr * image = 1.
    auto im = substitute_extended(u(n, 0), imgs);
    CHECK(mul(fr.num, im.num) == mul(fr.den, im.den));

    // Homomorphism property on random inputs.
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        LaurentPoly a = random_poly(rng, 2, false);
        LaurentPoly b = random_poly(rng, 2, false);
        std::vector<LaurentPoly> im{random_poly(rng, 2, true), random_poly(rng, 2, true)};
        auto lhs = substitute_extended(add(a, b), im);
        auto ra = substitute_extended(a, im);
        auto rb = substitute_extended(b, im);
        // lhs == ra + rb as fractions: lhs.num*ra.den*rb.den == (ra.num*rb.den + rb.num*ra.den)*lhs.den
        CHECK(mul(lhs.num, mul(ra.den, rb.den)) ==
              mul(add(mul(ra.num, rb.den), mul(rb.num, ra.den)), lhs.den));
    }
    CHECK_THROWS_AS(substitute(f, std::vector<LaurentPoly>{LaurentPoly::zero(n), u(n, 1)}),
                    ArgumentError);
}

TEST_CASE("canonical rendering") {
    int n = 2;
    LaurentPoly f = add(add(LaurentPoly::one(n), u(n, 0)), u(n, 1));
    f = exact_div(f, mul(u(n, 0), u(n, 1)));
    CHECK(render(f) == "(1 + u1 + u2) / (u1*u2)");
    LaurentPoly g = exact_div(add(LaurentPoly::one(n), u(n, 1)), u(n, 0));
    CHECK(render(g, "x") == "(1 + x2) / x1");
    CHECK(render(u(n, 0)) == "u1");
    CHECK(render(LaurentPoly::zero(n)) == "0");
    CHECK(render(u(n, 0, -2)) == "1 / u1^2");
    CHECK(render(sub(u(n, 0), u(n, 1))) == "u1 - u2");
    CHECK(render(mul(u(n, 0), u(n, 0))) == "u1^2");
    CHECK(render(LaurentPoly::constant(n, -3)) == "-3");
}
