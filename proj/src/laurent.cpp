#include "clusterlab/laurent.hpp"

#include <algorithm>
#include <random>

namespace clusterlab {

LaurentPoly LaurentPoly::constant(int n, Int c) {
    LaurentPoly f(n);
    if (c != 0) f.terms.emplace(std::vector<int>(static_cast<size_t>(n), 0), std::move(c));
    return f;
}

LaurentPoly LaurentPoly::variable(int n, int i, int power) {
    if (i < 0 || i >= n) throw ArgumentError("variable index out of range");
    LaurentPoly f(n);
    std::vector<int> e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(i)] = power;
    f.terms.emplace(std::move(e), Int(1));
    return f;
}

LaurentPoly LaurentPoly::monomial(int n, const std::vector<int>& expo, Int c) {
    if (static_cast<int>(expo.size()) != n) throw ArgumentError("monomial exponent size mismatch");
    LaurentPoly f(n);
    if (c != 0) f.terms.emplace(expo, std::move(c));
    return f;
}

bool LaurentPoly::is_one() const {
    if (terms.size() != 1) return false;
    const auto& [e, c] = *terms.begin();
    if (c != 1) return false;
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

void LaurentPoly::insert_term(const std::vector<int>& expo, const Int& c) {
    if (c == 0) return;
    auto it = terms.find(expo);
    if (it == terms.end()) {
        terms.emplace(expo, c);
    } else {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

static void check_same_ring(const LaurentPoly& f, const LaurentPoly& g) {
    if (f.nvars != g.nvars) throw ArgumentError("Laurent polynomials over different variable counts");
}

LaurentPoly add(const LaurentPoly& f, const LaurentPoly& g) {
    check_same_ring(f, g);
    LaurentPoly r = f;
    for (const auto& [e, c] : g.terms) r.insert_term(e, c);
    return r;
}

LaurentPoly neg(const LaurentPoly& f) {
    LaurentPoly r(f.nvars);
    for (const auto& [e, c] : f.terms) r.terms.emplace(e, -c);
    return r;
}

LaurentPoly sub(const LaurentPoly& f, const LaurentPoly& g) { return add(f, neg(g)); }

LaurentPoly mul(const LaurentPoly& f, const LaurentPoly& g) {
    check_same_ring(f, g);
    LaurentPoly r(f.nvars);
    std::vector<int> e(static_cast<size_t>(f.nvars));
    for (const auto& [ef, cf] : f.terms)
        for (const auto& [eg, cg] : g.terms) {
            for (size_t i = 0; i < e.size(); ++i) e[i] = ef[i] + eg[i];
            r.insert_term(e, cf * cg);
        }
    return r;
}

LaurentPoly pow(const LaurentPoly& f, unsigned e) {
    LaurentPoly r = LaurentPoly::one(f.nvars);
    LaurentPoly base = f;
    while (e) {
        if (e & 1u) r = mul(r, base);
        e >>= 1u;
        if (e) base = mul(base, base);
    }
    return r;
}

// Shift every variable's minimal exponent to 0 (monomials are units in the
// Laurent ring, so divisibility is unchanged); returns the shift applied.
static LaurentPoly normalize_min_zero(const LaurentPoly& f, std::vector<int>& shift) {
    shift.assign(static_cast<size_t>(f.nvars), 0);
    if (f.terms.empty()) return f;
    std::vector<int> mins(f.terms.begin()->first);
    for (const auto& [e, c] : f.terms)
        for (size_t i = 0; i < mins.size(); ++i) mins[i] = std::min(mins[i], e[i]);
    for (size_t i = 0; i < mins.size(); ++i) shift[i] = -mins[i];
    LaurentPoly r(f.nvars);
    std::vector<int> e2(static_cast<size_t>(f.nvars));
    for (const auto& [e, c] : f.terms) {
        for (size_t i = 0; i < e2.size(); ++i) e2[i] = e[i] + shift[i];
        r.terms.emplace(e2, c);
    }
    return r;
}

std::optional<LaurentPoly> try_exact_div(const LaurentPoly& f, const LaurentPoly& g) {
    check_same_ring(f, g);
    if (g.is_zero()) throw ArgumentError("division by the zero Laurent polynomial");
    if (f.is_zero()) return LaurentPoly::zero(f.nvars);

    std::vector<int> sf, sg;
    LaurentPoly fp = normalize_min_zero(f, sf);
    LaurentPoly gp = normalize_min_zero(g, sg);

    // Polynomial long division by the lex-leading term of gp; an exact
    // quotient never needs a remainder step.
    LaurentPoly rem = fp;
    LaurentPoly quo(f.nvars);
    const auto& glead = *gp.terms.rbegin();
    std::vector<int> e(static_cast<size_t>(f.nvars));
    while (!rem.is_zero()) {
        const auto& rlead = *rem.terms.rbegin();
        for (size_t i = 0; i < e.size(); ++i) {
            e[i] = rlead.first[i] - glead.first[i];
            if (e[i] < 0) return std::nullopt;
        }
        if (rlead.second % glead.second != 0) return std::nullopt;
        Int c = rlead.second / glead.second;
        LaurentPoly t = LaurentPoly::monomial(f.nvars, e, c);
        quo = add(quo, t);
        rem = sub(rem, mul(t, gp));
    }
    // Undo the clearing shifts: f = fp*u^{-sf}, g = gp*u^{-sg}.
    std::vector<int> back(static_cast<size_t>(f.nvars));
    for (size_t i = 0; i < back.size(); ++i) back[i] = sg[i] - sf[i];
    return mul(quo, LaurentPoly::monomial(f.nvars, back));
}

LaurentPoly exact_div(const LaurentPoly& f, const LaurentPoly& g) {
    auto q = try_exact_div(f, g);
    if (!q) throw DivisibilityError("exact_div: nonzero remainder");
    return *q;
}

IntVec denominator_vector(const LaurentPoly& f) {
    if (f.is_zero()) throw ArgumentError("denominator_vector of the zero polynomial");
    IntVec d(static_cast<size_t>(f.nvars), 0);
    bool first = true;
    for (const auto& [e, c] : f.terms) {
        for (size_t i = 0; i < d.size(); ++i) {
            long long v = -static_cast<long long>(e[i]);
            if (first) d[i] = v; else d[i] = std::max(d[i], v);
        }
        first = false;
    }
    // d_i = -(min exponent) = max over terms of (-exponent).
    return d;
}

LaurentPoly reduced_numerator(const LaurentPoly& f) {
    if (f.is_zero()) throw ArgumentError("reduced_numerator of the zero polynomial");
    IntVec d = denominator_vector(f);
    std::vector<int> shift(d.size());
    for (size_t i = 0; i < d.size(); ++i) shift[i] = static_cast<int>(d[i]);
    return mul(f, LaurentPoly::monomial(f.nvars, shift));
}

Int evaluate_at(const LaurentPoly& p, const std::vector<Int>& z) {
    if (static_cast<int>(z.size()) != p.nvars) throw ArgumentError("evaluation point size mismatch");
    Int total = 0;
    for (const auto& [e, c] : p.terms) {
        Int t = c;
        for (size_t i = 0; i < z.size(); ++i) {
            if (e[i] < 0) throw ArgumentError("evaluate_at needs nonnegative exponents");
            for (int k = 0; k < e[i]; ++k) t *= z[i];
        }
        total += t;
    }
    return total;
}

static LaurentPoly substitute_positive(const LaurentPoly& p,
                                       const std::vector<LaurentPoly>& images) {
    int m = images.empty() ? p.nvars : images[0].nvars;
    // Cache image powers.
    std::vector<std::vector<LaurentPoly>> powers(images.size());
    LaurentPoly total = LaurentPoly::zero(m);
    for (const auto& [e, c] : p.terms) {
        LaurentPoly t = LaurentPoly::constant(m, c);
        for (size_t i = 0; i < images.size(); ++i) {
            int ei = e[i];
            if (ei == 0) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(LaurentPoly::one(m));
            while (static_cast<int>(pw.size()) <= ei) pw.push_back(mul(pw.back(), images[i]));
            t = mul(t, pw[static_cast<size_t>(ei)]);
        }
        total = add(total, t);
    }
    return total;
}

static void substitute_parts(const LaurentPoly& f, const std::vector<LaurentPoly>& images,
                             LaurentPoly& num, LaurentPoly& den) {
    if (static_cast<int>(images.size()) != f.nvars)
        throw ArgumentError("substitute: image count mismatch");
    for (const auto& img : images)
        if (img.is_zero()) throw ArgumentError("substitute: zero image");
    int m = images.empty() ? 0 : images[0].nvars;
    for (const auto& img : images)
        if (img.nvars != m) throw ArgumentError("substitute: images over different rings");
    if (f.is_zero()) {
        num = LaurentPoly::zero(m);
        den = LaurentPoly::one(m);
        return;
    }
    IntVec d = denominator_vector(f);
    LaurentPoly P = reduced_numerator(f);
    num = substitute_positive(P, images);
    den = LaurentPoly::one(m);
    for (size_t i = 0; i < d.size(); ++i) {
        if (d[i] > 0) den = mul(den, pow(images[i], static_cast<unsigned>(d[i])));
        else if (d[i] < 0) num = mul(num, pow(images[i], static_cast<unsigned>(-d[i])));
    }
}

LaurentPoly substitute(const LaurentPoly& f, const std::vector<LaurentPoly>& images) {
    LaurentPoly num, den;
    substitute_parts(f, images, num, den);
    return exact_div(num, den);
}

LaurentFraction substitute_extended(const LaurentPoly& f, const std::vector<LaurentPoly>& images) {
    LaurentFraction r;
    substitute_parts(f, images, r.num, r.den);
    auto q = try_exact_div(r.num, r.den);
    if (q) {
        r.num = *q;
        r.den = LaurentPoly::one(r.num.nvars);
    }
    return r;
}

PositivityResult weak_positivity_certificate(const LaurentPoly& f, std::uint64_t seed) {
    if (f.is_zero()) throw ArgumentError("weak_positivity_certificate of zero");
    int n = f.nvars;
    LaurentPoly P = reduced_numerator(f);

    auto eval = [&](const IntVec& z) {
        std::vector<Int> zz(z.begin(), z.end());
        return evaluate_at(P, zz);
    };

    // Test points: all-ones and each single-zero pattern.
    std::vector<IntVec> patterns;
    patterns.push_back(IntVec(static_cast<size_t>(n), 1));
    for (int i = 0; i < n; ++i) {
        IntVec z(static_cast<size_t>(n), 1);
        z[static_cast<size_t>(i)] = 0;
        patterns.push_back(z);
    }

    for (const auto& z : patterns)
        if (eval(z) <= 0) return {Positivity::Falsified, z};

    bool nonneg = std::all_of(P.terms.begin(), P.terms.end(),
                              [](const auto& t) { return t.second > 0; });
    if (nonneg) return {Positivity::Certified, {}};

    // Falsification search: small box points with at most one zero, then a
    // seeded random scan.
    auto scan_point = [&](IntVec z) -> bool {
        int zeros = static_cast<int>(std::count(z.begin(), z.end(), 0));
        return zeros <= 1 && eval(z) <= 0;
    };
    if (n <= 5) {
        IntVec z(static_cast<size_t>(n), 0);
        const long long B = 3;
        while (true) {
            if (scan_point(z)) return {Positivity::Falsified, z};
            size_t i = 0;
            while (i < z.size() && z[i] == B) { z[i] = 0; ++i; }
            if (i == z.size()) break;
            ++z[i];
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long long> coord(0, 9);
    for (int trial = 0; trial < 400; ++trial) {
        IntVec z(static_cast<size_t>(n));
        for (auto& x : z) x = coord(rng);
        for (auto& x : z)
            if (x == 0) x = 1;
        if (trial % 3 == 1) z[static_cast<size_t>(trial) % z.size()] = 0;
        if (scan_point(z)) return {Positivity::Falsified, z};
    }
    return {Positivity::Unknown, {}};
}

static std::string render_term(const std::vector<int>& e, const Int& c,
                               const std::string& vp) {
    Int ac = c < 0 ? Int(-c) : c;
    std::vector<std::string> factors;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        std::string v = vp + std::to_string(i + 1);
        if (e[i] != 1) v += "^" + std::to_string(e[i]);
        factors.push_back(v);
    }
    std::string s;
    if (factors.empty()) return ac.str();
    if (ac != 1) s = ac.str() + "*";
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) s += "*";
        s += factors[i];
    }
    return s;
}

std::string render(const LaurentPoly& f, const std::string& vp) {
    if (f.is_zero()) return "0";
    IntVec d = denominator_vector(f);
    // Numerator carries any net positive powers (d_i < 0).
    std::vector<int> numshift(d.size(), 0), denexp(d.size(), 0);
    for (size_t i = 0; i < d.size(); ++i) {
        if (d[i] > 0) denexp[i] = static_cast<int>(d[i]);
        else numshift[i] = static_cast<int>(-d[i]);
    }
    LaurentPoly P = reduced_numerator(f);
    P = mul(P, LaurentPoly::monomial(f.nvars, numshift));

    // Sort terms with u1 least significant: lex on reversed exponent vectors.
    std::vector<std::pair<std::vector<int>, Int>> ts(P.terms.begin(), P.terms.end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.first.rbegin(), a.first.rend(),
                                            b.first.rbegin(), b.first.rend());
    });
    std::string num;
    for (size_t i = 0; i < ts.size(); ++i) {
        const auto& [e, c] = ts[i];
        if (i == 0) {
            if (c < 0) num += "-";
        } else {
            num += c < 0 ? " - " : " + ";
        }
        num += render_term(e, c, vp);
    }

    int denfactors = 0;
    std::string den;
    for (size_t i = 0; i < denexp.size(); ++i) {
        if (denexp[i] == 0) continue;
        if (denfactors) den += "*";
        den += vp + std::to_string(i + 1);
        if (denexp[i] != 1) den += "^" + std::to_string(denexp[i]);
        ++denfactors;
    }
    if (denfactors == 0) return num;
    std::string lhs = ts.size() > 1 ? "(" + num + ")" : num;
    std::string rhs = denfactors > 1 ? "(" + den + ")" : den;
    return lhs + " / " + rhs;
}

} // namespace clusterlab
