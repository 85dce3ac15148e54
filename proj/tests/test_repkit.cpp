#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "clusterlab/repkit.hpp"

using namespace clusterlab;

namespace {

Quiver a2() { return Quiver::from_arrows(2, {{0, 1, 1}}); }
Quiver a3() { return Quiver::from_arrows(3, {{0, 1, 1}, {1, 2, 1}}); }

RepT<Fp> to_fp(const Rep& r, long long p) {
    RepT<Fp> out;
    out.dims = r.dims;
    for (const auto& m : r.maps) {
        Matrix<Fp> f(m.rows, m.cols);
        for (size_t i = 0; i < m.a.size(); ++i) {
            Rat v = m.a[i];
            long long num = static_cast<long long>(boost::multiprecision::numerator(v));
            long long den = static_cast<long long>(boost::multiprecision::denominator(v));
            f.a[i] = Fp(num, p) * Fp(den, p).inv();
        }
        out.maps.push_back(std::move(f));
    }
    return out;
}

} // namespace

TEST_CASE("standard modules in A2") {
    RepKit rk(a2());
    CHECK(rk.dims_of(rk.proj(0)) == IntVec{1, 1});
    CHECK(rk.dims_of(rk.proj(1)) == IntVec{0, 1});
    CHECK(rk.dims_of(rk.simple(0)) == IntVec{1, 0});
    CHECK(rk.dims_of(rk.simple(1)) == IntVec{0, 1});
    // I1 = S1 in A2.
    CHECK(rk.iso(rk.inj(0), rk.simple(0)));
    CHECK(rk.path_count() == 3);
}

TEST_CASE("dim Hom(P_i, X) = dims(X)[i]") {
    RepKit rk(a3());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(rk.hom_dim(rk.proj(i), rk.proj(j)) == rk.dims_of(rk.proj(j))[static_cast<size_t>(i)]);
            CHECK(rk.hom_dim(rk.proj(i), rk.inj(j)) == rk.dims_of(rk.inj(j))[static_cast<size_t>(i)]);
        }
}

TEST_CASE("hom and ext examples in A2") {
    RepKit rk(a2());
    CHECK(rk.hom_dim(rk.simple(0), rk.simple(0)) == 1);
    CHECK(rk.hom_dim(rk.proj(0), rk.simple(1)) == 0);
    CHECK(rk.ext1_dim(rk.simple(0), rk.simple(1)) == 1);
    CHECK(rk.ext1_dim(rk.simple(1), rk.simple(0)) == 0);
    for (int i = 0; i < 2; ++i) {
        CHECK(rk.ext1_dim(rk.proj(i), rk.simple(0)) == 0);
        CHECK(rk.ext1_dim(rk.proj(i), rk.proj(0)) == 0);
    }
    CHECK(rk.is_rigid(rk.proj(0)));

    // Hom additivity against a direct sum.
    Rep nsum = rep_direct_sum(rk.rep(rk.simple(0)), rk.rep(rk.proj(0)));
    RepKit::Id sum_id = rk.register_rep(nsum);
    for (int i = 0; i < 2; ++i)
        CHECK(rk.hom_dim(rk.proj(i), sum_id) ==
              rk.hom_dim(rk.proj(i), rk.simple(0)) + rk.hom_dim(rk.proj(i), rk.proj(0)));
}

TEST_CASE("ext space agrees with the Euler-form shortcut") {
    RepKit rk(a3());
    std::vector<RepKit::Id> mods;
    for (int i = 0; i < 3; ++i) {
        mods.push_back(rk.proj(i));
        mods.push_back(rk.inj(i));
        mods.push_back(rk.simple(i));
    }
    for (auto m : mods)
        for (auto n : mods) {
            CHECK(rk.ext1_dim(m, n) == rk.ext_space_dim(m, n));
            long long euler = rk.hom_dim(m, n) - rk.ext1_dim(m, n);
            CHECK(euler == euler_form_quiver(rk.arrows(), rk.dims_of(m), rk.dims_of(n)));
        }
}

TEST_CASE("tau in A2") {
    RepKit rk(a2());
    RepKit::Id t = rk.tau(rk.simple(0));
    CHECK(rk.dims_of(t) == IntVec{0, 1});
    CHECK(rk.iso(t, rk.simple(1)));
    CHECK_THROWS_AS(rk.tau(rk.proj(0)), DomainError);
    CHECK_THROWS_AS(rk.tau_inv(rk.inj(0)), DomainError);
    // tau_inv(tau(M)) iso M for non-projective M.
    CHECK(rk.iso(rk.tau_inv(t), rk.simple(0)));
}

TEST_CASE("tau knitting through A3") {
    RepKit rk(a3());
    // Close the projectives under tau_inv; finite type reaches the
    // injectives and visits every indecomposable exactly once.
    std::vector<RepKit::Id> all;
    for (int i = 0; i < 3; ++i) all.push_back(rk.proj(i));
    for (size_t h = 0; h < all.size(); ++h) {
        if (rk.is_injective_ind(all[h])) continue;
        all.push_back(rk.tau_inv(all[h]));
    }
    CHECK(all.size() == 6);
    for (size_t i = 0; i < all.size(); ++i)
        for (size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(rk.iso(all[i], all[j]));

    // AR formula audit: dim Ext^1(M,N) = dim Hom(N, tau M) for non-projective M.
    for (auto m : all) {
        if (rk.is_projective_ind(m)) continue;
        RepKit::Id tm = rk.tau(m);
        for (auto n : all) CHECK(rk.ext1_dim(m, n) == rk.hom_dim(n, tm));
    }
}

TEST_CASE("tau_inv is functorial") {
    // A4: P2, P3, P4 are pairwise non-injective with nonzero inclusions.
    RepKit rk(Quiver::from_arrows(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}}));
    RepKit::Id p3 = rk.proj(3), p2 = rk.proj(2), p1 = rk.proj(1);
    const auto& f32 = rk.hom_basis(p3, p2);
    const auto& f21 = rk.hom_basis(p2, p1);
    REQUIRE(f32.size() == 1);
    REQUIRE(f21.size() == 1);
    Morph tf32 = rk.tau_inv_mor(p3, p2, f32[0]);
    Morph tf21 = rk.tau_inv_mor(p2, p1, f21[0]);
    Morph tcomp = rk.tau_inv_mor(p3, p1, morph_compose(f21[0], f32[0]));
    for (size_t v = 0; v < tcomp.comp.size(); ++v)
        CHECK(tcomp.comp[v] == morph_compose(tf21, tf32).comp[v]);
    Morph tid = rk.tau_inv_mor(p2, p2, morph_identity(rk.rep(p2)));
    for (size_t v = 0; v < tid.comp.size(); ++v)
        CHECK(tid.comp[v] == morph_identity(rk.rep(rk.tau_inv(p2))).comp[v]);
}

TEST_CASE("decompose") {
    RepKit rk(a2());
    // S1 + S1 decomposes into two copies of S1.
    Rep twos1 = rep_direct_sum(rk.rep(rk.simple(0)), rk.rep(rk.simple(0)));
    auto parts = rk.decompose(twos1);
    CHECK(parts.size() == 2);
    for (const auto& p : parts) {
        CHECK(p.total_dim() == 1);
        CHECK(p.dims == std::vector<int>{1, 0});
    }
    // dims (1,1) with zero arrow map = S1 + S2.
    Rep m;
    m.dims = {1, 1};
    m.maps = {Matrix<Rat>(1, 1)};
    auto parts2 = rk.decompose(m);
    CHECK(parts2.size() == 2);
    // P1 is indecomposable and rigid.
    CHECK(rk.is_indecomposable(rk.rep(rk.proj(0))));
    CHECK(rk.is_rigid(rk.proj(0)));
    // A nontrivial extension is indecomposable: P1 itself has nonzero map.
    Rep p1 = rk.rep(rk.proj(0));
    CHECK(p1.maps[0].at(0, 0) == Rat(1));
}

TEST_CASE("ext push/pull") {
    RepKit rk(a2());
    // Ext^1(S1, P2) is one-dimensional; pushing along the inclusion
    // P2 -> P1 kills the class (Ext^1(S1, P1) has dim... compute honestly).
    RepKit::Id s1 = rk.simple(0), p2 = rk.proj(1), p1 = rk.proj(0);
    CHECK(rk.ext_space_dim(s1, p2) == 1);
    ExtClass c{{Rat(1)}};
    Morph repm = rk.ext_representative(s1, p2, c);
    ExtClass back = rk.ext_project(s1, p2, repm);
    CHECK(back.coords == c.coords);
    const auto& incl = rk.hom_basis(p2, p1);
    REQUIRE(incl.size() == 1);
    ExtClass pushed = rk.ext_pushforward(s1, p2, p1, incl[0], c);
    CHECK(static_cast<int>(pushed.coords.size()) == rk.ext_space_dim(s1, p1));
    // Pullback along the identity is the identity.
    ExtClass pulled = rk.ext_pullback(s1, s1, p2, morph_identity(rk.rep(s1)), c);
    CHECK(pulled.coords == c.coords);
}

TEST_CASE("field independence of Hom dims") {
    RepKit rk(a3());
    std::vector<RepKit::Id> mods;
    for (int i = 0; i < 3; ++i) {
        mods.push_back(rk.proj(i));
        mods.push_back(rk.inj(i));
        mods.push_back(rk.simple(i));
    }
    for (long long p : {2LL, 3LL, 5LL}) {
        for (auto m : mods)
            for (auto n : mods) {
                auto basis = hom_space_basis(rk.arrows(), to_fp(rk.rep(m), p), to_fp(rk.rep(n), p));
                CHECK(static_cast<int>(basis.size()) == rk.hom_dim(m, n));
            }
    }
}

TEST_CASE("hom basis elements satisfy the commutation squares") {
    RepKit rk(a3());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        RepKit::Id m = rk.proj(static_cast<int>(rng() % 3));
        RepKit::Id n = rk.inj(static_cast<int>(rng() % 3));
        const Rep& M = rk.rep(m);
        const Rep& N = rk.rep(n);
        for (const auto& f : rk.hom_basis(m, n))
            for (size_t a = 0; a < rk.arrows().arrows.size(); ++a) {
                auto [s, t] = rk.arrows().arrows[a];
                CHECK(f.comp[static_cast<size_t>(t)] * M.maps[a] == N.maps[a] * f.comp[static_cast<size_t>(s)]);
            }
    }
}
