#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clusterlab/character.hpp"

using namespace clusterlab;

namespace {
Quiver a2() { return Quiver::from_arrows(2, {{0, 1, 1}}); }
} // namespace

TEST_CASE("shifted T-summands map to the variables") {
    ClusterCat cc(a2());
    const TiltingContext& ctx = classical_context(cc);
    for (int i = 0; i < 2; ++i) {
        auto r = cluster_character(cc, ctx, CObj::of(ctx.ST[static_cast<size_t>(i)]));
        CHECK(r.value == LaurentPoly::variable(2, i));
        CHECK(r.ledger.size() == 1);
        CHECK(r.ledger[0].st_case);
        CHECK(r.ledger[0].st_index == i);
    }
    // Same over the root context +SP_i.
    const TiltingContext& rid = cc.context(resolve_tilt(cc, "id"));
    for (int i = 0; i < 2; ++i)
        CHECK(cluster_character(cc, rid, CObj::of(rid.ST[static_cast<size_t>(i)])).value ==
              LaurentPoly::variable(2, i));
}

TEST_CASE("A2 simple over the projective context") {
    ClusterCat cc(a2());
    const TiltingContext& ctx = classical_context(cc);
    int s1 = cc.module_pool_index(cc.repkit().simple(0));
    auto r = cluster_character(cc, ctx, CObj::of(s1));
    LaurentPoly expected =
        exact_div(add(LaurentPoly::one(2), LaurentPoly::variable(2, 1)), LaurentPoly::variable(2, 0));
    CHECK(r.value == expected);
    CHECK(denominator_vector(r.value) == IntVec{1, 0});
    // The ledger reassembles the value exactly.
    REQUIRE(r.ledger.size() == 1);
    LaurentPoly sum = LaurentPoly::zero(2);
    for (const auto& t : r.ledger[0].terms) {
        std::vector<int> expo(t.expo.begin(), t.expo.end());
        sum = add(sum, LaurentPoly::monomial(2, expo, Int(t.chi)));
    }
    CHECK(sum == r.value);
}

TEST_CASE("multiplicativity") {
    ClusterCat cc(a2());
    const TiltingContext& ctx = classical_context(cc);
    int s1 = cc.module_pool_index(cc.repkit().simple(0));
    CObj twice;
    twice.add(s1, 2);
    auto rr = cluster_character(cc, ctx, twice);
    auto r = cluster_character(cc, ctx, CObj::of(s1));
    CHECK(rr.value == mul(r.value, r.value));
    // Zero object: empty product is 1.
    CHECK(cluster_character(cc, ctx, CObj::zero()).value == LaurentPoly::one(2));
}

TEST_CASE("classical character and CK2 denominators") {
    ClusterCat cc(a2());
    // SP_i expands as u_i.
    for (int i = 0; i < 2; ++i)
        CHECK(classical_cc(cc, CObj::of(cc.sp(i))).value == LaurentPoly::variable(2, i));
    // delta(X_M) = dim M for module objects.
    for (int idx = 0; idx < cc.pool_size(); ++idx) {
        if (!cc.is_module(idx)) continue;
        auto r = classical_cc(cc, CObj::of(idx));
        CHECK(denominator_vector(r.value) == cc.module_dims(idx));
    }
}

TEST_CASE("registry equality over the projective context of A2") {
    ClusterCat cc(a2());
    const TiltingContext& ctx = classical_context(cc);
    Seed root = root_seed_for_context(cc, ctx.T, "u");
    Registry reg = enumerate_seeds(cc, root, {.varprefix = "u"});
    for (const auto& [key, rec] : reg.variables) {
        auto r = cluster_character(cc, ctx, CObj::of(rec.obj));
        CHECK(r.value == rec.xpoly);
    }
}

TEST_CASE("multiplication theorem on an A2 exchange") {
    ClusterCat cc(a2());
    const TiltingContext& ctx = classical_context(cc);
    Seed root = root_seed_for_context(cc, ctx.T, "x");
    Registry reg = enumerate_seeds(cc, root, {});
    for (const auto* ev : reg.unique_exchange_edges()) {
        auto xu = cluster_character(cc, ctx, CObj::of(ev->R[static_cast<size_t>(ev->k)]));
        auto xv = cluster_character(cc, ctx, CObj::of(ev->ustar));
        auto xe = cluster_character(cc, ctx, ev->E);
        auto xep = cluster_character(cc, ctx, ev->Eprime);
        CHECK(mul(xu.value, xv.value) == add(xe.value, xep.value));
    }
}

TEST_CASE("Phi_T compatibility") {
    ClusterCat cc(a2());
    // A non-classical context: the root +SP_i.
    const TiltingContext& ctx = cc.context(resolve_tilt(cc, "id"));
    auto images = phi_images(cc, ctx);
    for (int idx = 0; idx < cc.pool_size(); ++idx) {
        auto xt = cluster_character(cc, ctx, CObj::of(idx));
        auto classical = classical_cc(cc, CObj::of(idx));
        CHECK(substitute(xt.value, images) == classical.value);
    }
}

TEST_CASE("u-coordinate fill matches the classical registry") {
    ClusterCat cc(a2());
    const TiltingContext& ctx = cc.context(resolve_tilt(cc, "id"));
    Seed root = root_seed_for_context(cc, ctx.T, "x");
    Registry reg = enumerate_seeds(cc, root, {});
    fill_u_coordinates(cc, ctx, reg);

    Registry classical = enumerate_seeds(cc, root_seed_for_context(cc, classical_context(cc).T, "u"),
                                         {.varprefix = "u"});
    for (const auto& [key, rec] : reg.variables) {
        REQUIRE(rec.upoly.has_value());
        std::string ukey = render(*rec.upoly, "u");
        auto it = classical.variables.find(ukey);
        REQUIRE(it != classical.variables.end());
        CHECK(it->second.obj == rec.obj); // Phi_T bijectivity on the corpus
    }
}
