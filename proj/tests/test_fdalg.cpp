#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "clusterlab/clustercat.hpp"
#include "clusterlab/fdalg.hpp"

using namespace clusterlab;

namespace {

Quiver a2() { return Quiver::from_arrows(2, {{0, 1, 1}}); }

// B = End_C(+P_i) over A2 is the path algebra kQ(A2).
struct Fixture {
    ClusterCat cc{a2()};
    const TiltingContext* ctx = nullptr;
    Fixture() {
        std::vector<int> T{cc.module_pool_index(cc.repkit().proj(0)),
                           cc.module_pool_index(cc.repkit().proj(1))};
        ctx = &cc.context(T);
    }
    const FDAlgebra& B() const { return ctx->B; }
};

} // namespace

TEST_CASE("radical of kQ(A2)") {
    Fixture f;
    auto rad = radical_basis(f.B());
    CHECK(rad.size() == 1); // the arrow
}

TEST_CASE("projectives, simples, covers, syzygies") {
    Fixture f;
    const FDAlgebra& B = f.B();
    FDModule p1 = projective_module(B, 0);
    FDModule p2 = projective_module(B, 1);
    CHECK(p1.dim_vector() == IntVec{1, 1});
    CHECK(p2.dim_vector() == IntVec{0, 1});
    FDModule s1 = simple_module(B, 0);
    FDModule s2 = simple_module(B, 1);
    CHECK(s1.dim_vector() == IntVec{1, 0});
    CHECK(s2.dim_vector() == IntVec{0, 1});
    CHECK(s1.check_representation());

    // projective_cover(S_i) = A e_i.
    ProjCover c1 = projective_cover(s1);
    CHECK(c1.mult == std::vector<int>{1, 0});
    CHECK(c1.P0.dim_vector() == p1.dim_vector());

    // syzygy(S1) = S2 = rad P1.
    SyzygyResult sy = syzygy(s1);
    CHECK(sy.K.dim_vector() == IntVec{0, 1});
    CHECK(hom_dim_A(sy.K, s2) == 1);
}

TEST_CASE("hom and ext over B") {
    Fixture f;
    const FDAlgebra& B = f.B();
    FDModule s1 = simple_module(B, 0);
    FDModule s2 = simple_module(B, 1);
    CHECK(hom_dim_A(s1, s1) == 1);
    CHECK(hom_dim_A(s1, s2) == 0);
    CHECK(ext1_dim_A(s1, s2) == 1); // one arrow 1->2 in QT
    CHECK(ext1_dim_A(s2, s1) == 0);
    for (int t = 0; t < 2; ++t) {
        FDModule p = projective_module(B, t);
        CHECK(ext1_dim_A(p, s1) == 0);
        CHECK(ext1_dim_A(p, s2) == 0);
    }
}

TEST_CASE("euler form and the antisymmetrization") {
    Fixture f;
    const FDAlgebra& B = f.B();
    FDModule s1 = simple_module(B, 0);
    FDModule s2 = simple_module(B, 1);
    CHECK(euler_form_A(s1, s1) == 1);
    CHECK(euler_form_A(s1, s2) == -1);
    CHECK(euler_form_A(s2, s1) == 0);
    auto form = antisym_form_matrix(B);
    CHECK(form[0][1] == -1);
    CHECK(form[1][0] == 1);
    CHECK(form[0][0] == 0);
    CHECK(antisym_pair(form, 0, IntVec{3, 2}) == -2);
}

TEST_CASE("hereditary specialization of the euler form") {
    Fixture f;
    // Over B iso kQ, <M,N> agrees with the quiver Euler form on dim vectors.
    const FDAlgebra& B = f.B();
    ArrowList al = arrows_of_acyclic(a2());
    std::vector<FDModule> mods{simple_module(B, 0), simple_module(B, 1), projective_module(B, 0),
                               projective_module(B, 1)};
    for (const auto& m : mods)
        for (const auto& n : mods)
            CHECK(euler_form_A(m, n) == euler_form_quiver(al, m.dim_vector(), n.dim_vector()));
}

TEST_CASE("K0 additivity of the antisymmetrized form") {
    Fixture f;
    const FDAlgebra& B = f.B();
    auto form = antisym_form_matrix(B);
    // For the short exact sequence 0 -> S2 -> P1 -> S1 -> 0 the pairing
    // <S_i, ->_a on dimension vectors is additive by construction; audit that
    // the middle term's honest pairing value matches.
    FDModule p1 = projective_module(B, 0);
    FDModule s1 = simple_module(B, 0);
    FDModule s2 = simple_module(B, 1);
    for (int i = 0; i < 2; ++i) {
        long long middle = antisym_pair(form, i, p1.dim_vector());
        long long ends = antisym_pair(form, i, s1.dim_vector()) + antisym_pair(form, i, s2.dim_vector());
        CHECK(middle == ends);
        // And the honest <S_i, P1>_a computed from hom/ext agrees with the
        // dimension-vector pairing (K0 well-definedness).
        FDModule si = simple_module(B, i);
        long long honest = (euler_form_A(si, p1)) - (euler_form_A(p1, si));
        CHECK(honest == middle);
    }
}

TEST_CASE("submodule counts over F_p") {
    Fixture f;
    const FDAlgebra& B = f.B();
    FDModule p1 = projective_module(B, 0);
    // e = 0 and e = dim give exactly one submodule.
    CHECK(count_submodules_fp(p1, IntVec{0, 0}, 5) == 1);
    CHECK(count_submodules_fp(p1, IntVec{1, 1}, 5) == 1);
    // P1 of A2: the socle S2 is the unique submodule of vector (0,1); no
    // submodule of vector (1,0).
    CHECK(count_submodules_fp(p1, IntVec{0, 1}, 5) == 1);
    CHECK(count_submodules_fp(p1, IntVec{1, 0}, 5) == 0);

    // Two-dimensional space at one idempotent, zero radical action: the
    // projective line, q+1 points.
    FDModule s1 = simple_module(B, 0);
    FDModule twos1 = module_direct_sum(s1, s1);
    for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL})
        CHECK(count_submodules_fp(twos1, IntVec{1, 0}, p) == Int(p + 1));
    auto fit = euler_char(twos1, IntVec{1, 0});
    CHECK(fit.chi == 2);
    CHECK(fit.degree_bound == 1);

    CHECK_THROWS_AS(count_submodules_fp(p1, IntVec{2, 0}, 5), ArgumentError);
    CHECK_THROWS_AS(count_submodules_fp(twos1, IntVec{1, 0}, 5, 1), ResourceError);
}

TEST_CASE("euler characteristics") {
    Fixture f;
    const FDAlgebra& B = f.B();
    FDModule p1 = projective_module(B, 0);
    CHECK(euler_char(p1, IntVec{0, 0}).chi == 1);
    CHECK(euler_char(p1, IntVec{1, 1}).chi == 1);
    CHECK(euler_char(p1, IntVec{0, 1}).chi == 1);
    CHECK(euler_char(p1, IntVec{1, 0}).chi == 0);
    // Worker-count independence, byte for byte on the counts.
    FDModule s1 = simple_module(B, 0);
    FDModule twos1 = module_direct_sum(s1, s1);
    auto f1 = euler_char(twos1, IntVec{1, 0}, {2, 3, 5, 7, 11, 13}, 50'000'000, 1);
    auto f4 = euler_char(twos1, IntVec{1, 0}, {2, 3, 5, 7, 11, 13}, 50'000'000, 4);
    CHECK(f1.counts == f4.counts);
    CHECK(f1.chi == f4.chi);
}

TEST_CASE("grassmannian duality sanity") {
    Fixture f;
    const FDAlgebra& B = f.B();
    FDModule p1 = projective_module(B, 0);
    // Sum over e of chi(Gr_e) is invariant under e -> dim - e for this rigid
    // module.
    auto total = [&](bool flip) {
        long long s = 0;
        IntVec d = p1.dim_vector();
        for (long long e0 = 0; e0 <= d[0]; ++e0)
            for (long long e1 = 0; e1 <= d[1]; ++e1) {
                IntVec e{e0, e1};
                if (flip) e = ivec_sub(d, e);
                s += euler_char(p1, e).chi;
            }
        return s;
    };
    CHECK(total(false) == total(true));
}

TEST_CASE("algebra audits catch corruption") {
    Fixture f;
    FDAlgebra broken = f.B();
    // Corrupt one structure constant; associativity must fail.
    broken.sc[0][0][broken.dim - 1] += 1;
    CHECK_THROWS_AS(broken.check(), IntegrityError);
}
