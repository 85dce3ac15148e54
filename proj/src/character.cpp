#include "clusterlab/character.hpp"

#include <mutex>

#include "clusterlab/fdalg.hpp"

namespace clusterlab {

namespace {

struct PieceCacheKey {
    const ClusterCat* cc;
    std::vector<int> T;
    int obj;
    friend bool operator<(const PieceCacheKey& a, const PieceCacheKey& b) {
        return std::tie(a.cc, a.T, a.obj) < std::tie(b.cc, b.T, b.obj);
    }
};

std::mutex piece_mu;
std::map<PieceCacheKey, CharacterResult::Piece> piece_cache;

CharacterResult::Piece character_ind(ClusterCat& cc, const TiltingContext& ctx, int obj,
                                     const CharacterOptions& opts) {
    PieceCacheKey key{&cc, ctx.T, obj};
    {
        std::lock_guard<std::mutex> lk(piece_mu);
        auto it = piece_cache.find(key);
        if (it != piece_cache.end()) return it->second;
    }
    int n = cc.rank();
    CharacterResult::Piece piece;
    piece.obj = obj;
    for (int i = 0; i < n; ++i)
        if (ctx.ST[static_cast<size_t>(i)] == obj) {
            piece.st_case = true;
            piece.st_index = i;
            piece.piece = LaurentPoly::variable(n, i);
        }
    if (!piece.st_case) {
        FDModule FM = cc.F_module(ctx, obj);
        // <S_i, FM> = dim Hom_B(S_i, FM) - dim Ext^1_B(S_i, FM).
        std::vector<long long> ci(static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            ci[static_cast<size_t>(i)] = euler_form_A(ctx.simples[static_cast<size_t>(i)], FM);
        piece.piece = LaurentPoly::zero(n);
        IntVec d = FM.dim_vector();
        IntVec e(static_cast<size_t>(n), 0);
        while (true) {
            auto fit = euler_char(FM, e, opts.primes, opts.budget, opts.workers);
            if (fit.chi != 0) {
                CharacterResult::LedgerEntry entry;
                entry.e = e;
                entry.chi = fit.chi;
                entry.expo.resize(static_cast<size_t>(n));
                std::vector<int> expo(static_cast<size_t>(n));
                for (int i = 0; i < n; ++i) {
                    long long v = antisym_pair(ctx.antisym, i, e) - ci[static_cast<size_t>(i)];
                    entry.expo[static_cast<size_t>(i)] = v;
                    expo[static_cast<size_t>(i)] = static_cast<int>(v);
                }
                piece.piece =
                    add(piece.piece, LaurentPoly::monomial(n, expo, Int(fit.chi)));
                piece.terms.push_back(std::move(entry));
            }
            // Lexicographic odometer over the box 0..d.
            size_t i = 0;
            while (i < e.size() && e[i] == d[i]) { e[i] = 0; ++i; }
            if (i == e.size()) break;
            ++e[i];
        }
    }
    std::lock_guard<std::mutex> lk(piece_mu);
    piece_cache.emplace(key, piece);
    return piece;
}

} // namespace

CharacterResult cluster_character(ClusterCat& cc, const TiltingContext& ctx, const CObj& M,
                                  const CharacterOptions& opts) {
    int n = cc.rank();
    CharacterResult out;
    out.value = LaurentPoly::one(n);
    for (const auto& [obj, mult] : M.summands) {
        CharacterResult::Piece piece = character_ind(cc, ctx, obj, opts);
        piece.mult = mult;
        out.value = mul(out.value, pow(piece.piece, static_cast<unsigned>(mult)));
        out.ledger.push_back(std::move(piece));
    }
    return out;
}

const TiltingContext& classical_context(ClusterCat& cc) {
    std::vector<int> T;
    for (int i = 0; i < cc.rank(); ++i) T.push_back(cc.module_pool_index(cc.repkit().proj(i)));
    return cc.context(T);
}

CharacterResult classical_cc(ClusterCat& cc, const CObj& M, const CharacterOptions& opts) {
    return cluster_character(cc, classical_context(cc), M, opts);
}

std::vector<LaurentPoly> phi_images(ClusterCat& cc, const TiltingContext& ctx,
                                    const CharacterOptions& opts) {
    std::vector<LaurentPoly> images;
    for (int i = 0; i < cc.rank(); ++i)
        images.push_back(classical_cc(cc, CObj::of(ctx.ST[static_cast<size_t>(i)]), opts).value);
    return images;
}

void fill_u_coordinates(ClusterCat& cc, const TiltingContext& ctx, Registry& reg,
                        const CharacterOptions& opts) {
    auto images = phi_images(cc, ctx, opts);
    for (auto& [key, rec] : reg.variables) rec.upoly = substitute(rec.xpoly, images);
}

} // namespace clusterlab
