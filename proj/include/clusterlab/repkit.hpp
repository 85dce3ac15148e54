#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "clusterlab/intvec.hpp"
#include "clusterlab/matrix.hpp"
#include "clusterlab/quiver.hpp"

namespace clusterlab {

// Finite-dimensional representation of a fixed acyclic quiver: one space per
// vertex, one matrix per arrow (maps[a]: dims[src] -> dims[tgt], acting on
// column vectors).
template <class K>
struct RepT {
    std::vector<int> dims;
    std::vector<Matrix<K>> maps;

    int total_dim() const {
        int t = 0;
        for (int d : dims) t += d;
        return t;
    }
};
using Rep = RepT<Rat>;

// Module morphism: one matrix per vertex.
template <class K>
struct MorphT {
    std::vector<Matrix<K>> comp;
};
using Morph = MorphT<Rat>;

template <class K>
std::vector<MorphT<K>> hom_space_basis(const ArrowList& al, const RepT<K>& M, const RepT<K>& N);

template <class K>
MorphT<K> morph_compose(const MorphT<K>& g, const MorphT<K>& f); // g after f

template <class K>
MorphT<K> morph_identity(const RepT<K>& M);

template <class K>
RepT<K> rep_direct_sum(const RepT<K>& A, const RepT<K>& B);

// Hereditary Euler form of the quiver: <a,b> = sum a_i b_i - sum_{arrows i->j} a_i b_j.
long long euler_form_quiver(const ArrowList& al, const IntVec& a, const IntVec& b);

// An Ext^1(M,N) class presented through the fixed minimal projective
// presentation of M: coordinates in a chosen cokernel basis, with maps to and
// from representative morphisms P_1(M) -> N.
struct ExtClass {
    std::vector<Rat> coords;
};

class RepKit {
public:
    using Id = int;

    explicit RepKit(const Quiver& q);
    RepKit(const RepKit&) = delete;
    RepKit& operator=(const RepKit&) = delete;

    int n() const { return arrows_.n; }
    const ArrowList& arrows() const { return arrows_; }
    const Quiver& quiver() const { return quiver_; }

    Id register_rep(Rep r);
    const Rep& rep(Id id) const;
    IntVec dims_of(Id id) const;

    Id proj(int i) const { return proj_[static_cast<size_t>(i)]; }
    Id inj(int i) const { return inj_[static_cast<size_t>(i)]; }
    Id simple(int i) const { return simple_[static_cast<size_t>(i)]; }

    const std::vector<Morph>& hom_basis(Id M, Id N);
    int hom_dim(Id M, Id N);
    int ext1_dim(Id M, Id N);

    // Hom dimension over F_p.  Always >= the exact dimension (rank can only
    // drop mod p), so a vanishing F_p Ext dimension certifies exact vanishing;
    // used as a sound prefilter in pool searches.  Falls back to the exact
    // value when the representations do not reduce mod p.
    int hom_dim_fp(Id M, Id N, long long p);

    // Ext^1(M,N) functorial interface.
    int ext_space_dim(Id M, Id N);
    Morph ext_representative(Id M, Id N, const ExtClass& c); // morphism P1(M) -> N
    ExtClass ext_project(Id M, Id N, const Morph& rep);      // class of a representative
    ExtClass ext_pushforward(Id M, Id N1, Id N2, const Morph& h, const ExtClass& c);
    ExtClass ext_pullback(Id M1, Id M2, Id N, const Morph& f, const ExtClass& c); // along f: M1 -> M2

    // Auslander-Reiten translate and inverse, via the Nakayama construction on
    // minimal (co)presentations.  DomainError on projective (resp. injective)
    // input; only defined here for indecomposables.
    Id tau(Id M);
    Id tau_inv(Id M);
    Morph tau_inv_mor(Id N, Id L, const Morph& g); // tau^{-1} g : tau^{-1}N -> tau^{-1}L

    bool is_projective_ind(Id M); // indecomposable iso to some P_i
    bool is_injective_ind(Id M);
    std::optional<int> projective_vertex(Id M);
    std::optional<int> injective_vertex(Id M);

    bool is_rigid(Id M);
    bool iso(Id M, Id N);
    // X must be indecomposable; true iff X is a direct summand of M.
    bool has_summand(Id M, Id X);

    std::vector<Rep> decompose(const Rep& M);
    bool is_indecomposable(const Rep& M);

    // Number of paths of the quiver (dimension of the path algebra).
    int path_count() const { return static_cast<int>(paths_.size()); }

private:
    struct Path {
        int src, tgt;
        std::vector<int> arrows; // arrow indices in travel order
    };

    // Direct sum of standard projectives or injectives with block bookkeeping.
    struct StdSum {
        std::vector<int> verts;
        Id id = -1;
        std::vector<std::vector<int>> offsets; // offsets[t][v]
    };

    struct ProjPres {
        StdSum P0, P1;
        Morph d;     // P1 -> P0
        Morph cover; // P0 -> M
    };

    struct InjCopres {
        StdSum I0, I1;
        Morph d;     // I0 -> I1
        Morph embed; // M -> I0
    };

    struct ExtSpaceData {
        int dim = 0;
        std::vector<Morph> h1basis;    // basis of Hom(P1(M), N)
        Matrix<Rat> span;              // columns: image of Hom(P0,N) in h1 coords
        Matrix<Rat> complement;        // columns: chosen coset representatives
        Matrix<Rat> full;              // [span | complement]
    };

    struct QuotData {
        Rep Q;
        std::vector<Matrix<Rat>> proj;    // X_v -> Q_v
        std::vector<Matrix<Rat>> section; // Q_v -> X_v
    };

    Quiver quiver_;
    ArrowList arrows_;
    std::vector<Path> paths_;
    std::map<std::pair<int, std::vector<int>>, int> path_index_; // (src, arrows) -> idx
    std::vector<std::vector<std::vector<int>>> paths_st_;        // [s][t] -> path indices

    std::deque<Rep> store_; // deque: element references stay valid on growth
    std::vector<Id> proj_, inj_, simple_;

    std::map<std::pair<Id, Id>, std::vector<Morph>> hom_cache_;
    std::map<std::pair<Id, long long>, std::optional<RepT<Fp>>> fp_cache_;
    std::map<std::tuple<Id, Id, long long>, int> fp_hom_cache_;
    std::map<std::pair<Id, Id>, ExtSpaceData> ext_cache_;
    std::map<Id, ProjPres> pres_cache_;
    std::map<Id, InjCopres> copres_cache_;
    std::map<Id, Id> tau_cache_, tauinv_cache_;
    std::map<Id, QuotData> tauinv_quot_;
    std::map<Id, std::pair<StdSum, StdSum>> tauinv_nusums_;
    std::map<std::pair<Id, Id>, bool> iso_cache_;
    mutable std::mutex mu_;

    int path_idx(int src, const std::vector<int>& arrows) const;
    int compose_paths(int p, int q) const; // travel p then q
    Matrix<Rat> rep_path_matrix(const Rep& M, const Path& p) const;

    Rep build_proj(int i) const;
    Rep build_inj(int i) const;
    StdSum build_proj_sum(const std::vector<int>& verts);
    StdSum build_inj_sum(const std::vector<int>& verts);

    // Path coordinates of a block morphism between standard sums.
    std::vector<std::vector<std::vector<Rat>>> proj_block_coords(const StdSum& A, const StdSum& B,
                                                                 const Morph& f);
    Morph morph_from_proj_coords(const StdSum& A, const StdSum& B,
                                 const std::vector<std::vector<std::vector<Rat>>>& c);
    Morph morph_from_inj_coords(const StdSum& A, const StdSum& B,
                                const std::vector<std::vector<std::vector<Rat>>>& c);
    std::vector<std::vector<std::vector<Rat>>> inj_block_coords(const StdSum& A, const StdSum& B,
                                                                const Morph& f);

    const ProjPres& pres(Id M);
    const InjCopres& copres(Id M);
    const ExtSpaceData& ext_space(Id M, Id N);

    std::vector<Rat> flatten(const Morph& f) const;
    Morph unflatten(const Rep& M, const Rep& N, const std::vector<Rat>& v) const;

    // Solve for g in Hom(A,B) with post/pre-composition constraint; see .cpp.
    std::optional<Morph> solve_through(Id A, Id B, const Morph& lhs_post, const Morph& rhs,
                                       bool post);

    friend class RepKitTestAccess;
};

template <class K>
std::vector<MorphT<K>> hom_space_basis(const ArrowList& al, const RepT<K>& M, const RepT<K>& N) {
    // Unknowns: entries of phi_v (dim N_v x dim M_v per vertex).
    std::vector<int> offset(static_cast<size_t>(al.n) + 1, 0);
    for (int v = 0; v < al.n; ++v)
        offset[static_cast<size_t>(v) + 1] =
            offset[static_cast<size_t>(v)] + N.dims[static_cast<size_t>(v)] * M.dims[static_cast<size_t>(v)];
    int unknowns = offset[static_cast<size_t>(al.n)];
    auto idx = [&](int v, int i, int j) {
        return offset[static_cast<size_t>(v)] + i * M.dims[static_cast<size_t>(v)] + j;
    };

    int rows = 0;
    for (size_t a = 0; a < al.arrows.size(); ++a) {
        auto [s, t] = al.arrows[a];
        rows += N.dims[static_cast<size_t>(t)] * M.dims[static_cast<size_t>(s)];
    }
    Matrix<K> sys(rows, unknowns);
    int r = 0;
    for (size_t a = 0; a < al.arrows.size(); ++a) {
        auto [s, t] = al.arrows[a];
        const Matrix<K>& Ma = M.maps[a];
        const Matrix<K>& Na = N.maps[a];
        // (phi_t Ma - Na phi_s)_{i,j} = 0
        for (int i = 0; i < N.dims[static_cast<size_t>(t)]; ++i)
            for (int j = 0; j < M.dims[static_cast<size_t>(s)]; ++j) {
                for (int k = 0; k < M.dims[static_cast<size_t>(t)]; ++k)
                    sys.at(r, idx(t, i, k)) += Ma.at(k, j);
                for (int k = 0; k < N.dims[static_cast<size_t>(s)]; ++k)
                    sys.at(r, idx(s, k, j)) -= Na.at(i, k);
                ++r;
            }
    }
    Matrix<K> ker = kernel_basis(sys);
    std::vector<MorphT<K>> basis;
    basis.reserve(static_cast<size_t>(ker.cols));
    for (int c = 0; c < ker.cols; ++c) {
        MorphT<K> f;
        f.comp.resize(static_cast<size_t>(al.n));
        for (int v = 0; v < al.n; ++v) {
            Matrix<K> m(N.dims[static_cast<size_t>(v)], M.dims[static_cast<size_t>(v)]);
            for (int i = 0; i < m.rows; ++i)
                for (int j = 0; j < m.cols; ++j) m.at(i, j) = ker.at(idx(v, i, j), c);
            f.comp[static_cast<size_t>(v)] = std::move(m);
        }
        basis.push_back(std::move(f));
    }
    return basis;
}

template <class K>
MorphT<K> morph_compose(const MorphT<K>& g, const MorphT<K>& f) {
    MorphT<K> h;
    h.comp.resize(f.comp.size());
    for (size_t v = 0; v < f.comp.size(); ++v) h.comp[v] = g.comp[v] * f.comp[v];
    return h;
}

template <class K>
MorphT<K> morph_identity(const RepT<K>& M) {
    MorphT<K> f;
    for (int d : M.dims) f.comp.push_back(Matrix<K>::identity(d));
    return f;
}

template <class K>
RepT<K> rep_direct_sum(const RepT<K>& A, const RepT<K>& B) {
    RepT<K> S;
    S.dims.resize(A.dims.size());
    for (size_t v = 0; v < A.dims.size(); ++v) S.dims[v] = A.dims[v] + B.dims[v];
    S.maps.resize(A.maps.size());
    for (size_t a = 0; a < A.maps.size(); ++a) {
        const auto& X = A.maps[a];
        const auto& Y = B.maps[a];
        Matrix<K> m(X.rows + Y.rows, X.cols + Y.cols);
        for (int i = 0; i < X.rows; ++i)
            for (int j = 0; j < X.cols; ++j) m.at(i, j) = X.at(i, j);
        for (int i = 0; i < Y.rows; ++i)
            for (int j = 0; j < Y.cols; ++j) m.at(X.rows + i, X.cols + j) = Y.at(i, j);
        S.maps[a] = std::move(m);
    }
    return S;
}

} // namespace clusterlab
