#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clusterlab/fdalg.hpp"
#include "clusterlab/repkit.hpp"

namespace clusterlab {

// Indecomposable object of the cluster category: a module or a shifted
// projective SP_i.
struct CInd {
    enum class Kind { Module, ShiftProj };
    Kind kind = Kind::Module;
    RepKit::Id mod = -1; // Module payload
    int vertex = -1;     // ShiftProj vertex
};

// Formal multiset of pool indecomposables.
struct CObj {
    std::map<int, int> summands; // pool index -> multiplicity > 0

    static CObj zero() { return {}; }
    static CObj of(int idx, int mult = 1);
    void add(int idx, int mult = 1);
    bool empty() const { return summands.empty(); }
    int total() const;
    bool basic() const;
    friend bool operator==(const CObj& a, const CObj& b) { return a.summands == b.summands; }
    friend bool operator<(const CObj& a, const CObj& b) { return a.summands < b.summands; }
};

// End_C(T) with the bookkeeping the character and verification layers need.
// Multiplication convention: x * y = (composition y after x), which makes
// Hom_C(T, M) a left module with F T_j the projective cover of S_j.
struct TiltingContext {
    std::vector<int> T;  // pool indices of T_1..T_q, order fixed
    std::vector<int> ST; // pool indices of S_C T_i
    Quiver QT;           // quiver of B: arrows i->j counted by Ext^1_B(S_i,S_j)
    FDAlgebra B;
    std::vector<std::vector<long long>> antisym; // <S_i,S_j> - <S_j,S_i>
    std::vector<FDModule> simples;               // S_1..S_q of B
    std::vector<std::vector<int>> block_offset;  // basis offset of Hom(T_i,T_j) in B
    std::vector<std::vector<int>> block_dim;
};

struct PoolOptions {
    int dim_cap = 12;            // total-dimension bound for generated modules
    int dim_cap_hard = 48;       // growth ceiling for on-demand extension
    long long filter_prime = 999983; // sound F_p prefilter for pool searches
    std::uint64_t seed = 12345;  // rigid sampling seed
    int sample_tries = 60;       // per candidate dimension vector
    bool sample_rigids = true;   // also scan for regular rigids the orbits miss
};

struct ExchangeResult {
    int ustar = -1;
    CObj E;      // middle term from the positive b-column entries
    CObj Eprime; // middle term from the negative entries
};

class ClusterCat {
public:
    explicit ClusterCat(const Quiver& q, const PoolOptions& opts = {});
    ClusterCat(const ClusterCat&) = delete;
    ClusterCat& operator=(const ClusterCat&) = delete;

    RepKit& repkit() { return rk_; }
    const Quiver& quiver() const { return quiver_; }
    int rank() const { return quiver_.n; }

    int pool_size() const { return static_cast<int>(pool_.size()); }
    const CInd& pool_obj(int idx) const { return pool_.at(static_cast<size_t>(idx)); }
    int sp(int i) const { return i; } // SP_i occupy pool slots 0..q-1
    bool is_module(int idx) const { return pool_obj(idx).kind == CInd::Kind::Module; }

    // Canonicalize a module into the pool (by iso), inserting if new.
    int module_pool_index(RepKit::Id id);
    std::optional<int> find_module(RepKit::Id id);

    // Dimension vector of a module object (ArgumentError for SP_i).
    IntVec module_dims(int idx) const;
    std::string render_ind(int idx) const;
    std::optional<int> parse_ind(const std::string& text);

    int hom_dim(int a, int b);
    int ext1_dim(int a, int b);
    long long hom_dim_obj(int a, const CObj& X); // additive in X
    int shift_of(int a);                         // S_C = tau_C on objects
    bool is_rigid_ind(int a);

    bool is_cluster_tilting(const CObj& X);
    bool is_cluster_tilting(const std::vector<int>& T);

    // Exchange at position k of the cluster-tilting tuple R, with middle
    // terms read off column k of the seed exchange matrix b.
    ExchangeResult exchange_partner(const std::vector<int>& R, int k, const Quiver& b);

    const TiltingContext& context(const std::vector<int>& T);

    // F = Hom_C(T,?) as a B-module; precomposition action.
    FDModule F_module(const TiltingContext& ctx, int ind);
    FDModule F_module_obj(const TiltingContext& ctx, const CObj& X);

    IntVec dim_hom_vector(const TiltingContext& ctx, const CObj& X);
    long long m_multiplicity(const CObj& X, const TiltingContext& ctx, int i) const;
    IntVec h_vector(const TiltingContext& ctx, const CObj& X);

    bool finite_type() const { return finite_type_; }

private:
    // Basis of Hom_C(a, b) split by orbit degree; carriers depend on the
    // kinds of a and b (see .cpp).
    struct CHomSpace {
        int dim0 = 0, dim1 = 0;
        std::vector<Morph> m0;  // morphism carrier for degree 0 (when applicable)
        std::vector<Morph> m1;  // morphism carrier for degree 1 (when applicable)
        bool ext0 = false;      // degree-0 part is an Ext space (Mod -> SP)
        bool ext1carrier = false; // degree-1 part is an Ext space (Mod -> Mod)
        int dim() const { return dim0 + dim1; }
    };

    Quiver quiver_;
    RepKit rk_;
    PoolOptions opts_;
    bool finite_type_ = false;
    int cur_cap_ = 0;
    std::vector<CInd> pool_;
    std::map<std::pair<int, int>, int> homdim_cache_;
    std::map<std::pair<int, int>, int> extdim_cache_;
    std::map<std::pair<int, int>, int> extdim_fp_cache_;
    std::map<int, int> shift_cache_;
    std::map<std::pair<int, int>, CHomSpace> chom_cache_;
    std::map<std::vector<int>, TiltingContext> ctx_cache_;
    std::map<std::pair<std::vector<int>, int>, ExchangeResult> exchange_cache_;

    void build_pool();
    void closure_to_cap(int cap); // extend the tau-orbit closure
    int ext1_dim_fp(int a, int b); // >= exact value; 0 certifies exact 0
    RepKit::Id tau_inv_of(RepKit::Id m); // cached in RepKit
    const CHomSpace& chom(int a, int b);
    // Coordinates in CHom(a, c) of (g o f), f basis element fi of CHom(a,b),
    // g basis element gi of CHom(b,c).
    std::vector<Rat> compose_basis(int a, int b, int c, int fi, int gi);
    std::vector<Rat> express_morph(const std::vector<Morph>& basis, const Morph& f) const;
};

} // namespace clusterlab
