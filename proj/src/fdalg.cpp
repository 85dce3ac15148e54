#include "clusterlab/fdalg.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "clusterlab/errors.hpp"

namespace clusterlab {

std::vector<Rat> FDAlgebra::mul(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    std::vector<Rat> z(static_cast<size_t>(dim), Rat(0));
    for (int i = 0; i < dim; ++i) {
        if (x[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < dim; ++j) {
            if (y[static_cast<size_t>(j)] == 0) continue;
            Rat c = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
            const auto& row = sc[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (int k = 0; k < dim; ++k)
                if (row[static_cast<size_t>(k)] != 0) z[static_cast<size_t>(k)] += c * row[static_cast<size_t>(k)];
        }
    }
    return z;
}

Matrix<Rat> FDAlgebra::left_mult(const std::vector<Rat>& x) const {
    Matrix<Rat> m(dim, dim);
    for (int j = 0; j < dim; ++j) {
        std::vector<Rat> unitj(static_cast<size_t>(dim), Rat(0));
        unitj[static_cast<size_t>(j)] = 1;
        auto col = mul(x, unitj);
        for (int i = 0; i < dim; ++i) m.at(i, j) = col[static_cast<size_t>(i)];
    }
    return m;
}

void FDAlgebra::check() const {
    auto unitvec = [&](int i) {
        std::vector<Rat> v(static_cast<size_t>(dim), Rat(0));
        v[static_cast<size_t>(i)] = 1;
        return v;
    };
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                if (mul(mul(unitvec(i), unitvec(j)), unitvec(k)) !=
                    mul(unitvec(i), mul(unitvec(j), unitvec(k))))
                    throw IntegrityError("algebra associativity audit failed");
    std::vector<Rat> s(static_cast<size_t>(dim), Rat(0));
    for (int t = 0; t < q; ++t) {
        for (int u = 0; u < q; ++u) {
            auto p = mul(idem[static_cast<size_t>(t)], idem[static_cast<size_t>(u)]);
            if (t == u && p != idem[static_cast<size_t>(t)])
                throw IntegrityError("idempotent law e_t^2 = e_t failed");
            if (t != u && p != std::vector<Rat>(static_cast<size_t>(dim), Rat(0)))
                throw IntegrityError("idempotent orthogonality failed");
        }
        for (int k = 0; k < dim; ++k)
            s[static_cast<size_t>(k)] += idem[static_cast<size_t>(t)][static_cast<size_t>(k)];
    }
    if (s != unit) throw IntegrityError("idempotents do not sum to 1");
    for (int i = 0; i < dim; ++i)
        if (mul(unit, unitvec(i)) != unitvec(i) || mul(unitvec(i), unit) != unitvec(i))
            throw IntegrityError("unit law failed");
}

bool FDModule::check_representation() const {
    for (int i = 0; i < A->dim; ++i)
        for (int j = 0; j < A->dim; ++j) {
            Matrix<Rat> lhs = action[static_cast<size_t>(i)] * action[static_cast<size_t>(j)];
            Matrix<Rat> rhs(dim, dim);
            const auto& row = A->sc[static_cast<size_t>(i)][static_cast<size_t>(j)];
            for (int k = 0; k < A->dim; ++k)
                if (row[static_cast<size_t>(k)] != 0)
                    rhs = rhs + action[static_cast<size_t>(k)].scaled(row[static_cast<size_t>(k)]);
            if (!(lhs == rhs)) return false;
        }
    return true;
}

int FDModule::comp_offset(int t) const {
    int off = 0;
    for (int s = 0; s < t; ++s) off += comp_dim[static_cast<size_t>(s)];
    return off;
}

namespace {

Matrix<Rat> action_matrix_of(const FDModule& M, const std::vector<Rat>& x) {
    Matrix<Rat> m(M.dim, M.dim);
    for (int i = 0; i < M.A->dim; ++i)
        if (x[static_cast<size_t>(i)] != 0)
            m = m + M.action[static_cast<size_t>(i)].scaled(x[static_cast<size_t>(i)]);
    return m;
}

struct SubmoduleResult {
    FDModule M;
    Matrix<Rat> incl;
};

// Module structure on an action-stable subspace, basis re-adapted to the
// idempotent components.
SubmoduleResult submodule_on(const FDModule& M, const Matrix<Rat>& span) {
    const FDAlgebra& A = *M.A;
    Matrix<Rat> basis(M.dim, 0);
    std::vector<int> comp_dim(static_cast<size_t>(A.q), 0);
    for (int t = 0; t < A.q; ++t) {
        Matrix<Rat> proj = action_matrix_of(M, A.idem[static_cast<size_t>(t)]);
        Matrix<Rat> comp = image_basis(proj * span);
        comp_dim[static_cast<size_t>(t)] = comp.cols;
        basis = hstack(basis, comp);
    }
    if (rank(basis) != basis.cols || basis.cols != rank(span))
        throw IntegrityError("submodule component basis degenerate");
    SubmoduleResult out;
    out.incl = basis;
    out.M.A = &A;
    out.M.dim = basis.cols;
    out.M.comp_dim = comp_dim;
    for (int i = 0; i < A.dim; ++i)
        out.M.action.push_back(coordinates_in(basis, M.action[static_cast<size_t>(i)] * basis));
    return out;
}

} // namespace

FDModule zero_module(const FDAlgebra& A) {
    FDModule m;
    m.A = &A;
    m.dim = 0;
    m.comp_dim.assign(static_cast<size_t>(A.q), 0);
    m.action.assign(static_cast<size_t>(A.dim), Matrix<Rat>(0, 0));
    return m;
}

FDModule projective_module(const FDAlgebra& A, int t) {
    // A e_t inside the regular module.
    Matrix<Rat> cols(A.dim, A.dim);
    for (int k = 0; k < A.dim; ++k) {
        std::vector<Rat> unitk(static_cast<size_t>(A.dim), Rat(0));
        unitk[static_cast<size_t>(k)] = 1;
        auto v = A.mul(unitk, A.idem[static_cast<size_t>(t)]);
        for (int i = 0; i < A.dim; ++i) cols.at(i, k) = v[static_cast<size_t>(i)];
    }
    FDModule reg;
    reg.A = &A;
    reg.dim = A.dim;
    reg.comp_dim.assign(static_cast<size_t>(A.q), 0);
    for (int i = 0; i < A.dim; ++i) {
        std::vector<Rat> uniti(static_cast<size_t>(A.dim), Rat(0));
        uniti[static_cast<size_t>(i)] = 1;
        reg.action.push_back(A.left_mult(uniti));
    }
    return submodule_on(reg, image_basis(cols)).M;
}

FDModule module_direct_sum(const FDModule& M, const FDModule& N) {
    if (M.A != N.A) throw ArgumentError("direct sum over different algebras");
    const FDAlgebra& A = *M.A;
    FDModule S;
    S.A = &A;
    S.dim = M.dim + N.dim;
    S.comp_dim.resize(static_cast<size_t>(A.q));
    std::vector<int> mapM(static_cast<size_t>(M.dim)), mapN(static_cast<size_t>(N.dim));
    int pos = 0;
    for (int t = 0; t < A.q; ++t) {
        int om = M.comp_offset(t), on = N.comp_offset(t);
        for (int i = 0; i < M.comp_dim[static_cast<size_t>(t)]; ++i)
            mapM[static_cast<size_t>(om + i)] = pos++;
        for (int i = 0; i < N.comp_dim[static_cast<size_t>(t)]; ++i)
            mapN[static_cast<size_t>(on + i)] = pos++;
        S.comp_dim[static_cast<size_t>(t)] =
            M.comp_dim[static_cast<size_t>(t)] + N.comp_dim[static_cast<size_t>(t)];
    }
    for (int b = 0; b < A.dim; ++b) {
        Matrix<Rat> m(S.dim, S.dim);
        const auto& AM = M.action[static_cast<size_t>(b)];
        const auto& AN = N.action[static_cast<size_t>(b)];
        for (int i = 0; i < M.dim; ++i)
            for (int j = 0; j < M.dim; ++j)
                if (AM.at(i, j) != 0)
                    m.at(mapM[static_cast<size_t>(i)], mapM[static_cast<size_t>(j)]) = AM.at(i, j);
        for (int i = 0; i < N.dim; ++i)
            for (int j = 0; j < N.dim; ++j)
                if (AN.at(i, j) != 0)
                    m.at(mapN[static_cast<size_t>(i)], mapN[static_cast<size_t>(j)]) = AN.at(i, j);
        S.action.push_back(std::move(m));
    }
    return S;
}

std::vector<std::vector<Rat>> radical_basis(const FDAlgebra& A) {
    // Dickson (char 0): x lies in rad(A) iff Tr(L_{x b}) = 0 for all basis b.
    std::vector<Matrix<Rat>> lm;
    for (int i = 0; i < A.dim; ++i) {
        std::vector<Rat> uniti(static_cast<size_t>(A.dim), Rat(0));
        uniti[static_cast<size_t>(i)] = 1;
        lm.push_back(A.left_mult(uniti));
    }
    Matrix<Rat> gram(A.dim, A.dim);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j) {
            Matrix<Rat> prod = lm[static_cast<size_t>(i)] * lm[static_cast<size_t>(j)];
            Rat tr = 0;
            for (int k = 0; k < A.dim; ++k) tr += prod.at(k, k);
            gram.at(i, j) = tr;
        }
    Matrix<Rat> ker = kernel_basis(gram);
    std::vector<std::vector<Rat>> out;
    for (int c = 0; c < ker.cols; ++c) {
        std::vector<Rat> v(static_cast<size_t>(A.dim));
        for (int i = 0; i < A.dim; ++i) v[static_cast<size_t>(i)] = ker.at(i, c);
        out.push_back(std::move(v));
    }
    if (!out.empty()) {
        std::vector<Matrix<Rat>> gens;
        Matrix<Rat> span(A.dim, 0);
        for (const auto& v : out) {
            gens.push_back(A.left_mult(v));
            Matrix<Rat> col(A.dim, 1);
            for (int i = 0; i < A.dim; ++i) col.at(i, 0) = v[static_cast<size_t>(i)];
            span = hstack(span, col);
        }
        Matrix<Rat> cur = image_basis(span);
        for (int step = 0; step < A.dim + 1 && cur.cols > 0; ++step) {
            Matrix<Rat> next(A.dim, 0);
            for (const auto& g : gens) next = hstack(next, g * cur);
            cur = image_basis(next);
        }
        if (cur.cols != 0) throw IntegrityError("candidate radical is not nilpotent");
    }
    return out;
}

FDModule simple_module(const FDAlgebra& A, int t) {
    // S_t = A e_t / rad(A) e_t.
    FDModule P = projective_module(A, t);
    auto radb = radical_basis(A);
    Matrix<Rat> radspan(P.dim, 0);
    for (const auto& r : radb) radspan = hstack(radspan, action_matrix_of(P, r));
    radspan = image_basis(radspan);

    Matrix<Rat> sect(P.dim, 0);
    std::vector<int> comp_dim(static_cast<size_t>(A.q), 0);
    Matrix<Rat> cur = radspan;
    int r0 = rank(cur);
    for (int t2 = 0; t2 < A.q; ++t2) {
        int off = P.comp_offset(t2);
        for (int i = 0; i < P.comp_dim[static_cast<size_t>(t2)]; ++i) {
            Matrix<Rat> cand(P.dim, 1);
            cand.at(off + i, 0) = Rat(1);
            Matrix<Rat> ext = hstack(cur, cand);
            if (rank(ext) > r0) {
                cur = std::move(ext);
                sect = hstack(sect, cand);
                ++r0;
                ++comp_dim[static_cast<size_t>(t2)];
            }
        }
    }
    Matrix<Rat> full = hstack(radspan, sect);
    auto inv = inverse(full);
    if (!inv) throw IntegrityError("simple module quotient basis is singular");
    int qd = sect.cols;
    Matrix<Rat> projq(qd, P.dim);
    for (int i = 0; i < qd; ++i)
        for (int j = 0; j < P.dim; ++j) projq.at(i, j) = inv->at(radspan.cols + i, j);
    FDModule S;
    S.A = &A;
    S.dim = qd;
    S.comp_dim = comp_dim;
    for (int i = 0; i < A.dim; ++i)
        S.action.push_back(projq * P.action[static_cast<size_t>(i)] * sect);
    return S;
}

ProjCover projective_cover(const FDModule& M) {
    const FDAlgebra& A = *M.A;
    auto radb = radical_basis(A);
    Matrix<Rat> radM(M.dim, 0);
    for (const auto& r : radb) radM = hstack(radM, action_matrix_of(M, r));
    radM = image_basis(radM);

    ProjCover out;
    out.mult.assign(static_cast<size_t>(A.q), 0);
    std::vector<std::pair<int, std::vector<Rat>>> gens; // (component t, generator in e_t M)
    Matrix<Rat> cur = radM;
    int r0 = rank(cur);
    for (int t = 0; t < A.q; ++t) {
        Matrix<Rat> projM = action_matrix_of(M, A.idem[static_cast<size_t>(t)]);
        Matrix<Rat> compAll = image_basis(projM);
        for (int c = 0; c < compAll.cols; ++c) {
            Matrix<Rat> cand(M.dim, 1);
            for (int i = 0; i < M.dim; ++i) cand.at(i, 0) = compAll.at(i, c);
            Matrix<Rat> ext = hstack(cur, cand);
            if (rank(ext) > r0) {
                cur = std::move(ext);
                ++r0;
                ++out.mult[static_cast<size_t>(t)];
                std::vector<Rat> g(static_cast<size_t>(M.dim));
                for (int i = 0; i < M.dim; ++i) g[static_cast<size_t>(i)] = cand.at(i, 0);
                gens.emplace_back(t, std::move(g));
            }
        }
    }

    // Assemble P0, tracking where each piece's top generator lands under the
    // component interleaving of module_direct_sum.
    FDModule P0 = zero_module(A);
    std::vector<std::vector<int>> maps;
    std::vector<FDModule> pieces;
    for (auto& [t, g] : gens) pieces.push_back(projective_module(A, t));
    for (size_t pi = 0; pi < pieces.size(); ++pi) {
        const FDModule& p = pieces[pi];
        std::vector<int> mapP(static_cast<size_t>(p.dim));
        std::vector<int> mapAcc(static_cast<size_t>(P0.dim));
        int pos = 0;
        for (int t = 0; t < A.q; ++t) {
            int oa = P0.comp_offset(t), op = p.comp_offset(t);
            for (int i = 0; i < P0.comp_dim[static_cast<size_t>(t)]; ++i)
                mapAcc[static_cast<size_t>(oa + i)] = pos++;
            for (int i = 0; i < p.comp_dim[static_cast<size_t>(t)]; ++i)
                mapP[static_cast<size_t>(op + i)] = pos++;
        }
        for (auto& m : maps)
            for (auto& x : m) x = mapAcc[static_cast<size_t>(x)];
        maps.push_back(std::move(mapP));
        P0 = module_direct_sum(P0, p);
    }
    out.P0 = P0;

    // Cover map: intertwiner with prescribed values on a generating vector of
    // each piece (any nonzero top vector of component t generates A e_t).
    int un = M.dim * P0.dim;
    auto idx = [&](int i, int j) { return i * P0.dim + j; };
    Matrix<Rat> sys(A.dim * M.dim * P0.dim + static_cast<int>(gens.size()) * M.dim, un);
    std::vector<Rat> rhs(static_cast<size_t>(sys.rows), Rat(0));
    int r = 0;
    for (int b = 0; b < A.dim; ++b) {
        const Matrix<Rat>& AP = P0.action[static_cast<size_t>(b)];
        const Matrix<Rat>& AM = M.action[static_cast<size_t>(b)];
        for (int i = 0; i < M.dim; ++i)
            for (int j = 0; j < P0.dim; ++j) {
                for (int k = 0; k < P0.dim; ++k) sys.at(r, idx(i, k)) += AP.at(k, j);
                for (int k = 0; k < M.dim; ++k) sys.at(r, idx(k, j)) -= AM.at(i, k);
                ++r;
            }
    }
    for (size_t pi = 0; pi < gens.size(); ++pi) {
        int t = gens[pi].first;
        const FDModule& p = pieces[pi];
        if (p.comp_dim[static_cast<size_t>(t)] == 0)
            throw IntegrityError("projective piece has empty top component");
        int genpos = maps[pi][static_cast<size_t>(p.comp_offset(t))];
        for (int i = 0; i < M.dim; ++i) {
            sys.at(r, idx(i, genpos)) = Rat(1);
            rhs[static_cast<size_t>(r)] = gens[pi].second[static_cast<size_t>(i)];
            ++r;
        }
    }
    auto sol = solve(sys, rhs);
    if (!sol) throw IntegrityError("projective cover map is unsolvable");
    out.sur = Matrix<Rat>(M.dim, P0.dim);
    for (int i = 0; i < M.dim; ++i)
        for (int j = 0; j < P0.dim; ++j) out.sur.at(i, j) = (*sol)[static_cast<size_t>(idx(i, j))];
    if (rank(out.sur) != M.dim) throw IntegrityError("projective cover is not surjective");
    return out;
}

SyzygyResult syzygy(const FDModule& M) {
    SyzygyResult out;
    out.cover = projective_cover(M);
    auto sub = submodule_on(out.cover.P0, kernel_basis(out.cover.sur));
    out.K = sub.M;
    out.incl = sub.incl;
    return out;
}

namespace {

std::vector<Matrix<Rat>> hom_basis_A(const FDModule& M, const FDModule& N) {
    int un = N.dim * M.dim;
    if (un == 0) return {};
    int m = M.A->dim;
    Matrix<Rat> sys(m * N.dim * M.dim, un);
    auto idx = [&](int i, int j) { return i * M.dim + j; };
    int r = 0;
    for (int b = 0; b < m; ++b) {
        const Matrix<Rat>& AM = M.action[static_cast<size_t>(b)];
        const Matrix<Rat>& AN = N.action[static_cast<size_t>(b)];
        for (int i = 0; i < N.dim; ++i)
            for (int j = 0; j < M.dim; ++j) {
                for (int k = 0; k < M.dim; ++k) sys.at(r, idx(i, k)) += AM.at(k, j);
                for (int k = 0; k < N.dim; ++k) sys.at(r, idx(k, j)) -= AN.at(i, k);
                ++r;
            }
    }
    Matrix<Rat> kerb = kernel_basis(sys);
    std::vector<Matrix<Rat>> out;
    for (int c = 0; c < kerb.cols; ++c) {
        Matrix<Rat> phi(N.dim, M.dim);
        for (int i = 0; i < N.dim; ++i)
            for (int j = 0; j < M.dim; ++j) phi.at(i, j) = kerb.at(idx(i, j), c);
        out.push_back(std::move(phi));
    }
    return out;
}

} // namespace

int hom_dim_A(const FDModule& M, const FDModule& N) {
    if (M.A != N.A) throw ArgumentError("hom over different algebras");
    if (M.dim == 0 || N.dim == 0) return 0;
    return static_cast<int>(hom_basis_A(M, N).size());
}

int ext1_dim_A(const FDModule& M, const FDModule& N) {
    if (M.A != N.A) throw ArgumentError("ext over different algebras");
    if (M.dim == 0 || N.dim == 0) return 0;
    SyzygyResult syz = syzygy(M);
    if (syz.K.dim == 0) return 0;
    auto hk = hom_basis_A(syz.K, N);
    if (hk.empty()) return 0;
    auto hp = hom_basis_A(syz.cover.P0, N);
    Matrix<Rat> span(N.dim * syz.K.dim, static_cast<int>(hp.size()));
    for (size_t c = 0; c < hp.size(); ++c) {
        Matrix<Rat> restr = hp[c] * syz.incl;
        for (int i = 0; i < restr.rows; ++i)
            for (int j = 0; j < restr.cols; ++j)
                span.at(i * syz.K.dim + j, static_cast<int>(c)) = restr.at(i, j);
    }
    return static_cast<int>(hk.size()) - rank(span);
}

long long euler_form_A(const FDModule& M, const FDModule& N) {
    return hom_dim_A(M, N) - ext1_dim_A(M, N);
}

std::vector<std::vector<long long>> antisym_form_matrix(const FDAlgebra& A) {
    std::vector<FDModule> simples;
    for (int t = 0; t < A.q; ++t) simples.push_back(simple_module(A, t));
    std::vector<std::vector<long long>> euler(static_cast<size_t>(A.q),
                                              std::vector<long long>(static_cast<size_t>(A.q), 0));
    for (int i = 0; i < A.q; ++i)
        for (int j = 0; j < A.q; ++j)
            euler[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                euler_form_A(simples[static_cast<size_t>(i)], simples[static_cast<size_t>(j)]);
    std::vector<std::vector<long long>> out(static_cast<size_t>(A.q),
                                            std::vector<long long>(static_cast<size_t>(A.q), 0));
    for (int i = 0; i < A.q; ++i)
        for (int j = 0; j < A.q; ++j)
            out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                euler[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                euler[static_cast<size_t>(j)][static_cast<size_t>(i)];
    return out;
}

long long antisym_pair(const std::vector<std::vector<long long>>& form, int i, const IntVec& e) {
    long long s = 0;
    for (size_t j = 0; j < e.size(); ++j) s += form[static_cast<size_t>(i)][j] * e[j];
    return s;
}

// ---------------------------------------------------------------------------
// Quiver Grassmannians over prime fields

namespace {

long long fp_normalize(long long v, long long p) {
    v %= p;
    if (v < 0) v += p;
    return v;
}

std::vector<std::vector<long long>> reduce_matrix(const Matrix<Rat>& m, long long p) {
    std::vector<std::vector<long long>> out(static_cast<size_t>(m.rows),
                                            std::vector<long long>(static_cast<size_t>(m.cols), 0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) {
            Int num = boost::multiprecision::numerator(m.at(i, j));
            Int den = boost::multiprecision::denominator(m.at(i, j));
            if (den % p == 0) throw ArgumentError("module does not reduce mod p");
            long long n = static_cast<long long>(num % p);
            long long d = static_cast<long long>(den % p);
            long long dinv = Fp(d, p).inv().v;
            out[static_cast<size_t>(i)][static_cast<size_t>(j)] = fp_normalize(n * dinv, p);
        }
    return out;
}

// Visit the reduced row echelon forms of all e-dimensional subspaces of F_p^d.
template <class F>
void enumerate_echelon(int d, int e, long long p, F&& visit) {
    if (e == 0) {
        std::vector<std::vector<long long>> rows;
        visit(rows);
        return;
    }
    std::vector<int> piv(static_cast<size_t>(e));
    std::iota(piv.begin(), piv.end(), 0);
    while (true) {
        std::vector<std::pair<int, int>> freecells;
        std::vector<bool> ispiv(static_cast<size_t>(d), false);
        for (int r = 0; r < e; ++r) ispiv[static_cast<size_t>(piv[static_cast<size_t>(r)])] = true;
        for (int r = 0; r < e; ++r)
            for (int c = piv[static_cast<size_t>(r)] + 1; c < d; ++c)
                if (!ispiv[static_cast<size_t>(c)]) freecells.emplace_back(r, c);
        std::vector<long long> vals(freecells.size(), 0);
        while (true) {
            std::vector<std::vector<long long>> rows(static_cast<size_t>(e),
                                                     std::vector<long long>(static_cast<size_t>(d), 0));
            for (int r = 0; r < e; ++r)
                rows[static_cast<size_t>(r)][static_cast<size_t>(piv[static_cast<size_t>(r)])] = 1;
            for (size_t fidx = 0; fidx < freecells.size(); ++fidx)
                rows[static_cast<size_t>(freecells[fidx].first)]
                    [static_cast<size_t>(freecells[fidx].second)] = vals[fidx];
            visit(rows);
            size_t i = 0;
            while (i < vals.size() && vals[i] == p - 1) { vals[i] = 0; ++i; }
            if (i == vals.size()) break;
            ++vals[i];
        }
        int i = e - 1;
        while (i >= 0 && piv[static_cast<size_t>(i)] == d - e + i) --i;
        if (i < 0) break;
        ++piv[static_cast<size_t>(i)];
        for (int j = i + 1; j < e; ++j) piv[static_cast<size_t>(j)] = piv[static_cast<size_t>(j - 1)] + 1;
    }
}

Int gaussian_binomial(int d, int e, long long p) {
    if (e < 0 || e > d) return 0;
    Int num = 1, den = 1;
    for (int i = 0; i < e; ++i) {
        Int pd = 1, pe = 1;
        for (int k = 0; k < d - i; ++k) pd *= p;
        for (int k = 0; k < e - i; ++k) pe *= p;
        num *= pd - 1;
        den *= pe - 1;
    }
    return num / den;
}

} // namespace

Int count_submodules_fp(const FDModule& N, const IntVec& e, long long p, long long budget) {
    const FDAlgebra& A = *N.A;
    if (static_cast<int>(e.size()) != A.q) throw ArgumentError("dimension vector has wrong length");
    for (int t = 0; t < A.q; ++t)
        if (e[static_cast<size_t>(t)] < 0 ||
            e[static_cast<size_t>(t)] > N.comp_dim[static_cast<size_t>(t)])
            throw ArgumentError("dimension vector exceeds the module");

    Int tuples = 1;
    for (int t = 0; t < A.q; ++t)
        tuples *= gaussian_binomial(N.comp_dim[static_cast<size_t>(t)],
                                    static_cast<int>(e[static_cast<size_t>(t)]), p);
    if (tuples > budget) throw ResourceError("submodule enumeration budget exceeded");

    std::vector<std::vector<std::vector<long long>>> act;
    for (const auto& m : N.action) act.push_back(reduce_matrix(m, p));

    std::vector<std::vector<std::vector<std::vector<long long>>>> comp_choices(
        static_cast<size_t>(A.q));
    for (int t = 0; t < A.q; ++t)
        enumerate_echelon(N.comp_dim[static_cast<size_t>(t)],
                          static_cast<int>(e[static_cast<size_t>(t)]), p,
                          [&](const std::vector<std::vector<long long>>& rows) {
                              comp_choices[static_cast<size_t>(t)].push_back(rows);
                          });

    Int count = 0;
    std::vector<size_t> pick(static_cast<size_t>(A.q), 0);
    while (true) {
        std::vector<std::vector<long long>> U;
        for (int t = 0; t < A.q; ++t) {
            int off = N.comp_offset(t);
            for (const auto& row : comp_choices[static_cast<size_t>(t)][pick[static_cast<size_t>(t)]]) {
                std::vector<long long> full(static_cast<size_t>(N.dim), 0);
                for (size_t c = 0; c < row.size(); ++c) full[static_cast<size_t>(off) + c] = row[c];
                U.push_back(std::move(full));
            }
        }
        std::vector<int> pivcol(U.size(), -1);
        for (size_t r = 0; r < U.size(); ++r)
            for (int c = 0; c < N.dim; ++c)
                if (U[r][static_cast<size_t>(c)] != 0) { pivcol[r] = c; break; }
        auto member = [&](std::vector<long long> v) {
            for (size_t r = 0; r < U.size(); ++r) {
                long long coef = v[static_cast<size_t>(pivcol[r])];
                if (coef == 0) continue;
                for (int j = 0; j < N.dim; ++j)
                    v[static_cast<size_t>(j)] =
                        fp_normalize(v[static_cast<size_t>(j)] - coef * U[r][static_cast<size_t>(j)], p);
            }
            for (long long x : v)
                if (x != 0) return false;
            return true;
        };
        bool stable = true;
        for (const auto& ab : act) {
            for (const auto& u : U) {
                std::vector<long long> v(static_cast<size_t>(N.dim), 0);
                for (int i = 0; i < N.dim; ++i) {
                    long long s = 0;
                    for (int j = 0; j < N.dim; ++j)
                        s += ab[static_cast<size_t>(i)][static_cast<size_t>(j)] * u[static_cast<size_t>(j)];
                    v[static_cast<size_t>(i)] = fp_normalize(s, p);
                }
                if (!member(std::move(v))) { stable = false; break; }
            }
            if (!stable) break;
        }
        if (stable) ++count;

        size_t t = 0;
        while (t < pick.size() && pick[t] + 1 == comp_choices[t].size()) { pick[t] = 0; ++t; }
        if (t == pick.size()) break;
        ++pick[t];
    }
    return count;
}

GrassmannianFit euler_char(const FDModule& N, const IntVec& e, const std::vector<long long>& primes,
                           long long budget, int workers) {
    GrassmannianFit fit;
    int D = 0;
    for (int t = 0; t < N.A->q; ++t)
        D += static_cast<int>(e[static_cast<size_t>(t)]) *
             (N.comp_dim[static_cast<size_t>(t)] - static_cast<int>(e[static_cast<size_t>(t)]));
    fit.degree_bound = D;
    int needed = D + 3; // interpolate on D+1 points, overdetermined by 2

    std::vector<long long> valid;
    auto try_prime = [&](long long p) {
        try {
            for (const auto& m : N.action) reduce_matrix(m, p);
            valid.push_back(p);
        } catch (const ArgumentError&) {
        }
    };
    for (long long p : primes) {
        if (static_cast<int>(valid.size()) >= needed) break;
        try_prime(p);
    }
    long long next = primes.empty() ? 2 : primes.back() + 1;
    auto is_prime = [](long long x) {
        if (x < 2) return false;
        for (long long d = 2; d * d <= x; ++d)
            if (x % d == 0) return false;
        return true;
    };
    while (static_cast<int>(valid.size()) < needed) {
        while (!is_prime(next)) ++next;
        try_prime(next);
        ++next;
    }

    std::vector<Int> counts(valid.size());
    std::vector<std::string> errors(valid.size());
    auto work = [&](size_t i) {
        try {
            counts[i] = count_submodules_fp(N, e, valid[i], budget);
        } catch (const std::exception& ex) {
            errors[i] = ex.what();
        }
    };
    if (workers <= 1) {
        for (size_t i = 0; i < valid.size(); ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> cursor{0};
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                for (size_t i = cursor.fetch_add(1); i < valid.size(); i = cursor.fetch_add(1))
                    work(i);
            });
        for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < valid.size(); ++i) {
        if (!errors[i].empty()) throw ResourceError(errors[i]);
        fit.counts.emplace_back(valid[i], counts[i]);
    }

    int m = D + 1;
    auto eval_fit = [&](const Rat& x) {
        Rat total = 0;
        for (int i = 0; i < m; ++i) {
            Rat term(counts[static_cast<size_t>(i)]);
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                term *= (x - Rat(valid[static_cast<size_t>(j)])) /
                        (Rat(valid[static_cast<size_t>(i)]) - Rat(valid[static_cast<size_t>(j)]));
            }
            total += term;
        }
        return total;
    };
    for (size_t i = static_cast<size_t>(m); i < valid.size(); ++i)
        if (eval_fit(Rat(valid[i])) != Rat(counts[i]))
            throw IntegrityError("counting polynomial violation: nonzero residual");
    Rat chi = eval_fit(Rat(1));
    if (boost::multiprecision::denominator(chi) != 1)
        throw IntegrityError("counting polynomial violation: chi is not an integer");
    fit.chi = static_cast<long long>(boost::multiprecision::numerator(chi));
    return fit;
}

} // namespace clusterlab
