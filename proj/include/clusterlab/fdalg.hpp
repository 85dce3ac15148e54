#pragma once

#include <string>
#include <vector>

#include "clusterlab/intvec.hpp"
#include "clusterlab/matrix.hpp"

namespace clusterlab {

// Finite-dimensional associative algebra over Q given by structure constants
// on a fixed basis, together with a complete set of orthogonal idempotents
// e_1..e_q summing to 1 (indices align with the T-summands upstream).
struct FDAlgebra {
    int dim = 0;
    int q = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<std::vector<Rat>>> sc; // b_i * b_j = sum_k sc[i][j][k] b_k
    std::vector<std::vector<Rat>> idem;            // coordinates of e_1..e_q
    std::vector<Rat> unit;                         // coordinates of 1

    std::vector<Rat> mul(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
    Matrix<Rat> left_mult(const std::vector<Rat>& x) const;

    // Associativity on all basis triples, idempotent laws, unit laws.
    // Throws IntegrityError on failure.
    void check() const;
};

// Left module over an FDAlgebra: action matrix per algebra basis element, in
// a basis adapted to the idempotent decomposition (component blocks in
// order e_1, .., e_q).
struct FDModule {
    const FDAlgebra* A = nullptr;
    int dim = 0;
    std::vector<Matrix<Rat>> action;
    std::vector<int> comp_dim;

    IntVec dim_vector() const { return IntVec(comp_dim.begin(), comp_dim.end()); }
    bool check_representation() const;
    int comp_offset(int t) const;
};

FDModule projective_module(const FDAlgebra& A, int t); // A e_t
FDModule simple_module(const FDAlgebra& A, int t);
FDModule zero_module(const FDAlgebra& A);
FDModule module_direct_sum(const FDModule& M, const FDModule& N);

// Basis of the radical (maximal nilpotent ideal) via the trace form; the
// nilpotency of the result is audited (IntegrityError otherwise).
std::vector<std::vector<Rat>> radical_basis(const FDAlgebra& A);

struct ProjCover {
    FDModule P0;
    Matrix<Rat> sur;        // P0 -> M surjection
    std::vector<int> mult;  // multiplicity of A e_t
};
ProjCover projective_cover(const FDModule& M);

struct SyzygyResult {
    FDModule K;
    Matrix<Rat> incl; // K -> P0
    ProjCover cover;
};
SyzygyResult syzygy(const FDModule& M);

int hom_dim_A(const FDModule& M, const FDModule& N);
int ext1_dim_A(const FDModule& M, const FDModule& N);

// <M,N> = dim Hom - dim Ext^1 (not K_0-invariant in general); the
// antisymmetrization <,>_a on simples induces a form on K_0.
long long euler_form_A(const FDModule& M, const FDModule& N);
std::vector<std::vector<long long>> antisym_form_matrix(const FDAlgebra& A);
long long antisym_pair(const std::vector<std::vector<long long>>& form, int i, const IntVec& e);

// Number of submodules of N (x) F_p with dimension vector e, by enumeration
// of stable echelon subspace tuples.  Throws ResourceError past the budget,
// ArgumentError if the module does not reduce mod p.
Int count_submodules_fp(const FDModule& N, const IntVec& e, long long p,
                        long long budget = 50'000'000);

struct GrassmannianFit {
    std::vector<std::pair<long long, Int>> counts; // (prime, count)
    long long chi = 0;
    int degree_bound = 0;
};

// Euler characteristic of Gr_e(N) via point counts over F_p and exact
// polynomial interpolation in q evaluated at q = 1.  The fit must be exact
// on every counted prime (overdetermined by two points); a nonzero residual
// raises IntegrityError ("counting polynomial violation").
GrassmannianFit euler_char(const FDModule& N, const IntVec& e,
                           const std::vector<long long>& primes = {2, 3, 5, 7, 11, 13},
                           long long budget = 50'000'000, int workers = 1);

} // namespace clusterlab
