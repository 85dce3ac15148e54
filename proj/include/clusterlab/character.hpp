#pragma once

#include <vector>

#include "clusterlab/clustercat.hpp"
#include "clusterlab/combinatorics.hpp"
#include "clusterlab/laurent.hpp"

namespace clusterlab {

struct CharacterOptions {
    std::vector<long long> primes = {2, 3, 5, 7, 11, 13};
    long long budget = 50'000'000;
    int workers = 1;
};

// Audit trail of one character evaluation: the Grassmannian terms per
// indecomposable factor.  value always equals the assembled product of the
// per-piece sums (testable).
struct CharacterResult {
    struct LedgerEntry {
        IntVec e;
        long long chi = 0;
        IntVec expo;
    };
    struct Piece {
        int obj = -1;
        int mult = 1;
        bool st_case = false; // X^T of a shifted T-summand is the variable itself
        int st_index = -1;
        LaurentPoly piece;
        std::vector<LedgerEntry> terms;
    };
    LaurentPoly value;
    std::vector<Piece> ledger;
};

// The generalized Caldero-Chapoton character X^T of an object of the cluster
// category, as an exact Laurent polynomial in the cluster attached to T.
CharacterResult cluster_character(ClusterCat& cc, const TiltingContext& ctx, const CObj& M,
                                  const CharacterOptions& opts = {});

// Classical case: the context built on the projectives, read in u-variables.
const TiltingContext& classical_context(ClusterCat& cc);
CharacterResult classical_cc(ClusterCat& cc, const CObj& M, const CharacterOptions& opts = {});

// Images of Phi_T: x_i expands in u as the classical character of S_C(T_i).
std::vector<LaurentPoly> phi_images(ClusterCat& cc, const TiltingContext& ctx,
                                    const CharacterOptions& opts = {});

// Fill u-coordinates of a campaign registry via Phi_T substitution.
void fill_u_coordinates(ClusterCat& cc, const TiltingContext& ctx, Registry& reg,
                        const CharacterOptions& opts = {});

} // namespace clusterlab
