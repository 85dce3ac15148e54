#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clusterlab/clustercat.hpp"
#include "clusterlab/laurent.hpp"
#include "clusterlab/quiver.hpp"

namespace clusterlab {

// A seed: quiver + attached cluster variables + the tracked cluster-tilting
// object (pool indices), with the mutation trace from the root.
struct Seed {
    Quiver quiver;
    std::vector<LaurentPoly> vars;
    std::vector<int> trace; // 0-indexed mutation positions
    std::vector<int> tilt;  // pool indices
};

// Key equal for two seeds iff their variable multisets agree (clusters
// determine seeds for acyclic type).
std::string canonical_key(const Seed& s, const std::string& varprefix = "x");

// Exchange relation fixed by the build contract:
//   x_k x_k' = prod_{b[j][k]>0} x_j^{b[j][k]} + prod_{b[j][k]<0} x_j^{-b[j][k]},
// with the tilt update delegated to the exchange-partner search.
Seed mutate_seed(ClusterCat& cc, const Seed& s, int k);

struct VarRecord {
    LaurentPoly xpoly;
    std::optional<LaurentPoly> upoly; // filled by the character layer
    int obj = -1;                     // pool index of the tracked object
    std::vector<int> first_trace;
};

struct ExchangeEvent {
    std::vector<int> R; // tilting tuple of the source seed
    int k = -1;
    int ustar = -1;
    CObj E, Eprime;
    std::string var_key, partner_key;
    std::vector<std::string> seed_var_keys; // renderings of all source-seed variables
    std::vector<int> seed_trace;
};

enum class RegistryStatus { Complete, DepthBounded, BudgetExceeded };

struct Registry {
    int n = 0;
    std::string varprefix = "x";
    std::map<std::string, Seed> seeds;
    std::map<std::string, VarRecord> variables;
    std::vector<ExchangeEvent> exchanges;
    RegistryStatus status = RegistryStatus::Complete;
    std::optional<int> depth;
    // Mutation edges skipped because the indecomposable pool ran out
    // (infinite type only; the run is then partial but honest).
    std::vector<std::string> unexplored;

    // Exchange events deduplicated across the two edge orientations.
    std::vector<const ExchangeEvent*> unique_exchange_edges() const;
};

struct EnumerateOptions {
    std::optional<int> depth;
    long long max_seeds = 200000;
    std::string varprefix = "x";
};

// Root seed of the campaign over the cluster-tilting object T: quiver Q_T,
// fresh indeterminates, tracked object +S_C(T_i).
Seed root_seed_for_context(ClusterCat& cc, const std::vector<int>& T,
                           const std::string& varprefix = "x");

// Breadth-first closure of the mutation graph.  Exhaustive in finite type;
// a depth bound is required otherwise (ArgumentError).  Budget overruns are
// flagged in the status, with partial results retained.
Registry enumerate_seeds(ClusterCat& cc, const Seed& root, const EnumerateOptions& opts = {});

// Tilt addresses: "id" (the root +SP_i), "proj" (+P_i), or "mu(i,j,...)"
// (1-indexed mutation trace from +SP_i).
std::vector<int> resolve_tilt(ClusterCat& cc, const std::string& address);
std::string render_tilt_trace(const std::vector<int>& trace);

} // namespace clusterlab
