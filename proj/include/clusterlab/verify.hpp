#pragma once

#include <json.hpp>

#include "clusterlab/character.hpp"
#include "clusterlab/combinatorics.hpp"

namespace clusterlab {

using ordered_json = nlohmann::ordered_json;

// Exchange-compatibility probe of one indecomposable against one exchange
// pair, with the tau-guard (skipped when U or U* is tau_C of the probe).
struct CompatibilityReport {
    int probe = -1;
    std::vector<int> R;
    int k = -1;
    int ustar = -1;
    long long lhs = 0, rhs = 0;
    bool skipped = false;
    bool compatible = true;
};

CompatibilityReport check_compatibility(ClusterCat& cc, int probe, const std::vector<int>& R,
                                        int k, const Quiver& b);
CompatibilityReport check_compatibility_event(ClusterCat& cc, int probe, const ExchangeEvent& ev);

struct DenominatorRecord {
    std::string var_key;
    int obj = -1;
    bool st_case = false;
    IntVec expected, actual;
    bool pass = false;
    Positivity positivity = Positivity::Unknown;
};

DenominatorRecord check_T_denominator(ClusterCat& cc, const TiltingContext& ctx,
                                      const std::string& key, const VarRecord& rec);

struct MaxIdentityFailure {
    std::string var_key, partner_key;
    IntVec lhs, rhs;
};

struct DenominatorCampaign {
    std::vector<int> T;
    std::string tilt_address;
    RegistryStatus status = RegistryStatus::Complete;
    std::optional<int> depth;
    long long seed_count = 0, variable_count = 0;
    int compat_checked = 0, compat_skipped = 0;
    std::vector<CompatibilityReport> compat_failures;
    std::vector<DenominatorRecord> records;
    int max_identity_checked = 0;
    std::vector<MaxIdentityFailure> max_identity_failures;
    int pos_certified = 0, pos_unknown = 0, pos_falsified = 0;
    std::vector<std::string> unexplored;

    bool hypothesis_ok() const { return compat_failures.empty(); }
    bool records_pass() const;
    bool pass() const { return hypothesis_ok() && records_pass() && max_identity_failures.empty(); }
};

DenominatorCampaign verify_theorem_main(ClusterCat& cc, const std::vector<int>& T,
                                        const EnumerateOptions& opts = {},
                                        const std::string& tilt_address = "");

// Full compatibility campaign: every rigid pool indecomposable against every
// enumerated exchange pair.
struct CompatibilityCampaign {
    std::vector<int> T;
    RegistryStatus status = RegistryStatus::Complete;
    std::optional<int> depth;
    int checked = 0, skipped = 0;
    std::vector<CompatibilityReport> failures;
    std::vector<CompatibilityReport> reports;
};
CompatibilityCampaign run_compatibility_campaign(ClusterCat& cc, const std::vector<int>& T,
                                                 const EnumerateOptions& opts = {});

// End_C scanner: cluster-tilting objects reachable within the depth having a
// summand with dim End_C > 1.
struct EndWitness {
    std::vector<int> T;
    std::vector<int> trace;
    int summand = -1;
    long long end_dim = 0;
};
std::vector<EndWitness> scan_end_nontrivial(ClusterCat& cc, const EnumerateOptions& opts = {});

enum class ConverseOutcome { Pass, Inconclusive };

struct ConverseReport {
    EndWitness witness;
    ConverseOutcome outcome = ConverseOutcome::Inconclusive;
    std::optional<DenominatorRecord> counterexample;
    RegistryStatus status = RegistryStatus::Complete;
    std::string note;
};
ConverseReport verify_theorem_converse(ClusterCat& cc, const EndWitness& witness,
                                       const EnumerateOptions& opts = {});

// JSON report builders (schema: campaign, quiver, trace, depth?, hypothesis,
// records, summary).  Deterministic field order and content.
ordered_json quiver_json(const Quiver& q);
ordered_json denominator_report_json(ClusterCat& cc, const DenominatorCampaign& c);
ordered_json compatibility_report_json(ClusterCat& cc, const CompatibilityCampaign& c);
ordered_json converse_report_json(ClusterCat& cc, const std::vector<EndWitness>& ws,
                                  const std::vector<ConverseReport>& rs,
                                  const std::optional<int>& depth);
ordered_json registry_json(ClusterCat& cc, const Registry& reg, const std::string& tilt_address);

// Exit-code semantics shared by the campaigns: 0 all pass, 2 failures,
// 3 inconclusive-only.
int denominator_exit_code(const DenominatorCampaign& c);
int converse_exit_code(const std::vector<EndWitness>& ws, const std::vector<ConverseReport>& rs);

} // namespace clusterlab
