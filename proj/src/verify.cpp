#include "clusterlab/verify.hpp"

#include <algorithm>
#include <set>

namespace clusterlab {

CompatibilityReport check_compatibility(ClusterCat& cc, int probe, const std::vector<int>& R,
                                        int k, const Quiver& b) {
    auto ex = cc.exchange_partner(R, k, b);
    ExchangeEvent ev;
    ev.R = R;
    ev.k = k;
    ev.ustar = ex.ustar;
    ev.E = ex.E;
    ev.Eprime = ex.Eprime;
    return check_compatibility_event(cc, probe, ev);
}

CompatibilityReport check_compatibility_event(ClusterCat& cc, int probe, const ExchangeEvent& ev) {
    CompatibilityReport rep;
    rep.probe = probe;
    rep.R = ev.R;
    rep.k = ev.k;
    rep.ustar = ev.ustar;
    int U = ev.R[static_cast<size_t>(ev.k)];
    int tauN = cc.shift_of(probe); // tau_C = S_C on objects
    if (U == tauN || ev.ustar == tauN) {
        rep.skipped = true;
        rep.compatible = true;
        return rep;
    }
    rep.lhs = cc.hom_dim(probe, U) + cc.hom_dim(probe, ev.ustar);
    rep.rhs = std::max(cc.hom_dim_obj(probe, ev.E), cc.hom_dim_obj(probe, ev.Eprime));
    rep.compatible = rep.lhs == rep.rhs;
    return rep;
}

DenominatorRecord check_T_denominator(ClusterCat& cc, const TiltingContext& ctx,
                                      const std::string& key, const VarRecord& rec) {
    DenominatorRecord out;
    out.var_key = key;
    out.obj = rec.obj;
    int n = cc.rank();
    for (int i = 0; i < n; ++i)
        if (ctx.ST[static_cast<size_t>(i)] == rec.obj) {
            out.st_case = true;
            out.expected = ivec_zero(n);
            out.expected[static_cast<size_t>(i)] = -1;
        }
    if (!out.st_case) out.expected = cc.dim_hom_vector(ctx, CObj::of(rec.obj));
    out.actual = denominator_vector(rec.xpoly);
    out.pass = out.expected == out.actual;
    out.positivity = weak_positivity_certificate(rec.xpoly).kind;
    return out;
}

bool DenominatorCampaign::records_pass() const {
    return std::all_of(records.begin(), records.end(),
                       [](const DenominatorRecord& r) { return r.pass; });
}

namespace {

// X-polynomial of a formal sum of tracked objects, read off the source seed's
// variables (every middle-term summand is a summand of the seed's tilt).
LaurentPoly object_poly(const Registry& reg, const ExchangeEvent& ev, const CObj& X, int n) {
    LaurentPoly out = LaurentPoly::one(n);
    for (const auto& [idx, mult] : X.summands) {
        auto pos = std::find(ev.R.begin(), ev.R.end(), idx);
        if (pos == ev.R.end()) throw IntegrityError("middle-term summand missing from the seed tilt");
        const std::string& key = ev.seed_var_keys[static_cast<size_t>(pos - ev.R.begin())];
        out = mul(out, pow(reg.variables.at(key).xpoly, static_cast<unsigned>(mult)));
    }
    return out;
}

} // namespace

DenominatorCampaign verify_theorem_main(ClusterCat& cc, const std::vector<int>& T,
                                        const EnumerateOptions& opts_in,
                                        const std::string& tilt_address) {
    DenominatorCampaign c;
    c.T = T;
    c.tilt_address = tilt_address;
    const TiltingContext& ctx = cc.context(T);
    EnumerateOptions opts = opts_in;
    opts.varprefix = "x";
    Registry reg = enumerate_seeds(cc, root_seed_for_context(cc, T, "x"), opts);
    c.status = reg.status;
    c.depth = reg.depth;
    c.seed_count = static_cast<long long>(reg.seeds.size());
    c.variable_count = static_cast<long long>(reg.variables.size());
    c.unexplored = reg.unexplored;

    // Hypothesis: every T_i compatible with every enumerated exchange pair.
    for (const auto* ev : reg.unique_exchange_edges()) {
        for (int i = 0; i < cc.rank(); ++i) {
            CompatibilityReport rep = check_compatibility_event(cc, ctx.T[static_cast<size_t>(i)], *ev);
            if (rep.skipped) ++c.compat_skipped;
            else ++c.compat_checked;
            if (!rep.compatible) c.compat_failures.push_back(rep);
        }
    }

    for (const auto& [key, rec] : reg.variables) {
        DenominatorRecord r = check_T_denominator(cc, ctx, key, rec);
        switch (r.positivity) {
            case Positivity::Certified: ++c.pos_certified; break;
            case Positivity::Unknown: ++c.pos_unknown; break;
            case Positivity::Falsified: ++c.pos_falsified; break;
        }
        c.records.push_back(std::move(r));
    }

    // Proof-engine audit: delta_T(X_U) + delta_T(X_U*) = max over middle terms
    // at every exchange step.
    int n = cc.rank();
    for (const auto* ev : reg.unique_exchange_edges()) {
        IntVec lhs = ivec_add(denominator_vector(reg.variables.at(ev->var_key).xpoly),
                              denominator_vector(reg.variables.at(ev->partner_key).xpoly));
        LaurentPoly xe = object_poly(reg, *ev, ev->E, n);
        LaurentPoly xep = object_poly(reg, *ev, ev->Eprime, n);
        IntVec rhs = ivec_max(denominator_vector(xe), denominator_vector(xep));
        ++c.max_identity_checked;
        if (lhs != rhs) c.max_identity_failures.push_back({ev->var_key, ev->partner_key, lhs, rhs});
    }
    return c;
}

CompatibilityCampaign run_compatibility_campaign(ClusterCat& cc, const std::vector<int>& T,
                                                 const EnumerateOptions& opts_in) {
    CompatibilityCampaign c;
    c.T = T;
    EnumerateOptions opts = opts_in;
    opts.varprefix = "x";
    Registry reg = enumerate_seeds(cc, root_seed_for_context(cc, T, "x"), opts);
    c.status = reg.status;
    c.depth = reg.depth;
    for (const auto* ev : reg.unique_exchange_edges()) {
        for (int probe = 0; probe < cc.pool_size(); ++probe) {
            if (!cc.is_rigid_ind(probe)) continue;
            CompatibilityReport rep = check_compatibility_event(cc, probe, *ev);
            if (rep.skipped) ++c.skipped;
            else ++c.checked;
            if (!rep.compatible) c.failures.push_back(rep);
            c.reports.push_back(std::move(rep));
        }
    }
    return c;
}

std::vector<EndWitness> scan_end_nontrivial(ClusterCat& cc, const EnumerateOptions& opts_in) {
    EnumerateOptions opts = opts_in;
    opts.varprefix = "x";
    std::vector<int> id_tilt;
    for (int i = 0; i < cc.rank(); ++i) id_tilt.push_back(cc.sp(i));
    Registry reg = enumerate_seeds(cc, root_seed_for_context(cc, id_tilt, "x"), opts);
    std::set<std::vector<int>> seen;
    std::vector<EndWitness> out;
    for (const auto& [key, seed] : reg.seeds) {
        std::vector<int> sorted = seed.tilt;
        std::sort(sorted.begin(), sorted.end());
        if (!seen.insert(sorted).second) continue;
        for (int i = 0; i < cc.rank(); ++i) {
            long long end = cc.hom_dim(seed.tilt[static_cast<size_t>(i)], seed.tilt[static_cast<size_t>(i)]);
            if (end > 1) {
                EndWitness w;
                w.T = seed.tilt;
                w.trace = seed.trace;
                w.summand = i;
                w.end_dim = end;
                out.push_back(std::move(w));
            }
        }
    }
    return out;
}

ConverseReport verify_theorem_converse(ClusterCat& cc, const EndWitness& witness,
                                       const EnumerateOptions& opts_in) {
    ConverseReport rep;
    rep.witness = witness;
    const TiltingContext& ctx = cc.context(witness.T);
    EnumerateOptions opts = opts_in;
    opts.varprefix = "x";
    Registry reg = enumerate_seeds(cc, root_seed_for_context(cc, witness.T, "x"), opts);
    rep.status = reg.status;
    for (const auto& [key, rec] : reg.variables) {
        DenominatorRecord r = check_T_denominator(cc, ctx, key, rec);
        if (!r.pass) {
            rep.outcome = ConverseOutcome::Pass;
            rep.counterexample = std::move(r);
            return rep;
        }
    }
    rep.outcome = ConverseOutcome::Inconclusive;
    rep.note = "no failing variable within the explored depth";
    if (!reg.unexplored.empty())
        rep.note += " (" + std::to_string(reg.unexplored.size()) + " unexplored edges)";
    return rep;
}

// ---------------------------------------------------------------------------
// JSON reports

ordered_json quiver_json(const Quiver& q) {
    ordered_json j;
    j["n"] = q.n;
    j["b"] = q.b;
    return j;
}

namespace {

const char* positivity_name(Positivity p) {
    switch (p) {
        case Positivity::Certified: return "certified";
        case Positivity::Falsified: return "falsified";
        default: return "unknown";
    }
}

const char* status_name(RegistryStatus s) {
    switch (s) {
        case RegistryStatus::Complete: return "complete";
        case RegistryStatus::DepthBounded: return "depth-bounded";
        default: return "budget-exceeded";
    }
}

ordered_json ivec_json(const IntVec& v) { return ordered_json(v); }

ordered_json compat_json(ClusterCat& cc, const CompatibilityReport& r) {
    ordered_json j;
    j["probe"] = cc.render_ind(r.probe);
    ordered_json pair;
    pair.push_back(cc.render_ind(r.R[static_cast<size_t>(r.k)]));
    pair.push_back(cc.render_ind(r.ustar));
    j["pair"] = pair;
    j["position"] = r.k + 1;
    j["skipped"] = r.skipped;
    if (!r.skipped) {
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
    }
    j["verdict"] = r.compatible ? "pass" : "fail";
    return j;
}

ordered_json record_json(ClusterCat& cc, const DenominatorRecord& r) {
    ordered_json j;
    j["variable"] = r.var_key;
    j["object"] = cc.render_ind(r.obj);
    j["st_case"] = r.st_case;
    j["expected"] = ivec_json(r.expected);
    j["actual"] = ivec_json(r.actual);
    j["verdict"] = r.pass ? "pass" : "fail";
    j["positivity"] = positivity_name(r.positivity);
    return j;
}

} // namespace

ordered_json denominator_report_json(ClusterCat& cc, const DenominatorCampaign& c) {
    ordered_json j;
    j["campaign"] = "denominator";
    j["quiver"] = quiver_json(cc.quiver());
    j["tilt"] = c.tilt_address;
    ordered_json tilt_objects = ordered_json::array();
    for (int t : c.T) tilt_objects.push_back(cc.render_ind(t));
    j["tilting_object"] = tilt_objects;
    if (c.depth) j["depth"] = *c.depth;
    else j["depth"] = nullptr;
    ordered_json hyp;
    hyp["checked"] = c.compat_checked;
    hyp["skipped"] = c.compat_skipped;
    hyp["failures"] = ordered_json::array();
    for (const auto& f : c.compat_failures) hyp["failures"].push_back(compat_json(cc, f));
    hyp["ok"] = c.hypothesis_ok();
    j["hypothesis"] = hyp;
    j["records"] = ordered_json::array();
    for (const auto& r : c.records) j["records"].push_back(record_json(cc, r));
    ordered_json audits;
    audits["max_identity_checked"] = c.max_identity_checked;
    audits["max_identity_failures"] = ordered_json::array();
    for (const auto& f : c.max_identity_failures) {
        ordered_json fj;
        fj["variable"] = f.var_key;
        fj["partner"] = f.partner_key;
        fj["lhs"] = ivec_json(f.lhs);
        fj["rhs"] = ivec_json(f.rhs);
        audits["max_identity_failures"].push_back(fj);
    }
    j["audits"] = audits;
    ordered_json summary;
    summary["status"] = status_name(c.status);
    summary["seeds"] = c.seed_count;
    summary["variables"] = c.variable_count;
    summary["hypothesis_ok"] = c.hypothesis_ok();
    summary["records_pass"] = c.records_pass();
    ordered_json pos;
    pos["certified"] = c.pos_certified;
    pos["unknown"] = c.pos_unknown;
    pos["falsified"] = c.pos_falsified;
    summary["positivity"] = pos;
    summary["unexplored_edges"] = c.unexplored;
    summary["pass"] = c.pass();
    j["summary"] = summary;
    return j;
}

ordered_json compatibility_report_json(ClusterCat& cc, const CompatibilityCampaign& c) {
    ordered_json j;
    j["campaign"] = "compat";
    j["quiver"] = quiver_json(cc.quiver());
    ordered_json tilt_objects = ordered_json::array();
    for (int t : c.T) tilt_objects.push_back(cc.render_ind(t));
    j["tilting_object"] = tilt_objects;
    if (c.depth) j["depth"] = *c.depth;
    else j["depth"] = nullptr;
    j["records"] = ordered_json::array();
    for (const auto& r : c.reports) j["records"].push_back(compat_json(cc, r));
    ordered_json summary;
    summary["status"] = status_name(c.status);
    summary["checked"] = c.checked;
    summary["skipped"] = c.skipped;
    summary["failures"] = static_cast<long long>(c.failures.size());
    summary["pass"] = c.failures.empty();
    j["summary"] = summary;
    return j;
}

ordered_json converse_report_json(ClusterCat& cc, const std::vector<EndWitness>& ws,
                                  const std::vector<ConverseReport>& rs,
                                  const std::optional<int>& depth) {
    ordered_json j;
    j["campaign"] = "converse";
    j["quiver"] = quiver_json(cc.quiver());
    if (depth) j["depth"] = *depth;
    else j["depth"] = nullptr;
    j["witnesses"] = ordered_json::array();
    for (const auto& w : ws) {
        ordered_json wj;
        wj["tilting_object"] = render_tilt_trace(w.trace);
        ordered_json objs = ordered_json::array();
        for (int t : w.T) objs.push_back(cc.render_ind(t));
        wj["summands"] = objs;
        wj["summand_index"] = w.summand + 1;
        wj["end_dim"] = w.end_dim;
        j["witnesses"].push_back(wj);
    }
    j["records"] = ordered_json::array();
    for (const auto& r : rs) {
        ordered_json rj;
        rj["witness"] = render_tilt_trace(r.witness.trace);
        rj["outcome"] = r.outcome == ConverseOutcome::Pass ? "pass" : "inconclusive";
        if (r.counterexample) rj["counterexample"] = record_json(cc, *r.counterexample);
        if (!r.note.empty()) rj["note"] = r.note;
        j["records"].push_back(rj);
    }
    ordered_json summary;
    if (ws.empty()) summary["outcome"] = "no-witness";
    else if (std::all_of(rs.begin(), rs.end(),
                         [](const ConverseReport& r) { return r.outcome == ConverseOutcome::Pass; }))
        summary["outcome"] = "pass";
    else summary["outcome"] = "inconclusive";
    summary["witness_count"] = static_cast<long long>(ws.size());
    j["summary"] = summary;
    return j;
}

ordered_json registry_json(ClusterCat& cc, const Registry& reg, const std::string& tilt_address) {
    ordered_json j;
    j["format"] = "clusterlab-registry-1";
    j["quiver"] = quiver_json(cc.quiver());
    j["tilt"] = tilt_address;
    if (reg.depth) j["depth"] = *reg.depth;
    else j["depth"] = nullptr;
    j["status"] = status_name(reg.status);
    j["seed_count"] = static_cast<long long>(reg.seeds.size());
    j["variable_count"] = static_cast<long long>(reg.variables.size());
    j["seeds"] = ordered_json::array();
    for (const auto& [key, seed] : reg.seeds) {
        ordered_json sj;
        sj["trace"] = render_tilt_trace(seed.trace);
        ordered_json vars = ordered_json::array();
        for (const auto& v : seed.vars) vars.push_back(render(v, reg.varprefix));
        sj["vars"] = vars;
        ordered_json tilt = ordered_json::array();
        for (int t : seed.tilt) tilt.push_back(cc.render_ind(t));
        sj["tilt"] = tilt;
        sj["b"] = seed.quiver.b;
        j["seeds"].push_back(sj);
    }
    j["variables"] = ordered_json::array();
    for (const auto& [key, rec] : reg.variables) {
        ordered_json vj;
        vj["x"] = key;
        if (rec.upoly) vj["u"] = render(*rec.upoly, "u");
        else vj["u"] = nullptr;
        vj["object"] = cc.render_ind(rec.obj);
        vj["denominator"] = ivec_json(denominator_vector(rec.xpoly));
        vj["first_trace"] = render_tilt_trace(rec.first_trace);
        j["variables"].push_back(vj);
    }
    j["unexplored_edges"] = reg.unexplored;
    return j;
}

int denominator_exit_code(const DenominatorCampaign& c) {
    if (c.pass() && c.pos_falsified == 0) {
        // Unknown positivity outcomes are a distinct unproven-step verdict.
        if (c.pos_unknown > 0 || c.status != RegistryStatus::Complete) return 3;
        return 0;
    }
    return 2;
}

int converse_exit_code(const std::vector<EndWitness>& ws, const std::vector<ConverseReport>& rs) {
    if (ws.empty()) return 0; // scanner empty: nothing to refute
    bool allpass = std::all_of(rs.begin(), rs.end(), [](const ConverseReport& r) {
        return r.outcome == ConverseOutcome::Pass;
    });
    return allpass ? 0 : 3;
}

} // namespace clusterlab
