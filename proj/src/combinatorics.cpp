#include "clusterlab/combinatorics.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace clusterlab {

std::string canonical_key(const Seed& s, const std::string& varprefix) {
    std::vector<std::string> keys;
    keys.reserve(s.vars.size());
    for (const auto& v : s.vars) keys.push_back(render(v, varprefix));
    std::sort(keys.begin(), keys.end());
    std::string out;
    for (size_t i = 0; i < keys.size(); ++i) {
        if (i) out += " | ";
        out += keys[i];
    }
    return out;
}

Seed mutate_seed(ClusterCat& cc, const Seed& s, int k) {
    int n = s.quiver.n;
    if (k < 0 || k >= n) throw ArgumentError("mutation vertex out of range");
    auto ex = cc.exchange_partner(s.tilt, k, s.quiver);

    LaurentPoly plus = LaurentPoly::one(static_cast<int>(s.vars[0].nvars));
    LaurentPoly minus = plus;
    for (int j = 0; j < n; ++j) {
        long long b = s.quiver.b[static_cast<size_t>(j)][static_cast<size_t>(k)];
        if (b > 0) plus = mul(plus, pow(s.vars[static_cast<size_t>(j)], static_cast<unsigned>(b)));
        if (b < 0) minus = mul(minus, pow(s.vars[static_cast<size_t>(j)], static_cast<unsigned>(-b)));
    }
    auto quotient = try_exact_div(add(plus, minus), s.vars[static_cast<size_t>(k)]);
    if (!quotient)
        throw IntegrityError("exchange quotient is not a Laurent polynomial (Laurent phenomenon violated)");

    Seed t = s;
    t.vars[static_cast<size_t>(k)] = *quotient;
    t.quiver = mutate_quiver(s.quiver, k);
    t.trace.push_back(k);
    t.tilt[static_cast<size_t>(k)] = ex.ustar;
    for (size_t i = 0; i < t.vars.size(); ++i)
        for (size_t j = i + 1; j < t.vars.size(); ++j)
            if (t.vars[i] == t.vars[j]) throw IntegrityError("seed variables are not distinct");
    return t;
}

Seed root_seed_for_context(ClusterCat& cc, const std::vector<int>& T, const std::string&) {
    const TiltingContext& ctx = cc.context(T);
    Seed s;
    s.quiver = ctx.QT;
    for (int i = 0; i < ctx.QT.n; ++i) s.vars.push_back(LaurentPoly::variable(ctx.QT.n, i));
    s.tilt = ctx.ST;
    return s;
}

namespace {

// Canonical identity of an exchange edge: the complement multiset plus the
// unordered pair being exchanged.
std::string edge_identity(const ExchangeEvent& e) {
    std::vector<int> comp;
    for (size_t j = 0; j < e.R.size(); ++j)
        if (static_cast<int>(j) != e.k) comp.push_back(e.R[j]);
    std::sort(comp.begin(), comp.end());
    int a = e.R[static_cast<size_t>(e.k)], b = e.ustar;
    if (a > b) std::swap(a, b);
    std::string s = "c:";
    for (int x : comp) s += std::to_string(x) + ",";
    s += "|" + std::to_string(a) + ":" + std::to_string(b);
    return s;
}

} // namespace

std::vector<const ExchangeEvent*> Registry::unique_exchange_edges() const {
    std::set<std::string> seen;
    std::vector<const ExchangeEvent*> out;
    for (const auto& e : exchanges)
        if (seen.insert(edge_identity(e)).second) out.push_back(&e);
    return out;
}

Registry enumerate_seeds(ClusterCat& cc, const Seed& root, const EnumerateOptions& opts) {
    if (!cc.finite_type() && !opts.depth)
        throw ArgumentError("enumeration over a non-Dynkin quiver requires an explicit depth");
    Registry reg;
    reg.n = root.quiver.n;
    reg.varprefix = opts.varprefix;
    reg.depth = opts.depth;

    auto record_var = [&](const LaurentPoly& v, int obj, const std::vector<int>& trace) {
        std::string key = render(v, opts.varprefix);
        auto it = reg.variables.find(key);
        if (it == reg.variables.end()) {
            VarRecord r;
            r.xpoly = v;
            r.obj = obj;
            r.first_trace = trace;
            reg.variables.emplace(std::move(key), std::move(r));
        } else if (it->second.obj != obj) {
            throw IntegrityError("cluster variable tracked to two distinct objects");
        }
    };

    std::string rootkey = canonical_key(root, opts.varprefix);
    reg.seeds.emplace(rootkey, root);
    for (int i = 0; i < reg.n; ++i)
        record_var(root.vars[static_cast<size_t>(i)], root.tilt[static_cast<size_t>(i)], root.trace);

    std::deque<std::string> frontier{rootkey};
    while (!frontier.empty()) {
        std::string key = frontier.front();
        frontier.pop_front();
        Seed s = reg.seeds.at(key);
        if (opts.depth && static_cast<int>(s.trace.size()) >= *opts.depth) {
            reg.status = RegistryStatus::DepthBounded;
            continue;
        }
        for (int k = 0; k < reg.n; ++k) {
            Seed t;
            try {
                t = mutate_seed(cc, s, k);
            } catch (const SearchBoundError& ex) {
                if (cc.finite_type()) throw;
                reg.unexplored.push_back(render_tilt_trace(s.trace) + " at position " +
                                         std::to_string(k + 1) + ": " + ex.what());
                continue;
            }
            auto ex = cc.exchange_partner(s.tilt, k, s.quiver);
            ExchangeEvent ev;
            ev.R = s.tilt;
            ev.k = k;
            ev.ustar = ex.ustar;
            ev.E = ex.E;
            ev.Eprime = ex.Eprime;
            ev.var_key = render(s.vars[static_cast<size_t>(k)], opts.varprefix);
            ev.partner_key = render(t.vars[static_cast<size_t>(k)], opts.varprefix);
            for (const auto& v : s.vars) ev.seed_var_keys.push_back(render(v, opts.varprefix));
            ev.seed_trace = s.trace;
            reg.exchanges.push_back(std::move(ev));

            record_var(t.vars[static_cast<size_t>(k)], t.tilt[static_cast<size_t>(k)], t.trace);
            std::string tkey = canonical_key(t, opts.varprefix);
            if (!reg.seeds.count(tkey)) {
                if (static_cast<long long>(reg.seeds.size()) >= opts.max_seeds) {
                    reg.status = RegistryStatus::BudgetExceeded;
                    return reg;
                }
                reg.seeds.emplace(tkey, t);
                frontier.push_back(std::move(tkey));
            }
        }
    }
    return reg;
}

std::vector<int> resolve_tilt(ClusterCat& cc, const std::string& address) {
    int n = cc.rank();
    std::vector<int> tilt;
    if (address.empty() || address == "id") {
        for (int i = 0; i < n; ++i) tilt.push_back(cc.sp(i));
        return tilt;
    }
    if (address == "proj") {
        for (int i = 0; i < n; ++i) tilt.push_back(cc.module_pool_index(cc.repkit().proj(i)));
        return tilt;
    }
    if (address.rfind("mu(", 0) != 0 || address.back() != ')')
        throw ArgumentError("tilt address must be \"id\", \"proj\" or \"mu(i,j,...)\"");
    for (int i = 0; i < n; ++i) tilt.push_back(cc.sp(i));
    Quiver b = cc.quiver();
    std::string body = address.substr(3, address.size() - 4);
    size_t pos = 0;
    while (pos < body.size()) {
        size_t comma = body.find(',', pos);
        std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        int k;
        try {
            k = std::stoi(tok);
        } catch (...) {
            throw ArgumentError("bad tilt trace entry: " + tok);
        }
        if (k < 1 || k > n) throw ArgumentError("tilt trace vertex out of range");
        auto ex = cc.exchange_partner(tilt, k - 1, b);
        tilt[static_cast<size_t>(k - 1)] = ex.ustar;
        b = mutate_quiver(b, k - 1);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return tilt;
}

std::string render_tilt_trace(const std::vector<int>& trace) {
    if (trace.empty()) return "id";
    std::string s = "mu(";
    for (size_t i = 0; i < trace.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(trace[i] + 1);
    }
    return s + ")";
}

} // namespace clusterlab
