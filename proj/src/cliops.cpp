#include "clusterlab/cliops.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "clusterlab/verify.hpp"

namespace clusterlab {

namespace {

constexpr const char* kFormatVersion = "clusterlab-1";

void RunConfigValidateQuiver(const RunConfig& cfg, const Quiver& q) {
    if (!q.is_acyclic()) throw ArgumentError("input quiver must be acyclic");
    if (!q.is_finite_type() && !cfg.depth)
        throw ArgumentError("non-Dynkin quiver: an explicit --depth is required");
}

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string cache_key(const RunConfig& cfg) {
    // Worker count is deliberately excluded: outputs are schedule-independent.
    std::ostringstream os;
    os << kFormatVersion << '\n'
       << cfg.command << '\n'
       << cfg.quiver_text << '\n'
       << (cfg.depth ? std::to_string(*cfg.depth) : "none") << '\n'
       << cfg.tilt << '\n';
    for (long long p : cfg.primes) os << p << ',';
    os << '\n'
       << cfg.cap_dim << '\n'
       << cfg.budget << '\n'
       << cfg.max_seeds << '\n'
       << cfg.seed << '\n'
       << cfg.ledger << '\n'
       << cfg.with_u << '\n'
       << cfg.object << '\n';
    std::ostringstream key;
    key << std::hex << fnv64(os.str());
    return key.str();
}

std::string effective_cache_dir(const RunConfig& cfg) {
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
    const char* env = std::getenv("CACHE_DIR");
    return env ? std::string(env) : std::string();
}

std::optional<std::string> cache_lookup(const RunConfig& cfg) {
    std::string dir = effective_cache_dir(cfg);
    if (dir.empty()) return std::nullopt;
    std::filesystem::path p = std::filesystem::path(dir) / (cache_key(cfg) + ".json");
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::string first;
    if (!std::getline(in, first)) return std::nullopt;
    if (first != kFormatVersion) return std::nullopt; // stale version: ignored
    std::ostringstream rest;
    rest << in.rdbuf();
    return rest.str();
}

void cache_store(const RunConfig& cfg, const std::string& payload) {
    std::string dir = effective_cache_dir(cfg);
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::filesystem::path p = std::filesystem::path(dir) / (cache_key(cfg) + ".json");
    std::ofstream out(p, std::ios::binary);
    out << kFormatVersion << '\n' << payload;
}

struct Session {
    Quiver q;
    std::unique_ptr<ClusterCat> cc;
    std::vector<int> tilt;

    explicit Session(const RunConfig& cfg) {
        q = parse_quiver_text(cfg.quiver_text);
        RunConfigValidateQuiver(cfg, q);
        PoolOptions popts;
        popts.dim_cap = cfg.cap_dim;
        popts.seed = cfg.seed;
        cc = std::make_unique<ClusterCat>(q, popts);
        tilt = resolve_tilt(*cc, cfg.tilt);
    }

    CharacterOptions character_options(const RunConfig& cfg) const {
        CharacterOptions co;
        co.primes = cfg.primes;
        co.budget = cfg.budget;
        co.workers = cfg.workers;
        return co;
    }

    EnumerateOptions enumerate_options(const RunConfig& cfg) const {
        EnumerateOptions eo;
        eo.depth = cfg.depth;
        eo.max_seeds = cfg.max_seeds;
        return eo;
    }
};

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace

void RunConfig::validate() const {
    if (cap_dim <= 0) throw ArgumentError("--cap-dim must be positive");
    if (budget <= 0) throw ArgumentError("budget must be positive");
    if (max_seeds <= 0) throw ArgumentError("seed budget must be positive");
    if (workers <= 0) throw ArgumentError("--workers must be positive");
    if (depth && *depth < 0) throw ArgumentError("--depth must be nonnegative");
    for (long long p : primes)
        if (p < 2) throw ArgumentError("--primes entries must be >= 2");
}

CommandResult cmd_enumerate(const RunConfig& cfg) {
    Session s(cfg);
    bool classical = cfg.tilt == "proj";
    EnumerateOptions eo = s.enumerate_options(cfg);
    eo.varprefix = classical ? "u" : "x";
    Registry reg = enumerate_seeds(*s.cc, root_seed_for_context(*s.cc, s.tilt, eo.varprefix), eo);
    if (cfg.with_u) {
        if (classical) {
            for (auto& [key, rec] : reg.variables) rec.upoly = rec.xpoly;
        } else {
            fill_u_coordinates(*s.cc, s.cc->context(s.tilt), reg, s.character_options(cfg));
        }
    }
    CommandResult out;
    out.payload = dump(registry_json(*s.cc, reg, cfg.tilt));
    out.exit_code = reg.status == RegistryStatus::BudgetExceeded ? 1 : 0;
    return out;
}

CommandResult cmd_verify_denominator(const RunConfig& cfg) {
    Session s(cfg);
    DenominatorCampaign c = verify_theorem_main(*s.cc, s.tilt, s.enumerate_options(cfg), cfg.tilt);
    CommandResult out;
    out.payload = dump(denominator_report_json(*s.cc, c));
    out.exit_code = denominator_exit_code(c);
    return out;
}

CommandResult cmd_verify_converse(const RunConfig& cfg) {
    Session s(cfg);
    auto witnesses = scan_end_nontrivial(*s.cc, s.enumerate_options(cfg));
    std::vector<ConverseReport> reports;
    for (const auto& w : witnesses)
        reports.push_back(verify_theorem_converse(*s.cc, w, s.enumerate_options(cfg)));
    CommandResult out;
    out.payload = dump(converse_report_json(*s.cc, witnesses, reports, cfg.depth));
    out.exit_code = converse_exit_code(witnesses, reports);
    return out;
}

CommandResult cmd_compat(const RunConfig& cfg) {
    Session s(cfg);
    CompatibilityCampaign c = run_compatibility_campaign(*s.cc, s.tilt, s.enumerate_options(cfg));
    CommandResult out;
    out.payload = dump(compatibility_report_json(*s.cc, c));
    out.exit_code = c.failures.empty() ? 0 : 2;
    return out;
}

CommandResult cmd_character(const RunConfig& cfg) {
    Session s(cfg);
    auto obj = s.cc->parse_ind(cfg.object);
    if (!obj) throw ArgumentError("unknown object address: " + cfg.object);
    const TiltingContext& ctx = s.cc->context(s.tilt);
    auto r = cluster_character(*s.cc, ctx, CObj::of(*obj), s.character_options(cfg));
    bool classical = cfg.tilt == "proj";
    std::string prefix = classical ? "u" : "x";
    ordered_json j;
    j["campaign"] = "character";
    j["quiver"] = quiver_json(s.q);
    j["tilt"] = cfg.tilt;
    j["object"] = s.cc->render_ind(*obj);
    j["value"] = render(r.value, prefix);
    j["denominator"] = denominator_vector(r.value);
    j["positivity"] = [&] {
        switch (weak_positivity_certificate(r.value).kind) {
            case Positivity::Certified: return "certified";
            case Positivity::Falsified: return "falsified";
            default: return "unknown";
        }
    }();
    if (cfg.ledger) {
        ordered_json pieces = ordered_json::array();
        for (const auto& piece : r.ledger) {
            ordered_json pj;
            pj["object"] = s.cc->render_ind(piece.obj);
            pj["mult"] = piece.mult;
            pj["st_case"] = piece.st_case;
            pj["value"] = render(piece.piece, prefix);
            ordered_json terms = ordered_json::array();
            for (const auto& t : piece.terms) {
                ordered_json tj;
                tj["e"] = t.e;
                tj["chi"] = t.chi;
                tj["exponent"] = t.expo;
                terms.push_back(tj);
            }
            pj["terms"] = terms;
            pieces.push_back(pj);
        }
        j["ledger"] = pieces;
    }
    CommandResult out;
    out.payload = dump(j);
    return out;
}

CommandResult cmd_grassmannian(const RunConfig& cfg) {
    Session s(cfg);
    auto obj = s.cc->parse_ind(cfg.object);
    if (!obj) throw ArgumentError("unknown object address: " + cfg.object);
    const TiltingContext& ctx = s.cc->context(s.tilt);
    FDModule FM = s.cc->F_module(ctx, *obj);
    ordered_json j;
    j["campaign"] = "grassmannian";
    j["quiver"] = quiver_json(s.q);
    j["tilt"] = cfg.tilt;
    j["object"] = s.cc->render_ind(*obj);
    j["fm_dim_vector"] = FM.dim_vector();
    j["table"] = ordered_json::array();
    IntVec d = FM.dim_vector();
    IntVec e(static_cast<size_t>(s.q.n), 0);
    while (true) {
        auto fit = euler_char(FM, e, cfg.primes, cfg.budget, cfg.workers);
        ordered_json row;
        row["e"] = e;
        ordered_json counts = ordered_json::array();
        for (const auto& [p, c] : fit.counts) {
            ordered_json cj;
            cj["p"] = p;
            cj["count"] = c.str();
            counts.push_back(cj);
        }
        row["counts"] = counts;
        row["degree_bound"] = fit.degree_bound;
        row["chi"] = fit.chi;
        j["table"].push_back(row);
        size_t i = 0;
        while (i < e.size() && e[i] == d[i]) { e[i] = 0; ++i; }
        if (i == e.size()) break;
        ++e[i];
    }
    CommandResult out;
    out.payload = dump(j);
    return out;
}

CommandResult run_command(const RunConfig& cfg) {
    cfg.validate();
    if (auto hit = cache_lookup(cfg)) {
        CommandResult out;
        out.payload = *hit;
        out.cache_hit = true;
        return out;
    }
    CommandResult out;
    if (cfg.command == "enumerate") out = cmd_enumerate(cfg);
    else if (cfg.command == "verify-denominator") out = cmd_verify_denominator(cfg);
    else if (cfg.command == "verify-converse") out = cmd_verify_converse(cfg);
    else if (cfg.command == "compat") out = cmd_compat(cfg);
    else if (cfg.command == "character") out = cmd_character(cfg);
    else if (cfg.command == "grassmannian") out = cmd_grassmannian(cfg);
    else throw ArgumentError("unknown command: " + cfg.command);
    if (out.exit_code == 0) cache_store(cfg, out.payload);
    return out;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open quiver file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const RunConfig& cfg, const CommandResult& res) {
    if (cfg.out_path.empty()) {
        std::cout << res.payload;
    } else {
        std::ofstream out(cfg.out_path, std::ios::binary);
        out << res.payload;
    }
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"clusterlab: a verification laboratory for acyclic cluster algebras"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string primes_csv;
    auto add_common = [&](CLI::App* sub, bool needs_tilt) {
        sub->add_option("--quiver", cfg.quiver_path, "quiver file (\"i -> j\" lines)")->required();
        sub->add_option("--depth", cfg.depth, "mutation depth bound (required for non-Dynkin quivers)");
        if (needs_tilt)
            sub->add_option("--tilt", cfg.tilt, "tilting object address: id | proj | mu(i,j,...)");
        sub->add_option("--primes", primes_csv, "comma-separated point-counting primes");
        sub->add_option("--cap-dim", cfg.cap_dim, "total-dimension cap for the indecomposable pool");
        sub->add_option("--budget", cfg.budget, "submodule enumeration budget");
        sub->add_option("--max-seeds", cfg.max_seeds, "seed budget for enumeration");
        sub->add_option("--cache-dir", cfg.cache_dir, "cache directory (or CACHE_DIR env)");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--seed", cfg.seed, "seed for randomized audits (recorded in reports)");
        sub->add_option("--workers", cfg.workers, "worker pool size");
    };

    auto* enumerate = app.add_subcommand("enumerate", "enumerate seeds and cluster variables");
    add_common(enumerate, true);
    enumerate->add_flag("--with-u,!--no-with-u", cfg.with_u, "include u-coordinates");

    auto* verify = app.add_subcommand("verify", "theorem-checking campaigns");
    std::string verify_kind;
    verify->add_option("kind", verify_kind, "denominator | converse")->required();
    add_common(verify, true);

    auto* compat = app.add_subcommand("compat", "exchange-compatibility campaign");
    add_common(compat, true);

    auto* character = app.add_subcommand("character", "cluster character of one object");
    add_common(character, true);
    character->add_option("--object", cfg.object, "object address: dim:d1,d2,... or sp:i")->required();
    character->add_flag("--ledger", cfg.ledger, "include the Grassmannian term ledger");

    auto* grass = app.add_subcommand("grassmannian", "submodule counts and Euler characteristics");
    add_common(grass, true);
    grass->add_option("--object", cfg.object, "object address: dim:d1,d2,... or sp:i")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!primes_csv.empty()) {
            cfg.primes.clear();
            std::istringstream ps(primes_csv);
            std::string tok;
            while (std::getline(ps, tok, ',')) cfg.primes.push_back(std::stoll(tok));
        }
        if (enumerate->parsed()) cfg.command = "enumerate";
        else if (verify->parsed()) {
            if (verify_kind == "denominator") cfg.command = "verify-denominator";
            else if (verify_kind == "converse") cfg.command = "verify-converse";
            else throw ArgumentError("verify kind must be denominator or converse");
        } else if (compat->parsed()) cfg.command = "compat";
        else if (character->parsed()) cfg.command = "character";
        else cfg.command = "grassmannian";
        cfg.quiver_text = read_file(cfg.quiver_path);
        CommandResult res = run_command(cfg);
        emit(cfg, res);
        return res.exit_code;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace clusterlab
