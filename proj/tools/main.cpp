// conicfib: census and predicted densities for families of conic bundles
// with squarefree monomial coefficients.
//
//   analyze   residue spaces and the combinatorial Brauer tables
//   constant  predicted leading constant as JSON
//   count     exhaustive/sampled census with observed-vs-predicted ratio
//   redei     the Redei-set census |S(B)| against its predicted main term
//   verify    named invariant suites; nonzero exit on failure

#include "conicfib/analytic.hpp"
#include "conicfib/brgroup.hpp"
#include "conicfib/census.hpp"
#include "conicfib/f2res.hpp"
#include "conicfib/family.hpp"
#include "conicfib/localdens.hpp"
#include "conicfib/qlocal.hpp"
#include "conicfib/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace conicfib;

namespace {

MonomialConicFamily load_family(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) return builtin_family(source.substr(8));
    std::ifstream in(source);
    if (!in) throw std::runtime_error("cannot open family file '" + source + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_family(ss.str());
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
}

// proper nonempty subsets of [n], lexicographic on the element sequence
std::vector<std::uint64_t> masks_lex(int n) {
    std::vector<std::uint64_t> masks;
    const std::uint64_t full = (1ull << n) - 1;
    for (std::uint64_t m = 1; m < full; ++m) masks.push_back(m);
    auto elems = [n](std::uint64_t m) {
        std::vector<int> out;
        for (int i = 1; i <= n; ++i)
            if (m & (1ull << (i - 1))) out.push_back(i);
        return out;
    };
    std::sort(masks.begin(), masks.end(),
              [&](std::uint64_t a, std::uint64_t b) { return elems(a) < elems(b); });
    return masks;
}

// the same subsets ordered by (cardinality, mask): singleton rows first
std::vector<std::uint64_t> masks_by_card(int n) {
    std::vector<std::uint64_t> masks;
    const std::uint64_t full = (1ull << n) - 1;
    for (std::uint64_t m = 1; m < full; ++m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
        int ca = std::popcount(a), cb = std::popcount(b);
        return ca != cb ? ca < cb : a < b;
    });
    return masks;
}

std::string basis_str(const F2Space& space) {
    std::string out = "<";
    const auto& basis = space.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i) out += ",";
        out += SubsetVec(basis[i]).str();
    }
    return out + ">";
}

int run_analyze(const std::string& family_src) {
    MonomialConicFamily fam = load_family(family_src);
    ResidueData rd = build_residue_data(fam);
    std::cout << "family " << family_digest(fam) << "\n";
    std::cout << "vars = " << fam.n << ", conics = " << fam.m()
              << ", mode = " << mode_name(fam.mode) << "\n\n";

    std::cout << "residue spaces (S : basis V_S : basis W_S : in_D : c_S)\n";
    for (std::uint64_t mask : masks_lex(fam.n)) {
        const auto& row = rd.row(mask);
        std::cout << SubsetVec::vars(mask).str() << " : " << basis_str(row.V) << " : "
                  << basis_str(row.W) << " : " << (row.in_D ? "yes" : "no") << " : "
                  << row.c_S() << "\n";
    }

    auto elems = enumerate_bmsub(rd);
    auto ralt = enumerate_ralt(rd);
    long long pbm = 0;
    for (const auto& g : elems)
        if (g.is_pbm) ++pbm;
    std::cout << "\n|Alt| = " << ralt.size() << ", |BM1| = "
              << (1ull << std::popcount(rd.d_singletons())) << ", |BM_Sub| = " << elems.size()
              << ", |PBM| = " << pbm << "\n";
    std::cout << "gamma_i = ";
    for (int i = 1; i <= fam.n; ++i) std::cout << (i > 1 ? ", " : "") << rat_to_string(rd.gamma_i(i));
    std::cout << "; Delta = " << rat_to_string(rd.delta()) << "\n";

    std::cout << "\nRAlt table (rows S, columns f in enumeration order)\n";
    std::cout << "S";
    for (std::size_t k = 0; k < ralt.size(); ++k) std::cout << " | f" << k;
    std::cout << "\n";
    for (std::uint64_t mask : masks_by_card(fam.n)) {
        std::cout << SubsetVec::vars(mask).str();
        for (const auto& f : ralt) std::cout << " | " << f.at(mask).str();
        std::cout << "\n";
    }
    return 0;
}

json prediction_to_json(const Prediction& pred) {
    json out;
    out["delta"] = rat_to_string(pred.delta);
    out["log_exponent"] = rat_to_string(pred.log_exponent);
    out["b_power"] = pred.b_power;
    out["mode"] = mode_name(pred.mode);
    out["constant"] = pred.constant;
    json per_f = json::array();
    for (const auto& c : pred.per_f) per_f.push_back({{"label", c.label}, {"value", c.value}});
    out["per_f"] = per_f;
    out["primes_bound"] = pred.primes_bound;
    out["error_estimate"] = pred.error_estimate;
    json gv = json::array();
    for (const auto& g : pred.gamma_values) gv.push_back(rat_to_string(g));
    out["gamma_values"] = gv;
    if (!pred.warnings.empty()) out["warnings"] = pred.warnings;
    return out;
}

int run_constant(const std::string& family_src, std::string mode_str, Int primes_bound,
                 bool chi4_accel, bool flip_section, const std::string& out_path) {
    MonomialConicFamily fam = load_family(family_src);
    FamilyMode mode = fam.mode;
    if (mode_str == "affine") mode = FamilyMode::affine;
    else if (mode_str == "projective") mode = FamilyMode::projective;
    else if (mode_str == "squarefree") mode = FamilyMode::squarefree;
    else if (!mode_str.empty()) throw CLI::ValidationError("--mode", "unknown mode " + mode_str);
    ConstantOptions opts;
    opts.primes_bound = primes_bound;
    opts.chi4_accel = chi4_accel;
    opts.section = flip_section ? SectionPolicy::flip_free_choices : SectionPolicy::canonical;
    Prediction pred = leading_constant(fam, mode, opts);
    write_out(out_path, prediction_to_json(pred).dump(2) + "\n");
    return 0;
}

json census_to_json(const CensusResult& res, bool stratify, bool timing, int n) {
    json out;
    out["family_digest"] = res.family_digest;
    out["mode"] = mode_name(res.mode);
    out["bound"] = res.bound;
    out["total"] = res.total;
    out["skipped_degenerate"] = res.skipped_degenerate;
    if (stratify) {
        json strata = json::object();
        for (const auto& [key, v] : res.per_stratum) strata[stratum_name(key, n)] = v;
        out["per_stratum"] = strata;
    }
    out["predicted"] = res.predicted;
    out["ratio"] = res.ratio;
    if (res.sampled) {
        out["seed"] = res.seed;
        out["samples"] = res.samples;
    }
    if (timing) out["wall_time_ms"] = res.wall_ms;
    return out;
}

int run_count(const std::string& family_src, Int bound, std::string mode_str, bool stratify,
              int threads, double sample_rate, std::uint64_t seed, const std::string& sweep_str,
              const std::string& out_path, bool no_timing, Int primes_bound) {
    CensusRequest req;
    req.family = load_family(family_src);
    req.mode = req.family.mode;
    if (mode_str == "affine") req.mode = FamilyMode::affine;
    else if (mode_str == "projective") req.mode = FamilyMode::projective;
    else if (mode_str == "squarefree") req.mode = FamilyMode::squarefree;
    else if (!mode_str.empty()) throw CLI::ValidationError("--mode", "unknown mode " + mode_str);
    req.bound = bound;
    req.stratify = stratify;
    req.threads = threads;
    req.sample_rate = sample_rate;
    req.seed = seed;
    req.primes_bound = primes_bound;

    const bool csv = out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv";
    if (!sweep_str.empty()) {
        std::vector<Int> sweep;
        std::stringstream ss(sweep_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) sweep.push_back(std::stoll(tok));
        auto rows = report(req, sweep);
        if (csv) {
            std::ostringstream os;
            os << "bound,observed,predicted,ratio\n";
            for (const auto& r : rows)
                os << r.bound << "," << r.observed << "," << r.predicted << "," << r.ratio << "\n";
            write_out(out_path, os.str());
        } else {
            json out = json::array();
            for (const auto& r : rows)
                out.push_back({{"bound", r.bound},
                               {"observed", r.observed},
                               {"predicted", r.predicted},
                               {"ratio", r.ratio}});
            write_out(out_path, out.dump(2) + "\n");
        }
        return 0;
    }

    CensusResult res = count(req);
    if (csv) {
        std::ostringstream os;
        os << "bound,observed,predicted,ratio\n"
           << res.bound << "," << res.total << "," << res.predicted << "," << res.ratio << "\n";
        write_out(out_path, os.str());
    } else {
        write_out(out_path,
                  census_to_json(res, stratify, !no_timing, req.family.n).dump(2) + "\n");
    }
    return 0;
}

int run_redei(Int bound, int threads, Int primes_bound, bool no_timing,
              const std::string& out_path) {
    RedeiResult res = redei_count(bound, threads, primes_bound);
    json out;
    out["bound"] = res.bound;
    out["total"] = res.total;
    json breakdown = json::object();
    for (const auto& [k, v] : res.by_one_mod8) breakdown[k.empty() ? "-" : k] = v;
    out["by_one_mod8"] = breakdown;
    out["predicted"] = res.predicted;
    out["ratio"] = res.ratio;
    if (!no_timing) out["wall_time_ms"] = res.wall_ms;
    write_out(out_path, out.dump(2) + "\n");
    return 0;
}

int run_verify(const std::string& suite) {
    std::vector<SuiteResult> results;
    if (suite == "reciprocity") results.push_back(verify_reciprocity());
    else if (suite == "lexpand") results.push_back(verify_lexpand());
    else if (suite == "blocking") results.push_back(verify_blocking());
    else if (suite == "lambda-sigma") results.push_back(verify_lambda_sigma());
    else if (suite == "meanvalue") results.push_back(verify_meanvalue());
    else if (suite == "all") results = verify_all();
    else throw CLI::ValidationError("--suite", "unknown suite " + suite);

    bool all_pass = true;
    for (const auto& r : results) {
        for (const auto& line : r.lines) std::cerr << "[" << r.name << "] " << line << "\n";
        std::cout << r.name << ": " << (r.pass ? "pass" : "FAIL") << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"census and predicted densities for conic-bundle families"};
    app.require_subcommand(1);

    std::string family_src, mode_str, out_path, sweep_str, suite = "all";
    Int bound = 100, primes_bound = 100000, census_primes = 10000;
    bool stratify = false, chi4_accel = false, flip_section = false, no_timing = false;
    int threads = 0;
    double sample_rate = 0;
    std::uint64_t seed = 1;

    auto* analyze = app.add_subcommand("analyze", "print residue and Brauer tables");
    analyze->add_option("--family", family_src, "builtin:NAME or a family file")->required();

    auto* constant = app.add_subcommand("constant", "predicted leading constant (JSON)");
    constant->add_option("--family", family_src)->required();
    constant->add_option("--mode", mode_str, "affine|projective|squarefree");
    constant->add_option("--primes-bound", primes_bound, "Euler product truncation");
    constant->add_flag("--chi4-accel", chi4_accel, "extract the chi_{-4} L-factor");
    constant->add_flag("--flip-section", flip_section, "flip the section's free choices");
    constant->add_option("--out", out_path);

    auto* cnt = app.add_subcommand("count", "census of everywhere-locally-soluble fibres");
    cnt->add_option("--family", family_src)->required();
    cnt->add_option("--bound", bound, "coordinate bound T")->required();
    cnt->add_option("--mode", mode_str);
    cnt->add_flag("--stratify", stratify, "tally per (s,u,lambda) stratum");
    cnt->add_option("--threads", threads, "worker count (default $CENSUS_THREADS)");
    cnt->add_option("--sample", sample_rate, "sampling rate for oversized boxes");
    cnt->add_option("--seed", seed, "PRNG seed for sampling");
    cnt->add_option("--sweep", sweep_str, "comma-separated bounds; emits report rows");
    cnt->add_option("--out", out_path, "output file (.json or .csv)");
    cnt->add_option("--primes-bound", census_primes, "truncation for the prediction");
    cnt->add_flag("--no-timing", no_timing, "omit wall time for golden output");

    auto* redei = app.add_subcommand("redei", "Redei census |S(B)| vs predicted main term");
    redei->add_option("--bound", bound, "coordinate bound B")->required();
    redei->add_option("--threads", threads);
    redei->add_option("--primes-bound", census_primes);
    redei->add_flag("--no-timing", no_timing);
    redei->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "run a named invariant suite");
    verify->add_option("--suite", suite,
                       "reciprocity|lexpand|blocking|lambda-sigma|meanvalue|all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(analyze)) return run_analyze(family_src);
        if (app.got_subcommand(constant))
            return run_constant(family_src, mode_str, primes_bound, chi4_accel, flip_section,
                                out_path);
        if (app.got_subcommand(cnt))
            return run_count(family_src, bound, mode_str, stratify, threads, sample_rate, seed,
                             sweep_str, out_path, no_timing, census_primes);
        if (app.got_subcommand(redei))
            return run_redei(bound, threads, census_primes, no_timing, out_path);
        if (app.got_subcommand(verify)) return run_verify(suite);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
