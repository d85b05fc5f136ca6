#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "redeilab/charsum.hpp"
#include "redeilab/classify.hpp"
#include "redeilab/fourier.hpp"
#include "redeilab/io.hpp"
#include "redeilab/sampling.hpp"

namespace redeilab::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitAssert = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct CommonOpts {
    u64 seed = 0;
    unsigned threads = 0;  // 0: take REDEILAB_THREADS, else 1
    std::string output;
    std::string format = "json";
    std::string mode = "assert";
    u64 budget = 1'000'000'000;

    unsigned effective_threads() const {
        if (threads > 0) return threads;
        if (const char* env = std::getenv("REDEILAB_THREADS")) {
            char* end = nullptr;
            unsigned long v = std::strtoul(env, &end, 10);
            if (end && *end == '\0' && v >= 1 && v <= 1024) return static_cast<unsigned>(v);
        }
        return 1;
    }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "PRNG seed, recorded in the report");
    cmd->add_option("--threads", c.threads, "Worker threads (default: REDEILAB_THREADS or 1)");
    cmd->add_option("--output", c.output, "Write the report to a file instead of stdout");
    cmd->add_option("--format", c.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--mode", c.mode, "assert: nonzero exit on violated theorems; report: never")
        ->check(CLI::IsMember({"assert", "report"}));
    cmd->add_option("--budget", c.budget, "Candidate budget for enumerations");
}

// Outcome of one subcommand before the envelope is attached.
struct CmdResult {
    json payload;
    std::vector<json> csv_rows;
    std::vector<std::string> violations;  // violated proven-for-all-p facts
};

std::string slope_str(const PrimeCtx& ctx, u64 slope) {
    return slope == slope_infinity(ctx) ? std::string("inf") : std::to_string(slope);
}

json coeff_array(const std::vector<u64>& v) {
    json a = json::array();
    for (u64 x : v) a.push_back(x);
    return a;
}

std::string join_u64(const std::vector<u64>& v, char sep = ';') {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += std::to_string(v[i]);
    }
    return s;
}

PrimeCtx make_ctx(u64 p) {
    try {
        return PrimeCtx(p);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("--p", e.what());
    }
}

struct Threshold {
    u64 num = 1;
    u64 den = 7;
    std::string text = "p/7";
};

Threshold parse_threshold(const std::string& text) {
    // Accepts "p", "p/7", "2p/9".
    Threshold t;
    t.text = text;
    std::string_view s = text;
    u64 num = 1;
    std::size_t i = 0;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        num = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            num = num * 10 + static_cast<u64>(s[i++] - '0');
    }
    if (i >= s.size() || s[i] != 'p') throw std::invalid_argument("malformed threshold: " + text);
    ++i;
    u64 den = 1;
    if (i < s.size()) {
        if (s[i] != '/') throw std::invalid_argument("malformed threshold: " + text);
        ++i;
        if (i >= s.size()) throw std::invalid_argument("malformed threshold: " + text);
        den = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            den = den * 10 + static_cast<u64>(s[i++] - '0');
        if (i != s.size() || den == 0) throw std::invalid_argument("malformed threshold: " + text);
    }
    t.num = num;
    t.den = den;
    return t;
}

std::vector<u64> parse_u64_list(const std::string& text) {
    std::vector<u64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("malformed list: " + text);
        out.push_back(std::stoull(item));
    }
    if (out.empty()) throw std::invalid_argument("malformed list: " + text);
    return out;
}

std::vector<u64> quadratic_residues(const PrimeCtx& ctx) {
    std::vector<u64> q;
    for (u64 x = 1; x < ctx.p(); ++x)
        if (ctx.legendre(x) == 1) q.push_back(x);
    return q;
}

std::vector<u64> parse_subset_file(const std::string& path, u64& p_out) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open subset file: " + path);
    std::vector<u64> subset;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view s = line;
        while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        if (s.empty() || s.front() == '#') continue;
        if (!have_header) {
            if (s.substr(0, 2) != "p=")
                throw std::invalid_argument("subset file line " + std::to_string(lineno) +
                                            ": expected header p=<prime>");
            p_out = std::stoull(std::string(s.substr(2)));
            have_header = true;
            continue;
        }
        subset.push_back(std::stoull(std::string(s)));
    }
    if (!have_header) throw std::invalid_argument("subset file: missing p=<prime> header");
    return subset;
}

// p_flag == 0 means --p was not given; the file header decides then.
ParsedPointSet load_point_file(u64 p_flag, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open point file: " + path);
    ParsedPointSet parsed = parse_point_file(in);
    if (p_flag != 0 && parsed.p != p_flag)
        throw std::invalid_argument("point file modulus differs from --p");
    return parsed;
}

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
    u64 p = 0;
    std::string strategy = "rootsets";
    bool scan_lower = false;
    u64 multiple = 1;
    u64 lc = 0;  // 0: unrestricted
};

CmdResult run_classify(const ClassifyArgs& a, const CommonOpts& c) {
    PrimeCtx ctx = make_ctx(a.p);
    ClassifyOptions opts;
    opts.strategy = a.strategy == "naive" ? Strategy::Naive : Strategy::Rootsets;
    opts.scan_lower_degrees = a.scan_lower;
    opts.range_sum_multiple = a.multiple;
    if (a.lc != 0) opts.lc_only = a.lc;
    opts.candidate_budget = c.budget;
    opts.threads = c.effective_threads();

    ClassificationResult res = opts.strategy == Strategy::Naive ? enumerate_naive(ctx, opts)
                                                                : enumerate_rootsets(ctx, opts);

    CmdResult out;
    out.payload["p"] = res.p;
    out.payload["strategy"] = strategy_name(res.strategy);
    out.payload["range_sum_target"] = res.range_sum_target;
    json orbits = json::array();
    for (const OrbitReport& orb : res.orbits) {
        json o;
        o["lc"] = orb.lc;
        o["roots"] = coeff_array(orb.roots);
        o["coeffs"] = coeff_array(orb.coeffs);
        o["poly"] = format_polynomial(Polynomial(ctx, orb.coeffs));
        o["family"] = family_name(orb.family);
        o["found_count"] = orb.found_count;
        if (orb.checks_ran) {
            json checks;
            checks["prop31"] = orb.distinct_roots_ok;
            checks["cor36"] = orb.residue_tallies_ok;
            checks["thm37"] = orb.lc_class_ok;
            checks["power_sum"] = orb.power_sum_ok;
            o["checks"] = checks;
            if (!orb.distinct_roots_ok) out.violations.push_back("orbit missing (p-1)/2 distinct roots");
            if (!orb.residue_tallies_ok) out.violations.push_back("residue profile tallies violated");
            if (!orb.power_sum_ok) out.violations.push_back("power-sum identity violated");
        }
        orbits.push_back(o);

        json row;
        row["p"] = res.p;
        row["strategy"] = strategy_name(res.strategy);
        row["lc"] = orb.lc;
        row["family"] = family_name(orb.family);
        row["coeffs"] = join_u64(orb.coeffs);
        row["roots"] = join_u64(orb.roots);
        row["found_count"] = orb.found_count;
        row["prop31"] = orb.checks_ran ? (orb.distinct_roots_ok ? 1 : 0) : -1;
        row["cor36"] = orb.checks_ran ? (orb.residue_tallies_ok ? 1 : 0) : -1;
        row["thm37"] = orb.checks_ran ? (orb.lc_class_ok ? 1 : 0) : -1;
        row["power_sum"] = orb.checks_ran ? (orb.power_sum_ok ? 1 : 0) : -1;
        out.csv_rows.push_back(row);
    }
    out.payload["orbits"] = orbits;
    out.payload["other_count"] = res.other_count;
    out.payload["candidates_scanned"] = res.candidates_scanned;
    out.payload["survivor_count"] = res.survivor_count;
    if (res.scanned_lower_degrees) {
        out.payload["lower_degree_survivors"] = res.lower_degree_survivors;
        if (res.lower_degree_survivors != 0 && a.multiple == 1)
            out.violations.push_back("non-constant survivor of degree below (p-1)/2");
    }
    return out;
}

// ---------------------------------------------------------------- charsum

json paley_json(const PaleyTable& t) {
    json j;
    j["pp"] = t.counts[0][0];
    j["pm"] = t.counts[0][1];
    j["mp"] = t.counts[1][0];
    j["mm"] = t.counts[1][1];
    return j;
}

CmdResult run_paley(u64 p, const std::string& gamma_class) {
    PrimeCtx ctx = make_ctx(p);
    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "paley";
    json tables = json::array();
    for (int cls : {1, -1}) {
        if (gamma_class == "qr" && cls != 1) continue;
        if (gamma_class == "qnr" && cls != -1) continue;
        PaleyTable brute = paley_table(ctx, cls);
        PaleyTable closed = paley_closed_form(p, cls);
        bool match = brute == closed;
        json t;
        t["gamma_class"] = cls == 1 ? "qr" : "qnr";
        t["gamma"] = brute.gamma;
        t["counts"] = paley_json(brute);
        t["closed_form"] = paley_json(closed);
        t["matches_closed_form"] = match;
        tables.push_back(t);
        if (!match) out.violations.push_back("paley counts differ from closed form");

        json row;
        row["p"] = p;
        row["gamma_class"] = cls == 1 ? "qr" : "qnr";
        row["pp"] = brute.counts[0][0];
        row["pm"] = brute.counts[0][1];
        row["mp"] = brute.counts[1][0];
        row["mm"] = brute.counts[1][1];
        row["matches_closed_form"] = match ? 1 : 0;
        out.csv_rows.push_back(row);
    }
    out.payload["tables"] = tables;
    return out;
}

CmdResult run_weil(u64 p, const std::vector<u64>& shifts) {
    PrimeCtx ctx = make_ctx(p);
    SignPatternReport rep = weil_sign_patterns(ctx, shifts);
    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "weil";
    out.payload["m"] = rep.m;
    out.payload["shifts"] = coeff_array({shifts.begin(), shifts.end()});
    out.payload["bound_value"] = rep.bound_value;
    json patterns = json::array();
    for (u64 v = 0; v < rep.counts.size(); ++v) {
        std::string sv;
        for (u64 i = 0; i < rep.m; ++i) sv += (v >> i) & 1 ? '+' : '-';
        json e;
        e["v"] = sv;
        e["count"] = rep.counts[v];
        e["bound_ok"] = static_cast<bool>(rep.bound_ok[v]);
        patterns.push_back(e);
        json row;
        row["p"] = p;
        row["v"] = sv;
        row["count"] = rep.counts[v];
        row["bound_ok"] = rep.bound_ok[v] ? 1 : 0;
        out.csv_rows.push_back(row);
    }
    out.payload["patterns"] = patterns;
    out.payload["all_bounds_hold"] = rep.all_bounds_hold;
    if (!rep.all_bounds_hold) out.violations.push_back("sign-pattern count bound violated");
    return out;
}

CmdResult run_cells(u64 p, const std::vector<u64>& shifts) {
    PrimeCtx ctx = make_ctx(p);
    CellSizeReport rep = translate_cell_sizes(ctx, shifts);
    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "cells";
    out.payload["t"] = rep.t;
    out.payload["shifts"] = coeff_array({shifts.begin(), shifts.end()});
    out.payload["bound_value"] = rep.bound_value;
    json sizes = json::array();
    for (u64 mask = 0; mask < rep.sizes.size(); ++mask) {
        json e;
        std::string sm;
        for (u64 i = 0; i < rep.t; ++i) sm += (mask >> i) & 1 ? '1' : '0';
        e["cell"] = sm;
        e["size"] = rep.sizes[mask];
        e["bound_ok"] = static_cast<bool>(rep.bound_ok[mask]);
        sizes.push_back(e);
        json row;
        row["p"] = p;
        row["cell"] = sm;
        row["size"] = rep.sizes[mask];
        row["bound_ok"] = rep.bound_ok[mask] ? 1 : 0;
        out.csv_rows.push_back(row);
    }
    out.payload["cells"] = sizes;
    out.payload["all_bounds_hold"] = rep.all_bounds_hold;
    if (!rep.all_bounds_hold) out.violations.push_back("translate cell bound violated");
    return out;
}

json minint_json(const MinIntersectionReport& rep) {
    json j;
    j["t"] = rep.t;
    j["rhat"] = rep.r_hat;
    j["lhs"] = rep.lhs;
    j["argmin"] = rep.argmin;
    j["rhs_numerator"] = rep.rhs_numerator;
    j["rhs"] = rep.rhs;
    j["holds"] = rep.holds;
    j["proviso_lhs"] = rep.proviso_lhs;
    j["b_size"] = rep.b_size;
    j["union_sizes"] = coeff_array(rep.union_sizes);
    return j;
}

CmdResult run_minint(u64 p, u64 t, u64 rhat, const std::vector<u64>& shifts_opt, u64 random_n,
                     const CommonOpts& c) {
    PrimeCtx ctx = make_ctx(p);
    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "minint";
    std::mt19937_64 rng(c.seed);

    if (random_n == 0) {
        std::vector<u64> shifts = shifts_opt;
        if (shifts.empty())
            for (u64 i = 0; i < t; ++i) shifts.push_back(i);
        std::vector<u64> q = quadratic_residues(ctx);
        std::vector<std::vector<u64>> sets;
        for (u64 r : shifts) {
            std::vector<u64> a;
            a.reserve(q.size());
            for (u64 x : q) a.push_back(ctx.add(x, r % p));
            sets.push_back(std::move(a));
        }
        MinIntersectionReport rep = min_intersection_bound(sets, q, rhat);
        out.payload["instance"] = "qr-translates";
        out.payload["shifts"] = coeff_array(shifts);
        out.payload.update(minint_json(rep));
        out.payload["qr_translate_proviso_bound_holds"] = qr_translate_proviso_bound_holds(p);
        if (!rep.holds) out.violations.push_back("min-intersection bound violated");
        json row = minint_json(rep);
        row["p"] = p;
        out.csv_rows.push_back(row);
    } else {
        json instances = json::array();
        bool all_hold = true;
        for (u64 i = 0; i < random_n; ++i) {
            // resample until the proviso holds
            for (int attempt = 0;; ++attempt) {
                if (attempt > 1000)
                    throw std::invalid_argument("minint: could not sample an instance satisfying the proviso");
                std::vector<std::vector<u64>> sets;
                for (u64 j = 0; j < t; ++j)
                    sets.push_back(sample_subset(rng, p, p / 4 + uniform_below(rng, p / 2)));
                std::vector<u64> b = sample_subset(rng, p, p / 4 + uniform_below(rng, p / 2));
                try {
                    MinIntersectionReport rep = min_intersection_bound(sets, b, rhat);
                    instances.push_back(minint_json(rep));
                    if (!rep.holds) all_hold = false;
                    json row = minint_json(rep);
                    row["p"] = p;
                    row["instance"] = i;
                    out.csv_rows.push_back(row);
                    break;
                } catch (const std::invalid_argument&) {
                    continue;  // proviso failed; resample
                }
            }
        }
        out.payload["instance"] = "random";
        out.payload["instances"] = instances;
        out.payload["all_hold"] = all_hold;
        if (!all_hold) out.violations.push_back("min-intersection bound violated");
    }
    return out;
}

CmdResult run_scan(u64 p, const std::string& subset_spec, const std::string& threshold_text,
                   const CommonOpts& c) {
    PrimeCtx ctx = make_ctx(p);
    Threshold thr = parse_threshold(threshold_text);
    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "concentration_scan";
    out.payload["threshold"] = thr.text;
    out.payload["subset"] = subset_spec;
    const bool asserted = p > 7408848;
    unsigned threads = c.effective_threads();

    auto scan_one = [&](std::span<const u64> subset) {
        return concentration_scan(ctx, subset, thr.num, thr.den, threads);
    };

    if (subset_spec == "qr") {
        ConcentrationReport rep = scan_one(quadratic_residues(ctx));
        out.payload["count"] = rep.count;
        out.payload["witnesses"] = coeff_array(rep.witnesses);
        out.payload["asserted"] = asserted;
        if (asserted && rep.count > 16) out.violations.push_back("concentration count above 16");
        json row;
        row["p"] = p;
        row["subset"] = "qr";
        row["count"] = rep.count;
        row["witnesses"] = join_u64(rep.witnesses);
        out.csv_rows.push_back(row);
    } else if (subset_spec.rfind("random:", 0) == 0) {
        u64 n = std::stoull(subset_spec.substr(7));
        std::mt19937_64 rng(c.seed);
        json runs = json::array();
        u64 max_count = 0;
        for (u64 i = 0; i < n; ++i) {
            std::vector<u64> subset = sample_subset(rng, p, ctx.half());
            ConcentrationReport rep = scan_one(subset);
            json r;
            r["count"] = rep.count;
            r["witnesses"] = coeff_array(rep.witnesses);
            runs.push_back(r);
            max_count = std::max(max_count, rep.count);
            if (asserted && rep.count > 16) out.violations.push_back("concentration count above 16");
            json row;
            row["p"] = p;
            row["subset"] = "random";
            row["instance"] = i;
            row["count"] = rep.count;
            row["witnesses"] = join_u64(rep.witnesses);
            out.csv_rows.push_back(row);
        }
        out.payload["runs"] = runs;
        out.payload["max_count"] = max_count;
        out.payload["asserted"] = asserted;
    } else if (subset_spec.rfind("file:", 0) == 0) {
        u64 file_p = 0;
        std::vector<u64> subset = parse_subset_file(subset_spec.substr(5), file_p);
        if (file_p != p) throw std::invalid_argument("subset file modulus differs from --p");
        ConcentrationReport rep = scan_one(subset);
        out.payload["count"] = rep.count;
        out.payload["witnesses"] = coeff_array(rep.witnesses);
        out.payload["asserted"] = asserted;
        if (asserted && rep.count > 16) out.violations.push_back("concentration count above 16");
        json row;
        row["p"] = p;
        row["subset"] = "file";
        row["count"] = rep.count;
        row["witnesses"] = join_u64(rep.witnesses);
        out.csv_rows.push_back(row);
    } else {
        throw std::invalid_argument("subset must be qr, random:N or file:PATH");
    }
    return out;
}

// ---------------------------------------------------------------- directions

json census_json(const CensusReport& census) {
    json j;
    j["constants"] = census.constants;
    j["family_i"] = census.family_i;
    j["family_ii"] = census.family_ii;
    j["other"] = census.other;
    j["expected_constants"] = census.expected_constants;
    j["expected_family_i"] = census.expected_family_i;
    j["expected_family_ii"] = census.expected_family_ii;
    j["alt_expected_constants"] = census.alt_expected_constants;
    j["matches_expected"] = census.matches_expected;
    j["matches_alt"] = census.matches_alt;
    return j;
}

void add_slope_rows(CmdResult& out, const PrimeCtx& ctx, const CensusReport& census) {
    json slopes = json::array();
    for (const SlopeCensusEntry& e : census.entries) {
        json s;
        s["slope"] = slope_str(ctx, e.slope);
        s["determined"] = e.determined;
        s["class"] = slope_class_name(e.cls);
        s["degree"] = e.degree;
        s["lc"] = e.lc;
        slopes.push_back(s);
        json row;
        row["p"] = ctx.p();
        row["slope"] = slope_str(ctx, e.slope);
        row["determined"] = e.determined ? 1 : 0;
        row["class"] = slope_class_name(e.cls);
        row["degree"] = e.degree;
        row["lc"] = e.lc;
        out.csv_rows.push_back(row);
    }
    out.payload["slopes"] = slopes;
}

CmdResult run_directions_analyze(u64 p_flag, const std::string& points_path) {
    ParsedPointSet parsed = load_point_file(p_flag, points_path);
    const u64 p = parsed.p;
    PrimeCtx ctx = make_ctx(p);
    PointSet S(ctx, std::move(parsed.points));
    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "analyze";
    out.payload["size"] = S.size();
    std::vector<u64> dirs = direction_set(S);
    json dj = json::array();
    for (u64 d : dirs) dj.push_back(slope_str(ctx, d));
    out.payload["directions"] = dj;
    out.payload["direction_count"] = dirs.size();
    out.payload["collinear"] = collinear(S);
    if (S.size() == p) {
        CensusReport census = slope_census(S);
        out.payload["census"] = census_json(census);
        DirectionDegreeReport deg = direction_degree_check(S);
        out.payload["degree_bound_holds"] = deg.holds;
        out.payload["tightest_slope"] = slope_str(ctx, deg.tightest_slope);
        out.payload["tightest_degree"] = deg.tightest_degree;
        if (!deg.holds) out.violations.push_back("direction count below degree + 2");
        if (!collinear(S) && dirs.size() < (p + 3) / 2)
            out.violations.push_back("non-collinear p-set with fewer than (p+3)/2 directions");
        add_slope_rows(out, ctx, census);
    }
    return out;
}

CmdResult run_directions_ls(u64 p) {
    PrimeCtx ctx = make_ctx(p);
    PointSet L = ls_set(ctx);
    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "ls";
    out.payload["size"] = L.size();
    std::vector<u64> dirs = direction_set(L);
    out.payload["direction_count"] = dirs.size();
    out.payload["expected_direction_count"] = (p + 3) / 2;
    CensusReport census = slope_census(L);
    out.payload["census"] = census_json(census);
    DirectionDegreeReport deg = direction_degree_check(L);
    out.payload["degree_bound_holds"] = deg.holds;
    if (L.size() != p) out.violations.push_back("ls set cardinality differs from p");
    if (dirs.size() != (p + 3) / 2) out.violations.push_back("ls set direction count differs from (p+3)/2");
    if (!deg.holds) out.violations.push_back("direction count below degree + 2");
    if (p >= 5 && !census.matches_expected) out.violations.push_back("ls census differs from expected profile");
    add_slope_rows(out, ctx, census);
    return out;
}

CmdResult run_directions_census(u64 p) {
    PrimeCtx ctx = make_ctx(p);
    CensusReport census = ls_profile_census(ctx);
    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "census";
    out.payload["direction_count"] = census.direction_count;
    out.payload["census"] = census_json(census);
    if (p >= 5 && !census.matches_expected) out.violations.push_back("ls census differs from expected profile");
    add_slope_rows(out, ctx, census);
    return out;
}

CmdResult run_directions_check(u64 p, u64 random_n, const CommonOpts& c) {
    PrimeCtx ctx = make_ctx(p);
    if (random_n == 0) throw std::invalid_argument("directions check: need --random N with N >= 1");
    std::mt19937_64 rng(c.seed);
    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "check";
    out.payload["instances"] = random_n;
    u64 pass = 0;
    std::size_t min_dirs = SIZE_MAX;
    for (u64 i = 0; i < random_n; ++i) {
        PointSet S = sample_noncollinear_pointset(rng, ctx);
        DirectionDegreeReport deg = direction_degree_check(S);
        bool megyesi = deg.direction_count >= (p + 3) / 2;
        if (deg.holds && megyesi) ++pass;
        min_dirs = std::min(min_dirs, deg.direction_count);
        json row;
        row["p"] = p;
        row["instance"] = i;
        row["direction_count"] = deg.direction_count;
        row["degree_bound_holds"] = deg.holds ? 1 : 0;
        row["megyesi_holds"] = megyesi ? 1 : 0;
        out.csv_rows.push_back(row);
        if (!deg.holds) out.violations.push_back("direction count below degree + 2");
        if (!megyesi) out.violations.push_back("non-collinear p-set with fewer than (p+3)/2 directions");
    }
    out.payload["passed"] = pass;
    out.payload["min_direction_count"] = min_dirs;
    return out;
}

// ---------------------------------------------------------------- fourier

CmdResult run_fourier(u64 p_flag, bool use_ls, const std::string& points_path) {
    u64 p = p_flag;
    std::optional<ParsedPointSet> parsed;
    if (!use_ls) {
        if (points_path.empty()) throw std::invalid_argument("fourier: need --ls or --points FILE");
        parsed = load_point_file(p_flag, points_path);
        p = parsed->p;
    } else if (p_flag == 0) {
        throw std::invalid_argument("fourier: --ls needs --p");
    }
    PrimeCtx ctx = make_ctx(p);
    PointSet S = use_ls ? ls_set(ctx) : PointSet(ctx, std::move(parsed->points));
    SpectrumReport spec = spectrum(S);
    MagnitudeLawReport laws = magnitude_law_check(S);

    CmdResult out;
    out.payload["p"] = p;
    out.payload["op"] = "fourier";
    out.payload["size"] = S.size();
    out.payload["plancherel_residual"] = spec.plancherel_residual;
    out.payload["trivial_p_mag"] = spec.trivial_p_mag;
    out.payload["m_count"] = spec.m_count;

    std::vector<u64> dirs = direction_set(S);
    out.payload["direction_count"] = dirs.size();
    bool plancherel_ok = spec.plancherel_residual < 1e-8 * double(p);
    out.payload["plancherel_ok"] = plancherel_ok;
    if (!plancherel_ok) out.violations.push_back("plancherel residual above tolerance");
    if (!laws.all_classified_pass) out.violations.push_back("per-direction magnitude law violated");

    if (dirs.size() == (p + 3) / 2) {
        DirectionGapReport gap = direction_gap_count(S);
        out.payload["gap"] = gap.gap;
        out.payload["gap_asserted"] = gap.asserted && laws.unclassified == 0;
        if (gap.asserted && laws.unclassified == 0 && !gap.holds)
            out.violations.push_back("direction gap differs from 2");
    }

    json directions = json::array();
    for (std::size_t i = 0; i < spec.directions.size(); ++i) {
        const DirectionSpectrum& d = spec.directions[i];
        const DirectionVerdict& v = laws.verdicts[i];
        json e;
        e["slope"] = slope_str(ctx, d.slope);
        e["class"] = magnitude_law_name(v.law);
        e["p_mag"] = d.p_mag;
        e["poly_lc"] = d.lc;
        e["degree"] = d.degree;
        e["p_mag_spread"] = d.p_mag_spread;
        e["law_pass"] = v.pass;
        directions.push_back(e);
        json row;
        row["p"] = p;
        row["slope"] = slope_str(ctx, d.slope);
        row["class"] = magnitude_law_name(v.law);
        row["p_mag"] = d.p_mag;
        row["poly_lc"] = d.lc;
        row["law_pass"] = v.pass ? 1 : 0;
        out.csv_rows.push_back(row);
    }
    out.payload["directions"] = directions;
    return out;
}

// ---------------------------------------------------------------- emission

void write_csv(std::ostream& os, const json& envelope, const std::vector<json>& rows) {
    os << "# tool=redeilab version=" << kVersion;
    for (auto& [k, v] : envelope.items()) {
        if (k == "tool" || k == "version") continue;
        if (v.is_object() || v.is_array()) continue;
        os << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    }
    os << "\n";
    if (rows.empty()) return;
    bool first = true;
    for (auto& [k, v] : rows.front().items()) {
        (void)v;
        os << (first ? "" : ",") << k;
        first = false;
    }
    os << "\n";
    for (const json& row : rows) {
        first = true;
        for (auto& [k, v] : row.items()) {
            (void)k;
            std::string s = v.is_string() ? v.get<std::string>() : v.dump();
            if (s.find(',') != std::string::npos || s.find('"') != std::string::npos) {
                std::string quoted = "\"";
                for (char ch : s) {
                    if (ch == '"') quoted += '"';
                    quoted += ch;
                }
                quoted += '"';
                s = quoted;
            }
            os << (first ? "" : ",") << s;
            first = false;
        }
        os << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact-arithmetic toolkit for range-sum polynomials over F_p, "
                 "direction sets in AG(2,p), Legendre character sums and discrete "
                 "Fourier analysis"};
    app.set_version_flag("--version", std::string("redeilab ") + kVersion);
    app.require_subcommand(1);

    CommonOpts common;
    ClassifyArgs cls;
    u64 p = 0;
    std::string gamma_class = "both";
    std::string shifts_text;
    std::string subset_spec = "qr";
    std::string threshold_text = "p/7";
    std::string points_path;
    u64 minint_t = 8, minint_rhat = 5, random_n = 0;
    bool use_ls = false;

    auto* c_classify = app.add_subcommand("classify", "Classify all degree-(p-1)/2 polynomials with range sum p");
    c_classify->add_option("--p", cls.p, "odd prime modulus")->required();
    c_classify->add_option("--strategy", cls.strategy, "naive or rootsets")
        ->check(CLI::IsMember({"naive", "rootsets"}));
    c_classify->add_flag("--scan-lower-degrees", cls.scan_lower,
                         "naive only: also scan degrees below (p-1)/2");
    c_classify->add_option("--range-sum-multiple", cls.multiple,
                           "scan for range sum k*p instead of p (naive only)");
    c_classify->add_option("--lc", cls.lc, "rootsets only: single leading coefficient in [1,(p-1)/2]");
    add_common(c_classify, common);

    auto* c_charsum = app.add_subcommand("charsum", "Legendre character-sum machinery");
    c_charsum->require_subcommand(1);
    auto* c_paley = c_charsum->add_subcommand("paley", "Joint square-status counts of a and a+gamma");
    c_paley->add_option("--p", p, "odd prime modulus")->required();
    c_paley->add_option("--gamma-class", gamma_class, "qr, qnr or both")
        ->check(CLI::IsMember({"qr", "qnr", "both"}));
    add_common(c_paley, common);
    auto* c_weil = c_charsum->add_subcommand("weil", "Sign-pattern counts over shifted arguments");
    c_weil->add_option("--p", p, "odd prime modulus")->required();
    c_weil->add_option("--shifts", shifts_text, "comma-separated distinct shifts")->required();
    add_common(c_weil, common);
    auto* c_cells = c_charsum->add_subcommand("cells", "Venn cell sizes of translated square sets");
    c_cells->add_option("--p", p, "odd prime modulus")->required();
    c_cells->add_option("--shifts", shifts_text, "comma-separated distinct shifts")->required();
    add_common(c_cells, common);
    auto* c_minint = c_charsum->add_subcommand("minint", "Minimum-intersection bound over a set system");
    c_minint->add_option("--p", p, "odd prime modulus")->required();
    c_minint->add_option("--t", minint_t, "number of sets (structured: QR translates by 0..t-1)");
    c_minint->add_option("--rhat", minint_rhat, "depth threshold r-hat");
    c_minint->add_option("--shifts", shifts_text, "structured instance shifts (default 0..t-1)");
    c_minint->add_option("--random", random_n, "run N random instances instead");
    add_common(c_minint, common);
    auto* c_scan = c_charsum->add_subcommand("scan", "Count shifts with a large Legendre sum");
    c_scan->add_option("--p", p, "odd prime modulus")->required();
    c_scan->add_option("--subset", subset_spec, "qr, random:N or file:PATH");
    c_scan->add_option("--threshold", threshold_text, "threshold as a multiple of p, e.g. p/7");
    add_common(c_scan, common);

    auto* c_dirs = app.add_subcommand("directions", "Direction sets and projection polynomials in AG(2,p)");
    c_dirs->require_subcommand(1);
    auto* c_analyze = c_dirs->add_subcommand("analyze", "Analyze a point set from a file");
    c_analyze->add_option("--p", p, "odd prime modulus (default: the file header)");
    c_analyze->add_option("--points", points_path, "point file")->required();
    add_common(c_analyze, common);
    auto* c_ls = c_dirs->add_subcommand("ls", "Build and verify the two-axes square construction");
    c_ls->add_option("--p", p, "odd prime modulus")->required();
    add_common(c_ls, common);
    auto* c_census = c_dirs->add_subcommand("census", "Slope classification census of the construction");
    c_census->add_option("--p", p, "odd prime modulus")->required();
    add_common(c_census, common);
    auto* c_check = c_dirs->add_subcommand("check", "Random non-collinear p-sets against the bounds");
    c_check->add_option("--p", p, "odd prime modulus")->required();
    c_check->add_option("--random", random_n, "number of random instances")->required();
    add_common(c_check, common);

    auto* c_fourier = app.add_subcommand("fourier", "Spectrum of a p-point set over F_p^2");
    c_fourier->add_option("--p", p, "odd prime modulus (default for --points: the file header)");
    c_fourier->add_flag("--ls", use_ls, "use the built-in construction");
    c_fourier->add_option("--points", points_path, "point file");
    add_common(c_fourier, common);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    auto t0 = std::chrono::steady_clock::now();
    CmdResult result;
    std::string command;
    try {
        if (c_classify->parsed()) {
            command = "classify";
            result = run_classify(cls, common);
        } else if (c_charsum->parsed()) {
            if (c_paley->parsed()) {
                command = "charsum paley";
                result = run_paley(p, gamma_class);
            } else if (c_weil->parsed()) {
                command = "charsum weil";
                result = run_weil(p, parse_u64_list(shifts_text));
            } else if (c_cells->parsed()) {
                command = "charsum cells";
                result = run_cells(p, parse_u64_list(shifts_text));
            } else if (c_minint->parsed()) {
                command = "charsum minint";
                std::vector<u64> shifts;
                if (!shifts_text.empty()) shifts = parse_u64_list(shifts_text);
                result = run_minint(p, minint_t, minint_rhat, shifts, random_n, common);
            } else {
                command = "charsum scan";
                result = run_scan(p, subset_spec, threshold_text, common);
            }
        } else if (c_dirs->parsed()) {
            if (c_analyze->parsed()) {
                command = "directions analyze";
                result = run_directions_analyze(p, points_path);
            } else if (c_ls->parsed()) {
                command = "directions ls";
                result = run_directions_ls(p);
            } else if (c_census->parsed()) {
                command = "directions census";
                result = run_directions_census(p);
            } else {
                command = "directions check";
                result = run_directions_check(p, random_n, common);
            }
        } else if (c_fourier->parsed()) {
            command = "fourier";
            result = run_fourier(p, use_ls, points_path);
        }
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    json envelope;
    envelope["tool"] = "redeilab";
    envelope["version"] = kVersion;
    envelope["command"] = command;
    json config;
    config["mode"] = common.mode;
    config["format"] = common.format;
    config["threads"] = common.effective_threads();
    config["budget"] = common.budget;
    envelope["config"] = config;
    envelope["seed"] = common.seed;
    envelope["ms"] = ms;
    envelope["asserted_ok"] = result.violations.empty();
    json violations = json::array();
    for (const std::string& v : result.violations) violations.push_back(v);
    envelope["violations"] = violations;
    envelope.update(result.payload);

    std::ofstream file_out;
    std::ostream* os = &out;
    if (!common.output.empty()) {
        file_out.open(common.output);
        if (!file_out) {
            err << "usage error: cannot open output file " << common.output << "\n";
            return kExitUsage;
        }
        os = &file_out;
    }
    if (common.format == "csv")
        write_csv(*os, envelope, result.csv_rows);
    else
        *os << envelope.dump(2) << "\n";

    if (common.mode == "assert" && !result.violations.empty()) {
        for (const std::string& v : result.violations) err << "assertion failed: " << v << "\n";
        return kExitAssert;
    }
    return kExitOk;
}

}  // namespace redeilab::cli
