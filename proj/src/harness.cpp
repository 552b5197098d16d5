#include "julpot/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace julpot {

namespace {

using nlohmann::json;

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

cplx parse_cplx(const json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw ConfigError("expected number or [re, im] at " + where);
}

json dump_cplx(cplx z) { return json::array({z.real(), z.imag()}); }

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok) throw ConfigError("unknown field '" + it.key() + "' in " + where);
    }
}

}  // namespace

AnalyticReference SetSpec::to_reference() const {
    if (kind == "circle") return Circle{center, radius};
    if (kind == "disc") return Disc{center, radius};
    if (kind == "segment") return Segment{a, b};
    if (kind == "ellipse") return Ellipse{center, semi_x, semi_y};
    throw ConfigError("unknown set kind '" + kind + "'");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    check_keys(j,
               {"experiment", "family", "set", "n_list", "resolution", "max_iter", "depth",
                "samples", "mode", "moments", "probes", "epsilon", "thresholds", "out_dir",
                "seed", "poly"},
               "config");
    ExperimentConfig cfg;
    if (j.contains("experiment")) cfg.experiment = j.at("experiment").get<std::string>();
    if (j.contains("family")) {
        const json& f = j.at("family");
        check_keys(f, {"name", "c", "bound", "seed"}, "config.family");
        if (f.contains("name")) cfg.family.name = f.at("name").get<std::string>();
        if (f.contains("c")) cfg.family.c = parse_cplx(f.at("c"), "config.family.c");
        if (f.contains("bound")) cfg.family.bound = f.at("bound").get<double>();
        if (f.contains("seed")) cfg.family.seed = f.at("seed").get<uint64_t>();
    }
    if (j.contains("set")) {
        const json& s = j.at("set");
        check_keys(s, {"kind", "center", "radius", "a", "b", "semi_x", "semi_y"}, "config.set");
        if (s.contains("kind")) cfg.set.kind = s.at("kind").get<std::string>();
        if (s.contains("center")) cfg.set.center = parse_cplx(s.at("center"), "config.set.center");
        if (s.contains("radius")) cfg.set.radius = s.at("radius").get<double>();
        if (s.contains("a")) cfg.set.a = parse_cplx(s.at("a"), "config.set.a");
        if (s.contains("b")) cfg.set.b = parse_cplx(s.at("b"), "config.set.b");
        if (s.contains("semi_x")) cfg.set.semi_x = s.at("semi_x").get<double>();
        if (s.contains("semi_y")) cfg.set.semi_y = s.at("semi_y").get<double>();
    }
    if (j.contains("n_list")) cfg.n_list = j.at("n_list").get<std::vector<int>>();
    if (j.contains("resolution")) cfg.resolution = j.at("resolution").get<int>();
    if (j.contains("max_iter")) cfg.max_iter = j.at("max_iter").get<int>();
    if (j.contains("depth")) cfg.depth = j.at("depth").get<int>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
    if (j.contains("mode")) cfg.mode = j.at("mode").get<std::string>();
    if (j.contains("moments")) cfg.moments = j.at("moments").get<int>();
    if (j.contains("probes"))
        for (const auto& p : j.at("probes")) cfg.probes.push_back(parse_cplx(p, "config.probes"));
    if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
    if (j.contains("thresholds")) {
        const json& t = j.at("thresholds");
        check_keys(t, {"discrepancy", "hausdorff"}, "config.thresholds");
        if (t.contains("discrepancy"))
            cfg.threshold_discrepancy = t.at("discrepancy").get<double>();
        if (t.contains("hausdorff")) cfg.threshold_hausdorff = t.at("hausdorff").get<double>();
    }
    if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<uint64_t>();
    if (j.contains("poly")) cfg.poly_json = j.at("poly").dump();
    if (cfg.n_list.empty()) throw ConfigError("n_list must be nonempty");
    for (size_t i = 1; i < cfg.n_list.size(); ++i)
        if (cfg.n_list[i] <= cfg.n_list[i - 1])
            throw ConfigError("n_list must be strictly increasing");
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open config: " + path);
    json j = json::parse(in);
    return from_json(j);
}

json ExperimentConfig::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["family"] = {{"name", family.name}, {"c", dump_cplx(family.c)},
                   {"bound", family.bound}, {"seed", family.seed}};
    j["set"] = {{"kind", set.kind},     {"center", dump_cplx(set.center)},
                {"radius", set.radius}, {"a", dump_cplx(set.a)},
                {"b", dump_cplx(set.b)}, {"semi_x", set.semi_x},
                {"semi_y", set.semi_y}};
    j["n_list"] = n_list;
    j["resolution"] = resolution;
    j["max_iter"] = max_iter;
    j["depth"] = depth;
    j["samples"] = samples;
    j["mode"] = mode;
    j["moments"] = moments;
    json pr = json::array();
    for (cplx p : probes) pr.push_back(dump_cplx(p));
    j["probes"] = pr;
    j["epsilon"] = epsilon;
    j["thresholds"] = {{"discrepancy", threshold_discrepancy}, {"hausdorff", threshold_hausdorff}};
    j["out_dir"] = out_dir;
    j["seed"] = seed;
    if (!poly_json.empty()) j["poly"] = json::parse(poly_json);
    return j;
}

ExperimentConfig default_config(const std::string& experiment) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    if (experiment == "thm-brolin") {
        cfg.n_list = {4, 8, 16};
    } else if (experiment == "lemma31") {
        cfg.family.name = "chebyshev";
        cfg.set.kind = "segment";
        cfg.n_list = {4, 8, 16, 32, 64};
    } else if (experiment == "limitsets") {
        cfg.family.c = {2.0, 0.0};
    } else if (experiment == "render") {
        cfg.poly_json = "[[-2.0,0.0],[0.0,0.0],[1.0,0.0]]";
    }
    return cfg;
}

PolynomialFamily family_from_config(const ExperimentConfig& cfg) {
    const std::string& name = cfg.family.name;
    if (name == "power_plus_c" || name == "scaled_power" || name == "split_zero" ||
        name == "bounded_coeffs") {
        FamilyParams p;
        p.c = cfg.family.c;
        p.bound = cfg.family.bound;
        p.seed = cfg.family.seed ? cfg.family.seed : cfg.seed;
        return family_builtin(name, p);
    }
    AnalyticReference ref = cfg.set.to_reference();
    if (name == "chebyshev") {
        const Segment* seg = std::get_if<Segment>(&ref);
        if (!seg) throw ConfigError("chebyshev family needs a segment set");
        return family_chebyshev(*seg);
    }
    if (name == "leja") return family_leja(ref);
    if (name == "faber") return family_faber(ref);
    if (name == "orthonormal") return family_orthonormal(ref);
    throw UnknownFamily("family_from_config: unknown family '" + name + "'");
}

namespace {

// filled hull of the family's reference set (circles fill to discs)
AnalyticReference hull_reference(const CompactSetModel& e) {
    const AnalyticReference* r = e.analytic();
    if (!r) throw Error("experiment needs an analytic reference set");
    if (auto* c = std::get_if<Circle>(r)) return Disc{c->center, c->radius};
    return *r;
}

int auto_depth(int degree, int target_leaves) {
    int depth = 1;
    double leaves = degree;
    while (leaves < target_leaves) {
        leaves *= degree;
        ++depth;
    }
    return depth;
}

DiscreteMeasure reference_equilibrium(const CompactSetModel& e) {
    if (const AnalyticReference* r = e.analytic()) return default_quadrature(*r, 4096);
    return equilibrium_estimate(e, 256);
}

struct RowTimer {
    double t0 = now_seconds();
    double lap() {
        double t = now_seconds();
        double dt = t - t0;
        t0 = t;
        return dt;
    }
};

}  // namespace

ExperimentResult run_thm_brolin(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"moment_discrepancy", "potential_discrepancy"};
    PolynomialFamily fam = family_from_config(cfg);
    DiscreteMeasure ref = reference_equilibrium(fam.reference_set);

    // boundedness precheck; Example-3.8-style families warn but still run
    bool bounded_ok = true;
    try {
        for (const auto& row : zero_location_check(fam, 1.0, cfg.n_list))
            bounded_ok = bounded_ok && row.pass;
    } catch (const Error&) {
        bounded_ok = false;
    }
    res.verdicts["zero_boundedness_ok"] = bounded_ok;

    std::vector<std::pair<int, double>> trend_rows;
    RowTimer timer;
    for (int n : cfg.n_list) {
        Polynomial p = fam(n);
        int depth = cfg.depth > 0 ? cfg.depth : auto_depth(n, 4096);
        bool full = cfg.mode == "full-tree" ||
                    (cfg.mode == "auto" && depth * std::log(double(n)) <= std::log(1e6));
        if (cfg.mode != "auto" && cfg.mode != "full-tree" && cfg.mode != "random-path")
            throw ConfigError("mode must be auto | full-tree | random-path");
        DiscreteMeasure omega =
            brolin_sample(p, brolin_basepoint(p), depth,
                          full ? BrolinMode::FullTree : BrolinMode::RandomPath, cfg.samples,
                          cfg.seed);
        DiscrepancyReport rep =
            weak_star_discrepancy(omega, ref, cfg.moments, discrepancy_grid(omega, ref));
        ExperimentRecord rec;
        rec.n = n;
        rec.metrics = {{"moment_discrepancy", rep.moment_discrepancy},
                       {"potential_discrepancy", rep.potential_discrepancy}};
        rec.wall_seconds = timer.lap();
        rec.params = "depth=" + std::to_string(depth) + (full ? " full-tree" : " random-path");
        res.records.push_back(std::move(rec));
        trend_rows.emplace_back(n, rep.moment_discrepancy);
    }
    if (trend_rows.size() >= 3) {
        TrendReport tr = convergence_table(trend_rows);
        res.verdicts["moment_decreasing"] = tr.decreasing;
        res.verdicts["moment_spearman"] = tr.spearman;
        res.verdicts["moment_below_threshold"] = tr.below(cfg.threshold_discrepancy);
    }
    return res;
}

ExperimentResult run_thm_klimek(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"gamma", "uncertainty", "zero_max_dist"};
    PolynomialFamily fam = family_from_config(cfg);
    KlimekInput ref = klimek_reference(hull_reference(fam.reference_set));
    auto zero_rows = zero_location_check(fam, cfg.epsilon, cfg.n_list);

    std::vector<std::pair<int, double>> trend_rows;
    RowTimer timer;
    for (size_t i = 0; i < cfg.n_list.size(); ++i) {
        int n = cfg.n_list[i];
        Polynomial p = fam(n);
        KlimekInput jul = klimek_julia(p, cfg.resolution, cfg.max_iter);
        KlimekResult gamma = klimek_distance(jul, ref);
        ExperimentRecord rec;
        rec.n = n;
        rec.metrics = {{"gamma", gamma.value},
                       {"uncertainty", gamma.uncertainty},
                       {"zero_max_dist", zero_rows[i].max_dist}};
        rec.wall_seconds = timer.lap();
        res.records.push_back(std::move(rec));
        trend_rows.emplace_back(n, gamma.value);
    }
    if (trend_rows.size() >= 3) {
        TrendReport tr = convergence_table(trend_rows);
        res.verdicts["gamma_decreasing"] = tr.decreasing;
        res.verdicts["gamma_spearman"] = tr.spearman;
        res.verdicts["gamma_below_threshold"] = tr.below(cfg.threshold_discrepancy);
    }
    return res;
}

ExperimentResult run_hausdorff_dichotomy(const ExperimentConfig& cfg) {
    if (cfg.family.name != "power_plus_c")
        throw ConfigError("hausdorff-dichotomy runs the power_plus_c family");
    ExperimentResult res;
    res.columns = {"chi_disc", "chi_circle"};
    PolynomialFamily fam = family_from_config(cfg);
    CompactSetModel disc{Disc{cplx(0.0), 1.0}};
    CompactSetModel circle{Circle{cplx(0.0), 1.0}};

    RowTimer timer;
    for (int n : cfg.n_list) {
        Polynomial p = fam(n);
        GridSet k = filled_julia_grid(p, julia_window(p), cfg.resolution, cfg.max_iter);
        CompactSetModel km{k};
        double chi_disc = hausdorff_distance(km, disc).value;
        double chi_circle = hausdorff_distance(km, circle).value;
        ExperimentRecord rec;
        rec.n = n;
        rec.metrics = {{"chi_disc", chi_disc}, {"chi_circle", chi_circle}};
        rec.wall_seconds = timer.lap();
        res.records.push_back(std::move(rec));
    }
    if (!res.records.empty()) {
        res.verdicts["last_chi_disc_below"] =
            res.records.back().metrics[0].second <= cfg.threshold_hausdorff;
        res.verdicts["last_chi_circle_below"] =
            res.records.back().metrics[1].second <= cfg.threshold_hausdorff;
    }
    return res;
}

ExperimentResult run_lemma31(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"probe_re", "probe_im", "root_growth", "exp_green", "abs_err"};
    PolynomialFamily fam = family_from_config(cfg);
    const AnalyticReference* ref = fam.reference_set.analytic();
    if (!ref) throw ConfigError("lemma31 needs an analytic reference set");
    GreenEvaluator g = green_reference(*ref);

    std::vector<cplx> probes = cfg.probes;
    if (probes.empty()) {
        // 1.5x the farthest boundary point from the center of the set
        Box bb = bounding_box(*ref);
        cplx c = bb.center();
        PointCloud bd = boundary_points(*ref, 512);
        cplx far = bd[0];
        for (cplx z : bd)
            if (std::abs(z - c) > std::abs(far - c)) far = z;
        probes.push_back(c + 1.5 * (far - c));
    }
    for (cplx probe : probes)
        if (hull_distance(fam.reference_set, probe) <= 0.05)
            throw Error("lemma31: probe must lie outside the hull");

    bool one_sided_ok = true;
    RowTimer timer;
    for (int n : cfg.n_list) {
        Polynomial p = fam(n);
        for (cplx probe : probes) {
            double growth = std::pow(std::abs(p(probe)), 1.0 / n);
            double ref_val = std::exp(g(probe));
            if (growth > ref_val + 0.05) one_sided_ok = false;
            ExperimentRecord rec;
            rec.n = n;
            rec.metrics = {{"probe_re", probe.real()},
                           {"probe_im", probe.imag()},
                           {"root_growth", growth},
                           {"exp_green", ref_val},
                           {"abs_err", std::abs(growth - ref_val)}};
            rec.wall_seconds = timer.lap();
            res.records.push_back(std::move(rec));
        }
    }
    res.verdicts["one_sided_bound_ok"] = one_sided_ok;
    if (!res.records.empty())
        res.verdicts["final_abs_err"] = res.records.back().metrics[4].second;
    return res;
}

ExperimentResult run_limitset_check(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"chi_hull_limsup", "h_J_liminf", "window_T"};
    PolynomialFamily fam = family_from_config(cfg);
    AnalyticReference hull_ref = hull_reference(fam.reference_set);

    double rmax = 0.0;
    std::vector<Polynomial> polys;
    for (int n : cfg.n_list) {
        polys.push_back(fam(n));
        rmax = std::max(rmax, escape_radius(polys.back()));
    }
    double half = 1.25 * rmax;
    Box window{-half, half, -half, half};

    SetSequence kseq, jseq;
    RowTimer timer;
    for (size_t i = 0; i < polys.size(); ++i) {
        GridSet k = filled_julia_grid(polys[i], window, cfg.resolution, cfg.max_iter);
        jseq.push(cfg.n_list[i], CompactSetModel(julia_boundary(k)));
        kseq.push(cfg.n_list[i], CompactSetModel(std::move(k)));
    }
    SequenceLimits klim = sequence_limits(kseq, cfg.resolution, window);
    SequenceLimits jlim = sequence_limits(jseq, cfg.resolution, window);

    GridSet hull_limsup = polynomial_hull(klim.limsup);
    double chi = hausdorff_distance(CompactSetModel(hull_limsup), CompactSetModel(hull_ref)).value;

    // directed distance from the reference outer boundary into liminf J_n
    PointCloud jref = boundary_points(hull_ref, 4096);
    double h_j = std::numeric_limits<double>::infinity();
    if (!jlim.liminf_empty) {
        NearestNeighborIndex idx(jlim.liminf.occupied_centers());
        h_j = 0.0;
        for (cplx z : jref) h_j = std::max(h_j, idx.distance(z));
    }

    ExperimentRecord rec;
    rec.n = cfg.n_list.back();
    rec.metrics = {{"chi_hull_limsup", chi},
                   {"h_J_liminf", h_j},
                   {"window_T", double(klim.window_T)}};
    rec.wall_seconds = timer.lap();
    res.records.push_back(std::move(rec));
    res.verdicts["liminf_empty"] = jlim.liminf_empty;
    return res;
}

ExperimentResult run_minimality(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"alpha_n", "beta_n", "sup_beta_n", "gamma_diag", "zero_max_dist"};
    PolynomialFamily fam = family_from_config(cfg);
    MinimalityReport rep = minimality_report(fam, cfg.n_list);
    auto zrows = zero_location_check(fam, cfg.epsilon, cfg.n_list);

    RowTimer timer;
    for (size_t i = 0; i < rep.rows.size(); ++i) {
        const MinimalityRow& row = rep.rows[i];
        ExperimentRecord rec;
        rec.n = row.n;
        rec.metrics = {{"alpha_n", row.alpha},
                       {"beta_n", row.beta_lp},
                       {"sup_beta_n", row.beta_sup},
                       {"gamma_diag", row.gamma_diag},
                       {"zero_max_dist", row.zero_max_dist}};
        rec.wall_seconds = timer.lap();
        res.records.push_back(std::move(rec));
    }
    res.verdicts["alpha_to_zero"] = rep.alpha_to_zero;
    res.verdicts["beta_to_zero"] = rep.beta_to_zero;
    res.verdicts["minimal"] = rep.minimal;
    json zl = json::array();
    for (const auto& zr : zrows)
        zl.push_back({{"n", zr.n}, {"pass", zr.pass}, {"max_dist", zr.max_dist}});
    res.verdicts["zero_location"] = zl;
    return res;
}

ExperimentResult run_render(const ExperimentConfig& cfg) {
    ExperimentResult res;
    res.columns = {"occupied_cells", "cell_size"};
    Polynomial p = cfg.poly_json.empty() ? family_from_config(cfg)(cfg.n_list.back())
                                         : poly_from_json(cfg.poly_json);
    RowTimer timer;
    GridSet k = filled_julia_grid(p, julia_window(p), cfg.resolution, cfg.max_iter);
    std::filesystem::create_directories(cfg.out_dir);
    std::string pgm = cfg.out_dir + "/julia.pgm";
    write_pgm(k, pgm);
    res.output_files.push_back(pgm);
    res.output_files.push_back(pgm + ".json");

    GreenEvaluator g = green_dynamical_evaluator(p, kEscapeThreshold, cfg.max_iter);
    int gres = std::max(cfg.resolution / 4, 16);
    GridSet coarse = GridSet::over(k.window(), gres);
    std::ostringstream csv;
    csv << "re,im,g\n";
    for (int iy = 0; iy < coarse.height(); ++iy)
        for (int ix = 0; ix < coarse.width(); ++ix) {
            cplx z = coarse.cell_center(ix, iy);
            csv << format_real(z.real()) << "," << format_real(z.imag()) << ","
                << format_real(g(z)) << "\n";
        }
    std::string green_path = cfg.out_dir + "/green.csv";
    write_text_file(green_path, csv.str());
    res.output_files.push_back(green_path);

    ExperimentRecord rec;
    rec.n = p.degree();
    rec.metrics = {{"occupied_cells", double(k.occupied_count())},
                   {"cell_size", k.cell_size()}};
    rec.wall_seconds = timer.lap();
    res.records.push_back(std::move(rec));
    return res;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    double t0 = now_seconds();
    ExperimentResult res;
    const std::string& e = cfg.experiment;
    if (e == "thm-brolin") res = run_thm_brolin(cfg);
    else if (e == "thm-klimek") res = run_thm_klimek(cfg);
    else if (e == "hausdorff-dichotomy") res = run_hausdorff_dichotomy(cfg);
    else if (e == "lemma31") res = run_lemma31(cfg);
    else if (e == "limitsets") res = run_limitset_check(cfg);
    else if (e == "minimality") res = run_minimality(cfg);
    else if (e == "render") res = run_render(cfg);
    else throw ConfigError("unknown experiment '" + e + "'");

    std::filesystem::create_directories(cfg.out_dir);

    std::ostringstream csv;
    csv << "n";
    for (const auto& c : res.columns) csv << "," << c;
    csv << "\n";
    for (const auto& rec : res.records) {
        csv << rec.n;
        for (const auto& c : res.columns) {
            double v = std::numeric_limits<double>::quiet_NaN();
            for (const auto& [k, val] : rec.metrics)
                if (k == c) { v = val; break; }
            csv << "," << format_real(v);
        }
        csv << "\n";
    }
    std::string results_path = cfg.out_dir + "/results.csv";
    write_text_file(results_path, csv.str());
    res.output_files.push_back(results_path);

    std::ostringstream tcsv;
    tcsv << "n,wall_seconds\n";
    for (const auto& rec : res.records)
        tcsv << rec.n << "," << format_real(rec.wall_seconds) << "\n";
    write_text_file(cfg.out_dir + "/timings.csv", tcsv.str());

    json manifest;
    manifest["experiment"] = e;
    manifest["config"] = cfg.to_json();
    manifest["library_version"] = JULPOT_VERSION;
    manifest["verdicts"] = res.verdicts;
    manifest["rows"] = res.records.size();
    manifest["total_wall_seconds"] = now_seconds() - t0;  // not part of the determinism contract
    write_text_file(cfg.out_dir + "/manifest.json", manifest.dump(2) + "\n");
    res.output_files.push_back(cfg.out_dir + "/manifest.json");
    return res;
}

}  // namespace julpot
