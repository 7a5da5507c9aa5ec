// Command-line front end: lattice dumps, ED/QMC/witness sweeps, scaling
// fits, and manifest verification.  Every output directory carries a
// manifest with the config hash, the master seed, and per-file checksums;
// reruns with the same config are byte-identical.

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "tqc/effective.hpp"
#include "tqc/exact_diag.hpp"
#include "tqc/io.hpp"
#include "tqc/lattice.hpp"
#include "tqc/qmc.hpp"
#include "tqc/scaling.hpp"
#include "tqc/witness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tqc;

namespace {

constexpr const char* kVersion = "tqc 1.0";

struct CommonArgs {
    std::string config_file;
    std::string family = "kitaev_square";
    std::string boundary = "cylinder";
    int M = 2, D = 5;
    std::string axis = "g";
    std::string grid = "0.1:0.9:9";
    double fixed = 0.0;
    std::uint64_t seed = 1;
    std::string out = "out";
};

std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double a, b;
        int n;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &a, &b, &n) != 3 || n < 1)
            throw std::invalid_argument("grid: expected start:stop:count");
        for (int i = 0; i < n; ++i)
            out.push_back(n == 1 ? a : a + (b - a) * i / double(n - 1));
        return out;
    }
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw std::invalid_argument("grid: empty");
    return out;
}

Config collect_config(const CommonArgs& a, const std::string& subcommand) {
    Config cfg;
    if (!a.config_file.empty()) cfg = load_config_file(a.config_file);
    cfg.set("subcommand", subcommand);
    cfg.set("family", a.family);
    cfg.set("boundary", a.boundary);
    cfg.set("M", std::to_string(a.M));
    cfg.set("D", std::to_string(a.D));
    cfg.set("axis", a.axis);
    cfg.set("grid", a.grid);
    cfg.set("fixed", fmt12(a.fixed));
    cfg.set("seed", std::to_string(a.seed));
    return cfg;
}

CodeLattice build_from(const CommonArgs& a) {
    const CodeFamily fam = family_from_name(a.family);
    const Boundary b = a.boundary == "torus" ? Boundary::torus : Boundary::cylinder;
    if (fam == CodeFamily::color_honeycomb || fam == CodeFamily::color_square_octagonal) {
        if (b == Boundary::torus)
            throw std::invalid_argument("torus mode exists only for the Kitaev families");
        return build_color(fam, a.M, a.D);
    }
    return build_kitaev(fam, a.M, a.D, b);
}

Axis axis_from(const std::string& s) {
    if (s == "g" || s == "field") return Axis::field;
    if (s == "lambda" || s == "ising") return Axis::ising;
    throw std::invalid_argument("axis must be g or lambda");
}

void write_with_manifest(const std::string& out_dir, const Config& cfg,
                         const std::string& csv_name, const CsvTable& table) {
    fs::create_directories(out_dir);
    const std::string path = out_dir + "/" + csv_name;
    write_csv(path, table);
    std::ostringstream man;
    man << "program " << kVersion << "\n";
    man << "config_hash " << cfg.hash() << "\n";
    man << "seed " << cfg.get("seed", "0") << "\n";
    man << "begin_config\n" << cfg.canonical_text() << "end_config\n";
    man << "file " << csv_name << " fnv1a64 " << hex64(fnv1a64(read_file(path))) << "\n";
    write_file(out_dir + "/manifest.txt", man.str());
}

std::vector<std::string> standard_header(const Config& cfg) {
    return {
        std::string("generated_by ") + kVersion,
        "config_hash " + cfg.hash(),
        "seed " + cfg.get("seed", "0"),
        "rng splitmix64",
        "defaults fs_delta=1e-3 solver_tol=1e-10 solver_max_iter=5000 "
        "beta=max(2*max(M,D),64) bins=20 measurement_discard=10%",
    };
}

// rows grouped by a size column into a ScalingDataset
ScalingDataset dataset_from_tables(const std::vector<CsvTable>& tables,
                                   const std::string& value_col, const std::string& err_col,
                                   const std::string& size_col) {
    ScalingDataset ds;
    std::map<double, SizeSeries> by_size;
    for (const auto& t : tables) {
        auto col = [&](const std::string& name) {
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                if (t.columns[i] == name) return int(i);
            return -1;
        };
        const int ip = col("p"), iv = col(value_col), ie = err_col.empty() ? -1 : col(err_col),
                  is = col(size_col);
        if (ip < 0 || iv < 0 || is < 0)
            throw std::invalid_argument("collapse: input is missing required columns");
        for (const auto& r : t.rows) {
            if (r[std::size_t(iv)] == "nan" || r[std::size_t(iv)].empty()) continue;
            SeriesPoint pt;
            pt.p = std::stod(r[std::size_t(ip)]);
            pt.value = std::stod(r[std::size_t(iv)]);
            pt.err = ie >= 0 ? std::stod(r[std::size_t(ie)]) : 0.0;
            by_size[std::stod(r[std::size_t(is)])].pts.push_back(pt);
        }
    }
    for (auto& [size, series] : by_size) {
        series.size = size;
        std::sort(series.pts.begin(), series.pts.end(),
                  [](const SeriesPoint& x, const SeriesPoint& y) { return x.p < y.p; });
        ds.series.push_back(series);
    }
    return ds;
}

json provenance(const std::vector<std::string>& inputs) {
    json j = json::array();
    for (const auto& f : inputs)
        j.push_back({{"file", f}, {"fnv1a64", hex64(fnv1a64(read_file(f)))}});
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topological-code criticality toolkit"};
    app.require_subcommand(1);
    CommonArgs a;

    auto add_common = [&](CLI::App* cmd, bool with_axis = true) {
        cmd->add_option("--config", a.config_file, "flat key = value config file");
        cmd->add_option("--family", a.family,
                        "kitaev_square | kitaev_triangular | color_honeycomb | "
                        "color_square_octagonal");
        cmd->add_option("--boundary", a.boundary, "cylinder | torus");
        cmd->add_option("--M", a.M, "vertical extent");
        cmd->add_option("--D", a.D, "horizontal extent");
        cmd->add_option("--seed", a.seed, "master seed");
        cmd->add_option("--out", a.out, "output directory");
        if (with_axis) {
            cmd->add_option("--axis", a.axis, "g | lambda");
            cmd->add_option("--grid", a.grid, "start:stop:count or comma list");
            cmd->add_option("--fixed", a.fixed, "value of the other parameter");
        }
    };

    auto* c_lattice = app.add_subcommand("lattice", "construct and dump a code lattice");
    add_common(c_lattice, false);

    auto* c_ed = app.add_subcommand("ed-sweep", "exact-diagonalization parameter sweep");
    add_common(c_ed);
    std::string observable = "fs";
    c_ed->add_option("--observable", observable, "fs | gap");

    auto* c_map = app.add_subcommand("map", "map to the effective model and dump it");
    add_common(c_map, false);
    double map_g = 0.3, map_lambda = 0.0;
    bool map_check = false;
    c_map->add_option("--g", map_g);
    c_map->add_option("--lambda", map_lambda);
    c_map->add_flag("--check", map_check, "cross-check against the full model");

    auto* c_qmc = app.add_subcommand("qmc-sweep", "cluster QMC magnetization sweep");
    add_common(c_qmc);
    QmcConfig qopt;
    double qmc_beta = 0.0;
    bool allow_decoupled = false;
    c_qmc->add_option("--beta", qmc_beta, "inverse temperature (0: max(2*max(M,D),64))");
    c_qmc->add_option("--therm", qopt.therm_sweeps);
    c_qmc->add_option("--sweeps", qopt.meas_sweeps);
    c_qmc->add_option("--bins", qopt.n_bins);
    c_qmc->add_flag("--allow-decoupled", allow_decoupled,
                    "run even-D Ising-only ladders despite the decoupling");

    auto* c_wit = app.add_subcommand("witness-sweep", "witness expectation sweep");
    add_common(c_wit);
    std::string method = "map_ed";
    c_wit->add_option("--method", method, "map_ed | ed");

    auto* c_col = app.add_subcommand("collapse", "finite-size data collapse");
    std::vector<std::string> inputs;
    std::string kind = "fs", col_out = "collapse.json", size_col = "D";
    bool include_even_d = false;
    c_col->add_option("--kind", kind, "fs | m | witness");
    c_col->add_option("--input", inputs, "sweep CSV files")->required();
    c_col->add_option("--size-column", size_col, "column holding the scaling size (D or M)");
    c_col->add_option("--out", col_out, "output JSON path");
    c_col->add_flag("--include-even-D", include_even_d,
                    "keep even sizes in Ising-axis square-lattice collapses");

    auto* c_fit = app.add_subcommand("fit", "power-law / log / asymptote fits of peak data");
    std::string fit_kind = "power";
    std::string fit_out = "fit.json";
    std::vector<std::string> fit_inputs;
    c_fit->add_option("--kind", fit_kind, "power | log | asymptote");
    c_fit->add_option("--input", fit_inputs, "CSV with size,value columns")->required();
    c_fit->add_option("--out", fit_out);

    auto* c_pb = app.add_subcommand("phase-boundary", "polynomial fit of (g, lambda_c) points");
    std::vector<std::string> pb_inputs;
    int pb_degree = 2;
    std::string pb_out = "boundary.json";
    c_pb->add_option("--input", pb_inputs, "CSV with g,lambda_c columns")->required();
    c_pb->add_option("--degree", pb_degree, "1 (linear) or 2 (quadratic)");
    c_pb->add_option("--out", pb_out);

    auto* c_ver = app.add_subcommand("verify-manifest", "re-check an output manifest");
    std::string ver_dir = "out";
    c_ver->add_option("--dir", ver_dir, "directory holding manifest.txt");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_lattice->parsed()) {
            auto lat = build_from(a);
            Config cfg = collect_config(a, "lattice");
            fs::create_directories(a.out);
            write_file(a.out + "/lattice.txt", lat.dump());
            std::ostringstream man;
            man << "program " << kVersion << "\nconfig_hash " << cfg.hash() << "\nseed "
                << a.seed << "\nbegin_config\n"
                << cfg.canonical_text() << "end_config\nfile lattice.txt fnv1a64 "
                << hex64(fnv1a64(lat.dump())) << "\n";
            write_file(a.out + "/manifest.txt", man.str());
            std::cout << lat.dump();
            return 0;
        }

        if (c_ed->parsed()) {
            auto lat = build_from(a);
            Config cfg = collect_config(a, "ed-sweep");
            cfg.set("observable", observable);
            const auto grid = parse_grid(a.grid);
            EdOptions opt;
            opt.seed = a.seed;
            std::vector<SweepPoint> pts;
            if (observable == "fs")
                pts = fs_sweep(lat, axis_from(a.axis), grid, a.fixed, opt);
            else if (observable == "gap")
                pts = energy_gap(lat, axis_from(a.axis), grid, a.fixed, opt);
            else
                throw std::invalid_argument("ed-sweep: observable must be fs or gap");
            CsvTable t;
            t.header_comments = standard_header(cfg);
            t.columns = {"family", "M", "D", "boundary", "axis", "p", "value", "residual",
                         "seed"};
            for (const auto& pt : pts)
                t.rows.push_back({family_name(lat.family), std::to_string(a.M),
                                  std::to_string(a.D), a.boundary, a.axis, fmt12(pt.p),
                                  fmt12(pt.value), fmt12(pt.residual), std::to_string(a.seed)});
            write_with_manifest(a.out, cfg, observable + "_sweep.csv", t);
            std::cout << "wrote " << a.out << "/" << observable << "_sweep.csv\n";
            return 0;
        }

        if (c_map->parsed()) {
            auto lat = build_from(a);
            auto m = map_model(lat, map_g, map_lambda);
            Config cfg = collect_config(a, "map");
            cfg.set("g", fmt12(map_g));
            cfg.set("lambda", fmt12(map_lambda));
            fs::create_directories(a.out);
            write_file(a.out + "/effective.txt", m.dump());
            std::cout << m.dump();
            if (map_check) {
                auto rep = spectrum_check(lat, map_g, map_lambda);
                std::cout << "spectrum_check: " << rep.detail << "\n";
                if (!rep.energy_ok || !rep.witness_ok) {
                    std::cerr << "mapping mismatch beyond tolerance\n";
                    return 3;
                }
            }
            return 0;
        }

        if (c_qmc->parsed()) {
            auto lat = build_from(a);
            if (lat.is_color())
                throw std::invalid_argument(
                    "qmc-sweep: color codes map to three-body models; QMC is unsupported "
                    "(use witness-sweep --method map_ed)");
            Config cfg = collect_config(a, "qmc-sweep");
            cfg.set("beta", fmt12(qmc_beta));
            cfg.set("therm", std::to_string(qopt.therm_sweeps));
            cfg.set("sweeps", std::to_string(qopt.meas_sweeps));
            cfg.set("bins", std::to_string(qopt.n_bins));
            QmcConfig qc = qopt;
            qc.beta = qmc_beta;
            qc.seed = a.seed;
            qc.allow_disconnected = allow_decoupled;
            auto pts = qmc_sweep(lat, axis_from(a.axis), parse_grid(a.grid), a.fixed, qc);
            CsvTable t;
            t.header_comments = standard_header(cfg);
            t.columns = {"family", "M", "D", "axis", "p", "beta", "sweeps", "seed",
                         "mean_abs_m", "stderr", "binder", "binder_stderr", "error"};
            bool any_failed = false;
            for (const auto& pt : pts) {
                if (pt.failed) any_failed = true;
                t.rows.push_back({family_name(lat.family), std::to_string(a.M),
                                  std::to_string(a.D), a.axis, fmt12(pt.p),
                                  fmt12(pt.est.beta), std::to_string(pt.est.sweeps),
                                  std::to_string(pt.est.seed),
                                  pt.failed ? "nan" : fmt12(pt.est.mean_abs_m),
                                  pt.failed ? "nan" : fmt12(pt.est.stderr_abs_m),
                                  pt.failed ? "nan" : fmt12(pt.est.binder),
                                  pt.failed ? "nan" : fmt12(pt.est.stderr_binder),
                                  pt.failed ? pt.error : ""});
            }
            write_with_manifest(a.out, cfg, "qmc_sweep.csv", t);
            std::cout << "wrote " << a.out << "/qmc_sweep.csv"
                      << (any_failed ? " (some points failed; see the error column)" : "")
                      << "\n";
            return 0;
        }

        if (c_wit->parsed()) {
            auto lat = build_from(a);
            WitnessMethod wm;
            if (method == "map_ed") wm = WitnessMethod::map_ed;
            else if (method == "ed") wm = WitnessMethod::full_ed;
            else
                throw std::invalid_argument(
                    "witness-sweep: method must be map_ed or ed (QMC cannot estimate the "
                    "off-diagonal witness)");
            Config cfg = collect_config(a, "witness-sweep");
            cfg.set("method", method);
            EdOptions opt;
            opt.seed = a.seed;
            auto w = witness_sweep(lat, axis_from(a.axis), parse_grid(a.grid), a.fixed, wm, opt);
            auto dw = witness_derivative(w);
            CsvTable t;
            t.header_comments = standard_header(cfg);
            t.columns = {"family", "M", "D", "axis", "p", "w", "dw_dp", "E_gm", "E_neg"};
            for (std::size_t i = 0; i < w.size(); ++i) {
                const double wv = std::min(0.5, std::max(-0.5, w[i].value));
                t.rows.push_back({family_name(lat.family), std::to_string(a.M),
                                  std::to_string(a.D), a.axis, fmt12(w[i].p),
                                  fmt12(w[i].value), fmt12(dw[i].value),
                                  fmt12(lower_bound_gm(wv)),
                                  fmt12(lower_bound_negativity(wv))});
            }
            write_with_manifest(a.out, cfg, "witness_sweep.csv", t);
            std::cout << "wrote " << a.out << "/witness_sweep.csv\n";
            return 0;
        }

        if (c_col->parsed()) {
            std::vector<std::string> missing;
            for (const auto& f : inputs)
                if (!fs::exists(f)) missing.push_back(f);
            if (!missing.empty()) {
                std::ostringstream os;
                os << "collapse: missing inputs:";
                for (const auto& m : missing) os << ' ' << m;
                throw std::invalid_argument(os.str());
            }
            std::vector<CsvTable> tables;
            for (const auto& f : inputs) tables.push_back(read_csv(f));
            json out;
            out["provenance"] = provenance(inputs);
            CollapseOptions copt;
            out["bounds"] = {{"nu", {copt.nu_lo, copt.nu_hi}},
                             {"beta", {copt.beta_lo, copt.beta_hi}},
                             {"poly_degree", copt.poly_degree},
                             {"multistart", copt.multistart}};
            ScalingDataset ds;
            if (kind == "fs")
                ds = dataset_from_tables(tables, "value", "", size_col);
            else if (kind == "m")
                ds = dataset_from_tables(tables, "mean_abs_m", "stderr", size_col);
            else if (kind == "witness")
                ds = dataset_from_tables(tables, "dw_dp", "", size_col);
            else
                throw std::invalid_argument("collapse: kind must be fs, m or witness");
            // odd-D filter for Ising-axis square-lattice data (the even-D
            // ladder is the dichotomy case)
            bool is_square_ising = false;
            for (const auto& t : tables)
                for (const auto& r : t.rows)
                    if (r.size() > 4 && r[0] == "kitaev_square" && r[3] == "lambda")
                        is_square_ising = true;
            if (is_square_ising && !include_even_d) {
                std::vector<SizeSeries> keep;
                for (auto& s : ds.series)
                    if (int(s.size) % 2 == 1) keep.push_back(s);
                ds.series = keep;
                out["odd_D_filter"] = true;
            }
            CollapseResult res;
            if (kind == "fs") res = collapse_fs(ds, copt);
            else if (kind == "m") res = collapse_m(ds, copt);
            else res = collapse_witness(ds, copt);
            out["kind"] = kind;
            out["nu"] = res.nu;
            if (kind == "m") out["beta"] = res.beta;
            out["p_c"] = res.p_c;
            out["residual"] = res.residual;
            out["nu_at_bound"] = res.nu_at_bound;
            if (kind == "m") out["beta_at_bound"] = res.beta_at_bound;
            if (!res.peaks.empty()) {
                out["peaks"] = json::array();
                for (auto& [s, p] : res.peaks)
                    out["peaks"].push_back({{"size", s}, {"p_max", p}});
                out["asymptote"] = {{"p_c", res.asymptote.p_c},
                                    {"p_c_err", res.asymptote.p_c_err},
                                    {"alpha", res.asymptote.alpha},
                                    {"delta", res.asymptote.delta},
                                    {"residual", res.asymptote.residual},
                                    {"delta_at_bound", res.asymptote.delta_at_bound}};
            }
            write_file(col_out, out.dump(2) + "\n");
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (c_fit->parsed()) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& f : fit_inputs) {
                auto t = read_csv(f);
                int is = -1, iv = -1;
                for (std::size_t i = 0; i < t.columns.size(); ++i) {
                    if (t.columns[i] == "size") is = int(i);
                    if (t.columns[i] == "value") iv = int(i);
                }
                if (is < 0 || iv < 0)
                    throw std::invalid_argument("fit: input needs size,value columns");
                for (const auto& r : t.rows)
                    pts.push_back({std::stod(r[std::size_t(is)]), std::stod(r[std::size_t(iv)])});
            }
            json out;
            out["provenance"] = provenance(fit_inputs);
            out["kind"] = fit_kind;
            if (fit_kind == "power") {
                auto f = fit_power_law(pts);
                out["k"] = f.slope;
                out["k_err"] = f.slope_err;
                out["residual"] = f.residual;
            } else if (fit_kind == "log") {
                auto f = fit_log_divergence(pts);
                out["k"] = f.slope;
                out["k_err"] = f.slope_err;
                out["residual"] = f.residual;
            } else if (fit_kind == "asymptote") {
                auto f = fit_asymptote(pts);
                out["p_c"] = f.p_c;
                out["p_c_err"] = f.p_c_err;
                out["alpha"] = f.alpha;
                out["delta"] = f.delta;
                out["residual"] = f.residual;
                out["delta_at_bound"] = f.delta_at_bound;
            } else {
                throw std::invalid_argument("fit: kind must be power, log or asymptote");
            }
            write_file(fit_out, out.dump(2) + "\n");
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (c_pb->parsed()) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& f : pb_inputs) {
                auto t = read_csv(f);
                int ig = -1, il = -1;
                for (std::size_t i = 0; i < t.columns.size(); ++i) {
                    if (t.columns[i] == "g") ig = int(i);
                    if (t.columns[i] == "lambda_c") il = int(i);
                }
                if (ig < 0 || il < 0)
                    throw std::invalid_argument(
                        "phase-boundary: input needs g,lambda_c columns");
                for (const auto& r : t.rows)
                    pts.push_back({std::stod(r[std::size_t(ig)]), std::stod(r[std::size_t(il)])});
            }
            auto fit = fit_phase_boundary(pts, pb_degree);
            json out;
            out["provenance"] = provenance(pb_inputs);
            out["degree"] = pb_degree;
            out["coefficients"] = fit.coeff;
            out["uncertainties"] = fit.err;
            out["residual"] = fit.residual;
            write_file(pb_out, out.dump(2) + "\n");
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (c_ver->parsed()) {
            const std::string man_path = ver_dir + "/manifest.txt";
            if (!fs::exists(man_path))
                throw std::invalid_argument("verify-manifest: no manifest at " + man_path);
            std::istringstream is(read_file(man_path));
            std::string line;
            std::string config_hash;
            bool ok = true;
            std::string config_block;
            bool in_config = false;
            std::vector<std::pair<std::string, std::string>> files;
            while (std::getline(is, line)) {
                if (line == "begin_config") {
                    in_config = true;
                    continue;
                }
                if (line == "end_config") {
                    in_config = false;
                    continue;
                }
                if (in_config) {
                    config_block += line + "\n";
                    continue;
                }
                std::istringstream ls(line);
                std::string key;
                ls >> key;
                if (key == "config_hash") ls >> config_hash;
                if (key == "file") {
                    std::string name, tag, hash;
                    ls >> name >> tag >> hash;
                    files.push_back({name, hash});
                }
            }
            if (hex64(fnv1a64(config_block)) != config_hash) {
                std::cout << "config hash mismatch\n";
                ok = false;
            }
            for (const auto& [name, hash] : files) {
                const std::string path = ver_dir + "/" + name;
                if (!fs::exists(path)) {
                    std::cout << "missing file " << name << "\n";
                    ok = false;
                    continue;
                }
                const std::string actual = hex64(fnv1a64(read_file(path)));
                if (actual != hash) {
                    std::cout << "hash mismatch for " << name << ": " << actual << " != "
                              << hash << "\n";
                    ok = false;
                } else {
                    std::cout << "ok " << name << "\n";
                }
                if (name.size() > 4 && name.substr(name.size() - 4) == ".csv") {
                    auto t = read_csv(path);
                    for (const auto& c : t.header_comments)
                        if (c.rfind("config_hash ", 0) == 0 && c.substr(12) != config_hash) {
                            std::cout << "embedded config hash mismatch in " << name << "\n";
                            ok = false;
                        }
                }
            }
            std::cout << (ok ? "manifest ok\n" : "manifest FAILED\n");
            return ok ? 0 : 3;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
