// Command-line harness: exact lattice counts, saddle-point curves, regime
// reports, threshold selection on CSV data, and seeded Monte Carlo recovery
// experiments. Exit codes: 0 success, 1 runtime/numeric failure, 2 usage or
// parse error.

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "npselect/io.hpp"
#include "npselect/lattice.hpp"
#include "npselect/select.hpp"
#include "npselect/synth.hpp"
#include "npselect/theta.hpp"

namespace {

using namespace npselect;

struct GlobalOpts {
    std::string format = "plain";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 1;
};

std::string trig_name(Trig t) { return t == Trig::cos ? "cos" : "sin"; }

void write_result_file(const std::string& path, const std::string& content,
                       RunManifest manifest,
                       const std::chrono::steady_clock::time_point& started) {
    manifest.output_checksum = checksum_hex(content);
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    if (path == "-") {
        std::cout << content;
        return;
    }
    atomic_write_file(path, content);
    atomic_write_file(path + ".manifest.json", manifest.to_json());
}

// --- count ---

int cmd_count(int d_star, double gamma, bool has_gamma, long radius_sq, bool has_radius,
              const GlobalOpts& g) {
    if (has_gamma == has_radius)
        throw ParseError("count: exactly one of --gamma and --radius-sq must be given");
    const long r = has_radius ? radius_sq
                              : static_cast<long>(std::floor(gamma * static_cast<double>(d_star)));
    if (r < 0) throw ParseError("count: squared radius must be >= 0");
    const CountResult c = count_exact(d_star, r);

    if (g.format == "plain") {
        std::cout << "N1=" << c.n1.get_str() << " N2=" << c.n2.get_str()
                  << " N=" << c.n_diff.get_str() << "\n";
        std::cout << "logN1=" << format_double(c.log_n1) << " logN2=" << format_double(c.log_n2)
                  << " logN=" << format_double(c.log_n_diff) << "\n";
    } else if (g.format == "json") {
        nlohmann::ordered_json j;
        j["d_star"] = d_star;
        j["radius_sq"] = r;
        j["n1"] = c.n1.get_str();
        j["n2"] = c.n2.get_str();
        j["n"] = c.n_diff.get_str();
        j["log_n1"] = c.log_n1;
        j["log_n2"] = c.log_n2;
        j["log_n"] = c.log_n_diff;
        std::cout << j.dump(2) << "\n";
    } else if (g.format == "csv") {
        CsvTable t;
        t.header = {"d_star", "radius_sq", "n1", "n2", "n", "log_n1", "log_n2", "log_n"};
        t.rows.push_back({std::to_string(d_star), std::to_string(r), c.n1.get_str(),
                          c.n2.get_str(), c.n_diff.get_str(), format_double(c.log_n1),
                          format_double(c.log_n2), format_double(c.log_n_diff)});
        std::cout << write_csv(t);
    } else {
        throw ParseError("count: unsupported format `" + g.format + "`");
    }
    return 0;
}

// --- saddle / curve ---

int cmd_saddle(double gamma, double tol, const GlobalOpts& g) {
    const SaddlePoint sp = solve_saddle(gamma, tol);
    if (g.format == "plain") {
        std::cout << "gamma=" << format_double(sp.gamma) << "\n"
                  << "z_gamma=" << format_double(sp.z_gamma) << "\n"
                  << "l_value=" << format_double(sp.l_val) << "\n"
                  << "l_pp=" << format_double(sp.l_pp) << "\n"
                  << "h=" << format_double(sp.h_val) << "\n"
                  << "residual=" << format_double(sp.tol) << "\n";
    } else if (g.format == "json") {
        nlohmann::ordered_json j;
        j["gamma"] = sp.gamma;
        j["y_gamma"] = sp.y_gamma;
        j["z_gamma"] = sp.z_gamma;
        j["l_value"] = sp.l_val;
        j["l_pp"] = sp.l_pp;
        j["h"] = sp.h_val;
        j["residual"] = sp.tol;
        std::cout << j.dump(2) << "\n";
    } else {
        throw ParseError("saddle: unsupported format `" + g.format + "`");
    }
    return 0;
}

int cmd_curve(double gamma_min, double gamma_max, long steps, const std::string& out) {
    const auto started = std::chrono::steady_clock::now();
    if (steps < 1) throw ParseError("curve: --steps must be >= 1");
    if (!(gamma_min > 0.0) || (steps > 1 && !(gamma_max > gamma_min)))
        throw ParseError("curve: need 0 < gamma-min < gamma-max");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    for (long i = 0; i < steps; ++i) {
        grid.push_back(steps == 1 ? gamma_min
                                  : gamma_min + (gamma_max - gamma_min) * static_cast<double>(i)
                                        / static_cast<double>(steps - 1));
    }
    const std::vector<CurvePoint> curve = figure_curves(grid);

    CsvTable t;
    t.header = {"gamma", "z_gamma", "l_value"};
    for (const CurvePoint& p : curve)
        t.rows.push_back({format_double(p.gamma), format_double(p.z_gamma), format_double(p.l_value)});

    RunManifest manifest;
    manifest.subcommand = "curve";
    manifest.params = {{"gamma_min", format_double(gamma_min)},
                       {"gamma_max", format_double(gamma_max)},
                       {"steps", std::to_string(steps)},
                       {"out", out}};
    write_result_file(out, write_csv(t), std::move(manifest), started);
    return 0;
}

// --- regime ---

ModelParams params_from_config(const ConfigView& cfg) {
    ModelParams p;
    p.d = cfg.get_double("d");
    p.d_star = static_cast<int>(cfg.get_long("d_star"));
    p.g_min = cfg.get_double("g_min");
    p.L = cfg.get_double("L");
    p.kappa = cfg.get_double("kappa");
    p.sigma = cfg.get_double("sigma");
    p.L2 = cfg.get_double("L2");
    p.L_inf = cfg.get_double("L_inf");
    p.validate();
    return p;
}

int cmd_regime(const std::string& params_path, double n_override, bool has_n_override) {
    ConfigView cfg(parse_config_file(params_path));
    cfg.require_known({"d", "d_star", "g_min", "L", "kappa", "sigma", "L2", "L_inf", "n", "alpha"});
    const ModelParams p = params_from_config(cfg);
    const double n = has_n_override ? n_override : cfg.get_double("n");
    const double alpha = cfg.get_double("alpha");

    const RegimeReport r = regime_constants(p, n, alpha);
    nlohmann::ordered_json j;
    j["c_star_lower"] = r.c_star_lower;
    j["c_star_upper"] = r.c_star_upper;
    j["c1_lower"] = r.c1_lower;
    j["c2_lower"] = r.c2_lower;
    j["c1_upper"] = r.c1_upper;
    j["c2_upper"] = r.c2_upper;
    j["gamma_star"] = r.gamma_star;
    j["flags"]["thm1_cond_a"] = r.thm1_cond_a;
    j["flags"]["thm1_cond_b"] = r.thm1_cond_b;
    j["flags"]["thm2_hyp1"] = r.thm2_hyp1;
    j["flags"]["prop2_impossible"] = r.prop2_impossible;
    std::cout << j.dump(2) << "\n";
    return 0;
}

// --- select ---

int cmd_select(const std::string& data_path, const std::string& params_path, bool cap,
               const GlobalOpts& g) {
    ConfigView cfg(parse_config_file(params_path));
    cfg.require_known({"d", "d_star", "g_min", "L", "kappa", "sigma", "L2", "L_inf"});

    CsvTable data;
    if (data_path == "-") {
        data = read_csv(std::cin);
    } else {
        data = read_csv_file(data_path);
    }
    if (data.header.size() < 2 || data.header.back() != "y")
        throw ParseError("select: data header must be x1,...,xd,y");
    const int d = static_cast<int>(data.header.size()) - 1;
    for (int j = 0; j < d; ++j) {
        if (data.header[static_cast<std::size_t>(j)] != "x" + std::to_string(j + 1))
            throw ParseError("select: data header must be x1,...,xd,y");
    }
    if (data.rows.empty()) throw ParseError("select: data file has no rows");

    ModelParams p;
    p.d = cfg.get_double_or("d", static_cast<double>(d));
    p.d_star = static_cast<int>(cfg.get_long("d_star"));
    p.g_min = cfg.get_double("g_min");
    p.L = cfg.get_double("L");
    p.kappa = cfg.get_double("kappa");
    p.sigma = cfg.get_double("sigma");
    p.L2 = cfg.get_double("L2");
    p.L_inf = cfg.get_double("L_inf");
    p.validate();
    if (p.ambient_dim() != d)
        throw ParseError("select: params d does not match data width");

    const std::size_t n = data.rows.size();
    Matrix X(n, static_cast<std::size_t>(d));
    std::vector<double> Y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j <= d; ++j) {
            const std::string& cell = data.rows[i][static_cast<std::size_t>(j)];
            double v = 0.0;
            try {
                std::size_t pos = 0;
                v = std::stod(cell, &pos);
                if (pos != cell.size()) throw std::invalid_argument("trailing text");
            } catch (const std::exception&) {
                throw ParseError("select: bad numeric cell `" + cell + "` in data row "
                                 + std::to_string(i + 2));
            }
            if (j < d) {
                if (!(v >= 0.0 && v <= 1.0))
                    throw ParseError("select: design value out of [0,1] in data row "
                                     + std::to_string(i + 2));
                X(i, static_cast<std::size_t>(j)) = v;
            } else {
                Y[i] = v;
            }
        }
    }

    const TuningParams t = tuning(p, static_cast<double>(n));
    const SelectionResult res = select_variables(X, Y, uniform_density(), p, t, cap);

    if (g.format == "plain") {
        std::cout << "m=" << format_double(t.m) << " lambda=" << format_double(t.lambda)
                  << " radius_sq=" << t.radius_sq << "\n";
        std::cout << "selected=";
        bool first = true;
        for (int j : res.selected) {
            if (!first) std::cout << ",";
            std::cout << j;
            first = false;
        }
        std::cout << "\n";
        std::cout << "levels_visited=" << res.levels_visited
                  << " stopped_early=" << (res.stopped_early ? "true" : "false") << "\n";
        for (const auto& rec : res.records) {
            std::cout << "record k=" << rec.k.to_string() << " trig=" << trig_name(rec.trig)
                      << " coeff=" << format_double(rec.value) << "\n";
        }
    } else if (g.format == "json") {
        nlohmann::ordered_json j;
        j["m"] = t.m;
        j["lambda"] = t.lambda;
        j["radius_sq"] = t.radius_sq;
        j["selected"] = res.selected;
        j["levels_visited"] = res.levels_visited;
        j["stopped_early"] = res.stopped_early;
        auto records = nlohmann::ordered_json::array();
        for (const auto& rec : res.records) {
            nlohmann::ordered_json rj;
            rj["support"] = rec.k.support;
            rj["values"] = rec.k.values;
            rj["trig"] = trig_name(rec.trig);
            rj["coeff"] = rec.value;
            records.push_back(rj);
        }
        j["records"] = records;
        std::cout << j.dump(2) << "\n";
    } else {
        throw ParseError("select: unsupported format `" + g.format + "`");
    }
    return 0;
}

// --- simulate ---

int cmd_simulate(const std::string& config_path, const std::string& out, const GlobalOpts& g) {
    const auto started = std::chrono::steady_clock::now();
    ConfigView cfg(parse_config_file(config_path));
    cfg.require_known({"d", "d_star", "g_min", "L", "kappa", "sigma", "L2", "L_inf",
                       "relevant", "amplitudes", "n", "n_grid", "trials", "seed", "cap",
                       "threshold_scale"});

    SparseAdditiveFunction f;
    f.d = static_cast<int>(cfg.get_long("d"));
    for (long j : cfg.get_long_list("relevant")) f.relevant.push_back(static_cast<int>(j));
    f.amplitudes = cfg.get_double_list("amplitudes");
    f.validate();

    double amin_sq = 0.0, amax_sq = 0.0;
    for (std::size_t i = 0; i < f.amplitudes.size(); ++i) {
        const double a2 = f.amplitudes[i] * f.amplitudes[i];
        if (i == 0 || a2 < amin_sq) amin_sq = a2;
        if (i == 0 || a2 > amax_sq) amax_sq = a2;
    }

    ExperimentConfig ec;
    ec.params.d = cfg.get_double("d");
    ec.params.d_star = static_cast<int>(cfg.get_long("d_star"));
    ec.params.g_min = cfg.get_double_or("g_min", 1.0);
    ec.params.L = cfg.get_double_or("L", amax_sq);
    ec.params.kappa = cfg.get_double_or("kappa", amin_sq);
    ec.params.sigma = cfg.get_double("sigma");
    ec.params.L2 = cfg.get_double_or("L2", std::sqrt(f.l2_norm_sq()));
    ec.params.L_inf = cfg.get_double_or("L_inf", f.l_inf_bound());
    ec.function = f;
    ec.trials = static_cast<int>(cfg.get_long("trials"));
    ec.base_seed = static_cast<std::uint64_t>(cfg.get_long_or("seed", 0));
    if (g.seed_given) ec.base_seed = g.seed;
    ec.cap_at_d_star = cfg.get_bool_or("cap", true);
    ec.threshold_scale = cfg.get_double_or("threshold_scale", 1.0);
    ec.threads = g.threads;

    std::vector<long> n_grid;
    if (cfg.has("n_grid")) n_grid = cfg.get_long_list("n_grid");
    else n_grid = {cfg.get_long("n")};
    if (n_grid.empty()) throw ParseError("simulate: empty n grid");

    CsvTable t;
    t.header = {"n", "d", "dstar", "error_rate", "trials", "seed"};
    for (long n : n_grid) {
        ec.n = static_cast<double>(n);
        const McResult mc = mc_error(ec);
        t.rows.push_back({std::to_string(n), std::to_string(f.d), std::to_string(ec.params.d_star),
                          format_double(mc.error_rate), std::to_string(ec.trials),
                          std::to_string(ec.base_seed)});
    }

    const auto join = [](const auto& values, auto&& fmt) {
        std::ostringstream ss;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) ss << ",";
            ss << fmt(values[i]);
        }
        return ss.str();
    };

    RunManifest manifest;
    manifest.subcommand = "simulate";
    manifest.params = {{"config", config_path},
                       {"d", std::to_string(f.d)},
                       {"d_star", std::to_string(ec.params.d_star)},
                       {"g_min", format_double(ec.params.g_min)},
                       {"L", format_double(ec.params.L)},
                       {"kappa", format_double(ec.params.kappa)},
                       {"sigma", format_double(ec.params.sigma)},
                       {"L2", format_double(ec.params.L2)},
                       {"L_inf", format_double(ec.params.L_inf)},
                       {"relevant", join(f.relevant, [](int v) { return std::to_string(v); })},
                       {"amplitudes", join(f.amplitudes, [](double v) { return format_double(v); })},
                       {"n_grid", join(n_grid, [](long v) { return std::to_string(v); })},
                       {"trials", std::to_string(ec.trials)},
                       {"cap", ec.cap_at_d_star ? std::string("true") : std::string("false")},
                       {"threshold_scale", format_double(ec.threshold_scale)},
                       {"out", out}};
    manifest.seed = ec.base_seed;
    write_result_file(out, write_csv(t), std::move(manifest), started);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable selection by Fourier-coefficient thresholding: exact lattice counts, "
                 "saddle-point asymptotics, regime analysis, and Monte Carlo recovery experiments"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "Output format: plain, json, or csv")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", g.seed, "Override the experiment seed");
    app.add_option("--threads", g.threads, "Worker threads for simulate")->capture_default_str();

    // count
    auto* count = app.add_subcommand("count", "Exact lattice-point counts N1, N2, N in a d*-ball");
    count->fallthrough();
    int count_dstar = 0;
    double count_gamma = 0.0;
    long count_radius = 0;
    count->add_option("--dstar", count_dstar, "Ball dimension d*")->required();
    auto* gamma_opt = count->add_option("--gamma", count_gamma, "Radius via squared radius gamma*d*");
    auto* radius_opt = count->add_option("--radius-sq", count_radius, "Integer squared radius");

    // saddle
    auto* saddle = app.add_subcommand("saddle", "Saddle point z_gamma of l_gamma");
    saddle->fallthrough();
    double saddle_gamma = 0.0, saddle_tol = 1e-12;
    saddle->add_option("--gamma", saddle_gamma, "Target gamma > 0")->required();
    saddle->add_option("--tol", saddle_tol, "Residual tolerance")->capture_default_str();

    // curve
    auto* curve = app.add_subcommand("curve", "CSV of gamma -> (z_gamma, l_gamma(z_gamma))");
    curve->fallthrough();
    double curve_min = 0.0, curve_max = 0.0;
    long curve_steps = 0;
    std::string curve_out = "-";
    curve->add_option("--gamma-min", curve_min, "Grid start")->required();
    curve->add_option("--gamma-max", curve_max, "Grid end")->required();
    curve->add_option("--steps", curve_steps, "Number of grid points")->required();
    curve->add_option("--out", curve_out, "Output CSV path, - for stdout")->capture_default_str();

    // regime
    auto* regime = app.add_subcommand("regime", "Consistency/impossibility regime constants and flags");
    regime->fallthrough();
    std::string regime_params;
    double regime_n = 0.0;
    regime->add_option("--params", regime_params, "key = value params file")->required();
    auto* regime_n_opt = regime->add_option("--n", regime_n, "Override sample size from the file");

    // select
    auto* select = app.add_subcommand("select", "Run the threshold selector on a CSV data file");
    select->fallthrough();
    std::string select_data, select_params;
    bool select_cap = false;
    select->add_option("--data", select_data, "CSV with header x1,...,xd,y; - for stdin")->required();
    select->add_option("--params", select_params, "key = value params file")->required();
    select->add_flag("--cap", select_cap, "Stop once d* coordinates are selected");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo recovery error over an n-grid");
    simulate->fallthrough();
    std::string sim_config, sim_out;
    simulate->add_option("--config", sim_config, "Experiment config file")->required();
    simulate->add_option("--out", sim_out, "Output CSV path, - for stdout")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    g.seed_given = seed_opt->count() > 0;

    try {
        if (count->parsed())
            return cmd_count(count_dstar, count_gamma, gamma_opt->count() > 0, count_radius,
                             radius_opt->count() > 0, g);
        if (saddle->parsed()) return cmd_saddle(saddle_gamma, saddle_tol, g);
        if (curve->parsed()) return cmd_curve(curve_min, curve_max, curve_steps, curve_out);
        if (regime->parsed())
            return cmd_regime(regime_params, regime_n, regime_n_opt->count() > 0);
        if (select->parsed()) return cmd_select(select_data, select_params, select_cap, g);
        if (simulate->parsed()) return cmd_simulate(sim_config, sim_out, g);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
