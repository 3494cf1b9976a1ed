#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrg/io.hpp"
#include "qrg/validate.hpp"

namespace {

using qrg::Model;
using qrg::Observable;

Model parse_model(const std::string& s) {
    if (s == "1d") return Model::OneD;
    if (s == "2d") return Model::TwoD;
    throw CLI::ValidationError("--model", "expected 1d or 2d");
}

std::filesystem::path resolve_output(const std::string& flag_value,
                                     const std::string& default_name) {
    if (!flag_value.empty()) return flag_value;
    if (const char* dir = std::getenv("QRG_OUT_DIR"); dir && *dir)
        return std::filesystem::path(dir) / default_name;
    return default_name;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output path: " + path.string());
    os << contents;
    if (!os.good()) throw std::runtime_error("write failed: " + path.string());
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// flat key=value file; keys equal long flag names; explicit flags win
void apply_config(CLI::App* sub, const std::string& path) {
    if (path.empty()) return;
    std::ifstream is(path);
    if (!is) throw CLI::ValidationError("--config", "cannot read " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string entry = trim(line);
        if (entry.empty() || entry[0] == '#') continue;
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError(
                "--config", "line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(entry.substr(0, eq));
        const std::string value = trim(entry.substr(eq + 1));
        CLI::Option* opt = sub->get_option_no_throw("--" + key);
        if (opt == nullptr || key == "config")
            throw CLI::ValidationError("--config", "unknown key '" + key + "'");
        if (opt->count() > 0) continue;  // set on the command line already
        opt->add_result(value);
        opt->run_callback();
    }
}

struct SweepArgs {
    std::string model = "1d";
    std::string observable = "trace-distance";
    std::vector<int> steps = {0};
    double gamma_min = -1.5;
    double gamma_max = 1.5;
    int points = 301;
    std::string output;
    std::string format = "csv";
    bool serial = false;
    std::string config;
};

int cmd_sweep(const SweepArgs& a) {
    const Model m = parse_model(a.model);
    std::vector<Observable> obs;
    if (a.observable == "trace-distance") {
        obs = {Observable::TraceDistance};
    } else if (a.observable == "tau") {
        obs = {Observable::Tau};
    } else if (a.observable == "both") {
        obs = {Observable::TraceDistance, Observable::Tau};
    } else {
        throw CLI::ValidationError("--observable", "expected trace-distance, tau or both");
    }

    std::vector<qrg::SweepRecord> rows;
    for (Observable o : obs) {
        auto part = a.serial
                        ? qrg::run_sweep_serial(m, o, a.steps, a.gamma_min, a.gamma_max, a.points)
                        : qrg::run_sweep(m, o, a.steps, a.gamma_min, a.gamma_max, a.points);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        if (x.step != y.step) return x.step < y.step;
        if (x.gamma != y.gamma) return x.gamma < y.gamma;
        return to_string(x.observable) < to_string(y.observable);
    });

    const auto path = resolve_output(a.output, "sweep." + a.format);
    if (a.format == "csv") {
        std::ostringstream os;
        qrg::write_sweep_csv(os, rows);
        write_file(path, os.str());
    } else {
        write_file(path, qrg::sweep_json(rows));
    }
    std::cout << "wrote " << rows.size() << " records to " << path.string() << "\n";
    return 0;
}

struct ScalingArgs {
    std::string model = "1d";
    std::string observable = "trace-distance";
    int max_steps = 0;  // 0: model default
    std::string output;
    std::string format = "csv";
    std::string config;
};

int cmd_scaling(const ScalingArgs& a) {
    const Model m = parse_model(a.model);
    Observable o;
    if (a.observable == "trace-distance") {
        o = Observable::TraceDistance;
    } else if (a.observable == "tau") {
        o = Observable::Tau;
    } else {
        throw CLI::ValidationError("--observable", "expected trace-distance or tau");
    }
    const int max_steps = a.max_steps > 0 ? a.max_steps : (m == Model::OneD ? 7 : 5);
    if (max_steps < 3) throw CLI::ValidationError("--max-steps", "need at least 3");

    std::vector<qrg::ScalingRow> rows;
    std::vector<std::pair<double, double>> peak_pts, drift_pts;
    for (int n = 1; n <= max_steps; ++n) {
        const qrg::PseudoCritical pc = qrg::pseudo_critical_point(m, o, n);
        const double N = qrg::effective_size(m, n);
        rows.push_back({n, N, pc.gamma_m, pc.max_abs_derivative});
        peak_pts.emplace_back(N, pc.max_abs_derivative);
        drift_pts.emplace_back(N, std::abs(pc.gamma_m));
    }
    std::vector<qrg::ScalingFit> fits{qrg::scaling_fit(peak_pts)};
    std::vector<std::string> names{"peak"};
    if (m == Model::TwoD) {
        // drift shrinks as |gamma_m| ~ N^-theta; report theta positive
        qrg::ScalingFit drift = qrg::scaling_fit(drift_pts);
        drift.theta = -drift.theta;
        fits.push_back(drift);
        names.push_back("drift");
    }
    for (std::size_t i = 0; i < fits.size(); ++i)
        std::cout << names[i] << ": theta=" << qrg::format_g17(fits[i].theta)
                  << " c=" << qrg::format_g17(fits[i].c)
                  << " r2=" << qrg::format_g17(fits[i].r_squared) << "\n";

    const auto path = resolve_output(a.output, "scaling." + a.format);
    if (a.format == "csv") {
        std::ostringstream os;
        qrg::write_scaling_csv(os, rows, fits);
        write_file(path, os.str());
    } else {
        write_file(path, qrg::scaling_json(m, o, rows, fits, names));
    }
    std::cout << "wrote " << rows.size() << " rows to " << path.string() << "\n";
    return 0;
}

int cmd_fixed_points(const std::string& model, double lo, double hi) {
    const Model m = parse_model(model);
    const auto reports = qrg::find_fixed_points(m, lo, hi);
    for (const auto& r : reports)
        std::cout << "gamma=" << qrg::format_g17(r.gamma)
                  << " slope=" << qrg::format_g17(r.slope)
                  << " stability=" << (r.stable ? "stable" : "unstable") << "\n";

    std::vector<double> expected;
    for (double e : {-1.0, 0.0, 1.0})
        if (e >= lo && e <= hi) expected.push_back(e);
    bool ok = reports.size() == expected.size();
    if (ok)
        for (std::size_t i = 0; i < expected.size(); ++i)
            ok = ok && std::abs(reports[i].gamma - expected[i]) <= 1e-10;
    if (!ok) {
        std::cerr << "unexpected fixed-point set (model bug?)\n";
        return 1;
    }
    return 0;
}

int cmd_validate(bool as_json, const std::string& output) {
    const qrg::ValidationReport rep = qrg::run_validation();
    if (as_json) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto& c : rep.checks)
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        nlohmann::json doc = {{"checks", checks}, {"all_passed", rep.all_passed}};
        const std::string text = doc.dump(2) + "\n";
        if (output.empty())
            std::cout << text;
        else
            write_file(output, text);
    } else {
        for (const auto& c : rep.checks)
            std::cout << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    }
    return rep.all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"QRG analysis of the 1D/2D anisotropic XY models: coupling flows, "
                 "trace distance, residual entanglement, finite-size scaling"};
    app.set_version_flag("--version", qrg::kToolVersion);
    app.require_subcommand(1);

    SweepArgs sw;
    CLI::App* sweep = app.add_subcommand("sweep", "observable-vs-gamma sweep per QRG step");
    sweep->add_option("--config", sw.config, "flat key=value file; explicit flags win");
    sweep->add_option("--model", sw.model, "1d or 2d");
    sweep->add_option("--observable", sw.observable, "trace-distance, tau or both");
    sweep->add_option("--steps", sw.steps, "QRG step list")->delimiter(',');
    sweep->add_option("--gamma-min", sw.gamma_min, "sweep range lower edge");
    sweep->add_option("--gamma-max", sw.gamma_max, "sweep range upper edge");
    sweep->add_option("--points", sw.points, "grid point count (>= 2)");
    sweep->add_option("--output", sw.output, "output path (default: QRG_OUT_DIR or cwd)");
    sweep->add_option("--format", sw.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--serial", sw.serial, "use the serial reference kernel");

    ScalingArgs sc;
    CLI::App* scaling = app.add_subcommand("scaling", "pseudo-critical points and log-log fits");
    scaling->add_option("--config", sc.config, "flat key=value file; explicit flags win");
    scaling->add_option("--model", sc.model, "1d or 2d");
    scaling->add_option("--observable", sc.observable, "trace-distance or tau");
    scaling->add_option("--max-steps", sc.max_steps, "largest QRG step (default 7 for 1d, 5 for 2d)");
    scaling->add_option("--output", sc.output, "output path");
    scaling->add_option("--format", sc.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    std::string fp_model = "1d";
    std::string fp_config;
    double fp_lo = -1.5, fp_hi = 1.5;
    CLI::App* fixed = app.add_subcommand("fixed-points", "roots of gamma'(g) = g with stability");
    fixed->add_option("--config", fp_config, "flat key=value file; explicit flags win");
    fixed->add_option("--model", fp_model, "1d or 2d");
    fixed->add_option("--gamma-min", fp_lo, "search range lower edge");
    fixed->add_option("--gamma-max", fp_hi, "search range upper edge");

    bool val_json = false;
    std::string val_output;
    CLI::App* validate = app.add_subcommand("validate", "self-checks: ground states, identities, "
                                                        "monogamy, projector oracles");
    validate->add_flag("--json", val_json, "machine-readable summary");
    validate->add_option("--output", val_output, "write the JSON summary here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;  // usage error
    }

    try {
        if (sweep->parsed()) {
            apply_config(sweep, sw.config);
            return cmd_sweep(sw);
        }
        if (scaling->parsed()) {
            apply_config(scaling, sc.config);
            return cmd_scaling(sc);
        }
        if (fixed->parsed()) {
            apply_config(fixed, fp_config);
            return cmd_fixed_points(fp_model, fp_lo, fp_hi);
        }
        if (validate->parsed()) return cmd_validate(val_json, val_output);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;  // bad config key/value or invalid flag combination
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;  // bad parameter value
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
