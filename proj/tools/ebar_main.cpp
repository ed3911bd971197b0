// ebar command-line tool: measure, classify, family validators and the
// isotropic sweep, over states read from text files.
//
// Exit codes: 0 success, 1 input error, 2 invalid request,
// 3 closed-form/pipeline mismatch in a family check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebar/ebar.hpp"

namespace {

struct RunConfig {
    std::string state_path;
    std::string measure_name = "negativity";
    double tol = 1e-9;
    std::string cut_mode = "literal";
    std::string output_format = "text";
    std::string output_path;  // empty: standard output
};

std::string fmt_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12f", v);
    return buf;
}

std::string fmt_tol(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string positions_label(const std::vector<std::size_t>& positions) {
    std::string s = "{";
    for (std::size_t k = 0; k < positions.size(); ++k) {
        if (k > 0) {
            s += ' ';
        }
        s += std::to_string(positions[k]);
    }
    s += '}';
    return s;
}

std::string cut_label(const ebar::Bipartition& cut) {
    return positions_label(cut.side1()) + "|" + positions_label(cut.side2());
}

ebar::CutMode cut_mode_of(const RunConfig& cfg) {
    return cfg.cut_mode == "distinct" ? ebar::CutMode::distinct : ebar::CutMode::literal;
}

std::optional<ebar::State> load_state(const std::string& path) {
    try {
        ebar::ParsedState parsed = ebar::parse_state_file(path);
        for (const std::string& w : parsed.warnings) {
            std::cerr << "warning: " << w << "\n";
        }
        return std::move(parsed.state);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return std::nullopt;
    }
}

int write_output(const RunConfig& cfg, const std::string& body) {
    if (cfg.output_path.empty()) {
        std::cout << body;
        return 0;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << cfg.output_path << "'\n";
        return 1;
    }
    out << body;
    return 0;
}

std::string dims_label(const ebar::SubsystemShape& shape) {
    std::string s;
    for (std::size_t k = 0; k < shape.particle_count(); ++k) {
        if (k > 0) {
            s += ' ';
        }
        s += std::to_string(shape.dim(k));
    }
    return s;
}

int cmd_measure(const RunConfig& cfg) {
    const auto state = load_state(cfg.state_path);
    if (!state) {
        return 1;
    }
    ebar::MeasureReport report;
    try {
        report = ebar::free_entanglement(*state, *ebar::measure_kind_from_string(cfg.measure_name),
                                         cut_mode_of(cfg));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string body;
    if (cfg.output_format == "csv") {
        body += "cut,side1,measure,value\n";
        for (std::size_t k = 0; k < report.per_cut.size(); ++k) {
            body += std::to_string(k) + "," + positions_label(report.per_cut[k].cut.side1()) +
                    "," + ebar::to_string(report.kind) + "," + fmt_value(report.per_cut[k].value) +
                    "\n";
        }
        body += std::string("e_bar,,") + ebar::to_string(report.kind) + "," +
                fmt_value(report.e_bar) + "\n";
    } else {
        body += "state: " + cfg.state_path + "\n";
        body += "dims: " + dims_label(ebar::state_shape(*state)) + "\n";
        body += std::string("measure: ") + ebar::to_string(report.kind) +
                "   cut-mode: " + cfg.cut_mode + "   cuts: " + std::to_string(report.cut_count) +
                "\n";
        for (const ebar::CutValue& v : report.per_cut) {
            body += "cut " + cut_label(v.cut) + "  value = " + fmt_value(v.value) + "\n";
        }
        body += "E_bar = " + fmt_value(report.e_bar) + "\n";
    }
    return write_output(cfg, body);
}

int cmd_classify(const RunConfig& cfg) {
    const auto state = load_state(cfg.state_path);
    if (!state) {
        return 1;
    }
    ebar::MeasureReport report;
    ebar::Verdict verdict;
    try {
        report = ebar::free_entanglement(*state, *ebar::measure_kind_from_string(cfg.measure_name),
                                         cut_mode_of(cfg));
        verdict = ebar::classify(report, cfg.tol);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const auto flag_label = [&](std::size_t k) {
        return verdict.per_cut_entangled[k] ? "entangled" : "not-detected";
    };
    std::string body;
    if (cfg.output_format == "csv") {
        body += "cut,side1,value,flag\n";
        for (std::size_t k = 0; k < report.per_cut.size(); ++k) {
            body += std::to_string(k) + "," + positions_label(report.per_cut[k].cut.side1()) +
                    "," + fmt_value(report.per_cut[k].value) + "," + flag_label(k) + "\n";
        }
        body += std::string("verdict,") + ebar::to_string(verdict.result) + ",tol," +
                fmt_tol(verdict.tol) + "\n";
    } else {
        body += "state: " + cfg.state_path + "\n";
        body += std::string("measure: ") + ebar::to_string(report.kind) +
                "   cut-mode: " + cfg.cut_mode + "   tol: " + fmt_tol(verdict.tol) + "\n";
        for (std::size_t k = 0; k < report.per_cut.size(); ++k) {
            body += "cut " + cut_label(report.per_cut[k].cut) +
                    "  value = " + fmt_value(report.per_cut[k].value) + "  " + flag_label(k) +
                    "\n";
        }
        body += std::string("verdict: ") + ebar::to_string(verdict.result) + "\n";
    }
    return write_output(cfg, body);
}

constexpr double kFamilyTol = 1e-9;

int family_report(const RunConfig& cfg, std::string header,
                  const ebar::MeasureReport& closed, const ebar::MeasureReport& generic) {
    double max_diff = 0.0;
    std::string body = std::move(header);
    for (std::size_t k = 0; k < closed.per_cut.size(); ++k) {
        const double diff = std::abs(closed.per_cut[k].value - generic.per_cut[k].value);
        max_diff = std::max(max_diff, diff);
        body += "cut " + cut_label(closed.per_cut[k].cut) +
                "  closed = " + fmt_value(closed.per_cut[k].value) +
                "  pipeline = " + fmt_value(generic.per_cut[k].value) +
                "  |diff| = " + fmt_value(diff) + "\n";
    }
    const double e_diff = std::abs(closed.e_bar - generic.e_bar);
    max_diff = std::max(max_diff, e_diff);
    body += "E_bar  closed = " + fmt_value(closed.e_bar) +
            "  pipeline = " + fmt_value(generic.e_bar) + "  |diff| = " + fmt_value(e_diff) + "\n";
    const int status = write_output(cfg, body);
    if (status != 0) {
        return status;
    }
    if (max_diff > kFamilyTol) {
        std::cerr << "error: closed form and generic pipeline disagree by " << max_diff << "\n";
        return 3;
    }
    return 0;
}

int cmd_family_three_qubit(const RunConfig& cfg, const std::vector<double>& raw) {
    ebar::ThreeQubitCoefficients c;
    for (std::size_t k = 0; k < 8; ++k) {
        c[k] = ebar::Complex(raw[2 * k], raw[2 * k + 1]);
    }
    ebar::MeasureReport closed;
    ebar::MeasureReport generic;
    try {
        closed = ebar::three_qubit_closed_form(c);
        generic = ebar::free_entanglement(ebar::build_three_qubit_state(c),
                                          ebar::MeasureKind::concurrence);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return family_report(cfg, "family: three-qubit\n", closed, generic);
}

int cmd_family_isotropic(const RunConfig& cfg, std::size_t n, double x) {
    double closed = 0.0;
    ebar::MeasureReport generic;
    try {
        closed = ebar::isotropic_closed_form(n, x);
        generic = ebar::free_entanglement(ebar::isotropic_state(n, x),
                                          ebar::MeasureKind::negativity);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    const double diff = std::abs(closed - generic.e_bar);
    std::string body = "family: isotropic   n: " + std::to_string(n) + "   x: " + fmt_value(x) +
                       "\n" + "E_bar  closed = " + fmt_value(closed) +
                       "  pipeline = " + fmt_value(generic.e_bar) +
                       "  |diff| = " + fmt_value(diff) + "\n";
    const int status = write_output(cfg, body);
    if (status != 0) {
        return status;
    }
    if (diff > kFamilyTol) {
        std::cerr << "error: closed form and generic pipeline disagree by " << diff << "\n";
        return 3;
    }
    return 0;
}

int cmd_sweep_isotropic(const RunConfig& cfg, std::size_t n, double x_min, double x_max,
                        std::size_t steps) {
    std::vector<ebar::SweepRow> rows;
    try {
        rows = ebar::sweep_isotropic(n, x_min, x_max, steps);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::string body = "x,e_bar_closed,e_bar_generic\n";
    for (const ebar::SweepRow& row : rows) {
        body += fmt_value(row.x) + "," + fmt_value(row.e_bar_closed) + "," +
                fmt_value(row.e_bar_generic) + "\n";
    }
    return write_output(cfg, body);
}

void add_common_output_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--format", cfg.output_format, "output format")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", cfg.output_path, "write the report to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement of multiparticle quantum states, averaged over all bipartite "
                 "groupings"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::vector<double> coeffs;
    std::size_t family_n = 0;
    double family_x = 0.0;
    std::size_t sweep_n = 0;
    double sweep_x_min = 0.0;
    double sweep_x_max = 1.0;
    std::size_t sweep_steps = 21;

    CLI::App* measure = app.add_subcommand(
        "measure", "average a bipartite measure over every grouping of a state");
    measure->add_option("--state", cfg.state_path, "state file")->required();
    measure->add_option("--measure", cfg.measure_name, "bipartite measure")
        ->check(CLI::IsMember({"concurrence", "entropy", "negativity"}))
        ->capture_default_str();
    measure->add_option("--cut-mode", cfg.cut_mode,
                        "literal: complementary half-cuts both counted; distinct: collapsed")
        ->check(CLI::IsMember({"literal", "distinct"}))
        ->capture_default_str();
    add_common_output_options(measure, cfg);

    CLI::App* classify = app.add_subcommand(
        "classify", "semiseparable / fully-inseparable verdict from the per-cut values");
    classify->add_option("--state", cfg.state_path, "state file")->required();
    classify->add_option("--measure", cfg.measure_name, "bipartite measure")
        ->check(CLI::IsMember({"concurrence", "entropy", "negativity"}))
        ->capture_default_str();
    classify->add_option("--tol", cfg.tol, "zero threshold for the per-cut values")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    classify->add_option("--cut-mode", cfg.cut_mode, "literal or distinct cut counting")
        ->check(CLI::IsMember({"literal", "distinct"}))
        ->capture_default_str();
    add_common_output_options(classify, cfg);

    CLI::App* family =
        app.add_subcommand("family", "closed-form families checked against the pipeline");
    family->require_subcommand(1);
    CLI::App* three_qubit = family->add_subcommand(
        "three-qubit", "three-qubit pure family in the Bell basis of the last two qubits");
    three_qubit
        ->add_option("--coeffs", coeffs,
                     "16 floats: re and im of the 8 coefficients, in order")
        ->expected(16)
        ->required();
    add_common_output_options(three_qubit, cfg);
    CLI::App* family_isotropic =
        family->add_subcommand("isotropic", "GHZ projector mixed with white noise");
    family_isotropic->add_option("--n", family_n, "particle count")
        ->check(CLI::Range(2, 8))
        ->required();
    family_isotropic->add_option("--x", family_x, "mixing weight")
        ->check(CLI::Range(0.0, 1.0))
        ->required();
    add_common_output_options(family_isotropic, cfg);

    CLI::App* sweep = app.add_subcommand("sweep", "tabulate a family over a parameter grid");
    sweep->require_subcommand(1);
    CLI::App* sweep_isotropic = sweep->add_subcommand(
        "isotropic", "closed form vs pipeline over an x grid, as CSV");
    sweep_isotropic->add_option("--n", sweep_n, "particle count")
        ->check(CLI::Range(2, 8))
        ->required();
    sweep_isotropic->add_option("--x-min", sweep_x_min, "grid start")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sweep_isotropic->add_option("--x-max", sweep_x_max, "grid end")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sweep_isotropic->add_option("--steps", sweep_steps, "grid points")
        ->check(CLI::Range(2, 1000000))
        ->capture_default_str();
    add_common_output_options(sweep_isotropic, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (measure->parsed()) {
        return cmd_measure(cfg);
    }
    if (classify->parsed()) {
        return cmd_classify(cfg);
    }
    if (three_qubit->parsed()) {
        return cmd_family_three_qubit(cfg, coeffs);
    }
    if (family_isotropic->parsed()) {
        return cmd_family_isotropic(cfg, family_n, family_x);
    }
    if (sweep_isotropic->parsed()) {
        return cmd_sweep_isotropic(cfg, sweep_n, sweep_x_min, sweep_x_max, sweep_steps);
    }
    return 2;
}
