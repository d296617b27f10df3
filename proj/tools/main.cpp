// Command-line surface for the invariant CMC hypersurface engine: curve
// integration, taxonomy, sphere shooting, family sweeps, and stability
// reports, with deterministic CSV/JSON output.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cmc/classify.hpp"
#include "cmc/integrate.hpp"
#include "cmc/io.hpp"
#include "cmc/model.hpp"
#include "cmc/shoot.hpp"
#include "cmc/stability.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
    int n = 2;
    int m = 2;
    double h = 0.0;
};

void add_params(CLI::App* cmd, CommonOpts& o) {
    cmd->set_help_flag("--help", "print help and exit");
    cmd->add_option("--n", o.n, "Euclidean factor dimension (>= 2)");
    cmd->add_option("--m", o.m, "sphere factor dimension (>= 2)");
    cmd->add_option("--h", o.h, "constant mean curvature");
}

struct ControlOpts {
    cmc::IntegrationControls c;
};

void add_controls(CLI::App* cmd, ControlOpts& o) {
    cmd->add_option("--rtol", o.c.rtol, "relative tolerance per step");
    cmd->add_option("--atol", o.c.atol, "absolute tolerance");
    cmd->add_option("--length", o.c.max_arclength, "arclength budget");
    cmd->add_option("--max-steps", o.c.max_steps, "step budget");
}

// start spec syntax: y-axis:A | x-axis-south:r | x-axis-north:r | interior:x,y,sigma
cmc::StartSpec parse_start(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--start", "expected kind:value");
    const std::string kind = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    if (kind == "y-axis") return cmc::YAxisStart{std::stod(rest)};
    if (kind == "x-axis-south") return cmc::XAxisSouthStart{std::stod(rest)};
    if (kind == "x-axis-north") return cmc::XAxisNorthStart{std::stod(rest)};
    if (kind == "interior") {
        double v[3];
        std::size_t pos = 0;
        for (int i = 0; i < 3; ++i) {
            std::size_t used = 0;
            v[i] = std::stod(rest.substr(pos), &used);
            pos += used;
            if (i < 2) {
                if (pos >= rest.size() || rest[pos] != ',')
                    throw CLI::ValidationError("--start", "interior needs x,y,sigma");
                ++pos;
            }
        }
        return cmc::CurveState{0.0, v[0], v[1], v[2]};
    }
    throw CLI::ValidationError("--start", "unknown start kind: " + kind);
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int numerical_failure(const std::exception& e) {
    const json diag{{"error", "numerical_failure"}, {"message", e.what()}};
    std::cerr << dump(diag);
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"O(n) x O(m)-invariant constant mean curvature hypersurfaces of "
                 "R^n x S^m: generating-curve integration, classification, "
                 "sphere shooting, and stability analysis"};
    app.set_help_flag("--help", "print help and exit");
    app.set_help_all_flag("--help-all", "print help for all subcommands");
    app.require_subcommand(1);

    // integrate
    auto* c_int = app.add_subcommand("integrate", "integrate a generating curve");
    CommonOpts p_int;
    ControlOpts ctl_int;
    std::string start_int, out_int = "-", events_int;
    add_params(c_int, p_int);
    add_controls(c_int, ctl_int);
    c_int->add_option("--start", start_int, "start spec")->required();
    c_int->add_option("--out", out_int, "curve CSV path ('-' for stdout)");
    c_int->add_option("--events", events_int, "events JSON sidecar path");

    // classify
    auto* c_cls = app.add_subcommand("classify", "classify an integrated curve");
    CommonOpts p_cls;
    ControlOpts ctl_cls;
    std::string start_cls, curve_cls, events_cls, out_cls = "-";
    add_params(c_cls, p_cls);
    add_controls(c_cls, ctl_cls);
    c_cls->add_option("--start", start_cls, "start spec (integrate then classify)");
    c_cls->add_option("--curve", curve_cls, "curve CSV to re-classify");
    c_cls->add_option("--events", events_cls, "events JSON sidecar for --curve");
    c_cls->add_option("--out", out_cls, "report path ('-' for stdout)");

    // shoot
    auto* c_sh = app.add_subcommand("shoot", "bisect for the embedded CMC hypersphere");
    CommonOpts p_sh;
    ControlOpts ctl_sh;
    std::vector<double> bracket;
    double tol_sh = 1e-4;
    std::string out_sh = "-", curve_out_sh;
    add_params(c_sh, p_sh);
    add_controls(c_sh, ctl_sh);
    c_sh->add_option("--bracket", bracket, "A_lo,A_hi undershoot/overshoot bracket")
        ->delimiter(',')
        ->expected(2);
    c_sh->add_option("--tol", tol_sh, "bisection tolerance on A");
    c_sh->add_option("--out", out_sh, "JSON report path");
    c_sh->add_option("--curve-out", curve_out_sh, "write the sphere curve CSV here");

    // sweep
    auto* c_sw = app.add_subcommand("sweep", "integrate + classify a family of y-axis starts");
    CommonOpts p_sw;
    ControlOpts ctl_sw;
    std::vector<double> As;
    std::string out_sw = "-";
    add_params(c_sw, p_sw);
    add_controls(c_sw, ctl_sw);
    c_sw->add_option("--A", As, "initial heights")->delimiter(',')->required();
    c_sw->add_option("--out", out_sw, "phase table JSON path");

    // stability
    auto* c_st = app.add_subcommand("stability", "second-variation reports");
    c_st->require_subcommand(1);
    auto* c_crit = c_st->add_subcommand("criteria", "closed-form slice/cylinder criteria");
    CommonOpts p_crit;
    std::string out_crit = "-";
    add_params(c_crit, p_crit);
    c_crit->add_option("--out", out_crit, "JSON path");
    auto* c_cert = c_st->add_subcommand("certificate", "instability certificate for a curve");
    CommonOpts p_cert;
    ControlOpts ctl_cert;
    std::string start_cert, out_cert = "-";
    add_params(c_cert, p_cert);
    add_controls(c_cert, ctl_cert);
    c_cert->add_option("--start", start_cert, "start spec")->required();
    c_cert->add_option("--out", out_cert, "JSON path");

    // linearized
    auto* c_lin = app.add_subcommand("linearized", "linearized oscillation equation");
    CommonOpts p_lin;
    double x_max = 20.0;
    std::string out_lin = "-", samples_lin;
    add_params(c_lin, p_lin);
    c_lin->add_option("--x-max", x_max, "integration endpoint");
    c_lin->add_option("--out", out_lin, "zeros JSON path");
    c_lin->add_option("--samples", samples_lin, "w samples CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_int) {
            const cmc::GeometryParams params(p_int.n, p_int.m, p_int.h);
            const cmc::ProfileCurve curve =
                cmc::integrate(parse_start(start_int), params, ctl_int.c);
            write_file(out_int, cmc::io::curve_csv(curve));
            if (!events_int.empty())
                write_file(events_int, dump(cmc::io::curve_events_json(curve)));
        } else if (*c_cls) {
            const cmc::GeometryParams params(p_cls.n, p_cls.m, p_cls.h);
            cmc::ProfileCurve curve;
            if (!curve_cls.empty()) {
                if (events_cls.empty())
                    throw CLI::ValidationError("--events", "required with --curve");
                std::ifstream ic(curve_cls), ie(events_cls);
                if (!ic || !ie) throw std::runtime_error("cannot read curve inputs");
                std::string csv((std::istreambuf_iterator<char>(ic)),
                                std::istreambuf_iterator<char>());
                json sidecar = json::parse(ie);
                curve = cmc::io::curve_from_strings(csv, sidecar);
            } else if (!start_cls.empty()) {
                curve = cmc::integrate(parse_start(start_cls), params, ctl_cls.c);
            } else {
                throw CLI::ValidationError("classify", "need --start or --curve");
            }
            write_file(out_cls,
                       dump(cmc::io::classification_json(cmc::classify(curve, curve.params))));
        } else if (*c_sh) {
            const cmc::GeometryParams params(p_sh.n, p_sh.m, p_sh.h);
            std::pair<double, double> br;
            if (bracket.size() == 2) {
                br = {bracket[0], bracket[1]};
            } else {
                br = cmc::find_bracket(params, ctl_sh.c);
            }
            const cmc::SphereResult res =
                cmc::find_sphere_height(params, br, tol_sh, ctl_sh.c);
            const cmc::ClassificationResult cls = cmc::classify(res.curve, params);
            json rep{{"A_star", res.A_star},
                     {"bracket", {br.first, br.second}},
                     {"classification", cmc::io::classification_json(cls)},
                     {"termination", to_string(res.curve.termination)}};
            write_file(out_sh, dump(rep));
            if (!curve_out_sh.empty())
                write_file(curve_out_sh, cmc::io::curve_csv(res.curve));
        } else if (*c_sw) {
            const cmc::GeometryParams params(p_sw.n, p_sw.m, p_sw.h);
            const auto items = cmc::sweep_family(params, As, ctl_sw.c);
            json rows = json::array();
            for (const auto& it : items) {
                json row{{"A", it.A}};
                if (it.error.empty()) {
                    row["classification"] = cmc::io::classification_json(it.result);
                    row["topology"] = to_string(it.result.topology);
                } else {
                    row["error"] = it.error;
                }
                rows.push_back(row);
            }
            write_file(out_sw, dump(json{{"results", rows}}));
        } else if (*c_crit) {
            const cmc::GeometryParams params(p_crit.n, p_crit.m, p_crit.h);
            write_file(out_crit,
                       dump(cmc::io::criteria_json(cmc::cylinder_slice_criteria(params))));
        } else if (*c_cert) {
            const cmc::GeometryParams params(p_cert.n, p_cert.m, p_cert.h);
            const cmc::ProfileCurve curve =
                cmc::integrate(parse_start(start_cert), params, ctl_cert.c);
            const cmc::IndexFormReport rep = cmc::instability_certificate(curve, params);
            write_file(out_cert, dump(cmc::io::index_report_json(rep)));
        } else if (*c_lin) {
            const cmc::GeometryParams params(p_lin.n, p_lin.m, p_lin.h);
            const cmc::LinearizedSolution sol = cmc::linearized_solution(params, x_max);
            write_file(out_lin, dump(json{{"x_max", x_max}, {"zeros", sol.zeros}}));
            if (!samples_lin.empty()) {
                std::string csv = "x,w,dw\n";
                for (std::size_t i = 0; i < sol.x.size(); ++i) {
                    csv += cmc::io::format_double(sol.x[i]);
                    csv += ',';
                    csv += cmc::io::format_double(sol.w[i]);
                    csv += ',';
                    csv += cmc::io::format_double(sol.dw[i]);
                    csv += '\n';
                }
                write_file(samples_lin, csv);
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        return numerical_failure(e);
    }
    return 0;
}
