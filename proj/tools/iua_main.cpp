#include "iua/abstract.hpp"
#include "iua/builder.hpp"
#include "iua/errors.hpp"
#include "iua/hardness.hpp"
#include "iua/json_io.hpp"
#include "iua/selfcheck.hpp"
#include "iua/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace iua;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

IntervalBox parse_domain(const std::vector<std::string>& specs) {
    std::vector<Interval> dims;
    for (const std::string& s : specs) {
        const auto colon = s.find(':');
        if (colon == std::string::npos) throw Error("domain flag must be lo:hi, got " + s);
        dims.emplace_back(std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1)));
        if (!(dims.back().lo <= dims.back().hi)) throw Error("domain with lo > hi: " + s);
    }
    return IntervalBox(std::move(dims));
}

std::vector<double> parse_point(const std::string& spec) {
    std::vector<double> x;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) x.push_back(std::stod(tok));
    if (x.empty()) throw Error("empty point");
    return x;
}

std::uint64_t box_cap_from_env() {
    if (const char* env = std::getenv("IUA_MAX_BOXES")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 1000000;
}

TargetFunction make_target(const std::string& fn, const std::vector<std::string>& domain,
                           double lipschitz, double value, const std::string& csv_path) {
    TargetFunction tf;
    if (fn == "constant") {
        if (domain.empty()) throw Error("constant target needs --domain");
        tf = target_constant(value, parse_domain(domain));
    } else if (fn == "csv") {
        if (csv_path.empty()) throw Error("csv target needs --csv");
        tf = target_from_csv(read_file(csv_path), lipschitz);
    } else {
        tf = target_by_name(fn);
        if (lipschitz > 0.0) tf.lipschitz = lipschitz;
        if (!domain.empty()) tf.domain = parse_domain(domain);
    }
    return tf;
}

int cmd_build(const std::string& fn, const std::vector<std::string>& domain, double delta,
              const std::string& act, double lipschitz, double value,
              const std::string& csv_path, unsigned seed, const std::string& out_path) {
    TargetFunction tf = make_target(fn, domain, lipschitz, value, csv_path);
    BuildOptions opts;
    opts.max_boxes = box_cap_from_env();
    opts.seed = seed;
    IuaBlueprint bp = build_iua(tf, delta, activation_by_name(act), opts);
    save_json_file(out_path, blueprint_to_json(bp));
    std::cout << "built: tau=" << fmt(bp.tau) << " K=" << bp.kay << " |G|=" << bp.g_count;
    if (bp.cal) {
        std::cout << " theta=" << fmt(bp.cal->theta) << " epsilon=" << fmt(bp.cal->epsilon)
                  << " mu=" << fmt(bp.cal->mu);
    }
    std::cout << " nodes=" << bp.network.node_count() << " -> " << out_path << "\n";
    return 0;
}

void write_check_csv(const std::string& path, const CheckReport& report,
                     const std::string& config) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << "# " << config << "\n";
    out << "box,l_cert,u_cert,n_lo,n_hi,inner_ok,outer_ok\n";
    for (const BoxCheck& c : report.rows) {
        out << '"';
        for (std::size_t d = 0; d < c.box.dims.size(); ++d) {
            if (d) out << ' ';
            out << fmt(c.box.dims[d].lo) << ':' << fmt(c.box.dims[d].hi);
        }
        out << '"' << ',' << fmt(c.lo_cert) << ',' << fmt(c.hi_cert) << ',' << fmt(c.net.lo)
            << ',' << fmt(c.net.hi) << ',' << (c.inner_ok ? 1 : 0) << ','
            << (c.outer_ok ? 1 : 0) << "\n";
    }
}

int cmd_check(const std::string& bp_path, int boxes, unsigned seed,
              const std::string& report_path, double oracle_gap) {
    IuaBlueprint bp = blueprint_from_json(load_json_file(bp_path));
    TargetFunction tf = bp.fn.instantiate();
    std::vector<IntervalBox> sample = sample_boxes(tf.domain, boxes, seed);
    CheckOptions opts;
    opts.oracle_gap = oracle_gap;
    CheckReport report = check_interval_approx(bp.network, tf, bp.delta, sample, opts);
    if (!report_path.empty()) {
        std::ostringstream config;
        config << "blueprint=" << bp_path << " boxes=" << boxes << " seed=" << seed
               << " delta=" << fmt(bp.delta) << " oracle_gap=" << fmt(oracle_gap);
        write_check_csv(report_path, report, config.str());
    }
    std::cout << report.boxes_checked - static_cast<int>(report.failures.size()) << "/"
              << report.boxes_checked << " boxes pass (gap target " << fmt(oracle_gap)
              << ", min inner slack " << fmt(report.min_inner_slack) << ")\n";
    if (!report.all_ok()) {
        std::cout << report.failures.size() << " containment failures\n";
        return 1;
    }
    return 0;
}

int cmd_certify(const std::string& net_path, const std::string& point, double eps, bool nary) {
    const Json j = load_json_file(net_path);
    const ExprGraph net = j.contains("network") ? blueprint_from_json(j).network
                                                : graph_from_json(j);
    const std::vector<double> x = parse_point(point);
    if (nary) {
        const NaryCertificate cert = certify_robust_nary(net, x, eps);
        if (cert.proven) {
            std::cout << "Proven(class " << cert.class_index << ")\n";
        } else {
            std::cout << "Unknown\n";
        }
        return 0;
    }
    switch (certify_robust(net, x, eps)) {
    case RobustResult::ProvenLow: std::cout << "ProvenLow\n"; break;
    case RobustResult::ProvenHigh: std::cout << "ProvenHigh\n"; break;
    case RobustResult::Unknown: std::cout << "Unknown\n"; break;
    }
    return 0;
}

int cmd_reduce(const std::string& dimacs_path, const std::string& mode, double delta,
               const std::string& act, bool pad, const std::string& out_path) {
    const FormulaMode fmode = (mode == "dnf") ? FormulaMode::Dnf : FormulaMode::Cnf;
    const CnfFormula formula = parse_dimacs(read_file(dimacs_path), fmode, pad);
    const ActivationProfile profile = activation_by_name(act);
    const ExprGraph net = (fmode == FormulaMode::Cnf) ? encode_3cnf(formula, delta, profile)
                                                      : encode_3dnf(formula, delta, profile);
    save_json_file(out_path, graph_to_json(net));
    std::cout << "encoded " << formula.clause_count() << " clauses over " << formula.num_vars
              << " vars (" << mode << ", delta=" << fmt(delta) << ", " << net.node_count()
              << " nodes) -> " << out_path << "\n";
    return 0;
}

int cmd_gap(const std::string& net_path, const std::string& dimacs_path,
            const std::string& mode, double delta, int samples, unsigned seed, bool pad,
            bool force) {
    const FormulaMode fmode = (mode == "dnf") ? FormulaMode::Dnf : FormulaMode::Cnf;
    const CnfFormula formula = parse_dimacs(read_file(dimacs_path), fmode, pad);
    const ExprGraph net = graph_from_json(load_json_file(net_path));
    const GapResult res = gap_check(net, formula, delta, samples, seed, force);
    const char* verdict = res.verdict == GapVerdict::GapHigh  ? "GapHigh"
                          : res.verdict == GapVerdict::GapLow ? "GapLow"
                                                              : "Violation";
    std::cout << verdict << ": " << res.detail << " (extreme " << fmt(res.extreme) << ")\n";
    if (res.verdict == GapVerdict::Violation) {
        if (!res.witness.empty()) {
            std::cout << "witness:";
            for (double v : res.witness) std::cout << ' ' << fmt(v);
            std::cout << "\n";
        }
        return 1;
    }
    return 0;
}

int cmd_selftest(unsigned seed) {
    int failures = 0;
    for (const auto& r : iua::selfcheck::run_all(seed)) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
        if (!r.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}

int cmd_plotdata(const std::string& bp_path, const std::string& prefix, int sweep, int boxes,
                 unsigned seed) {
    IuaBlueprint bp = blueprint_from_json(load_json_file(bp_path));
    TargetFunction tf = bp.fn.instantiate();
    if (tf.dim() != 1) throw ShapeError("plotdata sweep supports 1-D blueprints");

    {
        std::ofstream out(prefix + "_fn.csv");
        if (!out) throw Error("cannot open '" + prefix + "_fn.csv' for writing");
        out << "x,f,n\n";
        const Interval dom = tf.domain.dims[0];
        for (int i = 0; i <= sweep; ++i) {
            const double x = dom.lo + dom.width() * i / sweep;
            const std::vector<double> xs{x};
            out << fmt(x) << ',' << fmt(tf.oracle(xs)) << ',' << fmt(bp.network.eval(xs)[0])
                << "\n";
        }
    }
    {
        std::ofstream out(prefix + "_boxes.csv");
        if (!out) throw Error("cannot open '" + prefix + "_boxes.csv' for writing");
        out << "lo,hi,l_cert,u_cert,n_lo,n_hi\n";
        for (const IntervalBox& box : sample_boxes(tf.domain, boxes, seed)) {
            const Interval net = abstract_eval(bp.network, box)[0];
            const RangeEstimate est = range_oracle(tf, box, 256);
            out << fmt(box.dims[0].lo) << ',' << fmt(box.dims[0].hi) << ',' << fmt(est.lo_cert)
                << ',' << fmt(est.hi_cert) << ',' << fmt(net.lo) << ',' << fmt(net.hi) << "\n";
        }
    }
    std::cout << "wrote " << prefix << "_fn.csv and " << prefix << "_boxes.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval-abstract-interpretation workbench for small network expressions"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "construct an interval approximator network");
    std::string fn = "sin2x", act = "sigmoid", csv_path, out_path = "bp.json";
    std::vector<std::string> domain;
    double delta = 1.2, lipschitz = 0.0, value = 0.0, oracle_gap = 0.02, eps = 0.05;
    unsigned seed = 1;
    int boxes = 200, samples = 10000, sweep = 500;
    build->add_option("--fn", fn, "target: sin2x|quadratic2d|constant|csv");
    build->add_option("--domain", domain, "domain per dimension, lo:hi")->delimiter(' ');
    build->add_option("--delta", delta, "approximation tolerance")->required();
    build->add_option("--act", act, "activation name");
    build->add_option("--lipschitz", lipschitz, "declared l_inf Lipschitz constant");
    build->add_option("--value", value, "constant target value");
    build->add_option("--csv", csv_path, "csv file for the csv target");
    build->add_option("--seed", seed, "validation sampling seed");
    build->add_option("--out", out_path, "blueprint output path");

    // check
    auto* check = app.add_subcommand("check", "containment check over random boxes");
    std::string bp_path = "bp.json", report_path;
    check->add_option("--blueprint", bp_path, "blueprint path")->required();
    check->add_option("--boxes", boxes, "number of random boxes");
    check->add_option("--seed", seed, "box sampling seed");
    check->add_option("--report", report_path, "CSV report path");
    check->add_option("--oracle-gap", oracle_gap, "target certified-range gap");

    // certify
    auto* certify = app.add_subcommand("certify", "robustness certification at a point");
    std::string net_path, point;
    bool nary = false;
    certify->add_option("--net", net_path, "network or blueprint json")->required();
    certify->add_option("--point", point, "comma-separated input point")->required();
    certify->add_option("--eps", eps, "l_inf ball radius")->required();
    certify->add_flag("--nary", nary, "argmax certification over vector outputs");

    // reduce
    auto* reduce = app.add_subcommand("reduce", "encode a 3CNF/3DNF formula as a network");
    std::string dimacs_path, mode = "cnf";
    bool pad = false, force = false;
    double rdelta = 0.25;
    reduce->add_option("--dimacs", dimacs_path, "DIMACS file")->required();
    reduce->add_option("--mode", mode, "cnf or dnf");
    reduce->add_option("--delta", rdelta, "gap half-width, below 1/2");
    reduce->add_option("--act", act, "activation name");
    reduce->add_flag("--pad", pad, "pad short clauses to width 3");
    reduce->add_option("--out", out_path, "network output path");

    // gap
    auto* gap = app.add_subcommand("gap", "verify the value gap against the Boolean oracle");
    gap->add_option("--net", net_path, "network json")->required();
    gap->add_option("--dimacs", dimacs_path, "DIMACS file")->required();
    gap->add_option("--mode", mode, "cnf or dnf");
    gap->add_option("--delta", rdelta, "gap half-width used at encode time");
    gap->add_option("--samples", samples, "uniform interior samples");
    gap->add_option("--seed", seed, "sampling seed");
    gap->add_flag("--pad", pad, "pad short clauses to width 3");
    gap->add_flag("--force", force, "allow more than 20 variables");

    // selftest
    auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
    selftest->add_option("--seed", seed, "suite seed");

    // plotdata
    auto* plotdata = app.add_subcommand("plotdata", "emit sweep and box CSVs for plotting");
    plotdata->add_option("--blueprint", bp_path, "blueprint path")->required();
    plotdata->add_option("--out", out_path, "output prefix");
    plotdata->add_option("--sweep", sweep, "sweep sample count");
    plotdata->add_option("--boxes", boxes, "random boxes");
    plotdata->add_option("--seed", seed, "box sampling seed");

    try {
        app.parse(argc, argv);
        if (build->parsed()) {
            return cmd_build(fn, domain, delta, act, lipschitz, value, csv_path, seed,
                             out_path);
        }
        if (check->parsed()) return cmd_check(bp_path, boxes, seed, report_path, oracle_gap);
        if (certify->parsed()) return cmd_certify(net_path, point, eps, nary);
        if (reduce->parsed()) return cmd_reduce(dimacs_path, mode, rdelta, act, pad, out_path);
        if (gap->parsed()) {
            return cmd_gap(net_path, dimacs_path, mode, rdelta, samples, seed, pad, force);
        }
        if (selftest->parsed()) return cmd_selftest(seed);
        if (plotdata->parsed()) return cmd_plotdata(bp_path, out_path, sweep, boxes, seed);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const iua::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 2;
    }
}
