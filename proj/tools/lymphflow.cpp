// lymphflow: command-line front end for the lymph-flow models.
//
// Subcommands: scales, fit, classify, simulate, cycle, bifurcate, pde.
// Reports are emitted as JSON, fields and sweeps as CSV. All numeric output
// is printed with round-trip precision so identical configurations produce
// byte-identical files.
//
// Exit codes: 0 success, 2 validation / usage error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lymphflow/bifurcation.hpp"
#include "lymphflow/constitutive.hpp"
#include "lymphflow/cycle.hpp"
#include "lymphflow/errors.hpp"
#include "lymphflow/filippov.hpp"
#include "lymphflow/fit.hpp"
#include "lymphflow/integrator.hpp"
#include "lymphflow/params.hpp"
#include "lymphflow/pde.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open output file: " + path);
    }
    out << content;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open file: " + path);
    }
    json j;
    in >> j;
    return j;
}

// ---------------------------------------------------------------------------
// Parameter plumbing.
// ---------------------------------------------------------------------------

lymphflow::PhysicalParams physical_from_json(const json& j) {
    lymphflow::PhysicalParams p;
    p.k_no_minus = j.at("k_no_minus").get<double>();
    p.k_no_plus = j.at("k_no_plus").get<double>();
    p.k_ca_minus = j.at("k_ca_minus").get<double>();
    p.k_ca_plus = j.at("k_ca_plus").get<double>();
    p.m = j.at("m").get<double>();
    p.radius = j.at("radius").get<double>();
    p.r_crit = j.at("r_crit").get<double>();
    p.tau_ref = j.at("tau_ref").get<double>();
    p.tau_xx = j.at("tau_xx").get<double>();
    p.c_shear = j.at("c_shear").get<double>();
    p.c_thresh = j.at("c_thresh").get<double>();
    p.stretch_exponent = j.value("stretch_exponent", 11.0);
    return p;
}

/// Oscillator constants from a JSON file: either the dimensionless fields
/// directly, or a full kinetics record that gets reduced.
lymphflow::NondimParams nondim_from_json(const json& j) {
    if (j.contains("alpha")) {
        lymphflow::NondimParams p;
        p.alpha = j.at("alpha").get<double>();
        p.beta = j.at("beta").get<double>();
        p.gamma = j.at("gamma").get<double>();
        p.zeta = j.at("zeta").get<double>();
        p.theta = j.value("theta", 1.0);
        return p;
    }
    return lymphflow::nondimensionalize(physical_from_json(j));
}

struct NondimCli {
    double alpha = 0.0, beta = 0.0, gamma = 0.0, zeta = 0.0, theta = 1.0;
    std::string params_file;

    void attach(CLI::App* cmd, bool required) {
        auto* a = cmd->add_option("--alpha", alpha, "oscillator constant alpha");
        auto* b = cmd->add_option("--beta", beta, "oscillator constant beta");
        auto* g = cmd->add_option("--gamma", gamma, "oscillator constant gamma");
        auto* z = cmd->add_option("--zeta", zeta, "oscillator constant zeta");
        cmd->add_option("--theta", theta, "threshold ratio c_thresh/c_shear (default 1)");
        auto* f = cmd->add_option("--params", params_file,
                                  "JSON file with alpha..zeta or a full kinetics record");
        if (required) {
            f->excludes(a)->excludes(b)->excludes(g)->excludes(z);
        }
    }

    lymphflow::NondimParams resolve() const {
        if (!params_file.empty()) {
            return nondim_from_json(load_json(params_file));
        }
        lymphflow::NondimParams p{alpha, beta, gamma, zeta, theta};
        return p;
    }
};

lymphflow::VesselDims vessel_dims_from_json(const json& j) {
    lymphflow::VesselDims v;
    v.R0 = j.at("R0").get<double>();
    v.L = j.at("L").get<double>();
    v.Vx = j.at("Vx").get<double>();
    v.rho = j.at("rho").get<double>();
    v.nu = j.at("nu").get<double>();
    v.G = j.at("G").get<double>();
    v.T = j.at("T").get<double>();
    return v;
}

lymphflow::PressureLaw law_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") {
        return lymphflow::PowerLawCoeffs{j.at("gamma_exp").get<double>()};
    }
    if (kind == "rahbar") {
        return lymphflow::RahbarCoeffs{j.at("p0").get<double>(), j.at("sp").get<double>(),
                                       j.at("z0").get<double>(), j.at("a").get<double>(),
                                       j.at("b").get<double>()};
    }
    if (kind == "reciprocal") {
        return lymphflow::ReciprocalCoeffs{j.at("g").get<double>(), j.at("z0").get<double>(),
                                           j.at("lambda").get<double>(), j.at("a").get<double>(),
                                           j.at("b").get<double>()};
    }
    throw std::invalid_argument("unknown pressure law kind: " + kind);
}

json law_to_json(const lymphflow::PressureLaw& law) {
    using namespace lymphflow;
    json j;
    if (const auto* p = std::get_if<PowerLawCoeffs>(&law)) {
        j["kind"] = "power";
        j["gamma_exp"] = p->gamma_exp;
    } else if (const auto* r = std::get_if<RahbarCoeffs>(&law)) {
        j["kind"] = "rahbar";
        j["p0"] = r->p0;
        j["sp"] = r->sp;
        j["z0"] = r->z0;
        j["a"] = r->a;
        j["b"] = r->b;
    } else {
        const auto& c = std::get<ReciprocalCoeffs>(law);
        j["kind"] = "reciprocal";
        j["g"] = c.g;
        j["z0"] = c.z0;
        j["lambda"] = c.lambda;
        j["a"] = c.a;
        j["b"] = c.b;
    }
    return j;
}

std::vector<lymphflow::FitPoint> read_fit_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open data file: " + path);
    }
    std::vector<lymphflow::FitPoint> data;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;  // header
            continue;
        }
        std::istringstream row(line);
        std::string zs, ps;
        if (!std::getline(row, zs, ',') || !std::getline(row, ps)) {
            throw std::invalid_argument("malformed CSV row: " + line);
        }
        data.push_back({std::stod(zs), std::stod(ps)});
    }
    return data;
}

// ---------------------------------------------------------------------------
// Subcommand payloads.
// ---------------------------------------------------------------------------

const char* eq_label_name(lymphflow::EqLabel l) {
    switch (l) {
        case lymphflow::EqLabel::Regular: return "regular";
        case lymphflow::EqLabel::Virtual: return "virtual";
        case lymphflow::EqLabel::Boundary: return "boundary";
    }
    return "?";
}

const char* pseudo_label_name(lymphflow::PseudoLabel l) {
    switch (l) {
        case lymphflow::PseudoLabel::Admissible: return "admissible";
        case lymphflow::PseudoLabel::Virtual: return "virtual";
        case lymphflow::PseudoLabel::Undefined: return "undefined";
    }
    return "?";
}

const char* status_name(lymphflow::EquilibriumStatus s) {
    switch (s) {
        case lymphflow::EquilibriumStatus::Admissible: return "admissible";
        case lymphflow::EquilibriumStatus::Virtual: return "virtual";
        case lymphflow::EquilibriumStatus::Boundary: return "boundary";
    }
    return "?";
}

const char* segment_name(lymphflow::SegmentKind k) {
    switch (k) {
        case lymphflow::SegmentKind::Crossing: return "crossing";
        case lymphflow::SegmentKind::AttractingSliding: return "attracting-sliding";
        case lymphflow::SegmentKind::RepellingSliding: return "repelling-sliding";
    }
    return "?";
}

const char* event_name(lymphflow::EventKind k) {
    switch (k) {
        case lymphflow::EventKind::CrossUp: return "cross-up";
        case lymphflow::EventKind::CrossDown: return "cross-down";
        case lymphflow::EventKind::TangencyGraze: return "tangency-graze";
        case lymphflow::EventKind::SlidingEntry: return "sliding-entry";
        case lymphflow::EventKind::SlidingExit: return "sliding-exit";
    }
    return "?";
}

int run_scales(const std::string& preset, const std::string& params_file, bool as_json) {
    lymphflow::VesselDims dims;
    if (!params_file.empty()) {
        dims = vessel_dims_from_json(load_json(params_file));
    } else if (preset == "artery") {
        dims = lymphflow::artery_preset();
    } else if (preset == "vein") {
        dims = lymphflow::vein_preset();
    } else if (preset == "lymphangion") {
        dims = lymphflow::lymphangion_preset();
    } else {
        throw std::invalid_argument("scales: pass --preset artery|vein|lymphangion or --params");
    }
    const lymphflow::ScaleSet s = lymphflow::lubrication_scales(dims);
    if (as_json) {
        json j;
        j["epsilon"] = s.epsilon;
        j["reynolds"] = s.reynolds;
        j["pressure_scale"] = s.pressure_scale;
        j["tube_number"] = s.tube_number;
        j["sigma"] = s.sigma;
        j["capillary"] = s.capillary;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "epsilon        " << fmt(s.epsilon) << "\n"
                  << "reynolds       " << fmt(s.reynolds) << "\n"
                  << "pressure_scale " << fmt(s.pressure_scale) << "\n"
                  << "tube_number    " << fmt(s.tube_number) << "\n"
                  << "sigma          " << fmt(s.sigma) << "\n"
                  << "capillary      " << fmt(s.capillary) << "\n";
    }
    return 0;
}

int run_fit(const std::string& law_name, const std::string& data_file,
            std::vector<double> init, const std::string& params_file,
            const std::vector<std::string>& fixed, const std::string& out_file) {
    using namespace lymphflow;
    if (!params_file.empty()) {
        if (!init.empty()) {
            throw std::invalid_argument("fit: pass either --init or --params, not both");
        }
        init = detail::law_coefficients(law_from_json(load_json(params_file)));
    }
    LawKind kind;
    PressureLaw guess;
    if (law_name == "power") {
        kind = LawKind::PowerLaw;
        guess = PowerLawCoeffs{init.empty() ? 1.0 : init[0]};
        if (!init.empty() && init.size() != 1) {
            throw std::invalid_argument("fit: power law takes one coefficient (gamma_exp)");
        }
    } else if (law_name == "rahbar") {
        kind = LawKind::Rahbar;
        if (init.empty()) {
            guess = RahbarCoeffs{};
        } else if (init.size() == 5) {
            guess = RahbarCoeffs{init[0], init[1], init[2], init[3], init[4]};
        } else {
            throw std::invalid_argument("fit: rahbar law takes five coefficients p0,sp,z0,a,b");
        }
    } else if (law_name == "reciprocal") {
        kind = LawKind::Reciprocal;
        if (init.empty()) {
            guess = ReciprocalCoeffs{};
        } else if (init.size() == 5) {
            guess = ReciprocalCoeffs{init[0], init[1], init[2], init[3], init[4]};
        } else {
            throw std::invalid_argument(
                "fit: reciprocal law takes five coefficients g,z0,lambda,a,b");
        }
    } else {
        throw std::invalid_argument("fit: --law must be power, rahbar or reciprocal");
    }

    FitOptions opts;
    for (const std::string& name : fixed) {
        const auto coeffs = detail::law_coefficients(guess);
        bool matched = false;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (name == detail::coefficient_name(kind, i)) {
                opts.fixed.push_back(i);
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw std::invalid_argument("fit: unknown coefficient name: " + name);
        }
    }

    const auto data = read_fit_csv(data_file);
    const FitResult res = fit_pressure_law(data, kind, guess, opts);

    json j;
    j["law"] = law_to_json(res.law);
    j["residual_norm"] = res.report.residual_norm;
    j["iterations"] = res.report.iterations;
    j["converged"] = res.report.converged;
    j["points"] = data.size();
    const std::string text = j.dump(2) + "\n";
    if (out_file.empty()) {
        std::cout << text;
    } else {
        write_file(out_file, text);
    }
    return 0;
}

int run_classify(const lymphflow::NondimParams& p, double n_max, bool as_json) {
    using namespace lymphflow;
    const BoundaryClassification cls = classify_boundary(p, n_max);
    const auto eqs = equilibria(p);
    const auto ps = pseudo_equilibrium(p);

    if (as_json) {
        json j;
        for (const auto& seg : cls.segments) {
            j["segments"].push_back(
                {{"n_lo", seg.n_lo}, {"n_hi", seg.n_hi}, {"kind", segment_name(seg.kind)}});
        }
        j["tangent_points"] = json::array();
        for (const auto& tp : cls.tangent_points) {
            j["tangent_points"].push_back(
                {{"n", tp.location.n},
                 {"lie2_f1", tp.lie2_f1},
                 {"lie2_f2", tp.lie2_f2},
                 {"visible_f1", tp.vis_f1 == Visibility::Visible},
                 {"visible_f2", tp.vis_f2 == Visibility::Visible}});
        }
        for (const auto& eq : eqs) {
            j["equilibria"].push_back({{"field", eq.field == FieldId::F1 ? "F1" : "F2"},
                                       {"n", eq.point.n},
                                       {"c", eq.point.c},
                                       {"status", status_name(eq.status)},
                                       {"eigenvalues", {eq.eigenvalues[0], eq.eigenvalues[1]}},
                                       {"degenerate_node",
                                        eq.node_type == NodeType::StableDegenerateNode}});
        }
        if (ps) {
            j["pseudo_equilibrium"] = {{"n", ps->point.n},
                                       {"alpha_p", ps->alpha_p},
                                       {"admissible", ps->admissible},
                                       {"sliding_eigenvalue", ps->sliding_eigenvalue}};
        } else {
            j["pseudo_equilibrium"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::cout << "boundary segments (C = 1):\n";
    for (const auto& seg : cls.segments) {
        std::cout << "  N in [" << fmt(seg.n_lo) << ", " << fmt(seg.n_hi) << ")  "
                  << segment_name(seg.kind) << "\n";
    }
    std::cout << "tangent points:\n";
    if (cls.tangent_points.empty()) std::cout << "  none in N >= 0\n";
    for (const auto& tp : cls.tangent_points) {
        std::cout << "  N = " << fmt(tp.location.n) << "  lie2(F1) = " << fmt(tp.lie2_f1) << " ("
                  << (tp.vis_f1 == Visibility::Visible ? "visible" : "invisible")
                  << ")  lie2(F2) = " << fmt(tp.lie2_f2) << " ("
                  << (tp.vis_f2 == Visibility::Visible ? "visible" : "invisible") << ")\n";
    }
    std::cout << "equilibria:\n";
    for (const auto& eq : eqs) {
        std::cout << "  " << (eq.field == FieldId::F1 ? "F1" : "F2") << " at (N, C) = ("
                  << fmt(eq.point.n) << ", " << fmt(eq.point.c) << ")  "
                  << status_name(eq.status) << "  eigenvalues (" << fmt(eq.eigenvalues[0])
                  << ", " << fmt(eq.eigenvalues[1]) << ")"
                  << (eq.node_type == NodeType::StableDegenerateNode ? "  degenerate node" : "")
                  << "\n";
    }
    if (ps) {
        std::cout << "pseudo-equilibrium: N = " << fmt(ps->point.n)
                  << "  alpha_p = " << fmt(ps->alpha_p) << "  "
                  << (ps->admissible ? "admissible" : "virtual") << "\n";
    } else {
        std::cout << "pseudo-equilibrium: undefined (gamma = alpha * zeta)\n";
    }
    return 0;
}

int run_simulate(const lymphflow::NondimParams& p, double n0, double c0, double t_max,
                 bool two_threshold, const std::string& out_file,
                 const std::string& events_file) {
    using namespace lymphflow;
    IntegratorConfig cfg;
    cfg.max_time = t_max;
    const State x0{n0, c0};
    const Trajectory traj =
        two_threshold ? simulate_two_threshold(x0, p, cfg) : simulate(x0, p, cfg);

    std::string csv = "t,N,C,active_field\n";
    for (const auto& s : traj.samples) {
        csv += fmt(s.t);
        csv += ',';
        csv += fmt(s.state.n);
        csv += ',';
        csv += fmt(s.state.c);
        csv += ',';
        csv += std::to_string(s.region);
        csv += '\n';
    }
    write_file(out_file, csv);

    std::string events = "t,kind,N,C,manifold\n";
    for (const auto& e : traj.events) {
        events += fmt(e.t);
        events += ',';
        events += event_name(e.kind);
        events += ',';
        events += fmt(e.state.n);
        events += ',';
        events += fmt(e.state.c);
        events += ',';
        events += std::to_string(e.manifold);
        events += '\n';
    }
    write_file(events_file.empty() ? out_file + ".events.csv" : events_file, events);

    std::cout << "samples: " << traj.samples.size() << ", events: " << traj.events.size()
              << "\n";
    return 0;
}

int run_cycle(const lymphflow::NondimParams& p, double tol, int scan_samples,
              const std::string& polyline_file, const std::string& out_file) {
    using namespace lymphflow;
    const OscillationCheck chk = oscillation_conditions(p);
    json j;
    j["oscillatory"] = chk.oscillatory;
    j["margin_lower"] = chk.margin_lower;
    j["margin_upper"] = chk.margin_upper;
    if (chk.oscillatory) {
        const CycleReport rep = find_limit_cycle(p, tol);
        j["n_star"] = rep.n_star;
        j["n_half"] = rep.n_half;
        j["period"] = rep.period;
        j["iterations"] = rep.iterations;
        j["residual"] = rep.residual;
        if (scan_samples > 1) {
            j["fixed_point_brackets"] = json::array();
            for (const auto& [lo, hi] : fixed_point_brackets(p, scan_samples)) {
                j["fixed_point_brackets"].push_back({lo, hi});
            }
        }
        if (!polyline_file.empty()) {
            const auto poly = cycle_polyline(rep, p);
            std::string csv = "N,C\n";
            for (const auto& s : poly) {
                csv += fmt(s.n);
                csv += ',';
                csv += fmt(s.c);
                csv += '\n';
            }
            write_file(polyline_file, csv);
        }
    }
    const std::string text = j.dump(2) + "\n";
    if (out_file.empty()) {
        std::cout << text;
    } else {
        write_file(out_file, text);
    }
    if (!chk.oscillatory) {
        std::cerr << "oscillation conditions not satisfied; no cycle computed\n";
    }
    return 0;
}

void append_regime_row(std::string& csv, const lymphflow::RegimePoint& pt) {
    csv += fmt(pt.beta);
    csv += ',';
    csv += fmt(pt.gamma);
    csv += ',';
    csv += eq_label_name(pt.label.eq_f1);
    csv += ',';
    csv += eq_label_name(pt.label.eq_f2);
    csv += ',';
    csv += pseudo_label_name(pt.label.pseudo);
    csv += ',';
    csv += pt.label.oscillatory ? '1' : '0';
    csv += '\n';
}

int run_bifurcate(double alpha, double zeta, double gamma, const std::string& params_file,
                  const std::string& beta_range, const std::string& gamma_range, bool diagram,
                  const std::string& out_file) {
    using namespace lymphflow;
    auto parse_range = [](const std::string& spec, double& lo, double& hi, int& count) {
        std::istringstream ss(spec);
        std::string a, b, c;
        if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
            throw std::invalid_argument("range must be lo:hi:count, got " + spec);
        }
        lo = std::stod(a);
        hi = std::stod(b);
        count = std::stoi(c);
    };

    NondimParams base;
    if (!params_file.empty()) {
        base = nondim_from_json(load_json(params_file));
        if (gamma > 0.0) base.gamma = gamma;
    } else {
        base.alpha = alpha;
        base.zeta = zeta;
        base.gamma = gamma > 0.0 ? gamma : 1.0;
        base.beta = 1.0;
    }

    std::string csv = "beta,gamma,eq_f1,eq_f2,pseudo,oscillatory\n";
    if (diagram) {
        double blo, bhi, glo, ghi;
        int bn, gn;
        parse_range(beta_range.empty() ? "0.05:1.2:201" : beta_range, blo, bhi, bn);
        parse_range(gamma_range.empty() ? "0.05:1.2:201" : gamma_range, glo, ghi, gn);
        const auto grid = sweep_grid(base, blo, bhi, bn, glo, ghi, gn);
        for (const auto& pt : grid) append_regime_row(csv, pt);
    } else {
        if (beta_range.empty()) {
            throw std::invalid_argument("bifurcate: --beta-range lo:hi:count required");
        }
        if (!(gamma > 0.0)) {
            throw std::invalid_argument("bifurcate: --gamma required for a beta sweep");
        }
        double blo, bhi;
        int bn;
        parse_range(beta_range, blo, bhi, bn);
        const auto sweep = sweep_beta(base, blo, bhi, bn);
        for (const auto& pt : sweep) append_regime_row(csv, pt);
    }

    if (out_file.empty()) {
        std::cout << csv;
    } else {
        write_file(out_file, csv);
        // classification summary to stdout
        const auto cls = classify_beb(base);
        std::cout << "beb discriminant zeta - gamma/alpha = " << fmt(cls.discriminant)
                  << " ("
                  << (cls.type == BebType::Persistence
                          ? "persistence"
                          : cls.type == BebType::NonsmoothFold ? "non-smooth fold" : "degenerate")
                  << ")\n";
    }
    return 0;
}

std::vector<double> initial_profile_from_json(const json& init, int cells, double domain,
                                              double fallback_uniform) {
    std::vector<double> r(static_cast<std::size_t>(cells), fallback_uniform);
    if (init.contains("uniform")) {
        std::fill(r.begin(), r.end(), init.at("uniform").get<double>());
    }
    if (init.contains("cosine")) {
        const auto& c = init.at("cosine");
        const double mean = c.at("mean").get<double>();
        const double amp = c.at("amplitude").get<double>();
        const double mode = c.value("mode", 1.0);
        const double pi = 3.14159265358979323846;
        for (int i = 0; i < cells; ++i) {
            const double x = (i + 0.5) * domain / cells;
            r[static_cast<std::size_t>(i)] = mean + amp * std::cos(mode * pi * x / domain);
        }
    }
    return r;
}

lymphflow::EndBC end_bc_from_json(const json& j, lymphflow::ValveSide side) {
    using namespace lymphflow;
    const std::string type = j.at("type").get<std::string>();
    if (type == "pressure") {
        return PressureBC{j.at("p_external").get<double>()};
    }
    if (type != "valve") {
        throw std::invalid_argument("bc type must be pressure or valve");
    }
    ValveBC bc;
    bc.side = side;
    bc.r_minus = j.at("r_minus").get<double>();
    bc.r_plus = j.at("r_plus").get<double>();
    bc.p_external = j.value("p_external", 0.0);
    const auto& act = j.at("activation");
    if (act.at("type") == "heaviside") {
        bc.activation = HeavisideActivation{};
    } else if (act.at("type") == "sigmoid") {
        bc.activation = SigmoidActivation{act.at("steepness").get<double>()};
    } else {
        throw std::invalid_argument("activation type must be heaviside or sigmoid");
    }
    const auto& trig = j.at("trigger");
    if (trig.at("type") == "pressure_drop") {
        bc.trigger = PressureDropTrigger{trig.at("threshold").get<double>()};
    } else if (trig.at("type") == "calcium") {
        CalciumTrigger ct;
        ct.threshold = trig.at("threshold").get<double>();
        const std::string series_csv = trig.at("series_csv").get<std::string>();
        std::ifstream in(series_csv);
        if (!in) {
            throw std::invalid_argument("cannot open calcium series: " + series_csv);
        }
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (first) {
                first = false;
                continue;
            }
            std::istringstream row(line);
            std::string ts, vs;
            std::getline(row, ts, ',');
            std::getline(row, vs);
            ct.series.t.push_back(std::stod(ts));
            ct.series.v.push_back(std::stod(vs));
        }
        bc.trigger = std::move(ct);
    } else {
        throw std::invalid_argument("trigger type must be pressure_drop or calcium");
    }
    return bc;
}

int run_pde(const std::string& model, const std::string& config_file, double t_end,
            const std::string& out_file) {
    using namespace lymphflow;
    const json cfg_json = load_json(config_file);
    const std::string kind = model.empty() ? cfg_json.value("model", "") : model;

    if (kind == "leading") {
        LeadingOrderConfig cfg;
        cfg.cells = cfg_json.value("cells", 200);
        cfg.domain_length = cfg_json.value("domain_length", 1.0);
        cfg.tau = cfg_json.at("tau").get<double>();
        cfg.sigma = cfg_json.value("sigma", 0.0);
        if (cfg_json.contains("law")) cfg.law = law_from_json(cfg_json.at("law"));
        cfg.sample_interval = cfg_json.value("sample_interval", 0.0);
        LeadingOrderBC bc;
        if (cfg_json.contains("bc")) {
            const auto& b = cfg_json.at("bc");
            bc.r_left = b.value("r_left", 1.0);
            bc.r_right = b.value("r_right", 1.0);
            bc.px_left = b.value("px_left", 0.0);
            bc.px_right = b.value("px_right", 0.0);
        }
        const auto r0 = initial_profile_from_json(cfg_json.value("initial", json::object()),
                                                  cfg.cells, cfg.domain_length, 1.0);
        const auto res = solve_leading_order(r0, bc, cfg, t_end);
        std::string csv = "t,x,R\n";
        for (const auto& frame : res.frames) {
            for (std::size_t i = 0; i < res.x.size(); ++i) {
                csv += fmt(frame.t);
                csv += ',';
                csv += fmt(res.x[i]);
                csv += ',';
                csv += fmt(frame.r[i]);
                csv += '\n';
            }
        }
        write_file(out_file, csv);
        std::cout << "steps: " << res.steps << ", frames: " << res.frames.size() << "\n";
        return 0;
    }

    if (kind == "averaged") {
        AveragedConfig cfg;
        cfg.cells = cfg_json.value("cells", 200);
        cfg.cfl = cfg_json.value("cfl", 0.4);
        cfg.sample_interval = cfg_json.value("sample_interval", 0.0);
        const auto& vj = cfg_json.at("vessel");
        cfg.vessel.length = vj.at("length").get<double>();
        cfg.vessel.rho = vj.at("rho").get<double>();
        cfg.vessel.nu = vj.at("nu").get<double>();
        cfg.vessel.G = vj.at("G").get<double>();
        cfg.vessel.T = vj.value("T", 0.0);
        cfg.vessel.R0 = vj.at("R0").get<double>();
        cfg.vessel.include_tension = vj.value("include_tension", true);
        if (vj.contains("law")) cfg.vessel.law = law_from_json(vj.at("law"));
        if (vj.contains("profile")) {
            cfg.vessel.profile = PowerLawProfile{vj.at("profile").at("gamma_exp").get<double>()};
        }
        const EndBC left = end_bc_from_json(cfg_json.at("bc_left"), ValveSide::Inlet);
        const EndBC right = end_bc_from_json(cfg_json.at("bc_right"), ValveSide::Outlet);

        const double pi = 3.14159265358979323846;
        double a0 = pi * cfg.vessel.R0 * cfg.vessel.R0;
        if (cfg_json.contains("initial")) {
            const auto& ij = cfg_json.at("initial");
            if (ij.contains("uniform_radius")) {
                const double r = ij.at("uniform_radius").get<double>();
                a0 = pi * r * r;
            } else if (ij.contains("uniform_area")) {
                a0 = ij.at("uniform_area").get<double>();
            }
        }
        const double q0 = cfg_json.contains("initial")
                              ? cfg_json.at("initial").value("flux", 0.0)
                              : 0.0;
        std::vector<double> a(static_cast<std::size_t>(cfg.cells), a0);
        std::vector<double> q(static_cast<std::size_t>(cfg.cells), q0);

        const auto res = solve_averaged(a, q, left, right, cfg, t_end);
        std::string csv = "t,x,A,Q\n";
        for (const auto& frame : res.frames) {
            for (std::size_t i = 0; i < res.x.size(); ++i) {
                csv += fmt(frame.t);
                csv += ',';
                csv += fmt(res.x[i]);
                csv += ',';
                csv += fmt(frame.a[i]);
                csv += ',';
                csv += fmt(frame.q[i]);
                csv += '\n';
            }
        }
        write_file(out_file, csv);
        if (!res.valve_events.empty()) {
            std::string ev = "t,side,open,radius\n";
            for (const auto& e : res.valve_events) {
                ev += fmt(e.t);
                ev += ',';
                ev += e.side == ValveSide::Inlet ? "inlet" : "outlet";
                ev += ',';
                ev += e.open ? '1' : '0';
                ev += ',';
                ev += fmt(e.radius);
                ev += '\n';
            }
            write_file(out_file + ".valves.csv", ev);
        }
        std::cout << "steps: " << res.steps << ", frames: " << res.frames.size()
                  << ", valve events: " << res.valve_events.size() << "\n";
        return 0;
    }

    throw std::invalid_argument("pde: model must be leading or averaged");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lymph-flow models: non-smooth Ca2+/NO oscillator and reduced vessel-flow "
                 "solvers"};
    app.set_version_flag("--version", std::string("lymphflow ") + kVersion);
    app.require_subcommand(1);

    // scales
    auto* scales = app.add_subcommand("scales", "print lubrication scale groups");
    std::string scales_preset, scales_params;
    bool scales_json = false;
    scales->add_option("--preset", scales_preset, "artery | vein | lymphangion");
    scales->add_option("--params", scales_params, "JSON vessel record (R0, L, Vx, rho, nu, G, T)");
    scales->add_flag("--json", scales_json, "emit JSON");

    // fit
    auto* fit = app.add_subcommand("fit", "fit a pressure-radius law to (z, p) CSV data");
    std::string fit_law, fit_data, fit_out, fit_params;
    std::vector<double> fit_init;
    std::vector<std::string> fit_fixed;
    fit->add_option("--law", fit_law, "power | rahbar | reciprocal")->required();
    fit->add_option("--data", fit_data, "two-column CSV with header")->required();
    fit->add_option("--init", fit_init, "initial coefficients (comma separated)")->delimiter(',');
    fit->add_option("--params", fit_params, "JSON pressure-law record used as the initial guess");
    fit->add_option("--fix", fit_fixed, "coefficient names to hold fixed")->delimiter(',');
    fit->add_option("--out", fit_out, "write the JSON fit report here instead of stdout");

    // classify
    auto* classify = app.add_subcommand("classify", "boundary regions, tangencies, equilibria");
    NondimCli classify_params;
    classify_params.attach(classify, true);
    double classify_nmax = -1.0;
    bool classify_json = false;
    classify->add_option("--n-max", classify_nmax, "right edge of the reported window");
    classify->add_flag("--json", classify_json, "emit JSON");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "event-detecting trajectory integration");
    NondimCli sim_params;
    sim_params.attach(simulate, true);
    std::vector<double> sim_x0{1.0, 1.5};
    double sim_tmax = 50.0;
    bool sim_two = false;
    std::string sim_out = "traj.csv", sim_events;
    simulate->add_option("--x0", sim_x0, "initial state N,C")->delimiter(',')->expected(2);
    simulate->add_option("--t-max", sim_tmax, "time horizon");
    simulate->add_flag("--two-threshold", sim_two, "use the two-threshold system (theta != 1)");
    simulate->add_option("--out", sim_out, "trajectory CSV path");
    simulate->add_option("--events-out", sim_events, "events CSV path (default <out>.events.csv)");

    // cycle
    auto* cycle = app.add_subcommand("cycle", "limit-cycle fixed point, period and residual");
    NondimCli cycle_params;
    cycle_params.attach(cycle, true);
    double cycle_tol = 1e-10;
    int cycle_scan = 0;
    std::string cycle_poly, cycle_out;
    cycle->add_option("--tol", cycle_tol, "fixed-point bisection tolerance");
    cycle->add_option("--scan", cycle_scan,
                      "sample the return map this many times and report every "
                      "fixed-point bracket");
    cycle->add_option("--polyline", cycle_poly, "emit the closed orbit as (N, C) CSV");
    cycle->add_option("--out", cycle_out, "write the JSON report here instead of stdout");

    // bifurcate
    auto* bifurcate = app.add_subcommand("bifurcate", "regime sweeps and BEB classification");
    double bif_alpha = 0.3, bif_zeta = 2.0, bif_gamma = -1.0;
    std::string bif_beta_range, bif_gamma_range, bif_out, bif_params;
    bool bif_diagram = false;
    bifurcate->add_option("--alpha", bif_alpha, "oscillator constant alpha");
    bifurcate->add_option("--zeta", bif_zeta, "oscillator constant zeta");
    bifurcate->add_option("--gamma", bif_gamma, "gamma for a single beta sweep");
    bifurcate->add_option("--params", bif_params,
                          "JSON file supplying the base oscillator constants");
    bifurcate->add_option("--beta-range", bif_beta_range, "lo:hi:count");
    bifurcate->add_option("--gamma-range", bif_gamma_range, "lo:hi:count (diagram mode)");
    bifurcate->add_flag("--diagram", bif_diagram, "emit the full (beta, gamma) grid");
    bifurcate->add_option("--out", bif_out, "CSV output path (stdout if omitted)");

    // pde
    auto* pde = app.add_subcommand("pde", "reduced vessel-flow solvers");
    std::string pde_model, pde_config, pde_out = "fields.csv";
    double pde_tend = 1.0;
    pde->add_option("model", pde_model, "leading | averaged");
    pde->add_option("--config,--params", pde_config, "JSON solver configuration")->required();
    pde->add_option("--t-end", pde_tend, "final time");
    pde->add_option("--out", pde_out, "long-format CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage message
        return 2;
    }

    try {
        if (scales->parsed()) {
            return run_scales(scales_preset, scales_params, scales_json);
        }
        if (fit->parsed()) {
            return run_fit(fit_law, fit_data, fit_init, fit_params, fit_fixed, fit_out);
        }
        if (classify->parsed()) {
            return run_classify(classify_params.resolve(), classify_nmax, classify_json);
        }
        if (simulate->parsed()) {
            return run_simulate(sim_params.resolve(), sim_x0[0], sim_x0[1], sim_tmax, sim_two,
                                sim_out, sim_events);
        }
        if (cycle->parsed()) {
            return run_cycle(cycle_params.resolve(), cycle_tol, cycle_scan, cycle_poly, cycle_out);
        }
        if (bifurcate->parsed()) {
            return run_bifurcate(bif_alpha, bif_zeta, bif_gamma, bif_params, bif_beta_range,
                                 bif_gamma_range, bif_diagram, bif_out);
        }
        if (pde->parsed()) {
            return run_pde(pde_model, pde_config, pde_tend, pde_out);
        }
    } catch (const lymphflow::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
