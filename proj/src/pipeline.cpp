#include "brodyforge/pipeline.hpp"

#include "brodyforge/error.hpp"
#include "brodyforge/interpolation.hpp"
#include "brodyforge/products.hpp"

#include <cmath>
#include <numeric>

namespace brodyforge {

namespace {

const char* command_name(Command c) {
    switch (c) {
    case Command::validate: return "validate";
    case Command::lemma1: return "lemma1";
    case Command::interpolate: return "interpolate";
    case Command::curve: return "curve";
    case Command::rescale: return "rescale";
    default: return "full";
    }
}

struct Artifacts {
    const RunRequest& req;
    RunResult& result;

    void write_table(const Table& t) {
        bool as_json = req.format == Format::json;
        std::string name = t.name + (as_json ? ".json" : ".csv");
        write_file(req.out_dir / name, as_json ? to_json(t) : to_csv(t));
        result.files_written.push_back(name);
    }
    void write_json(const std::string& name, const json& j) {
        write_file(req.out_dir / name, j.dump(2) + "\n");
        result.files_written.push_back(name);
    }
    void write_plot(const PlotData& p) {
        write_file(req.out_dir / "plot_data.csv", to_csv(p));
        result.files_written.push_back("plot_data.csv");
    }
};

CurveTolerances curve_tolerances(const Tolerances& t) {
    CurveTolerances c;
    c.residual_rel = t.residual_rel;
    c.qj_roundtrip = t.qj_roundtrip;
    c.blowup_rel = t.blowup_rel;
    c.tail_bound_max = t.tail_bound_max;
    return c;
}

void stage_validate(const NodeSystem& nodes, double tail_bound_max, Artifacts& art) {
    NodeValidation v = validate_nodes(nodes, tail_bound_max);
    json violations = json::array();
    for (const Violation& x : v.violations)
        violations.push_back(json{{"code", x.code}, {"message", x.message}});
    json rep{{"ok", v.ok},
             {"violations", violations},
             {"nodes", to_json(nodes)},
             {"tail_bound", nodes.tail_bound}};
    art.write_json("validation.json", rep);
    if (!v.ok) {
        std::string msg = "node system rejected:";
        for (const Violation& x : v.violations) msg += " [" + x.code + "] " + x.message;
        fail(ErrorKind::validation, msg, violations.dump());
    }
}

void run_lemma1(const RunRequest& req, RunResult& res, Artifacts& art) {
    SequenceConfig seq = parse_sequence_config(req.config);
    ConvergenceReport rep = lemma1_classify(seq.c);

    Table t;
    t.name = "lemma1";
    t.columns = {"N", "sum", "prod_plus", "prod_minus"};
    for (size_t i = 0; i < seq.c.size(); ++i)
        t.add_row({static_cast<long long>(i + 1), rep.partial_sums[i],
                   rep.partial_products_plus[i], rep.partial_products_minus[i]});
    art.write_table(t);

    json summary{{"command", "lemma1"},
                 {"sequence", seq.label},
                 {"N", static_cast<long long>(seq.c.size())},
                 {"verdict", to_string(rep.verdict)}};
    art.write_json("lemma1_summary.json", summary);
    res.summary = std::move(summary);
}

void stage_interpolate(const CurveSpec& spec, Artifacts& art, PlotData& plot, json& summary) {
    std::vector<ResidualRow> rows = residual_report(spec.interp);
    Table t;
    t.name = "residuals";
    t.columns = {"j", "abs_val_res", "abs_der_res", "rel_val_res", "rel_der_res"};
    for (const ResidualRow& r : rows)
        t.add_row({static_cast<long long>(r.j), r.abs_val_res, r.abs_der_res, r.rel_val_res,
                   r.rel_der_res});
    art.write_table(t);
    art.write_json("interpolant.json", to_json(spec.interp));
    plot.add_series("rel_val_res", t, "j", "rel_val_res");
    plot.add_series("rel_der_res", t, "j", "rel_der_res");
    auto [val_res, der_res] = max_residuals(spec.interp);
    summary["max_rel_val_res"] = val_res;
    summary["max_rel_der_res"] = der_res;
}

void stage_curve(const CurveSpec& spec, const std::vector<BlowupRow>& rows, Artifacts& art,
                 PlotData& plot, json& summary) {
    Table t;
    t.name = "blowup";
    t.columns = {"j", "re(point)", "im(point)", "length_E", "lower_bound", "ratio"};
    for (const BlowupRow& r : rows)
        t.add_row({static_cast<long long>(r.j), r.point.real(), r.point.imag(), r.length_E,
                   r.lower_bound, r.ratio});
    art.write_table(t);
    art.write_json("curve.json", to_json(spec));
    plot.add_series("length_E", t, "j", "length_E");
    plot.add_series("lower_bound", t, "j", "lower_bound");
    summary["max_lower_bound"] = rows.empty() ? 0.0 : rows.back().lower_bound;
}

void stage_rescale(const ScenarioConfig& cfg, const CurveSpec& spec,
                   const std::vector<BlowupRow>& blowup, const Tolerances& tol, Artifacts& art,
                   PlotData& plot, json& summary) {
    const RescalingParams& rp = cfg.rescaling;
    RescalingRun run = make_rescaling_run(spec, rp.A, rp.B, rp.delta, rp.j_list, rp.grid);

    std::vector<int> n_list(64);
    std::iota(n_list.begin(), n_list.end(), 1);
    CompactnessReport comp = check_not_compactly_divergent(run.curve, n_list);
    if (!comp.pass)
        fail(ErrorKind::internal, "f_n(0) drifted across n; evaluating F(0) twice disagreed");

    std::vector<ConvergenceRow> rows = limit_identification(run);

    bool punctured = spec.variant == CurveSpec::Variant::punctured;
    double absB = std::abs(rp.B);
    double min_mod_floor = std::exp(rp.A.real() - absB * rp.grid.radius) / 2.0;
    bool exact_case = rp.delta == 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
        const ConvergenceRow& r = rows[i];
        if (exact_case) {
            if (!(r.dev_first_coord <= tol.rescale_dev) || !(r.dev_full_map <= tol.rescale_dev))
                fail(ErrorKind::tolerance,
                     "exact-case rescaled map deviates from F(A + B xi) at j = " +
                         std::to_string(r.j) + " by " + fmt_double(r.dev_full_map));
            if (!(std::abs(r.jrho_measured - absB) <= tol.jrho_tol))
                fail(ErrorKind::tolerance, "exact-case j rho_j = " + fmt_double(r.jrho_measured) +
                                               " misses |B| = " + fmt_double(absB));
        } else if (i > 0) {
            if (!(r.dev_full_map < rows[i - 1].dev_full_map) ||
                !(r.dev_first_coord < rows[i - 1].dev_first_coord))
                fail(ErrorKind::tolerance,
                     "perturbed-case deviations fail to shrink at j = " + std::to_string(r.j));
        }
        if (punctured) {
            if (!(r.min_modulus_first_coord >= min_mod_floor))
                fail(ErrorKind::tolerance,
                     "first coordinate modulus " + fmt_double(r.min_modulus_first_coord) +
                         " dips below the non-vanishing floor " + fmt_double(min_mod_floor) +
                         " at j = " + std::to_string(r.j));
            if (!(r.logderiv_fd_rel_err <= tol.logderiv_tol) ||
                !(r.logderiv_fd_imag_max <= tol.logderiv_tol))
                fail(ErrorKind::tolerance,
                     "log-derivative quotient misses j rho_j at j = " + std::to_string(r.j) +
                         " (rel err " + fmt_double(r.logderiv_fd_rel_err) + ", imag " +
                         fmt_double(r.logderiv_fd_imag_max) + ")");
        }
    }

    WitnessReport wit = contradiction_witness(run, cfg.witness_c_list, blowup, tol.chain_rel);
    for (const WitnessRow& w : wit.witnesses)
        if (w.j == 0)
            fail(ErrorKind::tolerance, "no computed j reaches candidate bound c = " + fmt_double(w.c) +
                                           "; extend the node system");

    Table ct;
    ct.name = "convergence";
    ct.columns = {"j", "dev_first_coord", "dev_full_map", "jrho_measured", "min_modulus_first_coord"};
    for (const ConvergenceRow& r : rows)
        ct.add_row({static_cast<long long>(r.j), r.dev_first_coord, r.dev_full_map, r.jrho_measured,
                    r.min_modulus_first_coord});
    art.write_table(ct);

    Table wt;
    wt.name = "witness";
    wt.columns = {"c", "witness_j", "bound_scaled", "length_scaled"};
    for (const WitnessRow& w : wit.witnesses)
        wt.add_row({w.c, static_cast<long long>(w.j), w.bound_scaled, w.length_scaled});
    art.write_table(wt);

    json f0 = json::array();
    for (const cplx& c : comp.f0) f0.push_back(complex_to_json(c));
    json jr = json::array();
    for (const ConvergenceRow& r : rows) {
        json row{{"j", r.j}, {"center_image", complex_to_json(r.center_image)}};
        if (punctured) {
            row["logderiv_fd_rel_err"] = r.logderiv_fd_rel_err;
            row["logderiv_fd_imag_max"] = r.logderiv_fd_imag_max;
        }
        jr.push_back(std::move(row));
    }
    json chain = json::array();
    for (const ChainRuleRow& c : wit.chain)
        chain.push_back(json{{"j", c.j}, {"g_side", c.g_side}, {"f_side", c.f_side},
                             {"rel_err", c.rel_err}});
    json rj{{"A", complex_to_json(rp.A)},
            {"B", complex_to_json(rp.B)},
            {"delta", rp.delta},
            {"j_list", rp.j_list},
            {"grid", json{{"radius", rp.grid.radius}, {"steps", rp.grid.steps}}},
            {"grid_points", static_cast<long long>(run.xi.size())},
            {"compactness", json{{"pass", comp.pass}, {"f0", std::move(f0)}, {"norm", comp.norm}}},
            {"rows", std::move(jr)},
            {"chain", std::move(chain)},
            {"witness_c_list", cfg.witness_c_list}};
    art.write_json("rescale.json", rj);

    plot.add_series("dev_full_map", ct, "j", "dev_full_map");
    plot.add_series("dev_first_coord", ct, "j", "dev_first_coord");
    summary["max_dev_full_map"] = rows.empty() ? 0.0 : rows.front().dev_full_map;
    summary["witnesses"] = wt.rows.size();
}

} // namespace

Command parse_command(const std::string& name) {
    if (name == "validate") return Command::validate;
    if (name == "lemma1") return Command::lemma1;
    if (name == "interpolate") return Command::interpolate;
    if (name == "curve") return Command::curve;
    if (name == "rescale") return Command::rescale;
    if (name == "full") return Command::full;
    fail(ErrorKind::invalid_argument, "unknown command \"" + name + "\"");
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    fail(ErrorKind::invalid_argument, "unknown format \"" + name + "\" (expected csv or json)");
}

Tolerances apply_overrides(Tolerances base, const std::map<std::string, double>& overrides) {
    static const std::map<std::string, double Tolerances::*> fields = {
        {"residual_rel", &Tolerances::residual_rel},
        {"qj_roundtrip", &Tolerances::qj_roundtrip},
        {"blowup_rel", &Tolerances::blowup_rel},
        {"tail_bound_max", &Tolerances::tail_bound_max},
        {"rescale_dev", &Tolerances::rescale_dev},
        {"jrho_tol", &Tolerances::jrho_tol},
        {"logderiv_tol", &Tolerances::logderiv_tol},
        {"chain_rel", &Tolerances::chain_rel},
    };
    for (const auto& [key, value] : overrides) {
        auto it = fields.find(key);
        if (it == fields.end()) {
            std::string known;
            for (const auto& [k, unused] : fields) { (void)unused; known += known.empty() ? k : ", " + k; }
            fail(ErrorKind::validation, "unknown tolerance \"" + key + "\" (known: " + known + ")");
        }
        if (!(value > 0) || !std::isfinite(value))
            fail(ErrorKind::validation, "tolerance " + key + " must be positive and finite");
        base.*(it->second) = value;
    }
    return base;
}

RunResult run_command(const RunRequest& req) {
    if (req.out_dir.empty()) fail(ErrorKind::invalid_argument, "output directory must not be empty");
    Tolerances tol = apply_overrides(Tolerances{}, req.tol_overrides);

    RunResult res;
    Artifacts art{req, res};
    json summary{{"command", command_name(req.command)}};

    if (req.command == Command::lemma1) {
        run_lemma1(req, res, art);
        return res;
    }

    if (req.command == Command::validate) {
        // accepts either a bare node-system object or a whole scenario config
        NodeSystem nodes = req.config.is_object() && req.config.contains("kind")
                               ? parse_nodes(req.config)
                               : parse_scenario(req.config).nodes;
        stage_validate(nodes, tol.tail_bound_max, art);
        summary["ok"] = true;
        res.summary = std::move(summary);
        return res;
    }

    ScenarioConfig cfg = parse_scenario(req.config);
    PlotData plot;

    if (req.command == Command::full) stage_validate(cfg.nodes, tol.tail_bound_max, art);

    CurveSpec spec = build_curve(cfg.variant, cfg.inner, cfg.metric, cfg.nodes, cfg.p_targets,
                                 curve_tolerances(tol));

    if (req.command == Command::interpolate || req.command == Command::curve ||
        req.command == Command::full)
        stage_interpolate(spec, art, plot, summary);

    if (req.command != Command::interpolate) {
        std::vector<BlowupRow> blowup = blowup_table(spec);
        if (req.command == Command::curve || req.command == Command::full)
            stage_curve(spec, blowup, art, plot, summary);
        if (req.command == Command::rescale || req.command == Command::full)
            stage_rescale(cfg, spec, blowup, tol, art, plot, summary);
    }

    art.write_plot(plot);
    res.summary = std::move(summary);
    return res;
}

} // namespace brodyforge
