#include "core/commands.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "core/bifurcation.hpp"
#include "core/config.hpp"
#include "core/csv.hpp"
#include "core/dynamics.hpp"
#include "core/equilibria.hpp"
#include "core/fitting.hpp"
#include "core/phase.hpp"
#include "core/reproduction.hpp"

namespace twostrain {

namespace {

ModelParams read_params(SectionReader& reader, bool shared_gamma = false) {
    ModelParams p;
    p.beta1 = reader.get_double("beta1");
    p.beta2 = reader.get_double("beta2");
    if (shared_gamma) {
        p.gamma1 = p.gamma2 = reader.get_double("gamma");
    } else {
        p.gamma1 = reader.get_double("gamma1");
        p.gamma2 = reader.get_double("gamma2");
    }
    p.sigma1 = reader.get_double("sigma1");
    p.sigma2 = reader.get_double("sigma2");
    p.epsilon = reader.get_double("epsilon");
    p.n_pop = reader.get_double("n_pop");
    return validate_params(p);
}

std::string out_path(const CommandOptions& opt, const std::string& name) {
    std::filesystem::create_directories(opt.out_dir);
    return (std::filesystem::path(opt.out_dir) / name).string();
}

class Report {
public:
    void add(const std::string& key, const std::string& value) {
        body_ << key << "=" << value << "\n";
    }
    void add(const std::string& key, double value) {
        add(key, format_g17(value));
    }
    void add(const std::string& key, bool value) {
        body_ << key << "=" << (value ? 1 : 0) << "\n";
    }
    void write(const std::string& path, bool reproducible) const {
        std::ostringstream out;
        if (!reproducible) {
            out << "# report written by twostrain\n";
        }
        out << body_.str();
        write_text_file(path, out.str());
    }

private:
    std::ostringstream body_;
};

void add_params(Report& report, const ModelParams& p) {
    report.add("beta1", p.beta1);
    report.add("beta2", p.beta2);
    report.add("gamma1", p.gamma1);
    report.add("gamma2", p.gamma2);
    report.add("sigma1", p.sigma1);
    report.add("sigma2", p.sigma2);
    report.add("epsilon", p.epsilon);
    report.add("n_pop", p.n_pop);
}

void add_reproduction(Report& report, const ReproductionSet& r) {
    report.add("r0", r.r0);
    report.add("r1", r.r1);
    report.add("r2", r.r2);
    report.add("r12", r.r12);
    report.add("r21", r.r21);
    report.add("r12_target_physical", r.r12_target_physical);
    report.add("r21_target_physical", r.r21_target_physical);
}

void run_simulate(const RunConfig& config, const CommandOptions& opt) {
    SectionReader reader(config, "simulate");
    const std::string model = reader.get_string("model");
    const ModelParams p = read_params(reader);
    const double t0 = reader.get_double("t0", 0.0);
    const double t1 = reader.get_double("t1");
    const double step = reader.get_double("step", 0.05);

    Report summary;
    summary.add("model", model);
    const ReproductionSet rep = closed_form_reproduction(p);

    if (model == "full") {
        FullState x0;
        x0.i2 = reader.get_double("i2_0", 0.0);
        x0.r2 = reader.get_double("r2_0", 0.0);
        if (reader.get_bool("strain1_endemic", false)) {
            if (reader.has("i1_0") || reader.has("r1_0")) {
                raise(errc::config_error,
                      "strain1_endemic replaces explicit i1_0/r1_0");
            }
            const QuasiSteadyLevels qs =
                quasi_steady_strain1(p, {x0.i2, x0.r2});
            x0.i1 = qs.i1;
            x0.r1 = qs.r1;
        } else {
            x0.i1 = reader.get_double("i1_0", 0.0);
            x0.r1 = reader.get_double("r1_0", 0.0);
        }
        x0.s = p.n_pop - x0.i1 - x0.r1 - x0.i2 - x0.r2;
        reader.finish();
        validate_state(x0);

        const FullTrajectory traj = integrate_full(p, x0, t0, t1, step);
        CsvFile csv;
        csv.columns = {"t", "S", "I1", "R1", "I2", "R2"};
        csv.rows.reserve(traj.size());
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const FullState& x = traj.states[i];
            csv.rows.push_back(
                {"", {traj.times[i], x.s, x.i1, x.r1, x.i2, x.r2}});
        }
        write_csv(out_path(opt, "trajectory.csv"), csv, opt.reproducible);

        const FullState& xe = traj.states.back();
        summary.add("terminal_t", traj.times.back());
        summary.add("terminal_s", xe.s);
        summary.add("terminal_i1", xe.i1);
        summary.add("terminal_r1", xe.r1);
        summary.add("terminal_i2", xe.i2);
        summary.add("terminal_r2", xe.r2);
    } else if (model == "reduced") {
        ReducedState y0;
        y0.i2 = reader.get_double("i2_0", 0.0);
        y0.r2 = reader.get_double("r2_0", 0.0);
        reader.finish();
        validate_state(p, y0);

        const ReducedTrajectory traj = integrate_reduced(p, y0, t0, t1, step);
        CsvFile csv;
        csv.columns = {"t", "I2", "R2", "omega"};
        csv.rows.reserve(traj.size());
        for (std::size_t i = 0; i < traj.size(); ++i) {
            const ReducedState& y = traj.states[i];
            csv.rows.push_back(
                {"", {traj.times[i], y.i2, y.r2, omega(p, y)}});
        }
        write_csv(out_path(opt, "trajectory.csv"), csv, opt.reproducible);

        const ReducedState& ye = traj.states.back();
        summary.add("terminal_t", traj.times.back());
        summary.add("terminal_i2", ye.i2);
        summary.add("terminal_r2", ye.r2);
        summary.add("terminal_omega", omega(p, ye));
    } else {
        raise(errc::config_error,
              "model must be 'full' or 'reduced', got '" + model + "'");
    }
    add_reproduction(summary, rep);
    summary.write(out_path(opt, "summary.txt"), opt.reproducible);
}

void run_analyze(const RunConfig& config, const CommandOptions& opt) {
    SectionReader reader(config, "analyze");
    const ModelParams p = read_params(reader);
    reader.finish();

    Report report;
    add_params(report, p);
    const ReproductionSet rep = closed_form_reproduction(p);
    add_reproduction(report, rep);

    const RegionLabel region = classify_region(p);
    report.add("region", std::string(region_name(region.label)));
    report.add("region_contested", region.contested);

    const auto boundaries = boundary_steady_states(p);
    const char* prefixes[] = {"x0", "x1", "x2"};
    for (int i = 0; i < 3; ++i) {
        const SteadyStateReport& s = boundaries[static_cast<std::size_t>(i)];
        const std::string pre = prefixes[i];
        report.add(pre + "_s", s.state.s);
        report.add(pre + "_i1", s.state.i1);
        report.add(pre + "_r1", s.state.r1);
        report.add(pre + "_i2", s.state.i2);
        report.add(pre + "_r2", s.state.r2);
        report.add(pre + "_physical", s.physical);
        report.add(pre + "_residual", s.residual);
    }

    const CoexistenceOutcome coex = solve_coexistence_full(p);
    report.add("coexistence_exists", coex.state.has_value());
    if (coex.state) {
        report.add("coexistence_s", coex.state->state.s);
        report.add("coexistence_i1", coex.state->state.i1);
        report.add("coexistence_r1", coex.state->state.r1);
        report.add("coexistence_i2", coex.state->state.i2);
        report.add("coexistence_r2", coex.state->state.r2);
        report.add("coexistence_residual", coex.state->residual);
    } else {
        report.add("coexistence_failing",
                   std::string(threshold_name(*coex.failing)));
    }

    const bool reduced_applicable =
        rep.r1 > 1.0 && rep.r2 > 1.0 && rep.r21 > 1.0;
    report.add("reduced_applicable", reduced_applicable);
    if (reduced_applicable) {
        const ReducedSteadyState rs = solve_reduced_steady_state(p);
        report.add("reduced_i2", rs.state.i2);
        report.add("reduced_r2", rs.state.r2);
        report.add("reduced_regime", std::string(regime_name(rs.regime)));
        report.add("reduced_regime_conjectured", rs.regime_conjectured);
        report.add("reduced_residual", rs.residual);
    }
    report.write(out_path(opt, "analysis.txt"), opt.reproducible);
}

void run_phase(const RunConfig& config, const CommandOptions& opt) {
    SectionReader reader(config, "phase");
    const ModelParams p = read_params(reader);
    const std::size_t i2_points = reader.get_size("i2_points", 61);
    const double i2_min = reader.get_double("i2_min", 0.0);
    const double i2_max_cfg = reader.get_double("i2_max", -1.0);
    const std::size_t field_points = reader.get_size("field_points", 21);
    reader.finish();

    // nullclines (only when the unique-attractor hypotheses hold)
    const ReproductionSet rep = closed_form_reproduction(p);
    const bool nullclines_ok = rep.r1 > 1.0 && rep.r2 > 1.0 && rep.r21 > 1.0;
    if (nullclines_ok) {
        double i2_max = i2_max_cfg;
        if (i2_max <= i2_min) {
            // default: the emerging strain can never exceed N(1 - 1/R2)
            i2_max = p.n_pop * (1.0 - 1.0 / rep.r2);
        }
        std::vector<double> grid;
        grid.reserve(i2_points);
        for (std::size_t k = 0; k < i2_points; ++k) {
            grid.push_back(i2_min + (i2_max - i2_min) *
                                        static_cast<double>(k) /
                                        static_cast<double>(i2_points - 1));
        }
        const auto [i2_null, r2_null] = sample_nullclines(p, grid);
        CsvFile csv;
        csv.labelled = true;
        csv.columns = {"which", "I2", "R2"};
        auto emit = [&](const NullclineSample& sample, const char* tag) {
            for (std::size_t k = 0; k < sample.grid_i2.size(); ++k) {
                if (sample.r2[k]) {
                    csv.rows.push_back(
                        {tag, {sample.grid_i2[k], *sample.r2[k]}});
                }
            }
        };
        emit(r2_null, "r2");
        emit(i2_null, "i2");
        write_csv(out_path(opt, "nullclines.csv"), csv, opt.reproducible);
    }

    // vector field over the interior of the trapping triangle
    {
        CsvFile csv;
        csv.columns = {"I2", "R2", "dI2", "dR2"};
        for (std::size_t a = 0; a < field_points; ++a) {
            for (std::size_t b = 0; b < field_points; ++b) {
                const double i2 = p.n_pop * static_cast<double>(a) /
                                  static_cast<double>(field_points - 1);
                const double r2 = p.n_pop * static_cast<double>(b) /
                                  static_cast<double>(field_points - 1);
                if (i2 + r2 > p.n_pop) {
                    continue;
                }
                const ReducedState d = reduced_rhs(p, {i2, r2});
                csv.rows.push_back({"", {i2, r2, d.i2, d.r2}});
            }
        }
        write_csv(out_path(opt, "field.csv"), csv, opt.reproducible);
    }

    if (const auto line = switching_line(p)) {
        CsvFile csv;
        csv.columns = {"I2", "R2"};
        csv.rows.push_back({"", {line->end_a.i2, line->end_a.r2}});
        csv.rows.push_back({"", {line->end_b.i2, line->end_b.r2}});
        write_csv(out_path(opt, "switching.csv"), csv, opt.reproducible);
    }

    if (!nullclines_ok) {
        Report note;
        note.add("nullclines_skipped", true);
        note.add("reason", std::string("requires R1, R2, R21 > 1"));
        note.write(out_path(opt, "phase_warnings.txt"), opt.reproducible);
    }
}

void run_scan(const RunConfig& config, const CommandOptions& opt) {
    SectionReader reader(config, "scan");
    const ModelParams fixed = read_params(reader);
    const std::string quantity = reader.get_string("quantity");
    auto read_axis = [&](const char* which) {
        const ScanAxis axis =
            parse_axis(reader.get_string(std::string(which)));
        const double lo = reader.get_double(std::string(which) + "_min");
        const double hi = reader.get_double(std::string(which) + "_max");
        const std::size_t points =
            reader.get_size(std::string(which) + "_points", 21);
        return make_axis(axis, lo, hi, points);
    };
    const AxisSpec axis1 = read_axis("axis1");
    const AxisSpec axis2 = read_axis("axis2");
    reader.finish();

    CsvFile csv;
    csv.columns = {axis_name(axis1.axis), axis_name(axis2.axis), "value"};
    if (quantity == "region") {
        const ScanGrid<RegionLabel> grid = scan_regions(fixed, axis1, axis2);
        for (std::size_t i = 0; i < axis1.values.size(); ++i) {
            for (std::size_t j = 0; j < axis2.values.size(); ++j) {
                csv.rows.push_back(
                    {"",
                     {axis1.values[i], axis2.values[j],
                      static_cast<double>(grid.at(i, j).label)}});
            }
        }
    } else {
        const ScanGrid<double> grid =
            scan_scalar(fixed, axis1, axis2, parse_quantity(quantity));
        for (std::size_t i = 0; i < axis1.values.size(); ++i) {
            for (std::size_t j = 0; j < axis2.values.size(); ++j) {
                csv.rows.push_back(
                    {"",
                     {axis1.values[i], axis2.values[j], grid.at(i, j)}});
            }
        }
    }
    write_csv(out_path(opt, "scan.csv"), csv, opt.reproducible);
}

void run_fit(const RunConfig& config, const CommandOptions& opt) {
    SectionReader reader(config, "fit");
    FitSpec spec;
    const std::string model = reader.get_string("model");
    if (model == "full") {
        spec.model = FitModel::full;
    } else if (model == "reduced") {
        spec.model = FitModel::reduced;
    } else {
        raise(errc::config_error,
              "model must be 'full' or 'reduced', got '" + model + "'");
    }
    const std::string case_path = reader.get_string("case_data");
    const std::string share_path = reader.get_string("variant_shares");
    spec.budget = static_cast<int>(reader.get_u64("budget", 2000));
    spec.step = reader.get_double("step", 0.25);
    const std::uint64_t config_seed = reader.get_u64("seed", 0);
    spec.rng_seed = opt.seed ? *opt.seed : config_seed;
    if (reader.has("free")) {
        const std::string list = reader.get_string("free");
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            spec.free.push_back(fit_param_from_name(item));
        }
    }

    FitTheta theta0;
    theta0[FitParam::n_pop] = reader.get_double("n_pop");
    theta0[FitParam::beta1] = reader.get_double("beta1");
    theta0[FitParam::beta2] = reader.get_double("beta2");
    theta0[FitParam::gamma] = reader.get_double("gamma");
    theta0[FitParam::sigma1] = reader.get_double("sigma1");
    theta0[FitParam::sigma2] = reader.get_double("sigma2");
    theta0[FitParam::epsilon] = reader.get_double("epsilon");
    theta0[FitParam::i2_0] = reader.get_double("i2_0", 0.0);
    theta0[FitParam::r2_0] = reader.get_double("r2_0", 0.0);
    if (spec.model == FitModel::full) {
        theta0[FitParam::i1_0] = reader.get_double("i1_0", 0.0);
        theta0[FitParam::r1_0] = reader.get_double("r1_0", 0.0);
    } else if (reader.has("i1_0") || reader.has("r1_0")) {
        raise(errc::config_error,
              "the reduced model derives i1_0/r1_0; do not configure them");
    }
    reader.finish();

    for (const std::string& path : {case_path, share_path}) {
        if (!std::filesystem::exists(path)) {
            raise(errc::io_error, "data file '" + path + "' does not exist");
        }
    }
    const CaseData daily = load_case_data(case_path);
    const VariantShares shares = load_variant_shares(share_path);
    const IncidenceSeries data = aggregate_biweekly(daily, shares);

    const FitResult result = fit(spec, data, theta0);

    Report report;
    report.add("model", model);
    report.add("seed", std::to_string(spec.rng_seed));
    report.add("iterations", std::to_string(result.iterations_used));
    report.add("improved", result.improved);
    report.add("sse", result.sse);
    const ModelParams fitted = result.theta.params();
    add_params(report, fitted);
    if (spec.model == FitModel::full) {
        report.add("i1_0", result.theta[FitParam::i1_0]);
        report.add("r1_0", result.theta[FitParam::r1_0]);
    } else {
        const QuasiSteadyLevels qs =
            quasi_steady_strain1(fitted, result.theta.reduced_initial());
        report.add("i1_0", qs.i1);
        report.add("r1_0", qs.r1);
    }
    report.add("i2_0", result.theta[FitParam::i2_0]);
    report.add("r2_0", result.theta[FitParam::r2_0]);
    // recomputed from the fitted parameters, never stored independently
    add_reproduction(report, closed_form_reproduction(fitted));
    report.write(out_path(opt, "fit_report.txt"), opt.reproducible);

    CsvFile csv;
    csv.labelled = true;
    csv.columns = {"window_end", "x", "xhat", "y", "yhat"};
    for (std::size_t i = 0; i < data.size(); ++i) {
        csv.rows.push_back({format_date(data.window_end[i]),
                            {data.original[i], result.predictions.original[i],
                             data.emerging[i],
                             result.predictions.emerging[i]}});
    }
    write_csv(out_path(opt, "predictions.csv"), csv, opt.reproducible);
}

} // namespace

void run_command(const std::string& name, const CommandOptions& opt) {
    const RunConfig config = RunConfig::load(opt.config_path);
    if (name == "simulate") {
        run_simulate(config, opt);
    } else if (name == "analyze") {
        run_analyze(config, opt);
    } else if (name == "phase") {
        run_phase(config, opt);
    } else if (name == "scan") {
        run_scan(config, opt);
    } else if (name == "fit") {
        run_fit(config, opt);
    } else {
        raise(errc::invalid_argument, "unknown command '" + name + "'");
    }
}

} // namespace twostrain
