#include "octoport/runner.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "octoport/convergence.hpp"
#include "octoport/phasespace.hpp"

namespace octoport::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class OutputSet {
  public:
    OutputSet(const ExperimentConfig& cfg, const RunOptions& opts)
        : cfg_(cfg), dir_(opts.out_dir) {
        std::filesystem::create_directories(dir_);
        summary_["schema_version"] = "1";
        summary_["kind"] = kind_name(cfg.kind);
        summary_["config_text"] = serialize_config(cfg);
    }

    std::string path(const std::string& suffix) const {
        return (std::filesystem::path(dir_) / (cfg_.out_prefix + suffix))
            .string();
    }

    void write_csv(const std::string& suffix, const std::string& header,
                   const std::vector<std::string>& rows,
                   RunOutcome& outcome) {
        std::ofstream out(path(suffix));
        out << header << "\n";
        for (const auto& r : rows) out << r << "\n";
        outcome.files.push_back(path(suffix));
    }

    Json& summary() { return summary_; }

    void finish(RunOutcome& outcome, double wall_seconds) {
        std::ofstream out(path("_summary.json"));
        out << summary_.dump(2) << "\n";
        outcome.files.push_back(path("_summary.json"));
        // wall clock lives outside the hash-stable result files
        std::ofstream log(path("_runlog.txt"));
        log << "wall_clock_seconds = " << wall_seconds << "\n";
    }

  private:
    const ExperimentConfig& cfg_;
    std::string dir_;
    Json summary_;
};

eightport::DetectorConfig detector_config(const ExperimentConfig& cfg) {
    eightport::DetectorConfig dc;
    dc.t_state = cfg.t_state;
    dc.s_state = cfg.s_state;
    dc.z = cfg.z;
    dc.phi = cfg.phi;
    dc.dim1 = cfg.dim1;
    dc.dim2 = cfg.dim2;
    dc.dim3 = cfg.dim3;
    dc.dim4 = cfg.dim4;
    if (cfg.window != 4.0 || cfg.grid_nx != 8 || cfg.grid_ny != 8)
        dc.rectangles = eightport::default_rectangles(
            cfg.window, cfg.grid_nx, cfg.grid_ny, 1.0 / std::abs(cfg.z));
    return dc;
}

void budgets_to_summary(Json& summary, const eightport::GStatistics& g) {
    summary["budgets"]["truncation_deficit"] = g.truncation_deficit;
    summary["budgets"]["discarded_branch_weight"] = g.discarded_branch_weight;
}

std::string rect_fields(const Rectangle& z) {
    return fmt(z.qlo) + "," + fmt(z.qhi) + "," + fmt(z.plo) + "," + fmt(z.phi);
}

void run_g_statistics(const ExperimentConfig& cfg, OutputSet& out,
                      RunOutcome& outcome) {
    eightport::DetectorConfig dc = detector_config(cfg);
    eightport::GStatistics g =
        cfg.path == "factorized" ? eightport::run_factorized(dc)
                                 : eightport::run_direct(dc);
    std::vector<std::string> rows;
    for (int i = 0; i < g.joint.rows(); ++i)
        for (int j = 0; j < g.joint.cols(); ++j) {
            const int k = g.k_min + i;
            const int l = g.l_min + j;
            rows.push_back(std::to_string(k) + "," + std::to_string(l) + "," +
                           fmt(k * g.lattice_step) + "," +
                           fmt(l * g.lattice_step) + "," + fmt(g.joint(i, j)));
        }
    out.write_csv("_lattice.csv", "k,l,x,y,probability", rows, outcome);

    rows.clear();
    for (size_t i = 0; i < g.rectangles.size(); ++i)
        rows.push_back(std::to_string(i) + "," + rect_fields(g.rectangles[i]) +
                       "," + fmt(g.rectangle_probs[i]));
    out.write_csv("_rectangles.csv",
                  "rect_id,qmin,qmax,pmin,pmax,probability", rows, outcome);

    out.summary()["results"]["path"] =
        g.path == eightport::GStatistics::Path::direct ? "direct"
                                                       : "factorized";
    out.summary()["results"]["total_mass"] = g.total_mass;
    out.summary()["results"]["marginal_mean_q"] = g.marginal_mean_q();
    out.summary()["results"]["marginal_mean_p"] = g.marginal_mean_p();
    budgets_to_summary(out.summary(), g);
}

void run_lemma1(const ExperimentConfig& cfg, OutputSet& out,
                RunOutcome& outcome) {
    eightport::DetectorConfig dc = detector_config(cfg);
    eightport::GStatistics gd = eightport::run_direct(dc);
    eightport::GStatistics gf = eightport::run_factorized(dc);
    double max_diff = 0.0;
    std::vector<std::string> rows;
    for (size_t i = 0; i < gd.rectangles.size(); ++i) {
        double diff = std::abs(gd.rectangle_probs[i] - gf.rectangle_probs[i]);
        max_diff = std::max(max_diff, diff);
        rows.push_back(std::to_string(i) + "," + rect_fields(gd.rectangles[i]) +
                       "," + fmt(gd.rectangle_probs[i]) + "," +
                       fmt(gf.rectangle_probs[i]) + "," + fmt(diff));
    }
    out.write_csv("_rectangles.csv",
                  "rect_id,qmin,qmax,pmin,pmax,p_direct,p_factorized,abs_diff",
                  rows, outcome);
    const double tol = 1e-6;
    out.summary()["results"]["max_abs_diff"] = max_diff;
    out.summary()["results"]["tolerance"] = tol;
    out.summary()["results"]["pass"] = max_diff <= tol;
    budgets_to_summary(out.summary(), gd);
    if (max_diff > tol) {
        outcome.exit_code = kToleranceFailure;
        outcome.message = "direct and factorized paths disagree: max diff " +
                          fmt(max_diff);
    }
}

void run_lemma2(const ExperimentConfig& cfg, OutputSet& out,
                RunOutcome& outcome) {
    const int dim = std::max({cfg.t_state.required_dim(),
                              cfg.s_state.required_dim(), 20});
    fock::DensityOperator t_rho = eightport::make_density(cfg.t_state, dim);
    fock::DensityOperator s_rho = eightport::make_density(cfg.s_state, dim);
    const Rectangle& z = cfg.lemma_rect;
    double lhs = phasespace::lemma2_rhs(t_rho, s_rho,
                                        IntervalSet(z.qlo, z.qhi),
                                        IntervalSet(z.plo, z.phi));
    phasespace::PhaseSpaceMeasure measure(phasespace::conjugate_state(s_rho));
    double rhs = measure.rectangle_probability(t_rho, z);
    double diff = std::abs(lhs - rhs);
    std::vector<std::string> rows{rect_fields(z) + "," + fmt(lhs) + "," +
                                  fmt(rhs) + "," + fmt(diff)};
    out.write_csv("_lemma2.csv",
                  "qmin,qmax,pmin,pmax,p_split_network,p_phase_space,abs_diff",
                  rows, outcome);
    const double tol = 1e-4;
    out.summary()["results"]["p_split_network"] = lhs;
    out.summary()["results"]["p_phase_space"] = rhs;
    out.summary()["results"]["abs_diff"] = diff;
    out.summary()["results"]["tolerance"] = tol;
    out.summary()["results"]["pass"] = diff <= tol;
    if (diff > tol) {
        outcome.exit_code = kToleranceFailure;
        outcome.message = "lemma2 identity off by " + fmt(diff);
    }
}

void run_sweep(const ExperimentConfig& cfg, const RunOptions& opts,
               OutputSet& out, RunOutcome& outcome) {
    convergence::AmplitudeSchedule schedule;
    schedule.radii = cfg.radii;
    schedule.phi = cfg.phi;
    auto rects = convergence::schedule_rectangles(cfg.radii, cfg.window,
                                                  cfg.grid_nx, cfg.grid_ny);
    convergence::SweepOptions sweep_opts;
    sweep_opts.large_memory = opts.large_memory;
    convergence::ConvergenceReport report = convergence::convergence_sweep(
        cfg.t_state, cfg.s_state, schedule, rects, sweep_opts);

    std::vector<std::string> rows;
    for (const auto& row : report.rows) {
        if (row.skipped) continue;
        for (size_t i = 0; i < rects.size(); ++i)
            rows.push_back(fmt(row.radius) + "," + std::to_string(i) + "," +
                           rect_fields(rects[i]) + "," +
                           fmt(row.finite_probs[i]) + "," +
                           fmt(report.limit_probs[i]) + "," +
                           fmt(row.gaps[i]));
    }
    out.write_csv("_sweep.csv",
                  "r,rect_id,qmin,qmax,pmin,pmax,p_finite,p_limit,gap", rows,
                  outcome);

    Json per_radius = Json::array();
    for (const auto& row : report.rows) {
        Json j;
        j["r"] = row.radius;
        if (row.skipped)
            j["skipped"] = row.diagnostic;
        else
            j["sup_gap"] = row.sup_gap;
        per_radius.push_back(j);
    }
    out.summary()["results"]["per_radius"] = per_radius;
    out.summary()["results"]["sup_gap_non_increasing"] =
        report.sup_gap_non_increasing;
    out.summary()["results"]["final_sup_gap"] = report.final_sup_gap;
}

void run_husimi(const ExperimentConfig& cfg, OutputSet& out,
                RunOutcome& outcome) {
    const int dim = std::max(cfg.t_state.required_dim(), 20);
    fock::DensityOperator t_rho = eightport::make_density(cfg.t_state, dim);
    fock::DensityOperator s_rho = eightport::make_density(cfg.s_state, dim);
    phasespace::PhaseSpaceMeasure measure(s_rho);

    std::vector<std::string> rows;
    double best = -1.0, best_q = 0.0, best_p = 0.0;
    for (int i = 0; i < cfg.grid_nx; ++i) {
        double q = -cfg.window + (i + 0.5) * 2.0 * cfg.window / cfg.grid_nx;
        for (int j = 0; j < cfg.grid_ny; ++j) {
            double p =
                -cfg.window + (j + 0.5) * 2.0 * cfg.window / cfg.grid_ny;
            double d = measure.density(t_rho, q, p);
            rows.push_back(fmt(q) + "," + fmt(p) + "," + fmt(d));
            if (d > best) {
                best = d;
                best_q = q;
                best_p = p;
            }
        }
    }
    out.write_csv("_husimi.csv", "q,p,density", rows, outcome);
    out.summary()["results"]["peak_q"] = best_q;
    out.summary()["results"]["peak_p"] = best_p;
    out.summary()["results"]["peak_density"] = best;
    out.summary()["budgets"]["truncation_deficit"] =
        t_rho.norm_deficit + s_rho.norm_deficit;
}

}  // namespace

RunOutcome run(const ExperimentConfig& config, const RunOptions& options) {
    RunOutcome outcome;
    auto start = std::chrono::steady_clock::now();
    OutputSet out(config, options);
    try {
        switch (config.kind) {
            case ExperimentKind::g_statistics:
                run_g_statistics(config, out, outcome);
                break;
            case ExperimentKind::lemma1_check:
                run_lemma1(config, out, outcome);
                break;
            case ExperimentKind::lemma2_check:
                run_lemma2(config, out, outcome);
                break;
            case ExperimentKind::convergence_sweep:
                run_sweep(config, options, out, outcome);
                break;
            case ExperimentKind::husimi_map:
                run_husimi(config, out, outcome);
                break;
        }
    } catch (const InfeasibleError& ex) {
        outcome.exit_code = kInfeasible;
        outcome.message = ex.what();
        return outcome;
    } catch (const TruncationError& ex) {
        outcome.exit_code = kToleranceFailure;
        outcome.message = ex.what();
        return outcome;
    } catch (const ToleranceError& ex) {
        outcome.exit_code = kToleranceFailure;
        outcome.message = ex.what();
        return outcome;
    } catch (const ConfigError& ex) {
        outcome.exit_code = kValidationFailure;
        outcome.message = ex.what();
        return outcome;
    }
    double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    out.finish(outcome, wall);
    return outcome;
}

}  // namespace octoport::cli
