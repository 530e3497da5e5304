#include "pib/runner.hpp"

#include "pib/augmentation.hpp"
#include "pib/csv.hpp"
#include "pib/error.hpp"
#include "pib/verify.hpp"

#include <fmt/format.h>
#include <omp.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace pib::cli {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::numerical_failure:
    case ErrorCode::support_violation:
    case ErrorCode::divergence:
        return exit_numerical_failure;
    default:
        return exit_config_error;
    }
}

RunOutput run_curve(CurveConfig cfg, const RunOverrides& overrides)
{
    if (overrides.seed) {
        cfg.solver.seed = *overrides.seed;
    }
    const JointModel joint = joint_model(cfg.world, cfg.n_past, cfg.n_future);
    const auto records = information_curve(joint, cfg.betas, cfg.solver);

    RunOutput out;
    out.primary = emit_csv(records);
    for (const CurveRecord& r : records) {
        if (!r.converged) {
            out.failure = fmt::format(
                "NonConvergence: best restart at beta={} hit max_iters={} without converging",
                format_float(r.beta), cfg.solver.max_iters);
            break;
        }
    }
    return out;
}

RunOutput run_conjugate(const ConjugateLimitsConfig& cfg)
{
    const LimitReport report = std::visit(
        [&](const auto& model) { return limit_diagnostics(model, cfg.betas); }, cfg.model);

    std::vector<std::string> header{"beta"};
    std::visit(overloaded{
                   [&](const BetaBernoulliModel&) {
                       header.insert(header.end(), {"a", "b"});
                   },
                   [&](const GaussianMeanModel&) {
                       header.insert(header.end(), {"mean", "variance"});
                   },
                   [&](const DirichletCategoricalModel& m) {
                       for (std::size_t i = 0; i < m.prior_alphas.size(); ++i) {
                           header.push_back(fmt::format("alpha_{}", i));
                       }
                   },
               },
               cfg.model);
    header.insert(header.end(), {"log_partition", "prior_distance", "bayes_distance",
                                 "mle_distance", "posterior_variance"});

    CsvWriter csv(header);
    for (const LimitRow& row : report.rows) {
        csv.cell(row.beta);
        for (double p : row.params) {
            csv.cell(p);
        }
        csv.cell(row.log_partition).cell(row.prior_distance);
        if (row.has_bayes_distance) {
            csv.cell(row.bayes_distance);
        } else {
            csv.cell(std::string_view{});
        }
        csv.cell(row.mle_distance).cell(row.posterior_variance);
        csv.end_row();
    }
    return {csv.str(), {}, std::nullopt};
}

RunOutput run_gibbs(const GibbsConfig& cfg)
{
    const double step = cfg.step_size.value_or(stable_step_size(cfg.spec));
    const GibbsResult result = gibbs_optimize(cfg.spec, cfg.init, step, cfg.max_iters, cfg.tol);

    CsvWriter trace({"iteration", "objective", "mean", "log_std", "grad_norm"});
    for (const GibbsTraceEntry& e : result.trace) {
        trace.cell(e.iteration).cell(e.objective).cell(e.mean).cell(e.log_std).cell(e.grad_norm);
        trace.end_row();
    }

    const GaussianPosterior exact = gaussian_power(cfg.spec.model, cfg.spec.beta);
    CsvWriter final_params({"mean", "variance", "log_std", "objective", "iterations", "converged",
                            "power_mean", "power_variance", "neg_log_partition"});
    final_params.cell(result.params.mean)
        .cell(result.params.variance())
        .cell(result.params.log_std)
        .cell(gibbs_objective(result.params, cfg.spec))
        .cell(result.iterations)
        .cell(std::string_view(result.converged ? "true" : "false"))
        .cell(exact.mean)
        .cell(exact.variance)
        .cell(-exact.log_partition);
    final_params.end_row();

    RunOutput out{trace.str(), final_params.str(), std::nullopt};
    if (!result.converged) {
        out.failure = fmt::format("NonConvergence: gradient norm above {} after {} iterations",
                                  format_float(cfg.tol), result.iterations);
    }
    return out;
}

RunOutput run_augmentation(const AugmentationConfig& cfg, const RunOverrides& overrides)
{
    const std::uint64_t seed = overrides.seed.value_or(cfg.seed);
    CsvWriter csv({"x", "theta", "noise_std", "analytic_gap", "mc_gap", "mc_standard_error",
                   "within_4se"});
    std::uint64_t row = 0;
    for (double tau : cfg.noise_stds) {
        for (const AugmentationPoint& pt : cfg.points) {
            const AugmentationSpec spec{tau, cfg.mc_samples, seed + row++};
            const double analytic = augmentation_gap_analytic(pt.x, pt.theta, cfg.obs_var, spec);
            const McEstimate mc = augmentation_gap_mc(pt.x, pt.theta, cfg.obs_var, spec);
            const bool within = std::abs(mc.value - analytic) <= 4.0 * mc.standard_error;
            csv.cell(pt.x).cell(pt.theta).cell(tau).cell(analytic).cell(mc.value);
            csv.cell(mc.standard_error).cell(std::string_view(within ? "true" : "false"));
            csv.end_row();
        }
    }
    return {csv.str(), {}, std::nullopt};
}

RunOutput run_verify(const VerifyConfig& cfg, const RunOverrides& overrides)
{
    const auto results = run_verify_suite(overrides.seed.value_or(cfg.seed));
    CsvWriter csv({"check", "cases", "failures", "max_violation", "status"});
    std::size_t failed = 0;
    for (const CheckResult& r : results) {
        csv.cell(r.name).cell(r.cases).cell(r.failures).cell(r.max_violation);
        csv.cell(std::string_view(r.passed() ? "pass" : "fail"));
        csv.end_row();
        failed += r.passed() ? 0 : 1;
    }
    RunOutput out{csv.str(), {}, std::nullopt};
    if (failed > 0) {
        out.failure = fmt::format("{} of {} invariant checks failed", failed, results.size());
    }
    return out;
}

std::filesystem::path secondary_path(const std::filesystem::path& primary)
{
    std::filesystem::path p = primary;
    p.replace_extension();
    p += ".final.csv";
    return p;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw Error(ErrorCode::config, "cannot open output file " + path.string());
    }
    f << text;
    if (!f) {
        throw Error(ErrorCode::config, "failed writing " + path.string());
    }
}

int emit(const RunOutput& out, const std::optional<std::string>& path, std::ostream& data,
         std::ostream& log)
{
    if (path) {
        write_file(*path, out.primary);
        log << "wrote " << *path << '\n';
        if (!out.secondary.empty()) {
            const auto second = secondary_path(*path);
            write_file(second, out.secondary);
            log << "wrote " << second.string() << '\n';
        }
    } else {
        data << out.primary << out.secondary;
        data.flush();
    }
    if (out.failure) {
        log << "error: " << *out.failure << '\n';
        return exit_numerical_failure;
    }
    return exit_ok;
}

void apply_threads(const RunOverrides& overrides)
{
    if (overrides.threads) {
        if (*overrides.threads < 1) {
            throw Error(ErrorCode::config, "--threads must be at least 1");
        }
        omp_set_num_threads(*overrides.threads);
    }
}

} // namespace

RunOutput execute(const RunConfig& config, const RunOverrides& overrides)
{
    return std::visit(overloaded{
                          [&](const CurveConfig& c) { return run_curve(c, overrides); },
                          [&](const ConjugateLimitsConfig& c) { return run_conjugate(c); },
                          [&](const GibbsConfig& c) { return run_gibbs(c); },
                          [&](const AugmentationConfig& c) {
                              return run_augmentation(c, overrides);
                          },
                          [&](const VerifyConfig& c) { return run_verify(c, overrides); },
                      },
                      config.mode);
}

int run(const std::filesystem::path& config_path, const RunOverrides& overrides,
        std::ostream& data, std::ostream& log)
{
    try {
        apply_threads(overrides);
        std::ifstream in(config_path, std::ios::binary);
        if (!in) {
            throw Error(ErrorCode::config, "cannot read config " + config_path.string());
        }
        std::ostringstream text;
        text << in.rdbuf();
        const RunConfig config = parse_config_text(text.str());
        const RunOutput out = execute(config, overrides);
        return emit(out, overrides.out ? overrides.out : config.output, data, log);
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return exit_numerical_failure;
    }
}

int verify(const RunOverrides& overrides, std::ostream& data, std::ostream& log)
{
    try {
        apply_threads(overrides);
        RunConfig config;
        config.mode = VerifyConfig{};
        return emit(execute(config, overrides), overrides.out, data, log);
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
}

} // namespace pib::cli
