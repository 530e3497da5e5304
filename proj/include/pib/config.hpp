#pragma once

#include "pib/conjugate.hpp"
#include "pib/gibbs_vi.hpp"
#include "pib/pib_solver.hpp"
#include "pib/world.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pib::cli {

struct CurveConfig {
    World world = world_w1();
    std::size_t n_past = 1;
    std::size_t n_future = 1;
    std::vector<double> betas;
    SolverConfig solver;
};

using ConjugateModel =
    std::variant<BetaBernoulliModel, GaussianMeanModel, DirichletCategoricalModel>;

struct ConjugateLimitsConfig {
    ConjugateModel model;
    std::vector<double> betas;
};

struct GibbsConfig {
    GibbsObjectiveSpec spec;
    GaussianVariationalParams init;
    std::optional<double> step_size; // stable_step_size() when absent
    std::size_t max_iters = kDefaultGibbsMaxIters;
    double tol = kDefaultGibbsTol;
};

struct AugmentationPoint {
    double x = 0.0;
    double theta = 0.0;
};

struct AugmentationConfig {
    double obs_var = 1.0;
    std::vector<double> noise_stds;
    std::vector<AugmentationPoint> points;
    std::size_t mc_samples = 100'000;
    std::uint64_t seed = 0;
};

struct VerifyConfig {
    std::uint64_t seed = 7;
};

struct RunConfig {
    std::variant<CurveConfig, ConjugateLimitsConfig, GibbsConfig, AugmentationConfig,
                 VerifyConfig>
        mode;
    std::optional<std::string> output;
};

/// Parses a config document. Unknown keys, missing required keys, and values
/// that violate a mode's constraints all throw Error(ErrorCode::config).
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);

} // namespace pib::cli
