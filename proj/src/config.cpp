#include "pib/config.hpp"

#include "pib/error.hpp"

#include <cmath>
#include <initializer_list>
#include <set>
#include <string_view>

namespace pib::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message)
{
    throw Error(ErrorCode::config, message);
}

const json& require_object(const json& value, const std::string& context)
{
    if (!value.is_object()) {
        fail(context + " must be a JSON object");
    }
    return value;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& context)
{
    const std::set<std::string_view> keys(allowed);
    for (const auto& [key, _] : obj.items()) {
        if (!keys.contains(key)) {
            fail("unknown key \"" + key + "\" in " + context);
        }
    }
}

const json& require(const json& obj, const char* key, const std::string& context)
{
    if (!obj.contains(key)) {
        fail("missing required key \"" + std::string(key) + "\" in " + context);
    }
    return obj.at(key);
}

double as_number(const json& v, const std::string& what)
{
    if (!v.is_number()) {
        fail(what + " must be a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        fail(what + " must be finite");
    }
    return d;
}

std::uint64_t as_count(const json& v, const std::string& what)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(what + " must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

std::vector<double> as_numbers(const json& v, const std::string& what)
{
    if (!v.is_array()) {
        fail(what + " must be an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(as_number(v[i], what + "[" + std::to_string(i) + "]"));
    }
    return out;
}

double number_or(const json& obj, const char* key, double fallback, const std::string& context)
{
    return obj.contains(key) ? as_number(obj.at(key), context + "." + key) : fallback;
}

std::uint64_t count_or(const json& obj, const char* key, std::uint64_t fallback,
                       const std::string& context)
{
    return obj.contains(key) ? as_count(obj.at(key), context + "." + key) : fallback;
}

std::vector<double> parse_betas(const json& v)
{
    if (v.is_array()) {
        auto betas = as_numbers(v, "betas");
        if (betas.empty()) {
            fail("betas must not be empty");
        }
        return betas;
    }
    if (!v.is_object()) {
        fail("betas must be an array or a {start, stop, step} object");
    }
    check_keys(v, {"start", "stop", "step"}, "betas");
    const double start = as_number(require(v, "start", "betas"), "betas.start");
    const double stop = as_number(require(v, "stop", "betas"), "betas.stop");
    const double step = as_number(require(v, "step", "betas"), "betas.step");
    if (!(step > 0.0) || stop < start) {
        fail("betas range needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(start + static_cast<double>(i) * step);
    }
    return out;
}

World parse_world(const json& v)
{
    if (v.is_string()) {
        const auto name = v.get<std::string>();
        if (name == "w1") {
            return world_w1();
        }
        if (name == "w2") {
            return world_w2();
        }
        fail("unknown built-in world \"" + name + "\" (expected w1 or w2)");
    }
    require_object(v, "world");
    check_keys(v, {"phi_prior", "obs_given_phi"}, "world");
    const auto prior = as_numbers(require(v, "phi_prior", "world"), "world.phi_prior");
    const json& rows = require(v, "obs_given_phi", "world");
    if (!rows.is_array()) {
        fail("world.obs_given_phi must be an array of arrays");
    }
    std::vector<std::vector<double>> obs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        obs.push_back(as_numbers(rows[i], "world.obs_given_phi[" + std::to_string(i) + "]"));
    }
    try {
        return build_world(prior, obs);
    } catch (const Error& e) {
        fail(std::string("invalid world: ") + e.what());
    }
}

GaussianMeanModel parse_gaussian(const json& m, const std::string& context)
{
    GaussianMeanModel g;
    g.prior_mean = number_or(m, "prior_mean", 0.0, context);
    g.prior_var = number_or(m, "prior_var", 1.0, context);
    g.obs_var = number_or(m, "obs_var", 1.0, context);
    g.data = as_numbers(require(m, "data", context), context + ".data");
    try {
        g.validate();
    } catch (const Error& e) {
        fail(context + ": " + e.what());
    }
    return g;
}

CurveConfig parse_curve(const json& doc)
{
    check_keys(doc, {"mode", "output", "world", "n_past", "n_future", "betas", "solver"},
               "curve config");
    CurveConfig cfg;
    cfg.world = parse_world(require(doc, "world", "curve config"));
    cfg.n_past = count_or(doc, "n_past", 1, "curve config");
    cfg.n_future = count_or(doc, "n_future", 1, "curve config");
    if (cfg.n_past < 1 || cfg.n_future < 1) {
        fail("n_past and n_future must be at least 1");
    }
    cfg.betas = parse_betas(require(doc, "betas", "curve config"));
    for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
        if (!(cfg.betas[i] >= 0.0 && cfg.betas[i] < 1.0)) {
            fail("curve betas must lie in [0, 1)");
        }
        if (i > 0 && !(cfg.betas[i] > cfg.betas[i - 1])) {
            fail("curve betas must be strictly increasing");
        }
    }
    if (doc.contains("solver")) {
        const json& s = require_object(doc.at("solver"), "solver");
        check_keys(s, {"k_theta", "restarts", "max_iters", "tol", "seed"}, "solver");
        cfg.solver.k_theta = count_or(s, "k_theta", cfg.solver.k_theta, "solver");
        cfg.solver.restarts = count_or(s, "restarts", cfg.solver.restarts, "solver");
        cfg.solver.max_iters = count_or(s, "max_iters", cfg.solver.max_iters, "solver");
        cfg.solver.tol = number_or(s, "tol", cfg.solver.tol, "solver");
        cfg.solver.seed = count_or(s, "seed", cfg.solver.seed, "solver");
    }
    if (cfg.solver.k_theta < 1 || cfg.solver.restarts < 1 || !(cfg.solver.tol > 0.0)) {
        fail("solver needs k_theta >= 1, restarts >= 1 and tol > 0");
    }
    return cfg;
}

ConjugateLimitsConfig parse_conjugate(const json& doc)
{
    check_keys(doc, {"mode", "output", "model", "betas"}, "conjugate_limits config");
    ConjugateLimitsConfig cfg;
    const json& m = require_object(require(doc, "model", "conjugate_limits config"), "model");
    const json& family = require(m, "family", "model");
    if (!family.is_string()) {
        fail("model.family must be a string");
    }
    const auto name = family.get<std::string>();
    try {
        if (name == "beta_bernoulli") {
            check_keys(m, {"family", "prior_a", "prior_b", "k", "n"}, "model");
            BetaBernoulliModel b;
            b.prior_a = number_or(m, "prior_a", 1.0, "model");
            b.prior_b = number_or(m, "prior_b", 1.0, "model");
            b.k = as_count(require(m, "k", "model"), "model.k");
            b.n = as_count(require(m, "n", "model"), "model.n");
            b.validate();
            cfg.model = b;
        } else if (name == "gaussian") {
            check_keys(m, {"family", "prior_mean", "prior_var", "obs_var", "data"}, "model");
            cfg.model = parse_gaussian(m, "model");
        } else if (name == "dirichlet_categorical") {
            check_keys(m, {"family", "prior_alphas", "counts"}, "model");
            DirichletCategoricalModel d;
            d.prior_alphas = as_numbers(require(m, "prior_alphas", "model"), "model.prior_alphas");
            d.counts = as_numbers(require(m, "counts", "model"), "model.counts");
            d.validate();
            cfg.model = d;
        } else {
            fail("unknown model family \"" + name + "\"");
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::config) {
            throw;
        }
        fail(std::string("invalid model: ") + e.what());
    }
    cfg.betas = parse_betas(require(doc, "betas", "conjugate_limits config"));
    for (double b : cfg.betas) {
        if (!(b >= 0.0)) {
            fail("betas must be non-negative");
        }
    }
    return cfg;
}

GibbsConfig parse_gibbs(const json& doc)
{
    check_keys(doc, {"mode", "output", "model", "beta", "init", "step_size", "max_iters", "tol"},
               "gibbs config");
    GibbsConfig cfg;
    const json& m = require_object(require(doc, "model", "gibbs config"), "model");
    check_keys(m, {"family", "prior_mean", "prior_var", "obs_var", "data"}, "model");
    if (m.contains("family") && m.at("family") != "gaussian") {
        fail("gibbs mode only supports the gaussian family");
    }
    cfg.spec.model = parse_gaussian(m, "model");
    cfg.spec.beta = as_number(require(doc, "beta", "gibbs config"), "beta");
    if (!(cfg.spec.beta >= 0.0)) {
        fail("beta must be non-negative");
    }
    if (doc.contains("init")) {
        const json& init = require_object(doc.at("init"), "init");
        check_keys(init, {"mean", "log_std"}, "init");
        cfg.init.mean = number_or(init, "mean", 0.0, "init");
        cfg.init.log_std = number_or(init, "log_std", 0.0, "init");
    }
    if (doc.contains("step_size")) {
        cfg.step_size = as_number(doc.at("step_size"), "step_size");
        if (!(*cfg.step_size > 0.0)) {
            fail("step_size must be positive");
        }
    }
    cfg.max_iters = count_or(doc, "max_iters", cfg.max_iters, "gibbs config");
    cfg.tol = number_or(doc, "tol", cfg.tol, "gibbs config");
    if (!(cfg.tol > 0.0)) {
        fail("tol must be positive");
    }
    return cfg;
}

AugmentationConfig parse_augmentation(const json& doc)
{
    check_keys(doc, {"mode", "output", "obs_var", "noise_stds", "points", "mc_samples", "seed"},
               "augmentation config");
    AugmentationConfig cfg;
    cfg.obs_var = number_or(doc, "obs_var", 1.0, "augmentation config");
    if (!(cfg.obs_var > 0.0)) {
        fail("obs_var must be positive");
    }
    cfg.noise_stds = as_numbers(require(doc, "noise_stds", "augmentation config"), "noise_stds");
    for (double t : cfg.noise_stds) {
        if (!(t >= 0.0)) {
            fail("noise_stds must be non-negative");
        }
    }
    if (doc.contains("points")) {
        const json& pts = doc.at("points");
        if (!pts.is_array()) {
            fail("points must be an array of {x, theta} objects");
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const std::string ctx = "points[" + std::to_string(i) + "]";
            require_object(pts[i], ctx);
            check_keys(pts[i], {"x", "theta"}, ctx);
            cfg.points.push_back({as_number(require(pts[i], "x", ctx), ctx + ".x"),
                                  as_number(require(pts[i], "theta", ctx), ctx + ".theta")});
        }
    } else {
        cfg.points.push_back({0.0, 0.0});
    }
    cfg.mc_samples = count_or(doc, "mc_samples", cfg.mc_samples, "augmentation config");
    if (cfg.mc_samples < 2) {
        fail("mc_samples must be at least 2");
    }
    cfg.seed = count_or(doc, "seed", cfg.seed, "augmentation config");
    return cfg;
}

} // namespace

RunConfig parse_config(const json& doc)
{
    try {
        require_object(doc, "config");
        const json& mode = require(doc, "mode", "config");
        if (!mode.is_string()) {
            fail("mode must be a string");
        }
        RunConfig cfg;
        if (doc.contains("output")) {
            if (!doc.at("output").is_string()) {
                fail("output must be a string path");
            }
            cfg.output = doc.at("output").get<std::string>();
        }
        const auto name = mode.get<std::string>();
        if (name == "curve") {
            cfg.mode = parse_curve(doc);
        } else if (name == "conjugate_limits") {
            cfg.mode = parse_conjugate(doc);
        } else if (name == "gibbs") {
            cfg.mode = parse_gibbs(doc);
        } else if (name == "augmentation") {
            cfg.mode = parse_augmentation(doc);
        } else if (name == "verify") {
            check_keys(doc, {"mode", "output", "seed"}, "verify config");
            VerifyConfig v;
            v.seed = count_or(doc, "seed", v.seed, "verify config");
            cfg.mode = v;
        } else {
            fail("unknown mode \"" + name + "\"");
        }
        return cfg;
    } catch (const json::exception& e) {
        fail(e.what());
    }
}

RunConfig parse_config_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(doc);
}

} // namespace pib::cli
