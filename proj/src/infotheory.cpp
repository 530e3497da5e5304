#include "pib/infotheory.hpp"

#include "pib/error.hpp"
#include "pib/kernels.hpp"

#include <cmath>
#include <string>

namespace pib {

namespace {

constexpr double kDistributionTolerance = 1e-9;

void validate_distribution(std::span<const double> p, const char* what)
{
    if (p.empty()) {
        throw Error(ErrorCode::invalid_distribution, std::string(what) + " is empty");
    }
    double total = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) {
            throw Error(ErrorCode::invalid_distribution,
                        std::string(what) + " has a negative or non-finite entry");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > kDistributionTolerance) {
        throw Error(ErrorCode::invalid_distribution,
                    std::string(what) + " sums to " + std::to_string(total));
    }
}

double clamp_information(double value, const char* what)
{
    if (value >= 0.0) {
        return value;
    }
    if (value >= -kNegativeInfoFloor) {
        return 0.0;
    }
    throw Error(ErrorCode::numerical_failure,
                std::string(what) + " came out negative: " + std::to_string(value));
}

// sum_{r,c} p log(p * total / (row[r] col[c])) for one slab.
double slab_information(std::span<const double> slab, std::size_t rows, std::size_t cols,
                        std::vector<double>& terms)
{
    std::vector<double> row_marg(rows, 0.0);
    std::vector<double> col_marg(cols, 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const double p = slab[r * cols + c];
            row_marg[r] += p;
            col_marg[c] += p;
        }
    }
    for (double v : row_marg) {
        total += v;
    }
    if (!(total > 0.0)) {
        return 0.0;
    }
    terms.assign(rows, 0.0);
    kernels::omp::mi_row_terms(slab, rows, cols, row_marg, col_marg, total, terms);
    double acc = 0.0;
    for (double t : terms) {
        acc += t;
    }
    return acc;
}

} // namespace

double entropy(std::span<const double> p)
{
    validate_distribution(p, "distribution");
    double h = 0.0;
    for (double v : p) {
        if (v > 0.0) {
            h -= v * std::log(v);
        }
    }
    return h < 0.0 ? 0.0 : h;
}

double mutual_information(const Table2& joint)
{
    validate_distribution(joint.values, "joint table");
    std::vector<double> terms;
    return clamp_information(slab_information(joint.values, joint.rows, joint.cols, terms),
                             "mutual information");
}

double conditional_mutual_information(const Table3& joint, Axis given)
{
    validate_distribution(joint.values, "joint table");
    const auto [d0, d1, d2] = joint.dims;

    // Gather each slice at fixed `given` into a contiguous (a, b) slab.
    std::size_t n_given = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    switch (given) {
    case Axis::first: n_given = d0; rows = d1; cols = d2; break;
    case Axis::second: n_given = d1; rows = d0; cols = d2; break;
    case Axis::third: n_given = d2; rows = d0; cols = d1; break;
    }

    std::vector<double> slab(rows * cols);
    std::vector<double> terms;
    double acc = 0.0;
    for (std::size_t z = 0; z < n_given; ++z) {
        for (std::size_t a = 0; a < rows; ++a) {
            for (std::size_t b = 0; b < cols; ++b) {
                double v = 0.0;
                switch (given) {
                case Axis::first: v = joint(z, a, b); break;
                case Axis::second: v = joint(a, z, b); break;
                case Axis::third: v = joint(a, b, z); break;
                }
                slab[a * cols + b] = v;
            }
        }
        acc += slab_information(slab, rows, cols, terms);
    }
    return clamp_information(acc, "conditional mutual information");
}

ChannelJoint channel_joint(const JointModel& joint, const Channel& channel)
{
    if (channel.n_rows() != joint.n_past_sets()) {
        throw Error(ErrorCode::dimension_mismatch,
                    "channel has " + std::to_string(channel.n_rows()) + " rows, past space has " +
                        std::to_string(joint.n_past_sets()) + " datasets");
    }
    ChannelJoint cj;
    cj.k_phi_ = joint.world().k_phi();
    cj.n_past_sets_ = joint.n_past_sets();
    cj.n_future_sets_ = joint.n_future_sets();
    cj.k_x_ = joint.world().k_x();
    cj.n_past_ = joint.n_past();
    cj.n_future_ = joint.n_future();
    cj.channel_ = channel;
    cj.joint4_.assign(joint.joint().size() * channel.k_theta(), 0.0);
    kernels::omp::channel_expand(joint.joint(), cj.k_phi_, cj.n_past_sets_, cj.n_future_sets_,
                                 channel.values(), channel.k_theta(), cj.joint4_);
    return cj;
}

Table3 ChannelJoint::past_future_theta() const
{
    Table3 out(n_past_sets_, n_future_sets_, k_theta());
    const std::size_t slab = out.values.size();
    for (std::size_t phi = 0; phi < k_phi_; ++phi) {
        const double* src = joint4_.data() + phi * slab;
        for (std::size_t i = 0; i < slab; ++i) {
            out.values[i] += src[i];
        }
    }
    return out;
}

Table2 ChannelJoint::past_theta() const
{
    return past_future_theta().marginalize(Axis::second);
}

Table2 ChannelJoint::future_theta() const
{
    return past_future_theta().marginalize(Axis::first);
}

std::vector<double> ChannelJoint::past_marginal() const
{
    return past_theta().row_marginal();
}

std::vector<double> ChannelJoint::theta_marginal() const
{
    return past_theta().col_marginal();
}

InformationTerms information_terms(const ChannelJoint& cj)
{
    const Table3 pft = cj.past_future_theta();
    InformationTerms out;
    out.mi_theta_past = mutual_information(pft.marginalize(Axis::second));
    out.mi_theta_future = mutual_information(pft.marginalize(Axis::first));
    out.cmi_theta_past_given_future = conditional_mutual_information(pft, Axis::second);
    out.cmi_theta_future_given_past = conditional_mutual_information(pft, Axis::first);
    out.mi_theta_past_future =
        mutual_information(Table2(pft.dims[0] * pft.dims[1], pft.dims[2], pft.values));
    return out;
}

MarkovCheck markov_identity_residual(const ChannelJoint& cj)
{
    MarkovCheck check;
    check.terms = information_terms(cj);
    check.residual = std::abs(check.terms.mi_theta_future - check.terms.mi_theta_past +
                              check.terms.cmi_theta_past_given_future);
    return check;
}

} // namespace pib
