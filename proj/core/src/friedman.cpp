#include "swarmlab/friedman.hpp"

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace swarmlab {

std::vector<double> mid_ranks(const std::vector<double>& values) {
    const std::size_t k = values.size();
    std::vector<double> ranks(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double greater = 0.0;
        double ties = 0.0;
        for (std::size_t m = 0; m < k; ++m) {
            if (m == j) continue;
            if (values[m] > values[j]) greater += 1.0;
            else if (values[m] == values[j]) ties += 1.0;
        }
        ranks[j] = 1.0 + greater + 0.5 * ties;
    }
    return ranks;
}

double students_t_quantile(double p, double df) {
    boost::math::students_t dist(df);
    return boost::math::quantile(dist, p);
}

double fisher_f_quantile(double p, double df1, double df2) {
    boost::math::fisher_f dist(df1, df2);
    return boost::math::quantile(dist, p);
}

FriedmanResult friedman_test(const std::vector<std::vector<double>>& scores, double alpha) {
    const std::size_t b = scores.size();
    if (b < 2) throw std::invalid_argument("friedman test needs at least 2 blocks");
    const std::size_t k = scores.front().size();
    if (k < 2) throw std::invalid_argument("friedman test needs at least 2 treatments");
    for (const std::vector<double>& row : scores) {
        if (row.size() != k) throw std::invalid_argument("score table is not rectangular");
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("score table has a non-finite value");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha outside (0,1)");

    FriedmanResult out;
    out.blocks = static_cast<int>(b);
    out.treatments = static_cast<int>(k);
    out.alpha = alpha;
    out.rank_sums.assign(k, 0.0);

    double sq_sum = 0.0;  // sum of squared ranks over the whole table
    for (const std::vector<double>& row : scores) {
        const std::vector<double> ranks = mid_ranks(row);
        for (std::size_t j = 0; j < k; ++j) {
            out.rank_sums[j] += ranks[j];
            sq_sum += ranks[j] * ranks[j];
        }
    }
    out.avg_ranks.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        out.avg_ranks[j] = out.rank_sums[j] / static_cast<double>(b);

    const double bd = static_cast<double>(b);
    const double kd = static_cast<double>(k);
    const double mean_sum = bd * (kd + 1.0) / 2.0;
    double spread = 0.0;  // sum of squared rank-sum deviations
    double rank_sum_sq = 0.0;
    for (double r : out.rank_sums) {
        spread += (r - mean_sum) * (r - mean_sum);
        rank_sum_sq += r * r;
    }
    const double correction = bd * kd * (kd + 1.0) * (kd + 1.0) / 4.0;

    if (sq_sum - correction <= 0.0) {
        // Every block is one big tie; nothing to distinguish.
        out.t1 = 0.0;
        out.t2 = 0.0;
        out.p_value = 1.0;
        out.significant = false;
        out.lsd = 0.0;
        out.ci_halfwidth = 0.0;
        return out;
    }

    out.t1 = (kd - 1.0) * spread / (sq_sum - correction);
    const double df1 = kd - 1.0;
    const double df2 = (bd - 1.0) * (kd - 1.0);
    const double t2_denominator = bd * (kd - 1.0) - out.t1;
    if (t2_denominator <= 0.0) {
        // Perfect separation in every block; the F form diverges.
        out.t2 = std::numeric_limits<double>::infinity();
        out.p_value = 0.0;
    } else {
        out.t2 = (bd - 1.0) * out.t1 / t2_denominator;
        boost::math::fisher_f dist(df1, df2);
        out.p_value = boost::math::cdf(boost::math::complement(dist, out.t2));
    }
    out.significant = out.p_value < alpha;

    const double residual = bd * sq_sum - rank_sum_sq;  // >= 0 by Cauchy-Schwarz
    const double t_crit = students_t_quantile(1.0 - alpha / 2.0, df2);
    out.lsd = t_crit * std::sqrt(std::max(0.0, 2.0 * residual / df2));
    out.ci_halfwidth = out.lsd / (2.0 * bd);
    return out;
}

}  // namespace swarmlab
