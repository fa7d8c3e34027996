#pragma once

#include <vector>

namespace swarmlab {

// Within-block ranks with mid-ranks for ties. Rank 1 goes to the LARGEST
// value, since every score in this project is higher-is-better.
std::vector<double> mid_ranks(const std::vector<double>& values);

struct FriedmanResult {
    int blocks = 0;      // b
    int treatments = 0;  // k
    std::vector<double> rank_sums;  // R_j, one per treatment
    std::vector<double> avg_ranks;  // R_j / b
    double t1 = 0.0;     // chi-square form statistic
    double t2 = 0.0;     // F form statistic actually used for the decision
    double p_value = 1.0;
    double alpha = 0.05;
    bool significant = false;
    // Rank-sum difference needed to separate two treatments when the test is
    // significant, and the matching half-width for average-rank intervals:
    // two intervals are disjoint exactly when the rank sums differ by > lsd.
    double lsd = 0.0;
    double ci_halfwidth = 0.0;
};

// Friedman test on a b x k score table (rows are blocks, columns are
// treatments, higher scores are better), with the F-distribution form of the
// statistic and tie-aware corrections.
FriedmanResult friedman_test(const std::vector<std::vector<double>>& scores,
                             double alpha = 0.05);

// Quantile helpers used by the test and by the racing design loop.
double students_t_quantile(double p, double df);
double fisher_f_quantile(double p, double df1, double df2);

}  // namespace swarmlab
