#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cnsp {

// Named sample groups for the group-comparison tests. Every group needs at
// least two values; ANOVA needs at least two groups.
struct GroupSamples {
    struct Group {
        std::string name;
        std::vector<double> values;
    };
    std::vector<Group> groups;
};

struct TestResult {
    std::string test;      // "ttest" or "anova"
    double statistic = 0;  // t or F
    double df1 = 0;        // t: the single df; F: between-groups df
    double df2 = 0;        // F: within-groups df (unused for t)
    double p_value = 1.0;
};

// Pooled-variance two-sample Student's t with a two-sided p-value,
// df = n1 + n2 - 2. Zero pooled variance is degenerate data.
TestResult t_test(std::span<const double> g1, std::span<const double> g2);

// One-way fixed-effects ANOVA: F = MS_between / MS_within with
// df = (k - 1, N - k) and a right-tail p-value. For two groups F equals
// the square of the pooled t statistic and the p-values coincide.
TestResult anova_oneway(const GroupSamples& samples);

// Regularized incomplete beta function I_x(a, b), the p-value kernel for
// both tests. Continued-fraction evaluation, absolute error <= 1e-10.
double regularized_incomplete_beta(double a, double b, double x);

// Group CSV: header `group,value`, one sample per row, group order by
// first appearance.
GroupSamples read_groups_csv(std::istream& in);

} // namespace cnsp
