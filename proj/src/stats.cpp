#include "cnsp/stats.hpp"

#include "cnsp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>

namespace cnsp {

namespace {

double mean(std::span<const double> values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / static_cast<double>(values.size());
}

double sum_squared_deviation(std::span<const double> values, double center) {
    double acc = 0.0;
    for (double v : values) {
        const double d = v - center;
        acc += d * d;
    }
    return acc;
}

// Continued fraction for the incomplete beta function (Lentz's algorithm).
// Converges quickly for x < (a + 1) / (a + b + 2); the caller applies the
// symmetry I_x(a,b) = 1 - I_{1-x}(b,a) otherwise.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 300;
    constexpr double kEpsilon = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEpsilon) break;
    }
    return h;
}

double clamp_unit(double p) { return std::clamp(p, 0.0, 1.0); }

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw ArgumentError("regularized_incomplete_beta requires a, b > 0");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw ArgumentError("regularized_incomplete_beta requires x in [0, 1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return clamp_unit(front * beta_continued_fraction(a, b, x) / a);
    }
    return clamp_unit(1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b);
}

TestResult t_test(std::span<const double> g1, std::span<const double> g2) {
    const std::size_t n1 = g1.size();
    const std::size_t n2 = g2.size();
    if (n1 < 2 || n2 < 2) {
        throw ArgumentError("t_test needs at least 2 samples per group");
    }
    const double m1 = mean(g1);
    const double m2 = mean(g2);
    const double df = static_cast<double>(n1 + n2 - 2);
    const double pooled_var =
        (sum_squared_deviation(g1, m1) + sum_squared_deviation(g2, m2)) / df;
    if (!(pooled_var > 0.0)) {
        throw DegenerateDataError("t_test: zero pooled variance");
    }
    const double se = std::sqrt(pooled_var * (1.0 / n1 + 1.0 / n2));
    const double t = (m1 - m2) / se;

    TestResult result;
    result.test = "ttest";
    result.statistic = t;
    result.df1 = df;
    result.p_value = regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
    return result;
}

TestResult anova_oneway(const GroupSamples& samples) {
    const std::size_t k = samples.groups.size();
    if (k < 2) {
        throw ArgumentError("anova_oneway needs at least 2 groups");
    }
    std::size_t total = 0;
    double grand_sum = 0.0;
    for (const auto& group : samples.groups) {
        if (group.values.size() < 2) {
            throw ArgumentError("anova_oneway needs at least 2 samples per group");
        }
        total += group.values.size();
        for (double v : group.values) grand_sum += v;
    }
    const double grand_mean = grand_sum / static_cast<double>(total);

    double ss_between = 0.0;
    double ss_within = 0.0;
    for (const auto& group : samples.groups) {
        const double m = mean(group.values);
        const double d = m - grand_mean;
        ss_between += static_cast<double>(group.values.size()) * d * d;
        ss_within += sum_squared_deviation(group.values, m);
    }
    const double df1 = static_cast<double>(k - 1);
    const double df2 = static_cast<double>(total - k);
    if (!(ss_within > 0.0)) {
        throw DegenerateDataError("anova_oneway: zero within-group variance");
    }
    const double f = (ss_between / df1) / (ss_within / df2);

    TestResult result;
    result.test = "anova";
    result.statistic = f;
    result.df1 = df1;
    result.df2 = df2;
    result.p_value = regularized_incomplete_beta(df2 / 2.0, df1 / 2.0, df2 / (df2 + df1 * f));
    return result;
}

GroupSamples read_groups_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ArgumentError("group CSV: missing header");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "group,value") {
        throw ArgumentError("group CSV: header must be group,value");
    }
    GroupSamples samples;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw ArgumentError("group CSV line " + std::to_string(line_no) + ": expected group,value");
        }
        const std::string name = line.substr(0, comma);
        const std::string value_text = line.substr(comma + 1);
        double value = 0.0;
        try {
            std::size_t pos = 0;
            value = std::stod(value_text, &pos);
            if (pos != value_text.size()) throw std::invalid_argument(value_text);
        } catch (const std::exception&) {
            throw ArgumentError("group CSV line " + std::to_string(line_no) + ": bad value '" +
                                value_text + "'");
        }
        auto it = std::find_if(samples.groups.begin(), samples.groups.end(),
                               [&](const auto& g) { return g.name == name; });
        if (it == samples.groups.end()) {
            samples.groups.push_back({name, {value}});
        } else {
            it->values.push_back(value);
        }
    }
    return samples;
}

} // namespace cnsp
