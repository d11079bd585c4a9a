#pragma once

#include <span>

namespace neurohotnet::stats {

double mean(std::span<const double> x);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
double stddev(std::span<const double> x);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with df degrees
/// of freedom. Accurate far into the tail (values near 1e-300 are fine).
double student_t_two_sided(double t, double df);

struct TTest {
  double t = 0.0;
  double df = 0.0;
  double p_value = 1.0;
  bool degenerate = false;  // zero variance
};

/// One-sample t-test of x against mu. Zero variance gives t = 0, p = 1 when
/// the mean equals mu exactly and an infinite t with p = 0 otherwise; both are
/// flagged degenerate.
TTest one_sample_t_test(std::span<const double> x, double mu);

/// Paired t-test on x - y (equivalent to one_sample_t_test(x - y, 0)).
TTest paired_t_test(std::span<const double> x, std::span<const double> y);

/// Standard normal quantile for the two-sided level `confidence`
/// (1.959964... for 0.95).
double normal_two_sided_quantile(double confidence);

}  // namespace neurohotnet::stats
