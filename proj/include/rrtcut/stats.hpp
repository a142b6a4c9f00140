#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace rrtcut {

// Limit law of the centered cut counts: characteristic function
// exp(i t ln|t| - (pi/2)|t|), a completely asymmetric 1-stable law. The cdf
// comes from the inversion integral
//   F(x) = 1/2 - (1/pi) * Int_0^inf exp(-pi t/2) sin(t (ln t - x)) / t dt
// evaluated with adaptive Simpson; accurate to ~1e-8.
double cauchy_limit_cdf(double x);

double beta_cdf(double x, double a, double b);  // regularized incomplete beta

// cdf of the i-th smallest of ell independent uniforms on (0,1).
double uniform_order_stat_cdf(double x, std::uint64_t i, std::uint64_t ell);

double frechet_cdf(double x, double c);  // exp(-c/x) for x > 0
double normal_cdf(double z);

// Roots of a * ln(2e/a) = 1: growth constants of the extreme leaf depths in
// the ordered cut tree. alpha_plus ~ 4.311, alpha_minus ~ 0.373.
double alpha_plus();
double alpha_minus();

// One-sample Kolmogorov-Smirnov statistic against a cdf; samples need not be
// sorted.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample KS statistic and its asymptotic p-value.
struct TwoSampleKs {
  double statistic = 0.0;
  double p_value = 0.0;
};
TwoSampleKs ks_two_sample(std::vector<double> a, std::vector<double> b);

// Upper tail of the chi-square distribution with df degrees of freedom.
double chi_square_tail(double x, double df);

// Pearson chi-square test of observed counts against expected counts (same
// length, expected > 0); returns the p-value.
double chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected);

struct SampleSummary {
  double mean = 0.0;
  double second_moment = 0.0;
  double variance = 0.0;
};
SampleSummary summarize(const std::vector<double>& samples);

// Runs fn(trial) for trial = 0..count-1 over the given number of worker
// threads, in deterministic per-trial slots: results[trial] never depends on
// the thread count.
void run_trials(std::uint64_t count, std::uint64_t threads,
                const std::function<void(std::uint64_t)>& fn);

}  // namespace rrtcut
