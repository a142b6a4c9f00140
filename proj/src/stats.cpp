#include "rrtcut/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace rrtcut {
namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, eps * 0.5, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, eps * 0.5, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 48);
}

// Regularized incomplete beta by the Lentz continued fraction.
double betacf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr int kMaxIter = 500;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
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
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 3e-15) break;
  }
  return h;
}

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("bad incomplete gamma arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) {
    // series for P(a,x), return 1 - P
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  // Lentz continued fraction for Q directly
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / kTiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

double alpha_root(double lo, double hi) {
  // g(a) = a ln(2e/a) - 1 is positive between the two roots
  const auto g = [](double a) { return a * std::log(2.0 * std::exp(1.0) / a) - 1.0; };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((g(mid) > 0.0) == (g(hi) > 0.0))
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double cauchy_limit_cdf(double x) {
  const auto integrand = [x](double t) {
    return std::exp(-1.5707963267948966 * t) * std::sin(t * (std::log(t) - x)) / t;
  };
  // The integrand is ~(ln t - x) near 0 and decays like exp(-pi t / 2).
  const double tail = integrate(integrand, 1e-12, 40.0, 1e-10);
  const double f = 0.5 - tail / 3.141592653589793;
  return std::min(1.0, std::max(0.0, f));
}

double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double uniform_order_stat_cdf(double x, std::uint64_t i, std::uint64_t ell) {
  if (i < 1 || i > ell) throw std::invalid_argument("order statistic index out of range");
  return beta_cdf(x, static_cast<double>(i), static_cast<double>(ell - i + 1));
}

double frechet_cdf(double x, double c) { return x <= 0.0 ? 0.0 : std::exp(-c / x); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z * 0.7071067811865476); }

double alpha_plus() {
  static const double v = alpha_root(2.0, 2.0 * std::exp(1.0));
  return v;
}

double alpha_minus() {
  static const double v = alpha_root(1e-9, 2.0);
  return v;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("need samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

TwoSampleKs ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("need samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  TwoSampleKs out;
  out.statistic = d;
  const double en = std::sqrt(na * nb / (na + nb));
  out.p_value = kolmogorov_tail((en + 0.12 + 0.11 / en) * d);
  return out;
}

double chi_square_tail(double x, double df) { return gamma_q(0.5 * df, 0.5 * x); }

double chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::invalid_argument("count vectors must match");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) throw std::invalid_argument("expected counts must be positive");
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  return chi_square_tail(stat, static_cast<double>(observed.size() - 1));
}

SampleSummary summarize(const std::vector<double>& samples) {
  SampleSummary s;
  if (samples.empty()) return s;
  const double n = static_cast<double>(samples.size());
  for (double v : samples) {
    s.mean += v;
    s.second_moment += v * v;
  }
  s.mean /= n;
  s.second_moment /= n;
  s.variance = s.second_moment - s.mean * s.mean;
  return s;
}

void run_trials(std::uint64_t count, std::uint64_t threads,
                const std::function<void(std::uint64_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::uint64_t t = 0; t < count; ++t) fn(t);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  const std::uint64_t workers = std::min(threads, count);
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (true) {
        const std::uint64_t t = next.fetch_add(1);
        if (t >= count) return;
        fn(t);
      }
    });
  for (auto& th : pool) th.join();
}

}  // namespace rrtcut
