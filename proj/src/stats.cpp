#include "scigis/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "scigis/error.hpp"

namespace scigis {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEpsilon = 1e-16;
constexpr int kMaxIterations = 10000;

// Continued fraction for I_x(a, b), modified Lentz's method.
double beta_continued_fraction(double a, double b, double x) {
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
    if (std::abs(delta - 1.0) < kEpsilon) return h;
  }
  throw DomainError(fmt::format("incomplete beta did not converge for a={}, b={}, x={}", a, b, x));
}

double mean_of(std::span<const double> xs) {
  double sum = 0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double squared_deviations(std::span<const double> xs, double mean) {
  double sum = 0;
  for (double x : xs) sum += (x - mean) * (x - mean);
  return sum;
}

bool is_constant(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [&](double x) { return x == xs.front(); });
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0) || !(b > 0)) throw DomainError("incomplete beta requires a, b > 0");
  if (!(x >= 0 && x <= 1)) throw DomainError("incomplete beta requires x in [0, 1]");
  if (x == 0) return 0.0;
  if (x == 1) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0)) throw DomainError("t distribution requires df > 0");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(incomplete_beta(df / 2.0, 0.5, x), 0.0, 1.0);
}

double student_t_cdf(double t, double df) {
  const double tail = 0.5 * student_t_two_sided_p(t, df);
  return t > 0 ? 1.0 - tail : tail;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw DomainError(fmt::format("pearson: series lengths differ ({} vs {})", xs.size(), ys.size()));
  }
  if (xs.size() < 2) throw DomainError("pearson: need at least two points");
  if (is_constant(xs) || is_constant(ys)) throw DomainError("undefined correlation: constant series");
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double cov = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) cov += (xs[i] - mx) * (ys[i] - my);
  const double sx = squared_deviations(xs, mx);
  const double sy = squared_deviations(ys, my);
  if (!(sx > 0) || !(sy > 0)) throw DomainError("undefined correlation: zero variance");
  return std::clamp(cov / std::sqrt(sx * sy), -1.0, 1.0);
}

TTestReport ttest_ind(std::span<const double> group1, std::span<const double> group2, TTestKind kind) {
  const auto n1 = static_cast<double>(group1.size());
  const auto n2 = static_cast<double>(group2.size());
  if (group1.size() < 2 || group2.size() < 2) throw DomainError("t-test needs at least two values per group");

  TTestReport report;
  const double m1 = mean_of(group1);
  const double m2 = mean_of(group2);
  report.distance = m1 - m2;
  const double ss1 = squared_deviations(group1, m1);
  const double ss2 = squared_deviations(group2, m2);

  double se = 0;
  if (kind == TTestKind::Student) {
    report.df = n1 + n2 - 2.0;
    const double pooled = (ss1 + ss2) / report.df;
    se = std::sqrt(pooled * (1.0 / n1 + 1.0 / n2));
  } else {
    const double a = ss1 / (n1 - 1.0) / n1;
    const double b = ss2 / (n2 - 1.0) / n2;
    se = std::sqrt(a + b);
    report.df = (a + b) * (a + b) / (a * a / (n1 - 1.0) + b * b / (n2 - 1.0));
  }

  if (!(se > 0)) {
    if (m1 == m2) {
      report.t = 0;
      report.p = 1;
      if (!(report.df > 0)) report.df = n1 + n2 - 2.0;
      return report;
    }
    throw DomainError("degenerate variance: both groups constant with different means");
  }
  report.t = report.distance / se;
  report.p = student_t_two_sided_p(report.t, report.df);
  return report;
}

}  // namespace scigis
