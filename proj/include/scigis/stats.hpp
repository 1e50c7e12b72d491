#ifndef SCIGIS_STATS_HPP
#define SCIGIS_STATS_HPP

#include <span>

namespace scigis {

/// Regularized incomplete beta I_x(a, b), evaluated with the Lentz
/// continued fraction (relative accuracy around 1e-14).
double incomplete_beta(double a, double b, double x);

/// CDF of Student's t distribution with `df` degrees of freedom (df > 0).
double student_t_cdf(double t, double df);

/// Two-sided tail probability P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

/// Sample Pearson correlation. Throws DomainError on a length mismatch,
/// fewer than two points, or a constant series ("undefined correlation").
double pearson(std::span<const double> xs, std::span<const double> ys);

enum class TTestKind { Student, Welch };

struct TTestReport {
  double distance = 0;  // mean(group1) - mean(group2)
  double t = 0;
  double p = 1;  // two-sided
  double df = 0;
};

/// Two-sample t-test. Student's pooled-variance test by default (df =
/// n1 + n2 - 2); Welch uses the Satterthwaite df. Zero variance with equal
/// means gives t = 0, p = 1; with unequal means it throws DomainError.
TTestReport ttest_ind(std::span<const double> group1, std::span<const double> group2,
                      TTestKind kind = TTestKind::Student);

}  // namespace scigis

#endif  // SCIGIS_STATS_HPP
