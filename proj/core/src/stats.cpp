#include "neurohotnet/stats.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "neurohotnet/error.hpp"

namespace neurohotnet::stats {

double mean(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double total = 0.0;
  for (double v : x) total += v;
  return total / static_cast<double>(x.size());
}

double stddev(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw ParameterError("t distribution needs positive degrees of freedom");
  if (std::isnan(t)) return 1.0;
  if (std::isinf(t)) return 0.0;
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  return std::min(1.0, p);
}

TTest one_sample_t_test(std::span<const double> x, double mu) {
  if (x.size() < 2) throw ParameterError("t-test needs at least two observations");
  TTest out;
  out.df = static_cast<double>(x.size() - 1);
  const double m = mean(x);
  const double sd = stddev(x);
  if (sd == 0.0) {
    out.degenerate = true;
    if (m == mu) {
      out.t = 0.0;
      out.p_value = 1.0;
    } else {
      out.t = m > mu ? std::numeric_limits<double>::infinity()
                     : -std::numeric_limits<double>::infinity();
      out.p_value = 0.0;
    }
    return out;
  }
  out.t = (m - mu) / (sd / std::sqrt(static_cast<double>(x.size())));
  out.p_value = student_t_two_sided(out.t, out.df);
  return out;
}

TTest paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw StructuralError("paired samples differ in length");
  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
  return one_sample_t_test(diff, 0.0);
}

double normal_two_sided_quantile(double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw ParameterError("confidence must lie in (0, 1)");
  }
  const boost::math::normal dist;
  return boost::math::quantile(dist, 0.5 + 0.5 * confidence);
}

}  // namespace neurohotnet::stats
