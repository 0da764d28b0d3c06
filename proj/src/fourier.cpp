#include "ensemble_su2/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ensemble_su2 {

namespace {
constexpr double pi = std::numbers::pi;
}

gl_rule::gl_rule(int order) {
  if (order < 2) throw std::invalid_argument("quadrature order must be >= 2");
  nodes.resize(order);
  weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;  // Legendre recurrence up to P_order
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = weights[order - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

double gl_panel_integrate(const std::function<double(double)>& f, double lo, double hi,
                          double max_panel_width, const gl_rule& rule) {
  if (hi <= lo) return 0.0;
  const int n_panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / max_panel_width)));
  const double h = (hi - lo) / n_panels;
  const int order = static_cast<int>(rule.nodes.size());
  double total = 0.0;
  for (int p = 0; p < n_panels; ++p) {
    const double mid = lo + (p + 0.5) * h;
    double acc = 0.0;
    for (int i = 0; i < order; ++i) acc += rule.weights[i] * f(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * acc;
  }
  return total;
}

fourier_kernel::fourier_kernel(target_profile profile, quadrature_spec spec)
    : profile_(std::move(profile)), spec_(spec), rule_(spec.order) {}

double fourier_kernel::compute_ghat(double t) const {
  const double lo = 2.0 * profile_.v0();
  const double hi = 2.0 * profile_.v1();
  double width = (hi - lo) / spec_.min_panels;
  if (t > 0) width = std::min(width, (2.0 * pi / t) / spec_.period_fraction);
  const double integral = gl_panel_integrate(
      [&](double w) { return profile_.eval_g(w) * std::cos(t * w); }, lo, hi, width, rule_);
  return std::sqrt(2.0 / pi) * integral;
}

double fourier_kernel::ghat(double t) const {
  const double key = std::fabs(t);  // evenness of the cosine transform, exact
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const double value = compute_ghat(key);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.emplace(key, value).first->second;
}

std::size_t fourier_kernel::cache_size() const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  return cache_.size();
}

double fourier_kernel::outer_panel_width(double w) const {
  // ghat itself oscillates with frequencies up to 2 v1; the cos/sin factor adds |w|.
  const double freq = std::fabs(w) + 2.0 * profile_.v1();
  return (2.0 * pi / freq) / spec_.period_fraction;
}

double fourier_kernel::truncation_error(double eps1, double w) const {
  if (!(eps1 > 0)) throw std::invalid_argument("eps1 must be positive");
  const double T = 1.0 / eps1;
  // integrand is even in tau, so integrate [0, T] and double
  const double integral = 2.0 * gl_panel_integrate(
      [&](double tau) { return ghat(tau) * std::cos(w * tau); }, 0.0, T, outer_panel_width(w),
      rule_);
  return std::fabs(profile_.eval_g(w) - integral / std::sqrt(2.0 * pi));
}

double fourier_kernel::odd_integral(double eps1, double w) const {
  if (!(eps1 > 0)) throw std::invalid_argument("eps1 must be positive");
  const double T = 1.0 / eps1;
  const double width = outer_panel_width(w);
  const int n_panels = std::max(1, static_cast<int>(std::ceil(T / width)));
  const double h = T / n_panels;
  const int order = static_cast<int>(rule_.nodes.size());
  // mirrored node set: every node tau is paired with -tau at equal weight
  double total = 0.0;
  for (int p = 0; p < n_panels; ++p) {
    const double mid = (p + 0.5) * h;
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
      const double tau = mid + 0.5 * h * rule_.nodes[i];
      const double gt = ghat(tau);
      acc += rule_.weights[i] * (gt * std::sin(w * tau) + gt * std::sin(-w * tau));
    }
    total += 0.5 * h * acc;
  }
  return total / std::sqrt(2.0 * pi);
}

decay_report fourier_kernel::verify_decay(int n_max, const std::vector<double>& t_grid) const {
  if (n_max < 1) throw std::invalid_argument("decay exponent must be >= 1");
  if (t_grid.size() < 4 || !std::is_sorted(t_grid.begin(), t_grid.end()) || t_grid.front() <= 0)
    throw std::invalid_argument("decay grid must be positive increasing with >= 4 points");
  decay_report report;
  report.all_bounded = true;
  const std::size_t half = t_grid.size() / 2;
  for (int n = 1; n <= n_max; ++n) {
    decay_row row;
    row.n = n;
    double max_low = 0.0, max_high = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      const double v = std::fabs(ghat(t_grid[i])) * std::pow(t_grid[i], n);
      row.c_n = std::max(row.c_n, v);
      double& bin = i < half ? max_low : max_high;
      bin = std::max(bin, v);
    }
    row.top_to_bottom = max_low > 0 ? max_high / max_low : 0.0;
    // bounded surrogate: the weighted tail must not outgrow the head
    row.bounded = row.c_n == 0.0 || max_high <= 2.0 * max_low;
    report.all_bounded = report.all_bounded && row.bounded;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace ensemble_su2
