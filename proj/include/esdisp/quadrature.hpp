#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration for real- and
// complex-valued integrands, in the style of QUADPACK's QAG.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "esdisp/error.hpp"

namespace esdisp {

/// Tolerances and limits shared by every integral in the library.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  double tau_max = 8.0;  ///< truncation point of the Gaussian-weighted integrals
  int max_subdivisions = 2000;

  void validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(tau_max >= 6.0) || max_subdivisions < 10) {
      throw error(errc::precondition,
                  "QuadratureSpec requires rel_tol > 0, abs_tol > 0, tau_max >= 6, "
                  "max_subdivisions >= 10");
    }
  }
};

template <class T>
struct QuadratureResult {
  T value{};
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
  bool at_roundoff_floor = false;
};

template <class T>
struct SegmentOrder {
  bool operator()(const Segment<T>& lhs, const Segment<T>& rhs) const {
    return lhs.error < rhs.error;
  }
};

template <class T, class F>
Segment<T> kronrod15(F& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<T, 7> lower{};
  std::array<T, 7> upper{};
  const T fc = f(centre);
  T gauss = fc * gauss_weights[3];
  T kronrod = fc * kronrod_weights[7];
  double res_abs = std::abs(kronrod);

  for (int j = 0; j < 3; ++j) {
    const int k = 2 * j + 1;
    const double dx = half * kronrod_nodes[k];
    lower[k] = f(centre - dx);
    upper[k] = f(centre + dx);
    gauss += gauss_weights[j] * (lower[k] + upper[k]);
    kronrod += kronrod_weights[k] * (lower[k] + upper[k]);
    res_abs += kronrod_weights[k] * (std::abs(lower[k]) + std::abs(upper[k]));
  }
  for (int j = 0; j < 4; ++j) {
    const int k = 2 * j;
    const double dx = half * kronrod_nodes[k];
    lower[k] = f(centre - dx);
    upper[k] = f(centre + dx);
    kronrod += kronrod_weights[k] * (lower[k] + upper[k]);
    res_abs += kronrod_weights[k] * (std::abs(lower[k]) + std::abs(upper[k]));
  }

  const T mean = kronrod * 0.5;
  double res_asc = kronrod_weights[7] * std::abs(fc - mean);
  for (int k = 0; k < 7; ++k) {
    res_asc += kronrod_weights[k] * (std::abs(lower[k] - mean) + std::abs(upper[k] - mean));
  }

  const double width = std::abs(half);
  Segment<T> seg;
  seg.a = a;
  seg.b = b;
  seg.value = kronrod * half;
  res_abs *= width;
  res_asc *= width;
  double err = std::abs((kronrod - gauss) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > tiny / (50.0 * eps)) {
    const double floor = 50.0 * eps * res_abs;
    if (err <= floor) {
      err = floor;
      seg.at_roundoff_floor = true;
    }
  }
  seg.error = err;
  return seg;
}

}  // namespace detail

/// Integrates `f` over the union of consecutive intervals given by
/// `points` (sorted, at least two entries). Interior points act as
/// breakpoints: no node is ever placed on them.
template <class F>
auto integrate_with_breakpoints(F&& f, std::vector<double> points, const QuadratureSpec& spec)
    -> QuadratureResult<std::decay_t<decltype(f(0.0))>> {
  using T = std::decay_t<decltype(f(0.0))>;
  using detail::Segment;

  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 2) {
    return {T{}, 0.0, 0};
  }

  std::vector<Segment<T>> heap;
  heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + points.size());
  T total{};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    heap.push_back(detail::kronrod15<T>(f, points[i], points[i + 1]));
    total += heap.back().value;
    total_err += heap.back().error;
  }
  const detail::SegmentOrder<T> order;
  std::make_heap(heap.begin(), heap.end(), order);

  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };

  while (total_err > tolerance()) {
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
      throw error(errc::quadrature_failure,
                  "adaptive quadrature exhausted " + std::to_string(spec.max_subdivisions) +
                      " subdivisions (error estimate " + std::to_string(total_err) + ")");
    }
    std::pop_heap(heap.begin(), heap.end(), order);
    const Segment<T> worst = heap.back();
    // Splitting a segment whose error is pure rounding cannot help.
    if (worst.at_roundoff_floor) {
      break;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      break;
    }
    heap.pop_back();
    Segment<T> left = detail::kronrod15<T>(f, worst.a, mid);
    Segment<T> right = detail::kronrod15<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), order);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), order);
  }

  // Re-sum to remove drift from the running updates.
  T sum{};
  double err = 0.0;
  for (const auto& seg : heap) {
    sum += seg.value;
    err += seg.error;
  }
  return {sum, err, static_cast<int>(heap.size())};
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec)
    -> std::decay_t<decltype(f(0.0))> {
  return integrate_with_breakpoints(std::forward<F>(f), {a, b}, spec).value;
}

/// Same as `integrate` but with one interior breakpoint, ignored when it
/// lies outside (a, b).
template <class F>
auto integrate_split(F&& f, double a, double b, double split, const QuadratureSpec& spec)
    -> std::decay_t<decltype(f(0.0))> {
  std::vector<double> pts{a, b};
  if (split > a && split < b) {
    pts.push_back(split);
  }
  return integrate_with_breakpoints(std::forward<F>(f), std::move(pts), spec).value;
}

}  // namespace esdisp
