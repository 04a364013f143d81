#pragma once

#include <cmath>

namespace esdisp {

template <class Real>
struct Extremum {
  Real x;
  Real value;
};

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi];
/// stops once the bracket is narrower than `tol`.
template <class F, class Real>
Extremum<Real> golden_section_maximize(F&& f, Real lo, Real hi, Real tol) {
  const Real inv_phi = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real x1 = hi - inv_phi * (hi - lo);
  Real x2 = lo + inv_phi * (hi - lo);
  Real f1 = f(x1);
  Real f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return f1 < f2 ? Extremum<Real>{x2, f2} : Extremum<Real>{x1, f1};
}

}  // namespace esdisp
