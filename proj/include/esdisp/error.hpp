#pragma once

#include <stdexcept>
#include <string>

namespace esdisp {

/// Failure categories surfaced by the library. Every numerical failure is
/// reported through `esdisp::error`; nothing is silently clamped.
enum class errc {
  domain,                  ///< non-finite input
  precondition,            ///< argument outside the documented contract
  degenerate_point,        ///< g0 = 0 or a root that fails its post-check
  singular_coefficient,    ///< lambda^-(tau) = 0
  unresolved_winding,      ///< angle refinement exhausted or non-integer winding
  threshold_disagreement,  ///< winding index contradicts the critical-frequency rule
  threshold_ambiguous,     ///< omega inside the margin band around omega*
  near_cut,                ///< point too close to a branch cut
  overflow,                ///< exp(V) would overflow
  no_discrete_spectrum,    ///< kappa = 0
  zero_at_infinity,        ///< omega = 0: the zeros sit at the point at infinity
  not_a_zero,              ///< supplied eta0 does not annihilate lambda
  non_decaying_mode,       ///< Re(z0/eta0) <= 0
  quadrature_failure,      ///< adaptive integration did not converge
};

inline const char* to_string(errc code) noexcept {
  switch (code) {
    case errc::domain: return "domain";
    case errc::precondition: return "precondition";
    case errc::degenerate_point: return "degenerate_point";
    case errc::singular_coefficient: return "singular_coefficient";
    case errc::unresolved_winding: return "unresolved_winding";
    case errc::threshold_disagreement: return "threshold_disagreement";
    case errc::threshold_ambiguous: return "threshold_ambiguous";
    case errc::near_cut: return "near_cut";
    case errc::overflow: return "overflow";
    case errc::no_discrete_spectrum: return "no_discrete_spectrum";
    case errc::zero_at_infinity: return "zero_at_infinity";
    case errc::not_a_zero: return "not_a_zero";
    case errc::non_decaying_mode: return "non_decaying_mode";
    case errc::quadrature_failure: return "quadrature_failure";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace esdisp
