#include "gathersim/geometry.hpp"

#include <cmath>

namespace gathersim {

double normalize_angle(double radians) {
  // In-range values pass through bit-exactly so that normalization is
  // idempotent; the fmod round-trip below can otherwise shift them an ulp.
  if (radians >= 0.0 && radians < kTau) {
    return radians;
  }
  double r = std::fmod(radians, kTau);
  if (r < 0.0) {
    r += kTau;
  }
  // fmod can round r + kTau back up to kTau for tiny negative inputs.
  if (r >= kTau) {
    r -= kTau;
  }
  return r;
}

double normalize_signed_angle(double radians) {
  if (radians > -kPi && radians <= kPi) {
    return radians;
  }
  double r = normalize_angle(radians);
  if (r > kPi) {
    r -= kTau;
  }
  return r;
}

double AngularInterval::span() const {
  if (full_) {
    return kTau;
  }
  if (lower_ == upper_) {
    return 0.0;
  }
  return normalize_angle(upper_.value() - lower_.value());
}

bool AngularInterval::empty() const {
  return !full_ && lower_ == upper_ && !(lower_closed_ && upper_closed_);
}

bool AngularInterval::contains(Angle a) const {
  if (full_) {
    return true;
  }
  const double s = span();
  double offset = normalize_angle(a.value() - lower_.value());
  // Snap to the endpoints: a hair below lower wraps to just under 2*pi.
  if (offset <= kAngleEps || offset >= kTau - kAngleEps) {
    offset = 0.0;
  } else if (std::abs(offset - s) <= kAngleEps) {
    offset = s;
  }
  if (lower_ == upper_) {
    return offset == 0.0 && lower_closed_ && upper_closed_;
  }
  if (offset == 0.0) {
    return lower_closed_;
  }
  if (offset == s) {
    return upper_closed_;
  }
  return offset < s;
}

std::optional<GlobalPoint> line_intersection(GlobalPoint p1, double dir1, GlobalPoint p2,
                                             double dir2) {
  // Parallel iff the directions agree modulo pi.
  double diff = std::fmod(dir1 - dir2, kPi);
  if (diff < 0.0) {
    diff += kPi;
  }
  if (diff <= kAngleEps || diff >= kPi - kAngleEps) {
    return std::nullopt;
  }
  // Solve p1 + t1*u1 = p2 + t2*u2 by Cramer's rule.
  const double u1x = std::cos(dir1), u1y = std::sin(dir1);
  const double u2x = std::cos(dir2), u2y = std::sin(dir2);
  const double det = u1x * (-u2y) - (-u2x) * u1y;
  const double bx = p2.x - p1.x;
  const double by = p2.y - p1.y;
  const double t1 = (bx * (-u2y) - (-u2x) * by) / det;
  return GlobalPoint{p1.x + t1 * u1x, p1.y + t1 * u1y};
}

}  // namespace gathersim
