#ifndef VECTONT_TOLERANCE_HPP
#define VECTONT_TOLERANCE_HPP

#include <algorithm>
#include <cmath>

namespace vectont {

inline constexpr double kDefaultTolerance = 1e-9;

// Combined absolute/relative equality: |a-b| <= max(tol, tol*max(|a|,|b|)).
inline bool tol_eq(double a, double b, double tol = kDefaultTolerance) {
    const double diff = std::fabs(a - b);
    return diff <= std::max(tol, tol * std::max(std::fabs(a), std::fabs(b)));
}

// a <= b up to the same tolerance band.
inline bool tol_le(double a, double b, double tol = kDefaultTolerance) {
    return a <= b || tol_eq(a, b, tol);
}

inline bool tol_ge(double a, double b, double tol = kDefaultTolerance) {
    return a >= b || tol_eq(a, b, tol);
}

} // namespace vectont

#endif
