#pragma once

#include <span>
#include <vector>

namespace dilab
{

//! Errors at or below this level count as exact (double-precision floor).
inline constexpr double kMachineFloor = 1e-13;

struct ScaleError
{
    double scale = 0;
    double error = 0;
};

struct OrderFit
{
    double slope = 0;
    //! 95% Student-t half-width of the slope, from the residual variance.
    double half_width = 0;
};

/*!
 * Least-squares slope of log(error) against log(scale).
 *
 * Needs at least three points with positive scales. Throws DegenerateFit
 * when every error sits at or below kMachineFloor (an exact method), and
 * InvalidArgument when only some errors do.
 */
OrderFit fit_order(std::span<const ScaleError> points);

} // namespace dilab
