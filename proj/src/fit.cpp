#include "dilab/fit.hpp"

#include "dilab/error.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>

namespace dilab
{

OrderFit fit_order(std::span<const ScaleError> points)
{
    if (points.size() < 3)
        throw Error(ErrorCode::InvalidArgument, "order fit needs at least three points");
    for (const auto& p : points)
    {
        if (!(p.scale > 0) || !std::isfinite(p.scale))
            throw Error(ErrorCode::InvalidArgument, "order fit needs positive scales");
        if (!(p.error >= 0) || !std::isfinite(p.error))
            throw Error(ErrorCode::InvalidArgument, "order fit needs finite nonnegative errors");
    }
    const bool all_floor = std::all_of(points.begin(), points.end(),
                                       [](const ScaleError& p) { return p.error <= kMachineFloor; });
    if (all_floor)
        throw Error(ErrorCode::DegenerateFit, "all errors at machine floor (exact)");
    const bool any_floor = std::any_of(points.begin(), points.end(),
                                       [](const ScaleError& p) { return p.error <= kMachineFloor; });
    if (any_floor)
        throw Error(ErrorCode::InvalidArgument, "some errors are at machine floor; the fit is ill-posed");

    const double n = static_cast<double>(points.size());
    double mx = 0;
    double my = 0;
    for (const auto& p : points)
    {
        mx += std::log(p.scale);
        my += std::log(p.error);
    }
    mx /= n;
    my /= n;
    double sxx = 0;
    double sxy = 0;
    for (const auto& p : points)
    {
        const double dx = std::log(p.scale) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.error) - my);
    }
    if (!(sxx > 0))
        throw Error(ErrorCode::InvalidArgument, "order fit needs distinct scales");
    const double slope = sxy / sxx;

    double ssr = 0;
    for (const auto& p : points)
    {
        const double r = std::log(p.error) - (my + slope * (std::log(p.scale) - mx));
        ssr += r * r;
    }
    const double dof = n - 2;
    const double stderr_slope = std::sqrt(ssr / dof / sxx);
    const boost::math::students_t dist(dof);
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    return {slope, t * stderr_slope};
}

} // namespace dilab
