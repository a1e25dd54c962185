#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "errors.hpp"

namespace intertwine {

/// Half the order of the intertwinor A_{2r}.
///
/// When 2r is an integer the doubled value is kept exactly so that pole and
/// zero-denominator detection on the half-integer lattice is exact.
class SpectralOrder {
public:
    explicit SpectralOrder(double r) : value_(r)
    {
        if (!std::isfinite(r)) throw InvalidArgument("spectral order r must be finite");
        const double twice = 2.0 * r;
        if (std::nearbyint(twice) == twice && std::fabs(twice) < 1e15)
            twice_ = static_cast<std::int64_t>(twice);
    }

    double value() const { return value_; }
    const std::optional<std::int64_t>& twice() const { return twice_; }

    bool is_zero() const { return value_ == 0.0; }
    bool is_half_integer() const { return twice_.has_value(); }

    /// True for r in {1, 2, 3, ...}.
    bool is_integer() const { return twice_ && *twice_ % 2 == 0 && *twice_ >= 2; }
    int as_integer() const
    {
        if (!is_integer()) throw InvalidArgument("spectral order is not a positive integer");
        return static_cast<int>(*twice_ / 2);
    }

    SpectralOrder operator-() const { return SpectralOrder(-value_); }

private:
    double value_;
    std::optional<std::int64_t> twice_;
};

}  // namespace intertwine
