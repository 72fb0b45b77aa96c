#include "growdiff/physics.hpp"

#include <cmath>

#include "growdiff/errors.hpp"

namespace growdiff {

PhysicsParams PhysicsParams::make(double D, double f0) {
    if (!(D > 0.0) || !std::isfinite(D)) throw InvalidArgument("physics: D must be positive and finite");
    if (!(f0 > 0.0) || !std::isfinite(f0)) throw InvalidArgument("physics: f0 must be positive and finite");
    return PhysicsParams{D, f0};
}

double PhysicsParams::c_star() const { return 2.0 * std::sqrt(D * f0); }

}  // namespace growdiff
