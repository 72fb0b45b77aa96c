#pragma once

namespace growdiff {

struct PhysicsParams {
    double D = 1.0;
    double f0 = 1.0;

    // throws InvalidArgument unless D > 0 and f0 > 0
    static PhysicsParams make(double D, double f0);

    double c_star() const;
};

}  // namespace growdiff
