#pragma once

namespace growdiff {

struct AiryValue {
    double x = 0.0;
    double ai = 0.0;
    double aip = 0.0;
};

// Ai and Ai' for real x
AiryValue airy_ai(double x);

// largest real zero of Ai, about -2.338
double airy_first_zero();

// branch evaluators, exposed for overlap tests
AiryValue airy_series(double x);
AiryValue airy_asymptotic(double x);

}  // namespace growdiff
