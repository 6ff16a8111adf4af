#pragma once

namespace pairbec {

// Richardson step for a quantity with O(h^2) error: `coarse` at pitch h,
// `fine` at pitch h/2.  The error estimate is the magnitude of the applied
// correction and bounds the remaining error of `fine` up to higher order.
struct RichardsonResult {
    double value;
    double error_estimate;
};

RichardsonResult richardson_h2(double coarse, double fine);

// Aitken limit of a sequence sampled at geometrically growing box sizes
// L, 2L, 4L.  Assumes roughly geometric decay of the increments; when the
// increments vanish or fail to contract the last value is returned as is.
double aitken_limit(double e1, double e2, double e3);

}
