#pragma once

namespace idbench {

// Standard normal CDF.
double normal_cdf(double x) noexcept;

// Standard normal quantile (inverse CDF) for p in (0,1). Rational
// approximation followed by one Halley refinement against erfc; absolute
// error below 1e-9 on (1e-8, 1-1e-8). Throws ValidationError outside (0,1).
double normal_quantile(double p);

}  // namespace idbench
