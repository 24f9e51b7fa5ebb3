#pragma once

namespace bellmc {

/// Inverse standard-normal CDF (Acklam's rational approximation, |err| < 5e-9).
double normal_quantile(double p);

/// Chi-square quantile via the Wilson-Hilferty cube approximation; adequate
/// for the tail flags used here (k >= a few).
double chi2_quantile(double p, double ndof);

}  // namespace bellmc
