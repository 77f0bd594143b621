#pragma once

namespace sigmaq {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt2OverPi = 0.79788456080286535588;  // E|N(0,1)|
inline constexpr double kSqrtPiOver2 = 1.25331413731550025121;

double normal_pdf(double x) noexcept;
double normal_cdf(double x) noexcept;

/// 2^alpha * Gamma(1 + alpha): the constant linking the zero-set projection of
/// a Bessel power to its age process.
double azema_constant(double alpha);

}  // namespace sigmaq
