#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace rap {

// Price-over-reliability assumptions. With equal scale alpha the pointwise
// order on (0,1) is cubic <= quadratic <= linear <= constant; linear,
// exponential, quadratic and cubic all approach alpha at R -> 1.
enum class CurveKind { Constant, Linear, Exponential, Quadratic, Cubic, Logarithmic };

struct CostCurve {
  CurveKind kind = CurveKind::Linear;
  double alpha = 100.0;
};

std::string_view curve_name(CurveKind k);
std::optional<CurveKind> parse_curve(std::string_view text);

/// Price of one MW at the given reliability. Domain [0,1).
///   constant     alpha
///   linear       alpha * R
///   exponential  alpha * (e^R - 1) / (e - 1)
///   quadratic    alpha * R^2
///   cubic        alpha * R^3
///   logarithmic  -(alpha/9) * log(1 - R)
double price(const CostCurve& curve, double reliability);

}  // namespace rap
