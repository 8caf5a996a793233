#include "rap/cost_curves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rap {

std::string_view curve_name(CurveKind k) {
  switch (k) {
    case CurveKind::Constant: return "constant";
    case CurveKind::Linear: return "linear";
    case CurveKind::Exponential: return "exponential";
    case CurveKind::Quadratic: return "quadratic";
    case CurveKind::Cubic: return "cubic";
    case CurveKind::Logarithmic: return "logarithmic";
  }
  return "unknown";
}

std::optional<CurveKind> parse_curve(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "constant") return CurveKind::Constant;
  if (t == "linear") return CurveKind::Linear;
  if (t == "exponential" || t == "exp") return CurveKind::Exponential;
  if (t == "quadratic") return CurveKind::Quadratic;
  if (t == "cubic") return CurveKind::Cubic;
  if (t == "logarithmic" || t == "log") return CurveKind::Logarithmic;
  return std::nullopt;
}

double price(const CostCurve& curve, double reliability) {
  if (!(reliability >= 0.0) || reliability >= 1.0) {
    throw std::invalid_argument("reliability must lie in [0,1)");
  }
  const double a = curve.alpha;
  const double r = reliability;
  switch (curve.kind) {
    case CurveKind::Constant: return a;
    case CurveKind::Linear: return a * r;
    case CurveKind::Exponential: return a * std::expm1(r) / std::expm1(1.0);
    case CurveKind::Quadratic: return a * r * r;
    case CurveKind::Cubic: return a * r * r * r;
    case CurveKind::Logarithmic: return -(a / 9.0) * std::log1p(-r);
  }
  throw std::invalid_argument("unknown curve kind");
}

}  // namespace rap
