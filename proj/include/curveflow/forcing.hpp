#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "curveflow/geometry.hpp"
#include "curveflow/grid.hpp"

namespace curveflow {

enum class ForcingVar { s, s_theta, s_thetatheta, kappa, theta };

namespace expr {

enum class Kind { number, variable, sin_theta, cos_theta, add, sub, mul, div, pow, neg };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  double number = 0.0;       // Kind::number
  ForcingVar var{};          // Kind::variable
  int exponent = 0;          // Kind::pow
  NodePtr lhs, rhs;          // operands (pow uses lhs only)
};

}  // namespace expr

// Tagged forcing forms. Built-ins carry their parameters; everything else is
// a parsed expression over {S, S_theta, S_thetatheta, kappa, theta}.
struct Constant {
  double value;
};
struct Proportional {
  double c;  // F = c S
};
struct Anisotropic {
  double alpha, beta;  // F = alpha kappa^2 + beta S_thetatheta
};
struct Collapse {
  double beta;  // F = -beta S, beta > 0
};
struct Expression {
  expr::NodePtr ast;
};

class ForcingSpec {
 public:
  using Form = std::variant<Constant, Proportional, Anisotropic, Collapse, Expression>;

  ForcingSpec() : form_(Constant{0.0}), source_("0") {}
  ForcingSpec(Constant f);
  ForcingSpec(Proportional f);
  ForcingSpec(Anisotropic f);
  ForcingSpec(Collapse f);  // throws std::invalid_argument unless beta > 0
  ForcingSpec(Expression f, std::string source);

  static ForcingSpec zero() { return ForcingSpec(); }

  const Form& form() const { return form_; }
  const std::string& source() const { return source_; }

  bool references(ForcingVar v) const;
  /// True when F depends on no context variable other than S itself.
  bool depends_only_on_s() const;

 private:
  Form form_;
  std::string source_;
};

/// Parse the forcing grammar; recognizes the sugar forms "c*S" (proportional
/// or collapse by sign), bare numbers (constant), and
/// "a*kappa^2 + b*S_thetatheta" (anisotropic). Throws ParseError with the
/// offending offset.
ForcingSpec parse_forcing(std::string_view text);

// Evaluation context: fields a forcing may reference, all on one grid.
// kappa is present only when the support field it came from was strictly
// convex.
struct ForcingContext {
  ThetaGrid grid;
  std::optional<Field> s;
  std::optional<Field> s_theta;
  std::optional<Field> s_thetatheta;
  std::optional<Field> kappa;

  /// Populate everything derivable from S (kappa omitted when S is not
  /// strictly convex).
  static ForcingContext from_support(const SupportField& S);
  /// Context for the curvature-intrinsic flow: kappa and theta only.
  static ForcingContext from_curvature(const CurvatureField& kappa);
};

/// Pointwise F on the grid. Throws EvalError when a referenced field is
/// missing from the context or the result is non-finite.
Field eval_forcing(const ForcingSpec& spec, const ForcingContext& ctx);

/// Pointwise dF/dS for specs that depend on S alone (Constant, Proportional,
/// Collapse, S-only expressions). Throws UnsupportedDerivativeError for
/// anything referencing S_theta, S_thetatheta, kappa, or theta.
Field forcing_s_derivative(const ForcingSpec& spec, const ForcingContext& ctx);

// Admissibility monitor: F > 0 and F <= S^2 - 1 pointwise.
struct BoundReport {
  bool pass;
  double min_forcing;       // min F (must stay > 0)
  double min_upper_margin;  // min(S^2 - 1 - F) (must stay >= 0)
  std::size_t argmin_forcing;
  std::size_t argmin_upper;
};

BoundReport check_forcing_bound(const ForcingSpec& spec, const SupportField& S);

}  // namespace curveflow
