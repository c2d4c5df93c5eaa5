// Forcing terms: a recursive-descent parser for the small arithmetic
// grammar, pointwise evaluation over grid fields, symbolic d/dS for S-only
// forms, and the admissibility bound monitor.
//
// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := base ('^' integer)?
//   base   := number | variable | '(' expr ')' | '-' base
//   variable := 'S' | 'S_theta' | 'S_thetatheta' | 'kappa' | 'theta'
//              | 'sin(theta)' | 'cos(theta)'

#include "curveflow/forcing.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "curveflow/errors.hpp"
#include "curveflow/kernels.hpp"

namespace curveflow {

using expr::Kind;
using expr::Node;
using expr::NodePtr;

namespace {

NodePtr make_number(double v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::number;
  n->number = v;
  return n;
}

NodePtr make_variable(ForcingVar v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->var = v;
  return n;
}

NodePtr make_unary(Kind k, NodePtr operand) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(operand);
  return n;
}

NodePtr make_binary(Kind k, NodePtr lhs, NodePtr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr make_pow(NodePtr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pow;
  n->exponent = exponent;
  n->lhs = std::move(base);
  return n;
}

// ---------------------------------------------------------------------------
// Lexer / parser
// ---------------------------------------------------------------------------

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::size_t offset;
  double number = 0.0;
  std::string ident;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    current_.offset = pos_;
    if (pos_ >= text_.size()) {
      current_.kind = Tok::end;
      return;
    }
    const char c = text_[pos_];
    switch (c) {
      case '+': current_.kind = Tok::plus; ++pos_; return;
      case '-': current_.kind = Tok::minus; ++pos_; return;
      case '*': current_.kind = Tok::star; ++pos_; return;
      case '/': current_.kind = Tok::slash; ++pos_; return;
      case '^': current_.kind = Tok::caret; ++pos_; return;
      case '(': current_.kind = Tok::lparen; ++pos_; return;
      case ')': current_.kind = Tok::rparen; ++pos_; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      lex_number();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      current_.kind = Tok::ident;
      current_.ident.assign(text_.substr(pos_, end - pos_));
      pos_ = end;
      return;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " +
                         std::to_string(pos_),
                     pos_);
  }

  void lex_number() {
    const std::size_t start = pos_;
    std::size_t end = pos_;
    bool seen_dot = false;
    while (end < text_.size()) {
      const char c = text_[end];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        ++end;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
        ++end;
      } else {
        break;
      }
    }
    // exponent part
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
      if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
        ++e;
        while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
        end = e;
      }
    }
    const std::string slice(text_.substr(start, end - start));
    if (slice == ".")
      throw ParseError("malformed number at offset " + std::to_string(start), start);
    char* parse_end = nullptr;
    const double value = std::strtod(slice.c_str(), &parse_end);
    if (parse_end != slice.c_str() + slice.size())
      throw ParseError("malformed number '" + slice + "' at offset " + std::to_string(start),
                       start);
    current_.kind = Tok::number;
    current_.number = value;
    pos_ = end;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  NodePtr parse() {
    NodePtr root = parse_expr();
    const Token& t = lex_.peek();
    if (t.kind != Tok::end)
      throw ParseError("unexpected trailing input at offset " + std::to_string(t.offset),
                       t.offset);
    return root;
  }

 private:
  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (true) {
      const Tok k = lex_.peek().kind;
      if (k == Tok::plus || k == Tok::minus) {
        lex_.take();
        NodePtr rhs = parse_term();
        lhs = make_binary(k == Tok::plus ? Kind::add : Kind::sub, std::move(lhs), std::move(rhs));
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (true) {
      const Tok k = lex_.peek().kind;
      if (k == Tok::star || k == Tok::slash) {
        lex_.take();
        NodePtr rhs = parse_factor();
        lhs = make_binary(k == Tok::star ? Kind::mul : Kind::div, std::move(lhs), std::move(rhs));
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    NodePtr base = parse_base();
    if (lex_.peek().kind == Tok::caret) {
      lex_.take();
      bool negative = false;
      if (lex_.peek().kind == Tok::minus) {
        lex_.take();
        negative = true;
      }
      const Token t = lex_.peek();
      if (t.kind != Tok::number)
        throw ParseError("expected integer exponent at offset " + std::to_string(t.offset),
                         t.offset);
      lex_.take();
      const double v = t.number;
      if (v != std::floor(v) || std::fabs(v) > 64.0)
        throw ParseError("exponent must be a small integer at offset " + std::to_string(t.offset),
                         t.offset);
      int e = static_cast<int>(v);
      if (negative) e = -e;
      return make_pow(std::move(base), e);
    }
    return base;
  }

  NodePtr parse_base() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::number:
        lex_.take();
        return make_number(t.number);
      case Tok::minus:
        lex_.take();
        return make_unary(Kind::neg, parse_base());
      case Tok::lparen: {
        lex_.take();
        NodePtr inner = parse_expr();
        const Token close = lex_.peek();
        if (close.kind != Tok::rparen)
          throw ParseError("expected ')' at offset " + std::to_string(close.offset),
                           close.offset);
        lex_.take();
        return inner;
      }
      case Tok::ident:
        return parse_identifier();
      case Tok::end:
        throw ParseError("unexpected end of input at offset " + std::to_string(t.offset),
                         t.offset);
      default:
        throw ParseError("unexpected token at offset " + std::to_string(t.offset), t.offset);
    }
  }

  NodePtr parse_identifier() {
    const Token t = lex_.take();
    const std::string& id = t.ident;
    if (id == "S") return make_variable(ForcingVar::s);
    if (id == "S_theta") return make_variable(ForcingVar::s_theta);
    if (id == "S_thetatheta") return make_variable(ForcingVar::s_thetatheta);
    if (id == "kappa") return make_variable(ForcingVar::kappa);
    if (id == "theta") return make_variable(ForcingVar::theta);
    if (id == "sin" || id == "cos") {
      expect(Tok::lparen, "'('");
      const Token arg = lex_.peek();
      if (arg.kind != Tok::ident || arg.ident != "theta")
        throw ParseError("only '" + id + "(theta)' is supported, at offset " +
                             std::to_string(arg.offset),
                         arg.offset);
      lex_.take();
      expect(Tok::rparen, "')'");
      return make_unary(id == "sin" ? Kind::sin_theta : Kind::cos_theta, nullptr);
    }
    throw ParseError("unknown identifier '" + id + "' at offset " + std::to_string(t.offset),
                     t.offset);
  }

  void expect(Tok kind, const char* what) {
    const Token t = lex_.peek();
    if (t.kind != kind)
      throw ParseError("expected " + std::string(what) + " at offset " +
                           std::to_string(t.offset),
                       t.offset);
    lex_.take();
  }

  Lexer lex_;
};

// ---------------------------------------------------------------------------
// AST utilities
// ---------------------------------------------------------------------------

void collect_vars(const NodePtr& node, bool vars[5], bool& uses_theta_fn) {
  if (!node) return;
  switch (node->kind) {
    case Kind::variable:
      vars[static_cast<int>(node->var)] = true;
      return;
    case Kind::sin_theta:
    case Kind::cos_theta:
      uses_theta_fn = true;
      return;
    default:
      collect_vars(node->lhs, vars, uses_theta_fn);
      collect_vars(node->rhs, vars, uses_theta_fn);
  }
}

/// Value of a constant subtree, or nullopt if it mentions any variable.
std::optional<double> constant_value(const NodePtr& node) {
  if (!node) return std::nullopt;
  switch (node->kind) {
    case Kind::number:
      return node->number;
    case Kind::neg:
      if (auto v = constant_value(node->lhs)) return -*v;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

bool is_variable(const NodePtr& node, ForcingVar v) {
  return node && node->kind == Kind::variable && node->var == v;
}

/// Matches `a * kappa^2` / `kappa^2` -> alpha, or `b * S_thetatheta` /
/// `S_thetatheta` -> beta. Returns true and fills the matching coefficient.
bool match_aniso_term(const NodePtr& node, std::optional<double>& alpha,
                      std::optional<double>& beta) {
  auto is_kappa_sq = [](const NodePtr& n) {
    return n && n->kind == Kind::pow && n->exponent == 2 && is_variable(n->lhs, ForcingVar::kappa);
  };
  if (is_kappa_sq(node)) {
    alpha = 1.0;
    return true;
  }
  if (is_variable(node, ForcingVar::s_thetatheta)) {
    beta = 1.0;
    return true;
  }
  if (node && node->kind == Kind::mul) {
    const auto c_lhs = constant_value(node->lhs);
    const auto c_rhs = constant_value(node->rhs);
    if (c_lhs && is_kappa_sq(node->rhs)) { alpha = *c_lhs; return true; }
    if (c_rhs && is_kappa_sq(node->lhs)) { alpha = *c_rhs; return true; }
    if (c_lhs && is_variable(node->rhs, ForcingVar::s_thetatheta)) { beta = *c_lhs; return true; }
    if (c_rhs && is_variable(node->lhs, ForcingVar::s_thetatheta)) { beta = *c_rhs; return true; }
  }
  return false;
}

/// Recognize the documented sugar forms and fold them to built-ins.
std::optional<ForcingSpec::Form> normalize(const NodePtr& root) {
  if (auto v = constant_value(root)) return Constant{*v};

  // c * S in either operand order, including a negated constant
  if (root->kind == Kind::mul) {
    const auto c_lhs = constant_value(root->lhs);
    const auto c_rhs = constant_value(root->rhs);
    double c = 0.0;
    bool matched = false;
    if (c_lhs && is_variable(root->rhs, ForcingVar::s)) { c = *c_lhs; matched = true; }
    if (c_rhs && is_variable(root->lhs, ForcingVar::s)) { c = *c_rhs; matched = true; }
    if (matched) {
      if (c < 0.0) return Collapse{-c};
      return Proportional{c};
    }
  }
  if (root->kind == Kind::neg && root->lhs && root->lhs->kind == Kind::mul) {
    if (auto inner = normalize(root->lhs)) {
      if (auto* p = std::get_if<Proportional>(&*inner)) {
        if (p->c > 0.0) return Collapse{p->c};
        return Proportional{-p->c};
      }
      if (auto* col = std::get_if<Collapse>(&*inner)) return Proportional{col->beta};
    }
  }

  // a * kappa^2 + b * S_thetatheta (terms in either order)
  if (root->kind == Kind::add) {
    std::optional<double> alpha, beta;
    if (match_aniso_term(root->lhs, alpha, beta) && match_aniso_term(root->rhs, alpha, beta) &&
        alpha && beta)
      return Anisotropic{*alpha, *beta};
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------------------
// ForcingSpec
// ---------------------------------------------------------------------------

ForcingSpec::ForcingSpec(Constant f) : form_(f) {
  std::ostringstream s;
  s << f.value;
  source_ = s.str();
}

ForcingSpec::ForcingSpec(Proportional f) : form_(f) {
  std::ostringstream s;
  s << f.c << "*S";
  source_ = s.str();
}

ForcingSpec::ForcingSpec(Anisotropic f) : form_(f) {
  std::ostringstream s;
  s << f.alpha << "*kappa^2 + " << f.beta << "*S_thetatheta";
  source_ = s.str();
}

ForcingSpec::ForcingSpec(Collapse f) : form_(f) {
  if (!(f.beta > 0.0))
    throw std::invalid_argument("Collapse forcing requires beta > 0");
  std::ostringstream s;
  s << "-" << f.beta << "*S";
  source_ = s.str();
}

ForcingSpec::ForcingSpec(Expression f, std::string source)
    : form_(std::move(f)), source_(std::move(source)) {}

bool ForcingSpec::references(ForcingVar v) const {
  bool vars[5] = {false, false, false, false, false};
  bool theta_fn = false;
  std::visit(
      [&](const auto& form) {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, Proportional> || std::is_same_v<T, Collapse>) {
          vars[static_cast<int>(ForcingVar::s)] = true;
        } else if constexpr (std::is_same_v<T, Anisotropic>) {
          vars[static_cast<int>(ForcingVar::kappa)] = true;
          vars[static_cast<int>(ForcingVar::s_thetatheta)] = true;
        } else if constexpr (std::is_same_v<T, Expression>) {
          collect_vars(form.ast, vars, theta_fn);
        }
      },
      form_);
  if (v == ForcingVar::theta && theta_fn) return true;
  return vars[static_cast<int>(v)];
}

bool ForcingSpec::depends_only_on_s() const {
  return !references(ForcingVar::s_theta) && !references(ForcingVar::s_thetatheta) &&
         !references(ForcingVar::kappa) && !references(ForcingVar::theta);
}

ForcingSpec parse_forcing(std::string_view text) {
  Parser parser(text);
  NodePtr root = parser.parse();
  if (auto folded = normalize(root)) {
    return std::visit(
        [&](auto form) -> ForcingSpec {
          using T = std::decay_t<decltype(form)>;
          if constexpr (std::is_same_v<T, Expression>) {
            return ForcingSpec(std::move(form), std::string(text));
          } else {
            return ForcingSpec(form);
          }
        },
        *folded);
  }
  return ForcingSpec(Expression{std::move(root)}, std::string(text));
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

ForcingContext ForcingContext::from_support(const SupportField& S) {
  ForcingContext ctx;
  ctx.grid = S.grid();
  ctx.s = S.field;
  ctx.s_theta = differentiate(S.field, 1);
  ctx.s_thetatheta = differentiate(S.field, 2);
  Field radius(ctx.grid);
  kernels::add(radius.values, ctx.s_thetatheta->values, S.field.values);
  if (kernels::min_value(radius.values) > kTolConvex) {
    Field kappa(ctx.grid);
    kernels::reciprocal(kappa.values, radius.values);
    ctx.kappa = std::move(kappa);
  }
  return ctx;
}

ForcingContext ForcingContext::from_curvature(const CurvatureField& kappa) {
  ForcingContext ctx;
  ctx.grid = kappa.grid();
  ctx.kappa = kappa.field;
  return ctx;
}

namespace {

const Field& require_ctx(const std::optional<Field>& f, const char* name) {
  if (!f) throw EvalError(std::string("forcing references ") + name +
                          " but the context does not provide it");
  return *f;
}

void check_finite_result(const Field& f, const char* what) {
  if (kernels::all_finite(f.values)) return;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!std::isfinite(f.values[j])) {
      std::ostringstream msg;
      msg << what << ": non-finite value at theta = " << f.grid.theta(j) << " (index " << j
          << ")";
      throw EvalError(msg.str(), j, f.grid.theta(j));
    }
  }
}

Field pow_int(const Field& base, int e) {
  Field out = constant_field(base.grid, 1.0);
  const int mag = e < 0 ? -e : e;
  Field acc = base;
  int remaining = mag;
  // exponentiation by squaring keeps the node count down for big exponents
  while (remaining > 0) {
    if (remaining & 1) kernels::mul(out.values, out.values, acc.values);
    remaining >>= 1;
    if (remaining) kernels::mul(acc.values, acc.values, acc.values);
  }
  if (e < 0) kernels::reciprocal(out.values, out.values);
  return out;
}

Field eval_node(const NodePtr& node, const ForcingContext& ctx) {
  switch (node->kind) {
    case Kind::number:
      return constant_field(ctx.grid, node->number);
    case Kind::variable:
      switch (node->var) {
        case ForcingVar::s: return require_ctx(ctx.s, "S");
        case ForcingVar::s_theta: return require_ctx(ctx.s_theta, "S_theta");
        case ForcingVar::s_thetatheta: return require_ctx(ctx.s_thetatheta, "S_thetatheta");
        case ForcingVar::kappa: return require_ctx(ctx.kappa, "kappa");
        case ForcingVar::theta: {
          Field f(ctx.grid);
          const auto theta = ctx.grid.theta();
          std::copy(theta.begin(), theta.end(), f.values.begin());
          return f;
        }
      }
      throw EvalError("unknown variable");
    case Kind::sin_theta:
      return field_from(ctx.grid, [](double t) { return std::sin(t); });
    case Kind::cos_theta:
      return field_from(ctx.grid, [](double t) { return std::cos(t); });
    case Kind::add: {
      Field a = eval_node(node->lhs, ctx);
      const Field b = eval_node(node->rhs, ctx);
      kernels::add(a.values, a.values, b.values);
      return a;
    }
    case Kind::sub: {
      Field a = eval_node(node->lhs, ctx);
      const Field b = eval_node(node->rhs, ctx);
      kernels::sub(a.values, a.values, b.values);
      return a;
    }
    case Kind::mul: {
      Field a = eval_node(node->lhs, ctx);
      const Field b = eval_node(node->rhs, ctx);
      kernels::mul(a.values, a.values, b.values);
      return a;
    }
    case Kind::div: {
      // IEEE semantics; a non-finite final result is reported by the caller
      Field a = eval_node(node->lhs, ctx);
      const Field b = eval_node(node->rhs, ctx);
      kernels::div(a.values, a.values, b.values);
      return a;
    }
    case Kind::pow:
      return pow_int(eval_node(node->lhs, ctx), node->exponent);
    case Kind::neg: {
      Field a = eval_node(node->lhs, ctx);
      kernels::scale(a.values, a.values, -1.0);
      return a;
    }
  }
  throw EvalError("unreachable forcing node");
}

/// Symbolic d/dS of an S-only AST.
NodePtr differentiate_s(const NodePtr& node) {
  switch (node->kind) {
    case Kind::number:
    case Kind::sin_theta:
    case Kind::cos_theta:
      return make_number(0.0);
    case Kind::variable:
      return make_number(node->var == ForcingVar::s ? 1.0 : 0.0);
    case Kind::add:
      return make_binary(Kind::add, differentiate_s(node->lhs), differentiate_s(node->rhs));
    case Kind::sub:
      return make_binary(Kind::sub, differentiate_s(node->lhs), differentiate_s(node->rhs));
    case Kind::mul:
      return make_binary(Kind::add,
                         make_binary(Kind::mul, differentiate_s(node->lhs), node->rhs),
                         make_binary(Kind::mul, node->lhs, differentiate_s(node->rhs)));
    case Kind::div:
      // (u/v)' = (u'v - uv') / v^2
      return make_binary(
          Kind::div,
          make_binary(Kind::sub, make_binary(Kind::mul, differentiate_s(node->lhs), node->rhs),
                      make_binary(Kind::mul, node->lhs, differentiate_s(node->rhs))),
          make_pow(node->rhs, 2));
    case Kind::pow: {
      // (u^n)' = n u^{n-1} u'
      if (node->exponent == 0) return make_number(0.0);
      return make_binary(
          Kind::mul,
          make_binary(Kind::mul, make_number(static_cast<double>(node->exponent)),
                      make_pow(node->lhs, node->exponent - 1)),
          differentiate_s(node->lhs));
    }
    case Kind::neg:
      return make_unary(Kind::neg, differentiate_s(node->lhs));
  }
  throw EvalError("unreachable forcing node");
}

}  // namespace

Field eval_forcing(const ForcingSpec& spec, const ForcingContext& ctx) {
  if (!ctx.grid.valid()) throw EvalError("forcing context has no grid");
  Field out = std::visit(
      [&](const auto& form) -> Field {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return constant_field(ctx.grid, form.value);
        } else if constexpr (std::is_same_v<T, Proportional>) {
          Field f(ctx.grid);
          kernels::scale(f.values, require_ctx(ctx.s, "S").values, form.c);
          return f;
        } else if constexpr (std::is_same_v<T, Collapse>) {
          Field f(ctx.grid);
          kernels::scale(f.values, require_ctx(ctx.s, "S").values, -form.beta);
          return f;
        } else if constexpr (std::is_same_v<T, Anisotropic>) {
          const Field& kappa = require_ctx(ctx.kappa, "kappa");
          const Field& stt = require_ctx(ctx.s_thetatheta, "S_thetatheta");
          Field f(ctx.grid);
          kernels::mul(f.values, kappa.values, kappa.values);
          kernels::axpby(f.values, form.alpha, f.values, form.beta, stt.values);
          return f;
        } else {
          return eval_node(form.ast, ctx);
        }
      },
      spec.form());
  check_finite_result(out, "forcing evaluation");
  return out;
}

Field forcing_s_derivative(const ForcingSpec& spec, const ForcingContext& ctx) {
  if (!ctx.grid.valid()) throw EvalError("forcing context has no grid");
  return std::visit(
      [&](const auto& form) -> Field {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return constant_field(ctx.grid, 0.0);
        } else if constexpr (std::is_same_v<T, Proportional>) {
          return constant_field(ctx.grid, form.c);
        } else if constexpr (std::is_same_v<T, Collapse>) {
          return constant_field(ctx.grid, -form.beta);
        } else if constexpr (std::is_same_v<T, Anisotropic>) {
          throw UnsupportedDerivativeError(
              "dF/dS is not defined for anisotropic forcing (depends on kappa and "
              "S_thetatheta); use the matrix-free Jacobian of the steady solver instead");
        } else {
          if (!spec.depends_only_on_s())
            throw UnsupportedDerivativeError(
                "dF/dS supports expressions over S only; this forcing references derivative "
                "or angle variables; use the matrix-free Jacobian of the steady solver instead");
          Field out = eval_node(differentiate_s(form.ast), ctx);
          check_finite_result(out, "forcing derivative");
          return out;
        }
      },
      spec.form());
}

BoundReport check_forcing_bound(const ForcingSpec& spec, const SupportField& S) {
  const ForcingContext ctx = ForcingContext::from_support(S);
  const Field f = eval_forcing(spec, ctx);

  Field upper(S.grid());  // S^2 - 1 - F
  kernels::mul(upper.values, S.field.values, S.field.values);
  for (std::size_t j = 0; j < upper.size(); ++j) upper.values[j] -= 1.0;
  kernels::sub(upper.values, upper.values, f.values);

  BoundReport report;
  report.argmin_forcing = kernels::min_index(f.values);
  report.argmin_upper = kernels::min_index(upper.values);
  report.min_forcing = f.values[report.argmin_forcing];
  report.min_upper_margin = upper.values[report.argmin_upper];
  report.pass = report.min_forcing > 0.0 && report.min_upper_margin >= 0.0;
  return report;
}

}  // namespace curveflow
