// Parser, evaluator, symbolic S-derivative, and the admissibility bound.
// The grammar totality property drives a random AST generator through
// print -> parse -> eval and compares against direct arithmetic.

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "curveflow/errors.hpp"
#include "curveflow/forcing.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace curveflow;

namespace {

ForcingContext context_for(const SupportField& S) { return ForcingContext::from_support(S); }

// ---- random expression generator for the totality property ----
// Generates strings the grammar accepts along with a direct evaluator.

struct GenNode {
  std::string text;
  // evaluate at a point given (s, s_t, s_tt, kappa, theta)
  std::function<double(double, double, double, double, double)> eval;
};

GenNode gen_expr(std::mt19937& rng, int depth);

GenNode gen_base(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 7 : 9);
  switch (pick(rng)) {
    case 0: {
      std::uniform_real_distribution<double> num(0.1, 4.0);
      const double v = num(rng);
      std::ostringstream ss;
      ss << v;
      const double parsed = std::strtod(ss.str().c_str(), nullptr);
      return {ss.str(), [parsed](double, double, double, double, double) { return parsed; }};
    }
    case 1:
      return {"S", [](double s, double, double, double, double) { return s; }};
    case 2:
      return {"S_theta", [](double, double st, double, double, double) { return st; }};
    case 3:
      return {"S_thetatheta", [](double, double, double stt, double, double) { return stt; }};
    case 4:
      return {"kappa", [](double, double, double, double k, double) { return k; }};
    case 5:
      return {"theta", [](double, double, double, double, double t) { return t; }};
    case 6:
      return {"sin(theta)",
              [](double, double, double, double, double t) { return std::sin(t); }};
    case 7:
      return {"cos(theta)",
              [](double, double, double, double, double t) { return std::cos(t); }};
    case 8: {
      GenNode inner = gen_base(rng, depth - 1);
      return {"-" + inner.text, [inner](double a, double b, double c, double d, double e) {
                return -inner.eval(a, b, c, d, e);
              }};
    }
    default: {
      GenNode inner = gen_expr(rng, depth - 1);
      return {"(" + inner.text + ")", inner.eval};
    }
  }
}

GenNode gen_factor(std::mt19937& rng, int depth) {
  GenNode base = gen_base(rng, depth);
  std::uniform_int_distribution<int> want_pow(0, 3);
  if (want_pow(rng) == 0) {
    std::uniform_int_distribution<int> exp_dist(1, 3);
    const int e = exp_dist(rng);
    return {base.text + "^" + std::to_string(e),
            [base, e](double a, double b, double c, double d, double t) {
              double v = base.eval(a, b, c, d, t), out = 1.0;
              for (int i = 0; i < e; ++i) out *= v;
              return out;
            }};
  }
  return base;
}

GenNode gen_term(std::mt19937& rng, int depth) {
  GenNode lhs = gen_factor(rng, depth);
  std::uniform_int_distribution<int> more(0, 2);
  while (more(rng) == 0) {
    GenNode rhs = gen_factor(rng, depth - 1);
    std::uniform_int_distribution<int> op(0, 3);
    if (op(rng) == 0) {  // division kept rarer: the context must avoid zeros
      GenNode prev = lhs;
      lhs = {prev.text + " / " + rhs.text,
             [prev, rhs](double a, double b, double c, double d, double t) {
               return prev.eval(a, b, c, d, t) / rhs.eval(a, b, c, d, t);
             }};
    } else {
      GenNode prev = lhs;
      lhs = {prev.text + " * " + rhs.text,
             [prev, rhs](double a, double b, double c, double d, double t) {
               return prev.eval(a, b, c, d, t) * rhs.eval(a, b, c, d, t);
             }};
    }
  }
  return lhs;
}

GenNode gen_expr(std::mt19937& rng, int depth) {
  GenNode lhs = gen_term(rng, depth);
  std::uniform_int_distribution<int> more(0, 2);
  while (more(rng) == 0) {
    GenNode rhs = gen_term(rng, depth - 1);
    std::uniform_int_distribution<int> op(0, 1);
    const bool plus = op(rng) == 0;
    GenNode prev = lhs;
    lhs = {prev.text + (plus ? " + " : " - ") + rhs.text,
           [prev, rhs, plus](double a, double b, double c, double d, double t) {
             const double l = prev.eval(a, b, c, d, t);
             const double r = rhs.eval(a, b, c, d, t);
             return plus ? l + r : l - r;
           }};
  }
  return lhs;
}

}  // namespace

TEST_SUITE_BEGIN("forcing");

TEST_CASE("sugar forms normalize to built-ins") {
  const ForcingSpec prop = parse_forcing("1.0*S");
  CHECK(std::holds_alternative<Proportional>(prop.form()));
  CHECK(std::get<Proportional>(prop.form()).c == doctest::Approx(1.0));

  const ForcingSpec col = parse_forcing("-0.4*S");
  CHECK(std::holds_alternative<Collapse>(col.form()));
  CHECK(std::get<Collapse>(col.form()).beta == doctest::Approx(0.4));

  const ForcingSpec con = parse_forcing("2.5");
  CHECK(std::holds_alternative<Constant>(con.form()));
  CHECK(std::get<Constant>(con.form()).value == doctest::Approx(2.5));

  const ForcingSpec aniso = parse_forcing("0.3*kappa^2 + 0.1*S_thetatheta");
  CHECK(std::holds_alternative<Anisotropic>(aniso.form()));
  CHECK(std::get<Anisotropic>(aniso.form()).alpha == doctest::Approx(0.3));
  CHECK(std::get<Anisotropic>(aniso.form()).beta == doctest::Approx(0.1));

  // reversed term order matches too
  const ForcingSpec aniso2 = parse_forcing("0.1*S_thetatheta + 0.3*kappa^2");
  CHECK(std::holds_alternative<Anisotropic>(aniso2.form()));
}

TEST_CASE("kappa^2 on a circle of curvature 2") {
  const ThetaGrid grid = make_grid(64);
  const ForcingSpec spec = parse_forcing("kappa^2");
  // circle of radius 1/2 has kappa = 2
  const Field f = eval_forcing(spec, context_for(circle(grid, 0.5)));
  for (double v : f.values) CHECK(v == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("syntax errors carry offsets") {
  try {
    parse_forcing("S + ");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }

  const char* bad[] = {"",        "S +",      "(S",        "S ^ x",  "2 ** S",
                       "foo",     "sin(S)",   "S_thet",    ")S(",    "S / / 2",
                       "1.2.3*S", "kappa^",   "cos(What)", "S 2",    "^2"};
  for (const char* text : bad) CHECK_THROWS_AS(parse_forcing(text), ParseError);
}

TEST_CASE("built-in evaluation examples") {
  const ThetaGrid grid = make_grid(64);

  const Field c = eval_forcing(ForcingSpec(Constant{2.5}), context_for(circle(grid, 1.0)));
  for (double v : c.values) CHECK(v == doctest::Approx(2.5));

  const Field p = eval_forcing(ForcingSpec(Proportional{0.5}), context_for(circle(grid, 2.0)));
  for (double v : p.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  // circle radius 2: kappa = 1/2, S_tt = 0 -> alpha/R^2 = 0.3/4
  const Field a = eval_forcing(ForcingSpec(Anisotropic{0.3, 0.1}), context_for(circle(grid, 2.0)));
  for (double v : a.values) CHECK(v == doctest::Approx(0.075).epsilon(1e-12));

  const Field col = eval_forcing(ForcingSpec(Collapse{0.4}), context_for(circle(grid, 2.0)));
  for (double v : col.values) CHECK(v == doctest::Approx(-0.8).epsilon(1e-14));

  CHECK_THROWS_AS(ForcingSpec(Collapse{-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ForcingSpec(Collapse{0.0}), std::invalid_argument);
}

TEST_CASE("missing context fields raise invalid-context errors") {
  const ThetaGrid grid = make_grid(64);
  ForcingContext bare;
  bare.grid = grid;  // no fields
  CHECK_THROWS_AS(eval_forcing(ForcingSpec(Proportional{1.0}), bare), EvalError);
  CHECK_THROWS_AS(eval_forcing(parse_forcing("kappa + S"), bare), EvalError);
  // constants need nothing
  CHECK_NOTHROW(eval_forcing(ForcingSpec(Constant{1.0}), bare));

  // non-convex support: kappa is absent from the context
  const ForcingContext ctx = context_for(SupportField(perturbed_circle(grid, 0.1, 2, 1.0)));
  CHECK_FALSE(ctx.kappa.has_value());
  CHECK_THROWS_AS(eval_forcing(parse_forcing("kappa^2"), ctx), EvalError);
}

TEST_CASE("division by zero reports a location") {
  const ThetaGrid grid = make_grid(64);
  try {
    eval_forcing(parse_forcing("1 / (S - 2)"), context_for(circle(grid, 2.0)));
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.has_location());
  }
}

TEST_CASE("forcing_s_derivative on supported forms") {
  const ThetaGrid grid = make_grid(64);
  const ForcingContext ctx = context_for(circle(grid, 3.0));

  const Field dp = forcing_s_derivative(ForcingSpec(Proportional{0.7}), ctx);
  for (double v : dp.values) CHECK(v == doctest::Approx(0.7));

  const Field dc = forcing_s_derivative(ForcingSpec(Collapse{0.4}), ctx);
  for (double v : dc.values) CHECK(v == doctest::Approx(-0.4));

  // d(S^2)/dS = 2 S = 6 on the circle of radius 3
  const Field dsq = forcing_s_derivative(parse_forcing("S^2"), ctx);
  for (double v : dsq.values) CHECK(v == doctest::Approx(6.0).epsilon(1e-13));

  CHECK_THROWS_AS(forcing_s_derivative(ForcingSpec(Anisotropic{0.3, 0.1}), ctx),
                  UnsupportedDerivativeError);
  CHECK_THROWS_AS(forcing_s_derivative(parse_forcing("kappa*S"), ctx),
                  UnsupportedDerivativeError);
  CHECK_THROWS_AS(forcing_s_derivative(parse_forcing("S + theta"), ctx),
                  UnsupportedDerivativeError);
}

TEST_CASE("forcing_s_derivative matches centered differences") {
  const ThetaGrid grid = make_grid(64);
  std::mt19937 rng(13);
  const char* specs[] = {"S^3 - 2*S", "S*S + 1/(S + 3)", "(S - 0.5)^2 * S", "2.5", "0.25*S"};
  for (const char* text : specs) {
    const ForcingSpec spec = parse_forcing(text);
    for (int rep = 0; rep < 5; ++rep) {
      const SupportField S = testutil::random_convex_support(grid, rng, 6);
      const ForcingContext ctx = context_for(S);
      const Field deriv = forcing_s_derivative(spec, ctx);

      // oracle: (F(S + h) - F(S - h)) / 2h with h = 1e-6 (1 + |S|)
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double s = S.field.values[j];
        const double h = 1e-6 * (1.0 + std::fabs(s));
        ForcingContext up = ctx, dn = ctx;
        up.s->values[j] = s + h;
        dn.s->values[j] = s - h;
        const double fd =
            (eval_forcing(spec, up).values[j] - eval_forcing(spec, dn).values[j]) / (2.0 * h);
        CHECK(deriv.values[j] == doctest::Approx(fd).epsilon(1e-6).scale(1e-9));
      }
    }
  }
}

TEST_CASE("evaluation is pointwise local") {
  const ThetaGrid grid = make_grid(64);
  std::mt19937 rng(29);
  const ForcingSpec spec = parse_forcing("S^2 - 0.5*S + 1");
  const SupportField S = testutil::random_convex_support(grid, rng, 6);
  ForcingContext ctx = context_for(S);
  const Field out = eval_forcing(spec, ctx);

  // permute the support samples: outputs permute identically
  ForcingContext permuted = ctx;
  std::vector<std::size_t> perm(grid.size());
  for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = (j * 7 + 3) % perm.size();
  for (std::size_t j = 0; j < perm.size(); ++j)
    permuted.s->values[j] = ctx.s->values[perm[j]];
  const Field pout = eval_forcing(spec, permuted);
  for (std::size_t j = 0; j < perm.size(); ++j)
    CHECK(pout.values[j] == doctest::Approx(out.values[perm[j]]).epsilon(1e-15));
}

TEST_CASE("grammar totality: print -> parse -> eval equals direct arithmetic") {
  const ThetaGrid grid = make_grid(32);
  std::mt19937 rng(101);

  int checked = 0;
  for (int rep = 0; rep < 60; ++rep) {
    const GenNode gen = gen_expr(rng, 3);
    const ForcingSpec spec = parse_forcing(gen.text);

    const SupportField S = testutil::random_convex_support(grid, rng, 4);
    const ForcingContext ctx = context_for(S);
    REQUIRE(ctx.kappa.has_value());

    Field expected(grid);
    for (std::size_t j = 0; j < grid.size(); ++j)
      expected.values[j] =
          gen.eval(ctx.s->values[j], ctx.s_theta->values[j], ctx.s_thetatheta->values[j],
                   ctx.kappa->values[j], grid.theta(j));

    // division may land on a genuine pole: both sides must then agree that
    // evaluation fails
    bool finite = true;
    for (double v : expected.values) finite &= std::isfinite(v);
    if (!finite) {
      CHECK_THROWS_AS(eval_forcing(spec, ctx), EvalError);
      continue;
    }
    const Field got = eval_forcing(spec, ctx);
    for (std::size_t j = 0; j < grid.size(); ++j)
      CHECK(got.values[j] ==
            doctest::Approx(expected.values[j]).epsilon(1e-12).scale(1e-12));
    ++checked;
  }
  CHECK(checked > 30);  // the corpus is overwhelmingly finite
}

TEST_CASE("forcing bound monitor") {
  const ThetaGrid grid = make_grid(64);
  const SupportField S = circle(grid, 2.0);

  // S = 2, F = 2: S^2 - 1 = 3, margins 2 and 1
  const BoundReport pass = check_forcing_bound(ForcingSpec(Constant{2.0}), S);
  CHECK(pass.pass);
  CHECK(pass.min_forcing == doctest::Approx(2.0));
  CHECK(pass.min_upper_margin == doctest::Approx(1.0));

  const BoundReport upper = check_forcing_bound(ForcingSpec(Constant{4.0}), S);
  CHECK_FALSE(upper.pass);
  CHECK(upper.min_upper_margin == doctest::Approx(-1.0));

  const BoundReport positivity = check_forcing_bound(ForcingSpec(Constant{-1.0}), S);
  CHECK_FALSE(positivity.pass);
  CHECK(positivity.min_forcing == doctest::Approx(-1.0));
}

TEST_CASE("references and depends_only_on_s") {
  CHECK(ForcingSpec(Proportional{1.0}).depends_only_on_s());
  CHECK(ForcingSpec(Constant{1.0}).depends_only_on_s());
  CHECK_FALSE(ForcingSpec(Anisotropic{1.0, 1.0}).depends_only_on_s());
  CHECK(parse_forcing("S^2 - S").depends_only_on_s());
  CHECK_FALSE(parse_forcing("S + sin(theta)").depends_only_on_s());
  CHECK(parse_forcing("kappa^2").references(ForcingVar::kappa));
  CHECK(parse_forcing("S_theta * S").references(ForcingVar::s_theta));
}

TEST_SUITE_END();
