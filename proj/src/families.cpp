#include "regulab/families.hpp"

#include <cmath>

namespace regulab {

Family parse_family(std::string_view name) {
  if (name == "P") return Family::P;
  if (name == "S") return Family::S;
  if (name == "Q") return Family::Q;
  if (name == "R") return Family::R;
  throw DomainError("unknown family '" + std::string(name) + "' (expected P, S, Q or R)");
}

std::string family_name(Family f) {
  switch (f) {
    case Family::P: return "P";
    case Family::S: return "S";
    case Family::Q: return "Q";
    case Family::R: return "R";
  }
  return "?";
}

RationalCurve deuring_curve(const Rational& a) { return {a - 2, 0, a, 0, 0}; }
RealCurve deuring_curve(double a) { return {a - 2, 0, a, 0, 0}; }
RationalCurve partner_curve(const Rational& a) { return {0, a * a - 24, 0, -16 * (a * a - 9), 0}; }
RealCurve partner_curve(double a) { return {0, a * a - 24, 0, -16 * (a * a - 9), 0}; }

void check_family_parameter(Family f, double a) {
  if (!std::isfinite(a)) throw DomainError("family parameter must be finite");
  auto near = [&](double v) { return std::abs(a - v) < 1e-12; };
  switch (f) {
    case Family::P:
    case Family::S:
      if (near(0) || near(-1) || near(8))
        throw DegenerateInput("E_alpha is singular at alpha = " + std::to_string(a));
      return;
    case Family::Q:
      if (near(0) || near(3) || near(-3))
        throw DegenerateInput("Q family model degenerates at alpha = " + std::to_string(a));
      return;
    case Family::R:
      if (near(-1) || near(2) || near(5))
        throw DegenerateInput("R family model degenerates at beta = " + std::to_string(a));
      return;
  }
}

ComplexPoint FamilyModel::to_model(cplx x, cplx y) const {
  PlanePoint p = {x, y};
  for (const auto& m : chain) p = m.forward(p);
  return ComplexPoint::affine(p[0], p[1]);
}

namespace {

CoordinateMap square_map() {
  return {"square",
          [](PlanePoint p) { return PlanePoint{p[0] * p[0], p[1]}; },
          [](PlanePoint p) { return PlanePoint{std::sqrt(p[0]), p[1]}; }};
}

cplx cayley(cplx x) { return (x + 1.0) / (x - 1.0); }

}  // namespace

FamilyModel family_models(Family f, double a) {
  check_family_parameter(f, a);
  FamilyModel m{f, a, "", {}, {}, {}};
  switch (f) {
    case Family::P:
      m.curve_name = "E_" + std::to_string(a);
      m.curve = deuring_curve(a);
      m.chain.push_back(
          {"plane->E",
           [a](PlanePoint p) {
             cplx x = p[0], y = p[1], d = x + y - a;
             return PlanePoint{a * (x + y + 1.0) / d, a * (-a * x + y + 1.0) / d};
           },
           [a](PlanePoint p) {
             cplx X = p[0], Y = p[1];
             return PlanePoint{(X - Y) / (X - a), (Y + (a - 1) * X + a) / (X - a)};
           }});
      break;
    case Family::S: {
      m.curve_name = "E_" + std::to_string(a);
      m.curve = deuring_curve(a);
      m.quotient_cubic = {4 - a, a * a - 5 * a + 8, -2 * a * a + 5 * a + 4, a * a + a};
      m.chain.push_back(
          {"plane->C",
           [](PlanePoint p) {
             cplx x = p[0], y = p[1];
             cplx x4 = x * x * x * x;
             return PlanePoint{cayley(x), 4.0 * (y * y - x4) / (y * std::pow(x - 1.0, 3) * (x + 1.0))};
           },
           [a](PlanePoint p) {
             cplx X = p[0], Y = p[1], X2 = X * X;
             cplx y = (2.0 * X * Y - (2 * a + 1) * X2 * X2 + (2 * a - 6) * X2 - 1.0) / std::pow(X - 1.0, 4);
             return PlanePoint{cayley(X), y};
           }});
      m.chain.push_back(square_map());
      double k = a * a + a;
      m.chain.push_back(
          {"quotient->E",
           [a, k](PlanePoint p) {
             cplx Z1 = p[0], Y1 = p[1];
             cplx X = (k * Z1 - (a * a - 3 * a)) / 4.0;
             cplx Y = a * ((a + 1) * Y1 + (-a * a + a + 2) * Z1 + (a * a - 5 * a + 2)) / 8.0;
             return PlanePoint{X, Y};
           },
           [a, k](PlanePoint p) {
             cplx X = p[0], Y = p[1];
             return PlanePoint{(4.0 * X + a * a - 3 * a) / k, 4.0 * (2.0 * Y + (a - 2) * X + a) / k};
           }});
      break;
    }
    case Family::Q: {
      m.curve_name = "F_" + std::to_string(a);
      m.curve = partner_curve(a);
      m.quotient_cubic = {1, a * a + 5, -(2 * a * a - 3), a * a - 9};
      m.chain.push_back(
          {"plane->C",
           [a](PlanePoint p) {
             cplx x = p[0], y = p[1];
             cplx Y2 = 4.0 * (2.0 * (x * x + x + 1.0) * y + a * x * (x + 1.0)) / std::pow(x - 1.0, 3);
             return PlanePoint{cayley(x), Y2};
           },
           [a](PlanePoint p) {
             cplx X = p[0], Y = p[1];
             cplx y = (Y - a * X * (X * X - 1.0)) / ((X - 1.0) * (3.0 * X * X + 1.0));
             return PlanePoint{cayley(X), y};
           }});
      m.chain.push_back(square_map());
      double k = a * a - 9;
      m.chain.push_back({"quotient->F",
                         [k](PlanePoint p) { return PlanePoint{k * (p[0] - 1.0), k * p[1]}; },
                         [k](PlanePoint p) { return PlanePoint{p[0] / k + 1.0, p[1] / k}; }});
      break;
    }
    case Family::R: {
      double b = a;
      m.curve_name = "F_" + std::to_string(b - 2);
      m.curve = partner_curve(b - 2);
      m.quotient_cubic = {b - 6, b * b - 11 * b + 26, -2 * b * b + 11 * b - 2, b * b - b - 2};
      m.chain.push_back(
          {"plane->C",
           [b](PlanePoint p) {
             cplx x = p[0], y = p[1];
             cplx quart = x * x * x * x + b * x * x * x + (2 * b - 4) * x * x + b * x + 1.0;
             cplx Y3 = 4.0 * (2.0 * (x * x + x + 1.0) * y + quart) / (std::pow(x - 1.0, 3) * (x + 1.0));
             return PlanePoint{cayley(x), Y3};
           },
           [b](PlanePoint p) {
             cplx X = p[0], Y = p[1], X2 = X * X;
             cplx y = (2.0 * X * Y - (2 * b - 1) * X2 * X2 + (2 * b - 10) * X2 + 1.0) /
                      ((X - 1.0) * (X - 1.0) * (3.0 * X2 + 1.0));
             return PlanePoint{cayley(X), y};
           }});
      m.chain.push_back(square_map());
      double k = b * b - b - 2, c = b * b - 5 * b - 6;
      m.chain.push_back({"quotient->F",
                         [k, c](PlanePoint p) { return PlanePoint{k * p[0] - c, k * p[1]}; },
                         [k, c](PlanePoint p) { return PlanePoint{(p[0] + c) / k, p[1] / k}; }});
      break;
    }
  }
  return m;
}

std::map<std::string, ComplexPoint> family_generators(Family f, double a) {
  check_family_parameter(f, a);
  using std::sqrt;
  std::map<std::string, ComplexPoint> g;
  const cplx i(0, 1);
  const double s3 = std::sqrt(3.0);
  switch (f) {
    case Family::P:
      g["P"] = ComplexPoint::affine(a, a);
      break;
    case Family::S: {
      g["P"] = ComplexPoint::affine(a, a);
      cplx ru = sqrt(cplx(a * a - 16 * a + 32));
      g["U"] = ComplexPoint::affine(a * (-a + ru) / 8.0, a * a * (a - 8 - ru) / 16.0);
      cplx rv = sqrt(cplx(a * a - 10 * a + 9));
      g["V"] = ComplexPoint::affine((-a * a + 4 * a - 3 + (a + 1) * rv) / 8.0,
                                    (a * a * a - 7 * a * a - a - 9 - (a * a - 2 * a - 3) * rv) / 16.0);
      break;
    }
    case Family::Q:
      g["P"] = ComplexPoint::affine(0.0, 0.0);
      g["S"] = ComplexPoint::affine(4 * a + 12, a * (4 * a + 12));
      g["T"] = ComplexPoint::affine(-4 * (a * a - 9) / 3.0, 4.0 * i * (a - 3) * a * (a + 3) / (3 * s3));
      break;
    case Family::R: {
      double b = a;
      g["P"] = ComplexPoint::affine(0.0, 0.0);
      g["S"] = ComplexPoint::affine(4 * (b + 1), 4 * (b - 2) * (b + 1));
      g["T"] = ComplexPoint::affine(-4 * (b - 5) * (b + 1) / 3.0,
                                    4.0 * i * (b - 5) * (b - 2) * (b + 1) / (3 * s3));
      cplx rd = sqrt(cplx(b * b * b * b - 8 * b * b * b + 40 * b * b - 96 * b + 80));
      g["A"] = ComplexPoint::affine((-(b * b - 4 * b - 20) + rd) / 2.0, 0.0);
      break;
    }
  }
  return g;
}

std::map<std::string, ModelFunction> family_functions(Family f, double a) {
  check_family_parameter(f, a);
  std::map<std::string, ModelFunction> fn;
  switch (f) {
    case Family::P:
      fn["X-Y"] = [](cplx X, cplx Y) { return X - Y; };
      fn["X-alpha"] = [a](cplx X, cplx) { return X - a; };
      fn["Y+(alpha-1)X+alpha"] = [a](cplx X, cplx Y) { return Y + (a - 1) * X + a; };
      fn["x"] = [a](cplx X, cplx Y) { return (X - Y) / (X - a); };
      fn["y"] = [a](cplx X, cplx Y) { return (Y + (a - 1) * X + a) / (X - a); };
      break;
    case Family::S: {
      auto den = [a](cplx X, cplx Y) {
        return (a * a - a) * Y + 2.0 * X * Y - (a + 3) * X * X + 2 * a * X;
      };
      auto num = [a](cplx X, cplx Y) {
        double a2 = a * a, a3 = a2 * a, a4 = a3 * a;
        return 2.0 * X * X * Y + 4 * a2 * X * Y + (a4 - 2 * a3 - a2) * Y + (-3 * a - 4) * X * X * X +
               (-a3 + 2 * a) * X * X + (a3 + 2 * a2) * X - a3;
      };
      fn["X-alpha"] = [a](cplx X, cplx) { return X - a; };
      fn["(alpha^2-alpha)Y+2XY-(alpha+3)X^2+2alphaX"] = den;
      fn["a_numerator"] = num;
      fn["a"] = [a, num, den](cplx X, cplx Y) { return num(X, Y) / ((X - a) * den(X, Y)); };
      fn["b"] = [a, den](cplx X, cplx Y) { return -(X - a) * (X - a) / den(X, Y); };
      fn["X+alpha"] = [a](cplx X, cplx) { return X + a; };
      fn["alphaX+2Y+alpha^2"] = [a](cplx X, cplx Y) { return a * X + 2.0 * Y + a * a; };
      fn["Y"] = [](cplx, cplx Y) { return Y; };
      fn["steinberg_f"] = [a](cplx X, cplx Y) { return -a * (X + a) / (2.0 * Y); };
      fn["steinberg_g"] = [a](cplx X, cplx Y) { return (a * X + 2.0 * Y + a * a) / (2.0 * Y); };
      break;
    }
    case Family::Q:
      fn["W-alphaZ"] = [a](cplx Z, cplx W) { return W - a * Z; };
      fn["W+alphaZ"] = [a](cplx Z, cplx W) { return W + a * Z; };
      fn["3Z+4(alpha^2-9)"] = [a](cplx Z, cplx) { return 3.0 * Z + 4 * (a * a - 9); };
      fn["a"] = [a](cplx Z, cplx W) { return (W - a * Z) / (W + a * Z); };
      fn["b"] = [a](cplx Z, cplx W) { return -2.0 * (3.0 * Z + 4 * (a * a - 9)) / (W + a * Z); };
      break;
    case Family::R: {
      double b = a, c = 4 * (b - 5) * (b + 1);
      auto num = [b](cplx Z, cplx W) {
        double b2 = b * b, b3 = b2 * b;
        return Z * W + 2 * (b2 - 3 * b - 4) * W - (2 * b - 1) * Z * Z -
               2 * (b3 - 5 * b2 - 10 * b - 4) * Z + 16 * (b3 - 3 * b2 - 9 * b - 5);
      };
      fn["W"] = [](cplx, cplx W) { return W; };
      fn["Z-4(beta+1)"] = [b](cplx Z, cplx) { return Z - 4 * (b + 1); };
      fn["3Z+4(beta-5)(beta+1)"] = [c](cplx Z, cplx) { return 3.0 * Z + c; };
      fn["a_numerator"] = num;
      fn["a"] = [b, num](cplx Z, cplx W) { return num(Z, W) / (W * (Z - 4 * (b + 1))); };
      fn["b"] = [c](cplx Z, cplx W) { return -(3.0 * Z + c) / W; };
      fn["W-3Z-4(beta-5)(beta+1)"] = [c](cplx Z, cplx W) { return W - 3.0 * Z - c; };
      fn["steinberg_f"] = [c](cplx Z, cplx W) { return (W - 3.0 * Z - c) / W; };
      fn["steinberg_g"] = [c](cplx Z, cplx W) { return (3.0 * Z + c) / W; };
      break;
    }
  }
  return fn;
}

}  // namespace regulab
