#include "conelab/test_fields.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "conelab/numerics.hpp"

namespace conelab {

TestFieldSpec TestFieldSpec::parse(std::string_view text) {
  TestFieldSpec s;
  auto open = text.find('(');
  if (open == std::string_view::npos) {
    s.family = std::string(text);
    return s;
  }
  if (text.back() != ')') throw std::invalid_argument("malformed field name: " + std::string(text));
  s.family = std::string(text.substr(0, open));
  std::string arg(text.substr(open + 1, text.size() - open - 2));
  try {
    std::size_t used = 0;
    s.param = std::stod(arg, &used);
    if (used != arg.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed field parameter: " + std::string(text));
  }
  s.has_param = true;
  return s;
}

std::string TestFieldSpec::label() const {
  if (!has_param) return family;
  std::ostringstream os;
  os << family << '(' << param << ')';
  return os.str();
}

namespace {

double param_or(const TestFieldSpec& s, double fallback) { return s.has_param ? s.param : fallback; }

}  // namespace

Field make_test_field(const GridPtr& grid, const TestFieldSpec& spec) {
  const PolarGrid& g = *grid;
  if (g.is_full()) throw std::invalid_argument("test fields are defined on cone grids");
  const double w = g.domain().half_angle;
  const std::string& name = spec.family;
  auto side = [&](const Node& nd) { return g.blocks()[nd.block] == Block::Minus ? -1.0 : 1.0; };

  Field f;
  if (name == "logcounter") {
    const double beta = param_or(spec, 1.0);
    if (!(beta > 0.0)) throw std::invalid_argument("logcounter needs beta > 0");
    f = Field::sample(grid, [&](const Node& nd) {
      if (nd.r >= 0.5) return 0.0;
      return side(nd) * std::pow(std::abs(std::log(nd.r)), -beta) * step_down(nd.r, 0.25, 0.5);
    });
    f.vertex_plus = 0.0;
    f.vertex_minus = 0.0;
  } else if (name == "radial_exp") {
    f = Field::sample(grid, [](const Node& nd) { return nd.r * std::exp(-nd.r); });
    f.vertex_plus = f.vertex_minus = 0.0;
  } else if (name == "radial_power") {
    const double a = param_or(spec, 1.0);
    f = Field::sample(grid, [a](const Node& nd) { return std::pow(nd.r, a) * std::exp(-nd.r); });
    if (a > 0.0) f.vertex_plus = f.vertex_minus = 0.0;
    if (a == 0.0) f.vertex_plus = f.vertex_minus = 1.0;
  } else if (name == "angular_bump") {
    const double a = param_or(spec, 1.0);
    f = Field::sample(grid, [a, w](const Node& nd) {
      double c = std::cos(kPi * nd.theta / (2.0 * w));
      return std::pow(nd.r, a) * std::exp(-nd.r) * c * c;
    });
    if (a > 0.0) f.vertex_plus = f.vertex_minus = 0.0;
  } else if (name == "jump") {
    f = Field::sample(grid, [&](const Node& nd) { return side(nd) * std::exp(-nd.r); });
    f.vertex_plus = 1.0;
    f.vertex_minus = -1.0;
  } else if (name == "lipschitz_compact") {
    f = Field::sample(grid, [](const Node& nd) {
      return std::max(0.0, 1.0 - nd.r) * (1.0 + nd.r * std::cos(nd.theta));
    });
    f.vertex_plus = f.vertex_minus = 1.0;
  } else if (name == "constant") {
    const double c = param_or(spec, 1.0);
    f = Field::sample(grid, [c](const Node&) { return c; });
    f.vertex_plus = f.vertex_minus = c;
  } else {
    throw std::invalid_argument("unknown test field: " + name);
  }
  f.set_name(spec.label());
  return f;
}

Field make_test_field(const GridPtr& grid, std::string_view text) {
  return make_test_field(grid, TestFieldSpec::parse(text));
}

Field make_fullspace_field(const GridPtr& grid, std::string_view name) {
  std::function<double(const Point&)> fn;
  if (name == "gauss") {
    fn = [](const Point& x) { return std::exp(-(x[0] * x[0] + x.back() * x.back())); };
  } else if (name == "gauss_dipole") {
    fn = [](const Point& x) { return x[0] * std::exp(-(x[0] * x[0] + x.back() * x.back())); };
  } else if (name == "gauss_shifted") {
    fn = [](const Point& x) {
      double a = x[0] - 0.3, b = x.back() - 0.4;
      return std::exp(-(a * a + b * b));
    };
  } else if (name == "gauss_quadrupole") {
    fn = [](const Point& x) { return x[0] * x.back() * std::exp(-(x[0] * x[0] + x.back() * x.back())); };
  } else if (name == "poly_bump") {
    fn = [](const Point& x) {
      double s = 1.0 - (x[0] * x[0] + x.back() * x.back());
      return s > 0.0 ? s * s * (1.0 + x[0] + x.back() * x.back()) : 0.0;
    };
  } else {
    throw std::invalid_argument("unknown whole-space field: " + std::string(name));
  }
  return Field::sample(grid, [&](const Node& nd) { return fn(nd.x); }, std::string(name));
}

std::vector<TestFieldSpec> hardy_suite() {
  std::vector<TestFieldSpec> out;
  for (const char* s : {"radial_exp", "radial_power(2)", "radial_power(0.5)", "radial_power(-0.45)",
                        "angular_bump(1)", "angular_bump(2)", "logcounter(1)", "logcounter(0.25)",
                        "lipschitz_compact", "jump"})
    out.push_back(TestFieldSpec::parse(s));
  return out;
}

std::vector<TestFieldSpec> smooth_suite() {
  std::vector<TestFieldSpec> out;
  for (const char* s : {"radial_exp", "angular_bump(1)", "angular_bump(2)", "lipschitz_compact", "jump"})
    out.push_back(TestFieldSpec::parse(s));
  return out;
}

std::vector<std::string> fullspace_suite() {
  return {"gauss", "gauss_dipole", "gauss_shifted", "gauss_quadrupole", "poly_bump"};
}

}  // namespace conelab
