#include "conelab/field_io.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include "conelab/numerics.hpp"

namespace conelab {

namespace {

std::string variant_tag(const PolarGrid& g) {
  if (g.is_full()) return "fullspace";
  std::string tag = g.domain().variant == ConeVariant::Quadrant ? "quadrant" : "axisymmetric";
  if (g.block_count() == 1) tag += "_plus";
  return tag;
}

double angle_distance(double a, double b, int n) {
  double d = std::abs(a - b);
  if (n == 2) d = std::min(d, std::abs(d - 2.0 * kPi));
  return d;
}

}  // namespace

void write_field_dump(std::ostream& out, const Field& f) {
  const PolarGrid& g = f.grid();
  out.precision(17);
  out << "n=" << g.n() << '\n'
      << "omega=" << g.domain().half_angle << '\n'
      << "variant=" << variant_tag(g) << '\n'
      << "K=" << g.K() << '\n'
      << "J=" << g.J() * g.block_count() << '\n'
      << "q=" << g.spec().q << '\n'
      << "rmax=" << g.spec().r_max << '\n';
  for (int k = 0; k < g.K(); ++k)
    for (int b = 0; b < g.block_count(); ++b)
      for (int j = 0; j < g.J(); ++j) out << g.r(k) << ' ' << g.global_angle(b, j) << ' ' << f.at(b, k, j) << '\n';
}

Field read_field_dump(std::istream& in) {
  std::map<std::string, std::string> header;
  for (const char* key : {"n", "omega", "variant", "K", "J", "q", "rmax"}) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("field dump: truncated header");
    auto eq = line.find('=');
    if (eq == std::string::npos || line.substr(0, eq) != key)
      throw std::runtime_error(std::string("field dump: expected header key ") + key);
    header[key] = line.substr(eq + 1);
  }
  ConeDomain dom;
  GridSpec spec;
  std::string variant;
  int Jtotal = 0;
  try {
    dom.n = std::stoi(header["n"]);
    dom.half_angle = std::stod(header["omega"]);
    variant = header["variant"];
    spec.K = std::stoi(header["K"]);
    Jtotal = std::stoi(header["J"]);
    spec.q = std::stod(header["q"]);
    spec.r_max = std::stod(header["rmax"]);
  } catch (const std::exception&) {
    throw std::runtime_error("field dump: malformed header value");
  }

  bool plus_only = false;
  if (variant.size() > 5 && variant.substr(variant.size() - 5) == "_plus") {
    plus_only = true;
    variant.resize(variant.size() - 5);
  }
  GridPtr grid;
  try {
    if (variant == "quadrant") dom.variant = ConeVariant::Quadrant;
    else if (variant != "axisymmetric" && variant != "fullspace")
      throw std::runtime_error("field dump: unknown variant " + variant);
    if (variant == "fullspace") {
      // J of the full grid is round(pi J_cone / w); recover J_cone.
      spec.J = static_cast<int>(std::lround(Jtotal * dom.half_angle / kPi));
      grid = std::make_shared<PolarGrid>(PolarGrid::full_space(dom, spec));
    } else {
      spec.J = plus_only ? Jtotal : Jtotal / 2;
      grid = std::make_shared<PolarGrid>(
          PolarGrid::cone(dom, spec, plus_only ? Coverage::PlusOnly : Coverage::Both));
    }
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("field dump: ") + e.what());
  }
  const PolarGrid& g = *grid;
  if (g.J() * g.block_count() != Jtotal) throw std::runtime_error("field dump: inconsistent J");

  Field f(grid);
  for (int k = 0; k < g.K(); ++k)
    for (int b = 0; b < g.block_count(); ++b)
      for (int j = 0; j < g.J(); ++j) {
        double r, t, v;
        if (!(in >> r >> t >> v)) throw std::runtime_error("field dump: truncated data");
        if (std::abs(r - g.r(k)) > 1e-9 * g.r(k) || angle_distance(t, g.global_angle(b, j), g.n()) > 1e-9)
          throw std::runtime_error("field dump: node coordinates do not match the header grid");
        f.at(b, k, j) = v;
      }
  return f;
}

}  // namespace conelab
