// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/io.hpp"

#include "ctdiam/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace ctdiam {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& need(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string(where) + ": missing \"" + key + "\"");
  return j.at(key);
}

double get_double(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  parse_fail(std::string(what) + ": expected a number, got " + j.dump());
}

int get_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + ": expected an integer, got " + j.dump());
  return j.get<int>();
}

Rational get_rational(const Json& j, const char* what) {
  // Numbers are read from their decimal text, so 0.1 means exactly 1/10.
  if (j.is_number()) return parse_rational(j.dump());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  parse_fail(std::string(what) + ": expected a rational, got " + j.dump());
}

Complex get_complex(const Json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {get_double(j[0], what), get_double(j[1], what)};
  parse_fail(std::string(what) + ": expected [re, im], got " + j.dump());
}

WeightSpec parse_weight(const Json& j) {
  if (j.is_null()) return WeightOne{};
  const auto kind = need(j, "kind", "weight").get<std::string>();
  if (kind == "one") return WeightOne{};
  if (kind == "radial-gaussian") return WeightRadialGaussian{get_double(need(j, "sigma", "weight"), "sigma")};
  if (kind == "table") {
    WeightTable t;
    for (const auto& v : need(j, "log_weights", "weight")) {
      t.log_weights.push_back(v.is_null() ? -std::numeric_limits<double>::infinity() : get_double(v, "log_weights"));
    }
    return t;
  }
  parse_fail("unknown weight kind \"" + kind + "\"");
}

CircleSpec parse_circle(const Json& j) {
  CircleSpec c;
  if (j.contains("center")) c.center = get_complex(j.at("center"), "center");
  if (j.contains("radius")) c.radius = get_double(j.at("radius"), "radius");
  c.count = get_int(need(j, "count", "circle"), "count");
  return c;
}

bool is_number_token(const std::string& s) {
  if (s == "-inf" || s == "inf" || s == "nan") return true;
  try {
    std::size_t used = 0;
    std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const auto a = cell.find_first_not_of(" \t\r");
    const auto b = cell.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? std::string() : cell.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

ConvexBody parse_body(const Json& j) {
  if (!j.is_object()) parse_fail("body: expected an object");
  if (j.contains("kind")) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "simplex") return ConvexBody::simplex(get_int(need(j, "dim", "body"), "dim"));
    if (kind == "box") return ConvexBody::box(need(j, "sides", "body").get<std::vector<int>>());
    if (kind != "halfspaces") parse_fail("unknown body kind \"" + kind + "\"");
  }
  const int dim = get_int(need(j, "dim", "body"), "dim");
  std::vector<Halfspace> hs;
  for (const auto& h : need(j, "halfspaces", "body")) {
    Halfspace one;
    const auto& a = need(h, "a", "halfspace");
    if (!a.is_array()) parse_fail("halfspace: \"a\" must be an array");
    one.a = parse_rational_vector(a);
    one.b = get_rational(need(h, "b", "halfspace"), "b");
    hs.push_back(std::move(one));
  }
  return ConvexBody::validate(dim, std::move(hs));
}

MeshSpec parse_mesh_spec(const Json& j, const std::filesystem::path& base) {
  if (!j.is_object()) parse_fail("mesh: expected an object");
  const auto kind = need(j, "kind", "mesh").get<std::string>();
  MeshSpec spec;
  if (kind == "circle") {
    spec.shape = parse_circle(j);
  } else if (kind == "interval") {
    IntervalSpec s;
    if (j.contains("a")) s.a = get_double(j.at("a"), "a");
    if (j.contains("b")) s.b = get_double(j.at("b"), "b");
    s.count = get_int(need(j, "count", "interval"), "count");
    const auto spacing = j.value("spacing", std::string("uniform"));
    if (spacing == "uniform") {
      s.spacing = Spacing::Uniform;
    } else if (spacing == "chebyshev-nodes") {
      s.spacing = Spacing::ChebyshevNodes;
    } else {
      parse_fail("unknown interval spacing \"" + spacing + "\"");
    }
    spec.shape = s;
  } else if (kind == "box2d") {
    Box2dSpec s;
    const auto& x = need(j, "x", "box2d");
    const auto& y = need(j, "y", "box2d");
    const auto& n = need(j, "counts", "box2d");
    if (x.size() != 2 || y.size() != 2 || n.size() != 2) parse_fail("box2d: x, y and counts need two entries");
    s.x0 = get_double(x[0], "x");
    s.x1 = get_double(x[1], "x");
    s.y0 = get_double(y[0], "y");
    s.y1 = get_double(y[1], "y");
    s.nx = get_int(n[0], "counts");
    s.ny = get_int(n[1], "counts");
    spec.shape = s;
  } else if (kind == "torus") {
    TorusSpec s;
    for (const auto& c : need(j, "circles", "torus")) s.circles.push_back(parse_circle(c));
    spec.shape = s;
  } else if (kind == "product") {
    ProductSpec s;
    for (const auto& f : need(j, "factors", "product"))
      s.factors.push_back(std::make_shared<MeshSpec>(parse_mesh_spec(f, base)));
    spec.shape = s;
  } else if (kind == "explicit") {
    const int dim = j.contains("dim") ? get_int(j.at("dim"), "dim") : 0;
    if (j.contains("csv")) {
      std::filesystem::path path = j.at("csv").get<std::string>();
      if (path.is_relative()) path = base / path;
      spec.shape = read_mesh_csv(path, dim);
    } else {
      const auto& pts = need(j, "points", "explicit");
      if (!pts.is_array() || pts.empty()) throw Error(ErrorCode::EmptySpec, "explicit mesh has no points");
      // Each point is a list of coordinates; a bare number or [re, im] pair
      // is one coordinate.
      std::vector<std::vector<Complex>> rows;
      for (const auto& p : pts) {
        std::vector<Complex> z;
        if (p.is_number()) {
          z.push_back(get_complex(p, "point"));
        } else if (p.is_array() && !p.empty() && p[0].is_array()) {
          for (const auto& c : p) z.push_back(get_complex(c, "point"));
        } else if (p.is_array() && p.size() == 2 && dim <= 1) {
          z.push_back(get_complex(p, "point"));
        } else {
          parse_fail("explicit point must be a number, [re, im] or a list of [re, im]: " + p.dump());
        }
        if (!rows.empty() && z.size() != rows.front().size()) {
          throw Error(ErrorCode::DimensionMismatch, "explicit points have different dimensions");
        }
        rows.push_back(std::move(z));
      }
      ExplicitSpec s;
      s.points.resize(static_cast<Eigen::Index>(rows.front().size()), static_cast<Eigen::Index>(rows.size()));
      for (std::size_t c = 0; c < rows.size(); ++c)
        for (std::size_t r = 0; r < rows[c].size(); ++r)
          s.points(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[c][r];
      if (dim && s.points.rows() != dim) throw Error(ErrorCode::DimensionMismatch, "explicit points do not match dim");
      if (j.contains("log_weights")) {
        for (const auto& v : j.at("log_weights"))
          s.log_weights.push_back(v.is_null() ? -std::numeric_limits<double>::infinity() : get_double(v, "log_weights"));
      }
      spec.shape = s;
    }
  } else {
    parse_fail("unknown mesh kind \"" + kind + "\"");
  }
  if (j.contains("weight")) spec.weight = parse_weight(j.at("weight"));
  return spec;
}

ExplicitSpec read_mesh_csv(const std::filesystem::path& path, int dim) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open mesh file " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (first) {
      first = false;
      if (!cells.empty() && !is_number_token(cells.front())) continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      if (!is_number_token(c)) parse_fail(path.string() + ": non-numeric cell \"" + c + "\"");
      row.push_back(c == "-inf" ? -std::numeric_limits<double>::infinity() : std::stod(c));
    }
    if (!rows.empty() && row.size() != rows.front().size()) parse_fail(path.string() + ": ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::EmptySpec, path.string() + " has no points");
  const auto cols = static_cast<int>(rows.front().size());
  const bool has_weight = cols % 2 == 1;
  const int n = cols / 2;
  if (n == 0) parse_fail(path.string() + ": need 2N coordinate columns");
  if (dim && dim != n) throw Error(ErrorCode::DimensionMismatch, path.string() + " holds points of another dimension");
  ExplicitSpec s;
  s.points.resize(n, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t p = 0; p < rows.size(); ++p) {
    for (int r = 0; r < n; ++r) {
      s.points(r, static_cast<Eigen::Index>(p)) = Complex(rows[p][static_cast<std::size_t>(2 * r)],
                                                          rows[p][static_cast<std::size_t>(2 * r + 1)]);
    }
    if (has_weight) s.log_weights.push_back(rows[p].back());
  }
  return s;
}

Exponent parse_exponent(const Json& j) {
  if (j.is_number_integer()) return Exponent{j.get<int>()};
  if (!j.is_array()) parse_fail("exponent: expected a list of integers, got " + j.dump());
  std::vector<int> e;
  for (const auto& v : j) e.push_back(get_int(v, "exponent"));
  return Exponent(std::move(e));
}

RationalVector parse_rational_vector(const Json& j) {
  if (!j.is_array()) return RationalVector::Constant(1, get_rational(j, "vector"));
  RationalVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = get_rational(j[i], "vector");
  return v;
}

VdmOptions parse_vdm_options(const Json& j) {
  VdmOptions o;
  if (j.is_null()) return o;
  if (j.is_string()) {
    const auto kind = j.get<std::string>();
    if (kind == "auto") return o;
    if (kind == "brute-force") {
      o.search = VdmSearch::BruteForce;
      return o;
    }
    if (kind == "greedy") {
      o.search = VdmSearch::Greedy;
      return o;
    }
    parse_fail("unknown strategy \"" + kind + "\"");
  }
  o = parse_vdm_options(Json(j.value("kind", std::string("auto"))));
  if (j.contains("restarts")) o.restarts = get_int(j.at("restarts"), "restarts");
  if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("subset_cap")) o.subset_cap = get_double(j.at("subset_cap"), "subset_cap");
  if (j.contains("max_exchanges")) o.max_exchanges = get_int(j.at("max_exchanges"), "max_exchanges");
  return o;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json json_number(double x) { return std::isfinite(x) ? Json(x) : Json(format_double(x)); }

Json to_json(const Exponent& alpha) { return Json(alpha.entries()); }

Json to_json(const ChebyshevRecord& rec) {
  Json coeffs = Json::array();
  for (const auto& [beta, c] : rec.coefficients.terms()) {
    coeffs.push_back({{"alpha", to_json(beta)}, {"re", json_number(c.real())}, {"im", json_number(c.imag())}});
  }
  return {
      {"k", rec.k},
      {"alpha", to_json(rec.alpha)},
      {"ordering", to_string(rec.ordering)},
      {"log_T_pow_k", json_number(rec.log_T_pow_k)},
      {"nu", json_number(std::exp(rec.log_T_pow_k))},
      {"T", json_number(std::exp(rec.log_T()))},
      {"bracket_low", json_number(rec.bracket_low)},
      {"bracket_high", json_number(rec.bracket_high)},
      {"relaxation_gap", json_number(rec.relaxation_gap)},
      {"exact", rec.exact},
      {"lp_iterations", rec.lp_iterations},
      {"coefficients", coeffs},
  };
}

Json to_json(const DaggerReport& dagger) {
  Json pairs = Json::array();
  for (const auto& [a, b] : dagger.witness_pairs) pairs.push_back({to_json(a), to_json(b)});
  return {{"verdict", to_string(dagger.verdict)},
          {"irredundant_halfspaces", dagger.irredundant_halfspaces},
          {"witness_pairs", pairs}};
}

}  // namespace ctdiam
