// SPDX-License-Identifier: Apache-2.0
// Command line front end: reads a JSON config, runs one computation and
// writes CSV/JSON artifacts plus a MANIFEST into the output directory.

#include "ctdiam/body.hpp"
#include "ctdiam/cheb.hpp"
#include "ctdiam/error.hpp"
#include "ctdiam/io.hpp"
#include "ctdiam/leja.hpp"
#include "ctdiam/mesh.hpp"
#include "ctdiam/order.hpp"
#include "ctdiam/tdiam.hpp"
#include "ctdiam/vdm.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace ctdiam;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct Flags {
  std::string config;
  std::optional<int> k;
  std::optional<int> k_max;
  std::optional<std::string> alpha;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::optional<int> polygon_m;
  std::optional<std::string> strategy;
  std::optional<std::uint64_t> seed;
  bool emit_plot_data = false;
};

class Run {
 public:
  Run(std::string command, const Flags& flags) : command_(std::move(command)), flags_(flags) {
    std::ifstream in(flags.config);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open config " + flags.config);
    try {
      cfg_ = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::ParseError, flags.config + ": " + e.what());
    }
    if (!cfg_.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
    base_ = fs::path(flags.config).parent_path();
    out_ = flags.out ? fs::path(*flags.out) : fs::path(cfg_.value("output", std::string(".")));
    if (out_.is_relative() && !flags.out) out_ = base_ / out_;
  }

  ~Run() {
    if (manifest_.empty()) return;
    std::ofstream m(out_ / "MANIFEST");
    for (const auto& f : manifest_) m << f << '\n';
  }

  [[nodiscard]] const Json& section() const {
    static const Json empty = Json::object();
    return cfg_.contains(command_) && cfg_.at(command_).is_object() ? cfg_.at(command_) : empty;
  }

  // Looks up a scalar in the subcommand section, then at top level.
  template <typename T>
  std::optional<T> lookup(const char* key) const {
    if (section().contains(key)) return section().at(key).get<T>();
    if (cfg_.contains(key)) return cfg_.at(key).get<T>();
    return std::nullopt;
  }

  int k(std::optional<int> fallback = std::nullopt) const {
    if (flags_.k) return *flags_.k;
    if (auto v = lookup<int>("k")) return *v;
    if (fallback) return *fallback;
    throw Error(ErrorCode::InvalidArgument, command_ + " needs k (config \"k\" or --k)");
  }

  int k_max(std::optional<int> fallback = std::nullopt) const {
    if (flags_.k_max) return *flags_.k_max;
    if (auto v = lookup<int>("k_max")) return *v;
    if (fallback) return *fallback;
    throw Error(ErrorCode::InvalidArgument, command_ + " needs k_max (config \"k_max\" or --k-max)");
  }

  int workers() const {
    if (flags_.workers) return *flags_.workers;
    if (const char* env = std::getenv("CTDIAM_WORKERS"); env && *env) {
      try {
        return std::max(1, std::stoi(env));
      } catch (const std::exception&) {
        throw Error(ErrorCode::InvalidArgument, std::string("CTDIAM_WORKERS is not an integer: ") + env);
      }
    }
    return lookup<int>("workers").value_or(1);
  }

  ConvexBody body() const {
    if (!cfg_.contains("body")) throw Error(ErrorCode::ParseError, "config has no \"body\"");
    return parse_body(cfg_.at("body"));
  }

  Mesh mesh() const {
    if (!cfg_.contains("mesh")) throw Error(ErrorCode::ParseError, "config has no \"mesh\"");
    return build_mesh(parse_mesh_spec(cfg_.at("mesh"), base_));
  }

  ChebOptions cheb_options() const {
    ChebOptions o;
    o.polygon_sides = flags_.polygon_m ? *flags_.polygon_m : lookup<int>("polygon_m").value_or(o.polygon_sides);
    o.workers = workers();
    return o;
  }

  VdmOptions vdm_options() const {
    VdmOptions o;
    if (section().contains("strategy")) {
      o = parse_vdm_options(section().at("strategy"));
    } else if (cfg_.contains("strategy")) {
      o = parse_vdm_options(cfg_.at("strategy"));
    }
    if (flags_.strategy) {
      const auto keep = o;
      o = parse_vdm_options(Json(*flags_.strategy));
      o.restarts = keep.restarts;
      o.seed = keep.seed;
      o.subset_cap = keep.subset_cap;
      o.max_exchanges = keep.max_exchanges;
    }
    if (flags_.seed) o.seed = *flags_.seed;
    o.workers = workers();
    return o;
  }

  OrderKind ordering() const {
    return parse_order_kind(lookup<std::string>("ordering").value_or("cgrevlex"));
  }

  std::optional<Exponent> alpha() const {
    if (flags_.alpha) {
      std::vector<int> e;
      std::stringstream ss(*flags_.alpha);
      std::string part;
      while (std::getline(ss, part, ',')) {
        try {
          e.push_back(std::stoi(part));
        } catch (const std::exception&) {
          throw Error(ErrorCode::ParseError, "--alpha expects comma-separated integers");
        }
      }
      return Exponent(std::move(e));
    }
    if (section().contains("alpha")) return parse_exponent(section().at("alpha"));
    return std::nullopt;
  }

  const Json& config() const { return cfg_; }
  bool emit_plot_data() const { return flags_.emit_plot_data; }

  std::ofstream open(const std::string& name) {
    fs::create_directories(out_);
    std::ofstream f(out_ / name);
    if (!f) throw std::runtime_error("cannot write " + (out_ / name).string());
    f.precision(17);
    manifest_.push_back(name);
    return f;
  }

  void write_json(const std::string& name, const Json& j) { open(name) << j.dump(2) << '\n'; }

 private:
  std::string command_;
  Flags flags_;
  Json cfg_;
  fs::path base_;
  fs::path out_;
  std::vector<std::string> manifest_;
};

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s;
}

std::vector<std::string> point_cells(const Mesh& mesh, Eigen::Index p) {
  std::vector<std::string> cells;
  for (int r = 0; r < mesh.dim(); ++r) {
    cells.push_back(format_double(mesh.points()(r, p).real()));
    cells.push_back(format_double(mesh.points()(r, p).imag()));
  }
  return cells;
}

Json point_json(const Mesh& mesh, Eigen::Index p) {
  Json z = Json::array();
  for (int r = 0; r < mesh.dim(); ++r) {
    z.push_back(json_number(mesh.points()(r, p).real()));
    z.push_back(json_number(mesh.points()(r, p).imag()));
  }
  return z;
}

Json vdm_json(const Mesh& mesh, const VdmValue& v) {
  Json pts = Json::array();
  for (auto p : v.point_indices) pts.push_back(point_json(mesh, p));
  return {{"k", v.k},      {"log_vdm", json_number(v.log_abs)}, {"exact", v.exact},
          {"points", pts}, {"indices", v.point_indices},       {"s", v.s}};
}

std::vector<std::string> numbered(const char* prefix, int n) {
  std::vector<std::string> names;
  for (int j = 1; j <= n; ++j) names.push_back(prefix + std::to_string(j));
  return names;
}

int body_check(Run& run) {
  const auto body = run.body();
  const int k_max = run.k_max(8);
  const auto dagger = check_dagger(body, k_max);
  const double A = normalization_A(body);
  Json hs = Json::array();
  for (const auto& h : body.halfspaces()) {
    Json a = Json::array();
    for (Eigen::Index j = 0; j < h.a.size(); ++j) a.push_back(to_string(h.a(j)));
    hs.push_back({{"a", a}, {"b", to_string(h.b)}});
  }
  Json cmax = Json::array();
  for (Eigen::Index j = 0; j < body.coordinate_max().size(); ++j) cmax.push_back(to_string(body.coordinate_max()(j)));
  run.write_json("body.json", {{"dim", body.dim()},
                               {"halfspaces", hs},
                               {"coordinate_max", cmax},
                               {"A_N", json_number(A)},
                               {"dagger_k_max", k_max},
                               {"dagger", to_json(dagger)}});
  std::cout << "body ok: dim=" << body.dim() << " halfspaces=" << body.halfspaces().size()
            << " dagger=" << to_string(dagger.verdict) << " A_N=" << format_double(A) << '\n';
  return 0;
}

int enumerate(Run& run) {
  const auto body = run.body();
  const int k = run.k();
  const auto lattice = enumerate_lattice(body, k);
  auto csv = run.open("enumerate.csv");
  auto header = std::vector<std::string>{"index"};
  for (auto& n : numbered("alpha_", body.dim())) header.push_back(n);
  for (const char* h : {"gauge", "gauge_value", "c_degree", "total_degree"}) header.emplace_back(h);
  csv << join(header) << '\n';
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto& a = lattice[i];
    std::vector<std::string> cells{std::to_string(i)};
    for (int j = 0; j < a.dim(); ++j) cells.push_back(std::to_string(a[j]));
    const Rational g = body.gauge(a);
    cells.push_back(to_string(g));
    cells.push_back(format_double(to_double(g)));
    cells.push_back(std::to_string(c_degree(body, a)));
    cells.push_back(std::to_string(a.total_degree()));
    csv << join(cells) << '\n';
  }
  auto counts_csv = run.open("counts.csv");
  counts_csv << "k,M_k,h_k,L_k\n";
  for (int j = 1; j <= k; ++j) {
    const auto c = counts(body, j);
    counts_csv << j << ',' << c.M << ',' << c.h << ',' << c.L << '\n';
    std::cout << "k=" << j << " M_k=" << c.M << " h_k=" << c.h << " L_k=" << c.L << '\n';
  }
  return 0;
}

int cheb(Run& run) {
  const auto body = run.body();
  const auto mesh = run.mesh();
  const auto options = run.cheb_options();
  if (auto alpha = run.alpha()) {
    const int k = run.k();
    const auto rec = chebyshev_constant(mesh, body, k, *alpha, run.ordering(), options);
    run.write_json("cheb.json", to_json(rec));
    std::cout << "k=" << k << " alpha=" << alpha->to_string() << " ordering=" << to_string(rec.ordering)
              << " nu=" << format_double(std::exp(rec.log_T_pow_k)) << " T=" << format_double(std::exp(rec.log_T()))
              << " bracket=[" << format_double(rec.bracket_low) << ", " << format_double(rec.bracket_high) << "]\n";
    return 0;
  }
  const auto& sec = run.section();
  if (!sec.contains("theta")) throw Error(ErrorCode::InvalidArgument, "cheb needs alpha or theta");
  const auto theta = parse_rational_vector(sec.at("theta"));
  std::vector<int> schedule;
  if (sec.contains("schedule")) {
    schedule = sec.at("schedule").get<std::vector<int>>();
  } else {
    for (int k = 1; k <= run.k_max(); ++k) schedule.push_back(k);
  }
  const auto res = directional_constant(mesh, body, theta, schedule, options);
  Json theta_json = Json::array();
  for (Eigen::Index j = 0; j < theta.size(); ++j) theta_json.push_back(to_string(theta(j)));
  Json out{{"theta", theta_json}};
  for (const auto* est : {&res.grevlex, &res.cgrevlex}) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < est->ks.size(); ++i) {
      rows.push_back({{"k", est->ks[i]}, {"alpha", to_json(est->alphas[i])}, {"T", json_number(est->T[i])}});
    }
    out[to_string(est->ordering)] = {{"rows", rows},
                                     {"value", json_number(est->value)},
                                     {"error", json_number(est->error)},
                                     {"limit_guaranteed", est->limit_guaranteed},
                                     {"note", est->note}};
    std::cout << to_string(est->ordering) << ": T=" << format_double(est->value)
              << " change=" << format_double(est->error) << (est->limit_guaranteed ? "" : " (" + est->note + ")")
              << '\n';
  }
  out["difference"] = json_number(res.cgrevlex.value - res.grevlex.value);
  run.write_json("cheb.json", out);
  return 0;
}

void write_plot_table(Run& run, const std::string& name, const TransformTable& table, int dim) {
  auto f = run.open(name);
  auto header = numbered("theta_", dim);
  header.emplace_back("logT_C");
  header.emplace_back("logT_grevlex");
  f << join(header) << '\n';
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    for (int j = 0; j < dim; ++j) cells.push_back(format_double(row.theta(j)));
    cells.push_back(format_double(row.failed ? std::nan("") : row.cgrevlex.log_T()));
    cells.push_back(format_double(row.failed ? std::nan("") : row.grevlex.log_T()));
    f << join(cells) << '\n';
  }
}

int transform(Run& run) {
  const auto body = run.body();
  const auto mesh = run.mesh();
  const int k = run.k();
  const auto table = transform_grid(mesh, body, k, run.cheb_options());
  auto csv = run.open("transform.csv");
  auto header = numbered("alpha_", body.dim());
  for (auto& n : numbered("theta_", body.dim())) header.push_back(n);
  for (const char* h : {"gauge", "logT_grevlex", "logT_C", "bracket_low", "bracket_high"}) header.emplace_back(h);
  csv << join(header) << '\n';
  int failed = 0;
  double sum_c = 0.0, sum_g = 0.0;
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    for (int j = 0; j < body.dim(); ++j) cells.push_back(std::to_string(row.alpha[j]));
    for (int j = 0; j < body.dim(); ++j) cells.push_back(format_double(row.theta(j)));
    cells.push_back(format_double(to_double(row.gauge)));
    if (row.failed) {
      ++failed;
      for (int i = 0; i < 4; ++i) cells.emplace_back("nan");
      std::cerr << "alpha=" << row.alpha.to_string() << ": " << row.error << '\n';
    } else {
      cells.push_back(format_double(row.grevlex.log_T()));
      cells.push_back(format_double(row.cgrevlex.log_T()));
      cells.push_back(format_double(row.cgrevlex.bracket_low / k));
      cells.push_back(format_double(row.cgrevlex.bracket_high / k));
      sum_c += row.cgrevlex.log_T();
      sum_g += row.grevlex.log_T();
    }
    csv << join(cells) << '\n';
  }
  if (run.emit_plot_data()) write_plot_table(run, "plot_transform.csv", table, body.dim());
  const auto n = static_cast<double>(table.rows.size());
  std::cout << "k=" << k << " rows=" << table.rows.size() << " failed=" << failed;
  if (!failed) {
    std::cout << " D_transform_C=" << format_double(std::exp(sum_c / n))
              << " D_transform_grevlex=" << format_double(std::exp(sum_g / n));
  }
  std::cout << '\n';
  return failed ? kExitSolver : 0;
}

int vdm(Run& run) {
  const auto body = run.body();
  const auto mesh = run.mesh();
  const int k = run.k();
  // With "points" the determinant of that subset, otherwise the maximum V_k.
  const auto v = run.section().contains("points")
                     ? vandermonde_det(mesh, body, k, run.section().at("points").get<std::vector<Eigen::Index>>())
                     : max_vdm(mesh, body, k, run.vdm_options());
  run.write_json("vdm.json", vdm_json(mesh, v));
  std::cout << "k=" << k << " s=" << v.s << " log_vdm=" << format_double(v.log_abs)
            << " exact=" << (v.exact ? "true" : "false") << '\n';
  return 0;
}

int fekete(Run& run) {
  const auto body = run.body();
  const auto mesh = run.mesh();
  const int k = run.k();
  const auto v = max_vdm(mesh, body, k, run.vdm_options());
  run.write_json("fekete.json", vdm_json(mesh, v));
  std::cout << "k=" << k << " M_k=" << v.s << " log_vdm=" << format_double(v.log_abs)
            << " exact=" << (v.exact ? "true" : "false") << '\n';
  return 0;
}

int leja(Run& run) {
  const auto body = run.body();
  const auto mesh = run.mesh();
  const int k_max = run.k_max();
  const auto res = leja_diameter(mesh, body, k_max);
  auto csv = run.open("leja.csv");
  std::vector<std::string> header{"kind", "s", "k"};
  for (int j = 1; j <= mesh.dim(); ++j) {
    header.push_back("re_" + std::to_string(j));
    header.push_back("im_" + std::to_string(j));
  }
  header.emplace_back("log_vdm");
  header.emplace_back("value");
  csv << join(header) << '\n';
  const auto& seq = res.sequence;
  for (std::size_t s = 1; s <= seq.indices.size(); ++s) {
    std::vector<std::string> cells{"point", std::to_string(s), std::to_string(seq.k[s - 1])};
    for (auto& c : point_cells(mesh, seq.indices[s - 1])) cells.push_back(c);
    cells.push_back(format_double(seq.log_L[s]));
    cells.emplace_back("");
    csv << join(cells) << '\n';
  }
  for (const auto& row : res.rows) {
    std::vector<std::string> cells{"summary", std::to_string(row.M), std::to_string(row.k)};
    for (int j = 0; j < 2 * mesh.dim(); ++j) cells.emplace_back("");
    cells.push_back(format_double(row.log_L));
    cells.push_back(format_double(row.value));
    csv << join(cells) << '\n';
    std::cout << "k=" << row.k << " M_k=" << row.M << " L_k=" << row.L << " leja=" << format_double(row.value)
              << (res.heuristic ? " (weighted: heuristic)" : "") << '\n';
  }
  return 0;
}

int tdiam(Run& run) {
  const auto body = run.body();
  const auto mesh = run.mesh();
  const int k_max = run.k_max();
  TdiamOptions options;
  options.vdm = run.vdm_options();
  options.cheb = run.cheb_options();
  options.leja = run.lookup<bool>("leja").value_or(true);
  options.cell_average = run.lookup<bool>("cell_average").value_or(false);
  const auto report = build_report(mesh, body, k_max, options);

  auto csv = run.open("diameter.csv");
  csv << "k,M_k,h_k,L_k,logV,delta_k,D_vdm,D_transform_C,D_transform_grevlex,leja_value\n";
  Json rows = Json::array();
  int failed = 0;
  for (const auto& r : report.rows) {
    csv << join({std::to_string(r.k), std::to_string(r.M), std::to_string(r.h), std::to_string(r.L),
                 format_double(r.log_V), format_double(r.delta_k), format_double(r.D_vdm),
                 format_double(r.D_transform_C), format_double(r.D_transform_grevlex), format_double(r.leja_value)})
        << '\n';
    Json row{{"k", r.k},
             {"M_k", r.M},
             {"h_k", r.h},
             {"L_k", r.L},
             {"logV", json_number(r.log_V)},
             {"exact", r.exact},
             {"delta_k", json_number(r.delta_k)},
             {"D_vdm", json_number(r.D_vdm)},
             {"D_transform_C", json_number(r.D_transform_C)},
             {"D_transform_grevlex", json_number(r.D_transform_grevlex)},
             {"leja_value", json_number(r.leja_value)},
             {"sum_low_C", json_number(r.sum_low_C)},
             {"sum_high_C", json_number(r.sum_high_C)},
             {"log_M_factorial", json_number(r.log_M_factorial)},
             {"sandwich_C", r.sandwich_C},
             {"sandwich_grevlex", r.sandwich_grevlex},
             {"routes_agree", r.routes_agree}};
    if (options.cell_average) row["cell_average_logT_C"] = json_number(r.cell_average_C);
    if (!r.error.empty()) {
      row["error"] = r.error;
      ++failed;
      std::cerr << "k=" << r.k << ": " << r.error << '\n';
    }
    rows.push_back(row);
    std::cout << "k=" << r.k << " M_k=" << r.M << " delta_k=" << format_double(r.delta_k)
              << " D_vdm=" << format_double(r.D_vdm) << " D_transform_C=" << format_double(r.D_transform_C)
              << " leja=" << format_double(r.leja_value) << (r.exact ? "" : " (greedy)") << '\n';
  }
  Json out{{"config", run.config()},
           {"mesh", mesh.provenance()},
           {"k_max", k_max},
           {"A_N", json_number(report.A_N)},
           {"final_delta", json_number(report.final_delta)},
           {"dagger", to_json(report.dagger)},
           {"leja_heuristic", report.leja_heuristic},
           {"rows", rows}};
  if (!report.leja_error.empty()) out["leja_error"] = report.leja_error;
  run.write_json("report.json", out);
  if (run.emit_plot_data()) {
    for (const auto& t : report.transforms)
      if (!t.rows.empty()) write_plot_table(run, "plot_transform_k" + std::to_string(t.k) + ".csv", t, body.dim());
  }
  std::cout << "A_N=" << format_double(report.A_N) << " delta=" << format_double(report.final_delta) << '\n';
  return failed ? kExitSolver : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex-body graded Chebyshev constants, Fekete and Leja points, and transfinite diameters"};
  app.require_subcommand(1);
  Flags flags;
  using Handler = int (*)(Run&);
  const std::vector<std::tuple<std::string, std::string, Handler>> commands{
      {"body-check", "validate a convex body and report its leading-term diagnostics", body_check},
      {"enumerate", "list the lattice points of kC in body-graded order", enumerate},
      {"cheb", "solve one discrete Chebyshev problem or a directional limit", cheb},
      {"transform", "tabulate log T_k over every alpha in kC for both orders", transform},
      {"vdm", "weighted Vandermonde determinant of given points, or its maximum", vdm},
      {"fekete", "maximize the Vandermonde determinant over M_k mesh points", fekete},
      {"leja", "grow a Leja sequence and report its diameter estimates", leja},
      {"tdiam", "transfinite diameter report over k = 1..k_max", tdiam},
  };
  std::string chosen;
  Handler handler = nullptr;
  for (const auto& [name, help, fn] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", flags.config, "JSON config file")->required();
    sub->add_option("--k", flags.k, "degree k");
    sub->add_option("--k-max", flags.k_max, "largest degree");
    sub->add_option("--alpha", flags.alpha, "exponent, comma separated");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--workers", flags.workers, "worker threads (overrides CTDIAM_WORKERS)");
    sub->add_option("--polygon-m", flags.polygon_m, "polygon sides for complex moduli");
    sub->add_option("--strategy", flags.strategy, "auto, brute-force or greedy");
    sub->add_option("--seed", flags.seed, "greedy seed");
    sub->add_flag("--emit-plot-data", flags.emit_plot_data, "write (theta, log T) tables");
    sub->callback([&chosen, &handler, name = name, fn = fn] {
      chosen = name;
      handler = fn;
    });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitValidation;
  }

  try {
    Run run(chosen, flags);
    return handler(run);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::SolverFailure ? kExitSolver : kExitValidation;
  } catch (const Json::exception& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
