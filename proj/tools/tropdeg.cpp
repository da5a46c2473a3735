// tropdeg: command-line front end.

#include "tropdeg/fixtures.hpp"
#include "tropdeg/intersection.hpp"
#include "tropdeg/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>

using namespace tropdeg;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kTolerance = 3;

// Human-readable; --json keeps full precision.
std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string key(const ConicalComplex& cx, const Cone& c) { return c.empty() ? "apex" : cx.cone_key(c); }

struct Context {
  bool json = false;
};

int emit(const Context& ctx, const Json& j, const std::string& text, int code) {
  if (ctx.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
  return code;
}

ComplexPtr load_complex(const std::string& path) { return io::complex_from_json(io::load_json(path)); }

std::vector<PLFunction> load_functions(const std::vector<std::string>& paths, const ComplexPtr& cx) {
  std::vector<PLFunction> fs;
  for (const auto& p : paths) fs.push_back(io::function_from_json(io::load_json(p), cx));
  return fs;
}

std::string weight_text(const EuclideanWeight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i)
    s += "  [" + key(*w.complex(), w.complex()->cones(w.dim())[i]) + "] " + num(w[i]) + "\n";
  return s;
}

std::string weight_text(const LatticeWeight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i)
    s += "  [" + key(*w.complex(), w.complex()->cones(w.dim())[i]) + "] " + to_string(w[i]) + "\n";
  return s;
}

// ---- subcommands ----

int cmd_validate(const Context& ctx, const std::string& path) {
  const auto desc = io::complex_description_from_json(io::load_json(path));
  const Diagnostics d = validate(desc);
  if (!d.ok()) {
    Json j{{"valid", false}, {"code", diag_name(d.code)}, {"message", d.message}, {"where", d.where}};
    return emit(ctx, j, "invalid: " + std::string(diag_name(d.code)) + " at " + d.where + ": " + d.message + "\n",
                kInvalid);
  }
  const ComplexPtr cx = ConicalComplex::create(desc);
  Json counts = Json::array();
  std::string text = "valid: dimension " + std::to_string(cx->dim()) + " in ambient dimension " +
                     std::to_string(cx->ambient_dim()) + "\n  cones per dimension:";
  for (std::size_t k = 0; k <= cx->dim(); ++k) {
    counts.push_back(cx->cones(k).size());
    text += " " + std::to_string(cx->cones(k).size());
  }
  text += "\n  injective on every cone\n";
  Json j{{"valid", true}, {"dim", cx->dim()}, {"ambient_dim", cx->ambient_dim()}, {"cone_counts", counts}};
  return emit(ctx, j, text, kOk);
}

int cmd_balance(const Context& ctx, const std::string& cpath, const std::string& wpath) {
  const ComplexPtr cx = load_complex(cpath);
  const auto w = io::weight_from_json(io::load_json(wpath), cx);
  Json j;
  std::string text;
  bool ok = true;
  auto report = [&](const char* name, const BalanceReport& r) {
    const std::string at = r.failing ? key(*cx, *r.failing) : "";
    j[name] = {{"balanced", r.balanced}};
    if (r.failing) j[name]["failing"] = at;
    text += std::string(name) + ": " + (r.balanced ? std::string("balanced") : "unbalanced at [" + at + "]") + "\n";
    ok = ok && r.balanced;
  };
  if (w.lattice) {
    report("lattice", check_balanced(*w.lattice));
    report("euclidean", check_balanced(normalize(*w.lattice)));
  } else {
    report("euclidean", check_balanced(*w.euclidean));
  }
  j["balanced"] = ok;
  return emit(ctx, j, text, ok ? kOk : kInvalid);
}

int cmd_intersect(const Context& ctx, const std::string& cpath, const std::string& wpath,
                  const std::vector<std::string>& fpaths, const std::string& flavor) {
  const ComplexPtr cx = load_complex(cpath);
  const auto w = io::weight_from_json(io::load_json(wpath), cx);
  const auto fs = load_functions(fpaths, cx);
  if (fs.size() > (w.lattice ? w.lattice->dim() : w.euclidean->dim()))
    throw std::invalid_argument("more functions than the weight's dimension");
  if (flavor == "lattice") {
    if (!w.lattice) throw std::invalid_argument("lattice products need a lattice weight");
    LatticeWeight c = *w.lattice;
    for (std::size_t i = fs.size(); i-- > 0;) c = lattice_product(fs[i], c);
    Json j{{"weight", io::to_json(c)}};
    std::string text = "result (dim " + std::to_string(c.dim()) + ", lattice):\n" + weight_text(c);
    if (c.dim() == 0) {
      j["degree"] = io::rat_json(degree(c));
      text += "degree: " + to_string(degree(c)) + "\n";
    }
    return emit(ctx, j, text, kOk);
  }
  if (flavor != "euclid" && flavor != "euclidean") throw std::invalid_argument("unknown flavor '" + flavor + "'");
  EuclideanWeight c = w.lattice ? normalize(*w.lattice) : *w.euclidean;
  for (std::size_t i = fs.size(); i-- > 0;) c = euclidean_product(fs[i], c);
  Json j{{"weight", io::to_json(c)}};
  std::string text = "result (dim " + std::to_string(c.dim()) + ", euclidean):\n" + weight_text(c);
  if (c.dim() == 0) {
    j["degree"] = degree(c);
    text += "degree: " + num(degree(c)) + "\n";
  }
  return emit(ctx, j, text, kOk);
}

int cmd_degree(const Context& ctx, const std::string& cpath, const std::vector<std::string>& fpaths) {
  const ComplexPtr cx = load_complex(cpath);
  const auto fs = load_functions(fpaths, cx);
  const BalancedSpace space(cx);
  const Rat lat = top_number_lattice(fs, space);
  const double euc = top_number_euclidean(fs, space);
  const double err = std::abs(euc - to_double(lat));
  const bool bridge = err <= 1e-9 * std::max(1.0, std::abs(to_double(lat)));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", euc);
  Json j{{"lattice", io::rat_json(lat)}, {"euclidean", euc}, {"bridge_error", err}, {"bridge_ok", bridge}};
  std::string text = "lattice:   " + to_string(lat) + "\neuclidean: " + buf + "\nbridge:    " +
                     (bridge ? "consistent" : "INCONSISTENT") + " (error " + num(err) + ")\n";
  return emit(ctx, j, text, bridge ? kOk : kTolerance);
}

int cmd_measure(const Context& ctx, const std::string& cpath, const std::vector<std::string>& fpaths) {
  const ComplexPtr cx = load_complex(cpath);
  const auto fs = load_functions(fpaths, cx);
  const BalancedSpace space(cx);
  const DiscreteMeasure mu = mixed_ma_measure(fs, space);
  std::string text = "atoms:\n";
  for (const auto& a : mu.atoms()) {
    text += "  " + a.at.id + " (";
    for (std::size_t i = 0; i < a.at.unit_image.size(); ++i) text += (i ? ", " : "") + num(a.at.unit_image[i]);
    text += ")  mass " + num(a.mass) + "\n";
  }
  text += "total variation: " + num(mu.total_variation()) + "\n";
  return emit(ctx, io::to_json(mu), text, kOk);
}

int cmd_size(const Context& ctx, const std::string& cpath, const std::string& wpath, const std::string& cln_path) {
  ComplexPtr cx = load_complex(cpath);
  const auto w = io::weight_from_json(io::load_json(wpath), cx);
  EuclideanWeight z = w.lattice ? normalize(*w.lattice) : *w.euclidean;
  std::optional<PLFunction> f;
  if (!cln_path.empty()) f = io::function_from_json(io::load_json(cln_path), cx);
  const AuxiliaryConcave aux(cx->inner_product());
  Json j;
  std::string text;
  if (!aux.is_pl_on(*cx)) {
    const Subdivision s = aux.refine(cx);
    z = pull_back(z, s);
    if (f) f = pull_back(*f, s);
    j["refined_cones"] = s.fine()->maximal_cones().size();
    text += "auxiliary function needed a refinement: " + std::to_string(s.fine()->maximal_cones().size()) +
            " maximal cones\n";
  }
  if (!is_positive(z)) throw std::invalid_argument("size needs a positive weight");
  const double sz = size(z, aux);
  j["size"] = sz;
  text += "size: " + num(sz) + "\n";
  int code = kOk;
  if (f) {
    const ClnResult r = cln_check(*f, z, aux);
    j["cln"] = {{"status", cln_status_name(r.status)}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"sup", r.sup}};
    text += "cln: " + std::string(cln_status_name(r.status));
    if (r.status != ClnResult::Status::inapplicable)
      text += " (size(phi.z) = " + num(r.lhs) + ", sup|phi| size(z) = " + num(r.rhs) + ")";
    text += "\n";
    if (r.status == ClnResult::Status::violated) code = kTolerance;
  }
  return emit(ctx, j, text, code);
}

int cmd_converge(const Context& ctx, const std::string& path, double tol, std::size_t max_steps) {
  const auto towers = io::towers_from_json(io::load_json(path));
  for (const auto& t : towers) {
    const auto d = bdiv_validate(t);
    if (!d.compatible) throw std::invalid_argument("incompatible tower at level " + std::to_string(d.level) + ": " + d.message);
  }
  const ConvergenceReport r = converge_degree(towers, tol, max_steps);
  std::string text;
  char line[160];
  std::snprintf(line, sizeof line, "%5s %10s %20s %12s %20s\n", "step", "cones", "degree", "|delta|", "total variation");
  text += line;
  for (const auto& s : r.steps) {
    std::snprintf(line, sizeof line, "%5zu %10zu %20.12f %12.3e %20.12f\n", s.step, s.cones, s.degree, s.delta,
                  s.total_variation);
    text += line;
  }
  text += "limit: " + num(r.limit) + "\ncauchy: " + (r.cauchy_ok ? "yes" : "no") + "\n";
  return emit(ctx, io::to_json(r), text, r.cauchy_ok ? kOk : kTolerance);
}

std::vector<std::int64_t> hs_scales(std::int64_t lmax) {
  std::vector<std::int64_t> out;
  for (std::int64_t base = 1; base <= lmax; base *= 10)
    for (std::int64_t m : {1, 2, 5})
      if (base * m <= lmax) out.push_back(base * m);
  if (out.empty() || out.back() != lmax) out.push_back(lmax);
  return out;
}

int cmd_toric(const Context& ctx, const std::string& name, const std::vector<std::string>& dpaths, std::int64_t hs,
              bool bm) {
  const ToricFixture fx = fixtures::by_name(name);
  const std::size_t n = fx.fan->dim();
  std::vector<DivisorView> ds;
  for (const auto& p : dpaths) ds.push_back(io::divisor_from_json(io::load_json(p), fx.fan));
  if (ds.empty()) throw std::invalid_argument("toric needs at least one divisor");
  Json j;
  std::string text;
  int code = kOk;

  std::vector<DivisorView> tuple = ds;
  if (tuple.size() == 1) tuple.assign(n, ds[0]);
  if (tuple.size() == n) {
    const DegreeComparison c = compare_degrees(fx, tuple);
    j["degree"] = {{"tropical", io::rat_json(c.tropical)}, {"mixed_volume", io::rat_json(c.oracle)}, {"equal", c.equal}};
    text += "tropical top number: " + to_string(c.tropical) + "\nmixed volume:        " + to_string(c.oracle) +
            "\n" + (c.equal ? "equal\n" : "MISMATCH\n");
    if (!c.equal) code = kTolerance;
  }
  if (hs > 0) {
    const auto rep = hilbert_samuel(Polytope::from_divisor(ds[0]), hs_scales(hs));
    Json rows = Json::array();
    text += "hilbert-samuel (n! vol = " + to_string(rep.volume_times_factorial) + ")\n";
    char line[128];
    for (const auto& r : rep.rows) {
      rows.push_back({{"scale", r.scale}, {"count", r.count.str()}, {"normalized", r.normalized}, {"error", r.error}});
      std::snprintf(line, sizeof line, "  %8lld %14s %16.9f %12.3e\n", static_cast<long long>(r.scale),
                    r.count.str().c_str(), r.normalized, r.error);
      text += line;
    }
    j["hilbert_samuel"] = {{"volume_times_factorial", io::rat_json(rep.volume_times_factorial)}, {"rows", rows}};
  }
  if (bm) {
    if (ds.size() != 2) throw std::invalid_argument("--bm needs exactly two divisors");
    const auto r = brunn_minkowski(ds[0], ds[1]);
    j["brunn_minkowski"] = {{"d_top", io::rat_json(r.d_top)},   {"f_top", io::rat_json(r.f_top)},
                            {"sum_top", io::rat_json(r.sum_top)}, {"lhs", r.lhs},
                            {"rhs", r.rhs},                       {"superadditive", r.superadditive},
                            {"strict", r.strict},                 {"reversed_direction_holds", r.stated_direction}};
    text += "brunn-minkowski: ((D+F)^n)^(1/n) = " + num(r.lhs) + ", (D^n)^(1/n) + (F^n)^(1/n) = " + num(r.rhs) + "\n";
    text += std::string("  superadditive: ") + (r.superadditive ? "holds" : "FAILS") +
            (r.strict ? " (strict)" : "") + "\n  reversed direction: " + (r.stated_direction ? "holds" : "fails") + "\n";
    if (!r.superadditive) code = kTolerance;
  }
  return emit(ctx, j, text, code);
}

int cmd_subdivide(const Context& ctx, const std::string& cpath, const std::string& at, const std::string& id) {
  const ComplexPtr cx = load_complex(cpath);
  const auto colon = at.rfind(':');
  if (colon == std::string::npos) throw std::invalid_argument("--at expects <cone>:<coeffs>");
  const Cone c = cx->parse_cone_key(at.substr(0, colon));
  std::vector<std::string> ids;
  // Coefficients follow the ray order of the key as written.
  std::string key = at.substr(0, colon), coeffs = at.substr(colon + 1);
  for (std::size_t start = 0;;) {
    auto bar = key.find('|', start);
    ids.push_back(key.substr(start, bar - start));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  RatVector given;
  for (std::size_t start = 0;;) {
    auto comma = coeffs.find(',', start);
    given.push_back(parse_rat(coeffs.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (given.size() != ids.size()) throw std::invalid_argument("--at: one coefficient per ray of the cone");
  Point p{c, RatVector(c.size())};
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::size_t r = *cx->find_ray(ids[i]);
    p.coefficients[std::find(c.begin(), c.end(), r) - c.begin()] = given[i];
  }
  const Subdivision s = stellar_subdivide(cx, p, id);
  const Json j{{"complex", io::to_json(*s.fine())}, {"subdivision", io::to_json(s)}};
  std::string text = "new ray " + s.fine()->ray(s.fine()->ray_count() - 1).id + "; " +
                     std::to_string(s.fine()->maximal_cones().size()) + " maximal cones\n" + j.dump(2) + "\n";
  return emit(ctx, j, text, kOk);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropdeg: tropical intersection products, Monge-Ampere measures and degrees"};
  app.require_subcommand(1);
  Context ctx;
  app.add_flag("--json", ctx.json, "machine-readable JSON output");

  std::string complex_path, weight_path, flavor = "lattice", cln, tower, fixture, at, new_id;
  std::vector<std::string> files;
  double tol = 1e-6;
  std::size_t max_steps = 12;
  std::int64_t hs = 0;
  bool bm = false;

  auto* validate_cmd = app.add_subcommand("validate", "check complex invariants");
  validate_cmd->add_option("complex", complex_path)->required();

  auto* balance_cmd = app.add_subcommand("balance", "balancing check, both flavors");
  balance_cmd->add_option("complex", complex_path)->required();
  balance_cmd->add_option("weight", weight_path)->required();

  auto* intersect_cmd = app.add_subcommand("intersect", "iterated intersection product");
  intersect_cmd->add_option("complex", complex_path)->required();
  intersect_cmd->add_option("weight", weight_path)->required();
  intersect_cmd->add_option("functions", files);
  intersect_cmd->add_option("--flavor", flavor)->check(CLI::IsMember({"lattice", "euclid", "euclidean"}));

  auto* degree_cmd = app.add_subcommand("degree", "top intersection number");
  degree_cmd->add_option("complex", complex_path)->required();
  degree_cmd->add_option("functions", files)->required();

  auto* measure_cmd = app.add_subcommand("measure", "mixed Monge-Ampere measure");
  measure_cmd->add_option("complex", complex_path)->required();
  measure_cmd->add_option("functions", files);

  auto* size_cmd = app.add_subcommand("size", "size of a positive weight");
  size_cmd->add_option("complex", complex_path)->required();
  size_cmd->add_option("weight", weight_path)->required();
  size_cmd->add_option("--cln", cln, "also check the CLN inequality for this function");

  auto* converge_cmd = app.add_subcommand("converge", "degree by convergence along a tower");
  converge_cmd->add_option("tower", tower)->required();
  converge_cmd->add_option("--tol", tol);
  converge_cmd->add_option("--max-steps", max_steps);

  auto* toric_cmd = app.add_subcommand("toric", "toric oracle comparisons");
  toric_cmd->add_option("fixture", fixture)->required();
  toric_cmd->add_option("divisors", files)->required();
  toric_cmd->add_option("--hs", hs, "Hilbert-Samuel table up to this scale");
  toric_cmd->add_flag("--bm", bm, "Brunn-Minkowski check for two divisors");

  auto* subdivide_cmd = app.add_subcommand("subdivide", "stellar subdivision");
  subdivide_cmd->add_option("complex", complex_path)->required();
  subdivide_cmd->add_option("--at", at, "<cone>:<coeffs>, e.g. e1|e2:1,1")->required();
  subdivide_cmd->add_option("--id", new_id, "id of the new ray");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) return cmd_validate(ctx, complex_path);
    if (*balance_cmd) return cmd_balance(ctx, complex_path, weight_path);
    if (*intersect_cmd) return cmd_intersect(ctx, complex_path, weight_path, files, flavor);
    if (*degree_cmd) return cmd_degree(ctx, complex_path, files);
    if (*measure_cmd) return cmd_measure(ctx, complex_path, files);
    if (*size_cmd) return cmd_size(ctx, complex_path, weight_path, cln);
    if (*converge_cmd) return cmd_converge(ctx, tower, tol, max_steps);
    if (*toric_cmd) return cmd_toric(ctx, fixture, files, hs, bm);
    if (*subdivide_cmd) return cmd_subdivide(ctx, complex_path, at, new_id);
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kInvalid;
  } catch (const io::FormatError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
