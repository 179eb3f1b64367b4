#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specrad/coercivity.hpp"
#include "specrad/ellipsoid.hpp"
#include "specrad/errors.hpp"
#include "specrad/io.hpp"
#include "specrad/tensor.hpp"
#include "specrad/verify.hpp"

namespace {

using namespace specrad;
using nlohmann::json;

struct Options {
  std::string input;
  std::string eps_str = "1/1000000";
  std::string p_str;
  unsigned precision = 128;
  bool precision_set = false;
  bool verify = false;
  bool json_out = false;
};

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--input", opt.input, "problem file")->required();
  cmd->add_option("--eps", opt.eps_str, "tolerance (exact rational)");
  cmd->add_option("--precision", opt.precision, "mpfr bits")
      ->check(CLI::Range(32u, 16384u));
  cmd->add_flag("--verify", opt.verify, "run verify-module certificates");
  cmd->add_flag("--json", opt.json_out, "machine-readable output");
}

Rational parse_eps(const std::string& s) {
  Rational eps = parse_rational(s);
  if (eps <= 0) throw InputError("--eps must be positive");
  return eps;
}

void emit(const json& doc, bool json_out) {
  if (json_out) {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  for (const auto& [key, val] : doc.items()) {
    std::cout << key;
    if (val.is_array()) {
      for (const auto& v : val) std::cout << " " << v.get<std::string>();
    } else if (val.is_string()) {
      std::cout << " " << val.get<std::string>();
    } else {
      std::cout << " " << val.dump();
    }
    std::cout << "\n";
  }
}

json spectral_json(const SpectralResult& r) {
  json doc;
  doc["value"] = format_real(r.rho);
  doc["bracket_lower"] = format_rational(r.rho_lower);
  doc["bracket_upper"] = format_rational(r.rho_upper);
  json vec = json::array();
  for (const auto& v : r.eigvec) vec.push_back(format_real(v));
  doc["eigvec"] = vec;
  doc["cw_lower"] = format_real(r.cw_lower);
  doc["cw_upper"] = format_real(r.cw_upper);
  doc["iterations"] = std::to_string(r.iterations);
  if (!r.dropped_vars.empty()) {
    json dv = json::array();
    for (int i : r.dropped_vars) dv.push_back(std::to_string(i + 1));
    doc["dropped_vars"] = dv;
  }
  return doc;
}

const MonomialMap& require_map(const ProblemFile& pf) {
  if (!pf.map()) throw InputError("subcommand requires kind map");
  return *pf.map();
}

const NonnegForm& require_form(const ProblemFile& pf) {
  if (!pf.form()) throw InputError("subcommand requires kind form");
  return *pf.form();
}

const UniformHypergraph& require_hypergraph(const ProblemFile& pf) {
  if (!pf.hypergraph()) throw InputError("subcommand requires kind hypergraph");
  return *pf.hypergraph();
}

const MaxLogSumExp& require_glp(const ProblemFile& pf) {
  if (!pf.glp()) throw InputError("subcommand requires kind glp");
  return *pf.glp();
}

void verify_eigenpair(const MonomialMap& F, const SpectralResult& r,
                      json& doc) {
  Real tol = Real(1) / 1000000;
  PowerResult pw = F.degree_minus_1 == 1 ? power_iteration_matrix(F, tol)
                                         : power_iteration_tensor(F, tol);
  doc["verify_power_rho"] = format_real(pw.rho);
  doc["verify_power_gap"] = format_real(abs(pw.rho - r.rho));
  if (!F.quasi && denominator(F.degree_minus_1) == 1) {
    auto meas = occupation_from_eigenpair(F, r.rho, r.eigvec);
    doc["verify_measure_mass"] = format_real(meas.total_mass());
    doc["verify_measure_balance"] = format_real(meas.balance_defect());
    doc["verify_entropic_gap"] =
        format_real(abs(entropic_value(F, meas) - log(r.rho)));
  }
}

int run(const std::string& cmd, const Options& opt) {
  set_precision_bits(opt.precision);
  Rational eps = parse_eps(opt.eps_str);
  ProblemFile pf = parse_problem_file(opt.input);
  json doc;

  if (cmd == "rho") {
    const MonomialMap& F = require_map(pf);
    SpectralResult r = spectral_radius(F, eps);
    doc = spectral_json(r);
    if (opt.verify) verify_eigenpair(F, r, doc);
  } else if (cmd == "mu-d") {
    const NonnegForm& g = require_form(pf);
    SpectralResult r = mu_d(g, eps);
    doc = spectral_json(r);
    if (opt.verify && g.n_plus_1 <= 3) {
      auto grid = grid_maximize_form(g, 101);
      doc["verify_grid_max"] = format_real(Real(grid.value));
      doc["verify_grid_gap"] = format_real(abs(Real(grid.value) - r.rho));
    }
  } else if (cmd == "mu-p") {
    const NonnegForm& g = require_form(pf);
    if (opt.p_str.empty()) throw InputError("mu-p requires --p");
    Rational p = parse_rational(opt.p_str);
    Real mu = mu_p_lifted(g, p, eps);
    doc["value"] = format_real(mu);
  } else if (cmd == "hypergraph") {
    const UniformHypergraph& H = require_hypergraph(pf);
    SpectralResult r = hypergraph_rho(H, eps);
    doc = spectral_json(r);
  } else if (cmd == "clique-bound") {
    const UniformHypergraph& H = require_hypergraph(pf);
    doc["value"] = std::to_string(clique_upper_bound(H, eps));
  } else if (cmd == "glp-min") {
    const MaxLogSumExp& f = require_glp(pf);
    IntegerizedProblem ip = integerize(f);
    BoundBundle bundle = bound_bundle(ip);
    Rational eps_solver = eps * 15 / 16;
    MinimizeResult mr = minimize_altitude(ip, bundle, eps_solver);
    Rational off_lo = ip.offset_lower(), off_hi = ip.offset_upper();
    doc["value"] = format_real(to_real((off_lo + off_hi) / 2 + mr.t_star));
    doc["bracket_lower"] = format_rational(off_lo + mr.t_star - eps_solver);
    doc["bracket_upper"] = format_rational(off_hi + mr.t_star + eps_solver);
    json arg = json::array();
    for (const auto& xi : mr.x_star)
      arg.push_back(format_rational(Rational(ip.d1) * xi));
    doc["argmin"] = arg;
    doc["iterations"] = std::to_string(mr.iterations);
    if (opt.verify && f.n <= 3) {
      Rational box = bundle.nu > 0
                         ? (bundle.f0_upper - bundle.t_min) / bundle.nu
                         : Rational(8);
      auto grid =
          grid_minimize_f(f, box.convert_to<double>() + 1.0, 257);
      doc["verify_grid_min"] = format_real(Real(grid.value));
    }
  } else {  // check
    if (pf.map()) {
      doc["kind"] = "map";
      doc["dim"] = std::to_string(pf.map()->n_plus_1);
      doc["degree"] = format_rational(pf.map()->degree_minus_1 + 1);
      doc["quasi"] = pf.map()->quasi ? "true" : "false";
      doc["weakly_irreducible"] =
          is_weakly_irreducible(*pf.map()) ? "true" : "false";
    } else if (pf.form()) {
      doc["kind"] = "form";
      doc["dim"] = std::to_string(pf.form()->n_plus_1);
      doc["degree"] = format_rational(pf.form()->degree);
      doc["components"] =
          std::to_string(connected_components(*pf.form()).size());
    } else if (pf.hypergraph()) {
      doc["kind"] = "hypergraph";
      doc["dim"] = std::to_string(pf.hypergraph()->n_plus_1);
      doc["degree"] = std::to_string(pf.hypergraph()->d);
      doc["edges"] = std::to_string(pf.hypergraph()->edges.size());
    } else {
      const MaxLogSumExp& f = require_glp(pf);
      doc["kind"] = "glp";
      doc["dim"] = std::to_string(f.n);
      doc["branches"] = std::to_string(f.branches.size());
      IntegerizedProblem ip = integerize(f);
      CoercivityCheck cc = is_coercive(ip);
      doc["coercive"] = cc.coercive ? "true" : "false";
      doc["nu"] = format_rational(cc.nu);
    }
  }

  emit(doc, opt.json_out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral radii of nonnegative polynomial maps via "
               "geometric programming"};
  app.require_subcommand(1);

  Options opt;
  if (const char* env = std::getenv("PRECISION_BITS")) {
    try {
      opt.precision = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      std::cerr << "error: input: bad PRECISION_BITS value\n";
      return 2;
    }
  }

  std::vector<std::string> names = {"rho",        "mu-d",        "mu-p",
                                    "hypergraph", "clique-bound", "glp-min",
                                    "check"};
  for (const auto& name : names) {
    CLI::App* cmd = app.add_subcommand(name);
    add_common(cmd, opt);
    if (name == "mu-p")
      cmd->add_option("--p", opt.p_str, "Hoelder exponent p >= d+1");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return run(app.get_subcommands().front()->get_name(), opt);
  } catch (const CoercivityError& e) {
    std::cerr << "error: input: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: input: " << e.what() << "\n";
    return 2;
  } catch (const ReducibilityError& e) {
    std::cerr << "error: reducibility: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    std::cerr << "error: precision: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: input: " << e.what() << "\n";
    return 2;
  }
}
