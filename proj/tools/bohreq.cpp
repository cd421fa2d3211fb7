// Command-line front end. Reports are JSON on stdout; errors are JSON
// objects {"error": kind, "message": text} on stderr with exit status 2.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bohreq/document.hpp"
#include "bohreq/equivalence.hpp"
#include "bohreq/error.hpp"
#include "bohreq/lcg.hpp"
#include "bohreq/valuesets.hpp"

using nlohmann::json;
using namespace bohreq;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;
constexpr std::uint64_t kExactGridDenominator = 65536;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(ErrorKind::InvalidArgument, "empty entry in list \"" + text + "\"");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

json strings(const std::vector<Integer>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_string(z));
  return a;
}

json report_json(const Report& r) {
  json metrics = json::array();
  for (const auto& m : r.metrics) metrics.push_back({{"name", m.name}, {"value", m.value}, {"bound", m.bound}, {"ok", m.ok}});
  json out = {{"check", r.check}, {"pass", r.pass}, {"metrics", metrics}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

json verdict_json(const EquivVerdict& v) {
  json out = {{"equivalent", v.equivalent}, {"mode", v.exact ? "exact" : "numeric"}, {"reason", v.reason}};
  if (v.certificate) {
    const auto& c = *v.certificate;
    json x0 = json::array();
    if (v.exact)
      for (const auto& q : c.x0_exact) x0.push_back(to_string(q));
    else
      for (double x : c.x0) x0.push_back(x);
    out["certificate"] = {{"x0_turns", x0}, {"shift", strings(c.shift)}, {"residues", strings(c.residues)}};
  }
  if (v.witness) out["witness"] = strings(*v.witness);
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Common {
  unsigned precision = kDefaultPrecisionBits;
};

int cmd_basis(const Common& common, const std::string& file) {
  ExponentialSum f = load_sum_document(file, common.precision);
  const BasisData& b = f.basis();
  json matrix = json::array();
  for (std::size_t j = 0; j < b.coord_matrix.rows(); ++j) {
    json row = json::array();
    for (const auto& q : b.coord_matrix.row(j)) row.push_back(to_string(q));
    matrix.push_back(std::move(row));
  }
  json out = {{"basis_indices", b.basis_indices},
              {"dimension", b.dimension()},
              {"coord_matrix", matrix},
              {"row_denominators", strings(b.row_denominators)},
              {"integral", b.integral}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_equiv(const Common& common, const std::string& a, const std::string& b, double tol, bool oracle) {
  ExponentialSum f1 = load_sum_document(a, common.precision);
  ExponentialSum f2 = load_sum_document(b, common.precision);
  EquivVerdict v = decide_equiv(f1, f2, tol);
  json out = verdict_json(v);
  out["verified"] = verify_verdict(f1, f2, v, tol);
  if (oracle) {
    EquivVerdict o = decide_equiv_prop1_all_n(f1, f2, tol);
    out["oracle"] = verdict_json(o);
    if (o.equivalent != v.equivalent)
      throw Error(ErrorKind::OracleDisagreement, "decision and prefix oracle disagree: " + v.reason + " vs " + o.reason);
  }
  std::cout << out.dump(2) << "\n";
  return v.equivalent ? 0 : kExitFail;
}

int cmd_generate(const Common& common, const std::string& file, const std::string& x_text,
                 const std::string& residue_text, std::optional<std::uint64_t> seed_opt, const std::string& out_path) {
  ExponentialSum f = load_sum_document(file, common.precision);
  const BasisData& basis = f.basis();
  const std::size_t m = basis.dimension();
  const bool random_x = x_text.empty();
  const bool random_residues = residue_text.empty() && (random_x || seed_opt);
  const std::uint64_t seed = seed_opt ? *seed_opt : fresh_seed();
  Lcg64 rng(seed);

  std::vector<Rational> x_exact(m);
  std::vector<double> x_real(m);
  if (random_x) {
    // Grid of spacing 1/65536 so that exact sums stay exact.
    for (std::size_t k = 0; k < m; ++k) {
      x_exact[k] = Rational(static_cast<unsigned long>(rng.below(kExactGridDenominator)), kExactGridDenominator);
      x_exact[k].canonicalize();
      x_real[k] = x_exact[k].get_d();
    }
  } else {
    auto items = split_list(x_text);
    if (items.size() != m)
      throw Error(ErrorKind::DimensionMismatch, "--x needs " + std::to_string(m) + " entries");
    for (std::size_t k = 0; k < m; ++k) {
      x_exact[k] = parse_rational(items[k]);
      x_real[k] = x_exact[k].get_d();
    }
  }

  std::vector<Integer> residues(f.size(), Integer(0));
  if (!residue_text.empty()) {
    auto items = split_list(residue_text);
    if (items.size() != f.size())
      throw Error(ErrorKind::DimensionMismatch, "--residues needs " + std::to_string(f.size()) + " entries");
    for (std::size_t j = 0; j < items.size(); ++j) {
      Rational q = parse_rational(items[j]);
      if (!is_integer(q)) throw Error(ErrorKind::InvalidArgument, "residues must be integers");
      residues[j] = q.get_num();
    }
  } else if (random_residues) {
    Integer period = 1;
    for (const auto& d : basis.row_denominators) period = lcm(period, d);
    std::vector<Integer> shift(m);
    for (auto& s : shift) s = Integer(static_cast<unsigned long>(rng.below(to_int64(period) > 0 ? to_int64(period) : 1)));
    residues = residues_from_shift(basis, shift);
  }

  ExponentialSum g = f.is_exact() ? generate_member(f, std::span<const Rational>(x_exact), residues)
                                  : generate_member(f, std::span<const double>(x_real), residues);
  json x_json = json::array();
  for (const auto& q : x_exact) x_json.push_back(to_string(q));
  json info = {{"x_turns", x_json}, {"residues", strings(residues)}};
  if (random_x || random_residues) info["seed"] = seed;
  std::cerr << info.dump() << "\n";
  write_output(out_path, serialize_sum_document(g));
  return 0;
}

int cmd_sample(const Common& common, const std::string& file, const std::string& kind, double sigma, double t_max,
               double step, std::size_t grid, const std::string& mode_text, const std::string& out_path) {
  ExponentialSum f = load_sum_document(file, common.precision);
  ValueCloud cloud;
  json info;
  if (kind == "line") {
    cloud = sample_line(f, sigma, t_max, step);
    info = {{"source", "line"}, {"sigma", sigma}, {"t_max", t_max}, {"step", step}};
  } else if (kind == "torus") {
    ResidueMode mode = parse_residue_mode(mode_text);
    cloud = sample_torus(f, sigma, grid, mode);
    info = {{"source", "torus"},
            {"sigma", sigma},
            {"grid", grid},
            {"residue_mode", residue_mode_name(mode)},
            {"residue_tuples", std::get<TorusSource>(cloud.source).residue_tuples}};
  } else {
    throw Error(ErrorKind::InvalidArgument, "sample kind must be line or torus");
  }
  info["file"] = file;
  info["points"] = cloud.points.size();
  std::string csv = "re,im\n";
  csv.reserve(cloud.points.size() * 44);
  char buf[96];
  for (auto p : cloud.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.real(), p.imag());
    csv += buf;
  }
  write_output(out_path, csv);
  std::cerr << info.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivalence and value sets of finite exponential sums"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--precision", common.precision, "Generator precision in bits")->capture_default_str();

  std::string file_a, file_b, out_path, x_text, residue_text, mode_text = "all", kind, basis_file, tmax_list;
  double tol = kDefaultNumericTolerance, sigma = 0.0, t_max = 100.0, step = 0.01;
  double sigma_lo = -0.1, sigma_hi = 0.1, check_tol = 0.05;
  std::size_t grid = 200, sigma_steps = 5, samples = 100;
  bool oracle = false;
  std::optional<std::uint64_t> seed;

  auto* basis = app.add_subcommand("basis", "Natural basis and coordinates of a sum's frequencies");
  basis->add_option("file", file_a)->required();

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence; exit 0 when equivalent, 1 when not");
  equiv->add_option("a", file_a)->required();
  equiv->add_option("b", file_b)->required();
  equiv->add_option("--tol", tol, "Numeric tolerance")->capture_default_str();
  equiv->add_flag("--oracle", oracle, "Also run the prefix oracle and require agreement");

  auto* generate = app.add_subcommand("generate", "Produce an equivalent sum");
  generate->add_option("file", file_a)->required();
  generate->add_option("--x", x_text, "Comma-separated rationals in turns over the natural basis");
  generate->add_option("--residues", residue_text, "Comma-separated residues, one per frequency");
  generate->add_option("--seed", seed, "Seed for random x and residues");
  generate->add_option("--out", out_path, "Output document (default stdout)");

  auto* sample = app.add_subcommand("sample", "Sample a value set as CSV");
  sample->add_option("file", file_a)->required();
  sample->add_option("kind", kind, "line or torus")->required()->check(CLI::IsMember({"line", "torus"}));
  sample->add_option("--sigma", sigma)->capture_default_str();
  sample->add_option("--tmax", t_max)->capture_default_str();
  sample->add_option("--step", step)->capture_default_str();
  sample->add_option("--grid", grid)->capture_default_str();
  sample->add_option("--residue-mode", mode_text, "zero, all or independent")->capture_default_str();
  sample->add_option("--out", out_path, "Output CSV (default stdout)");

  auto* verify = app.add_subcommand("verify", "Sampled structural checks; exit 0 on PASS, 1 on FAIL");
  verify->require_subcommand(1);
  auto* theorem1 = verify->add_subcommand("theorem1", "Equivalent sums take the same values on vertical lines");
  theorem1->add_option("a", file_a)->required();
  theorem1->add_option("b", file_b)->required();
  theorem1->add_option("--sigma-lo", sigma_lo)->capture_default_str();
  theorem1->add_option("--sigma-hi", sigma_hi)->capture_default_str();
  theorem1->add_option("--sigma-steps", sigma_steps)->capture_default_str();
  theorem1->add_option("--tmax", t_max)->capture_default_str();
  theorem1->add_option("--step", step)->capture_default_str();
  theorem1->add_option("--tol", check_tol)->capture_default_str();
  auto* prop3 = verify->add_subcommand("prop3", "Equivalent sum equals the auxiliary function along the certificate");
  prop3->add_option("a", file_a)->required();
  prop3->add_option("b", file_b)->required();
  prop3->add_option("--samples", samples)->capture_default_str();
  prop3->add_option("--sigma-lo", sigma_lo)->capture_default_str();
  prop3->add_option("--sigma-hi", sigma_hi)->capture_default_str();
  prop3->add_option("--tmax", t_max)->capture_default_str();
  prop3->add_option("--seed", seed);
  auto* prop4 = verify->add_subcommand("prop4", "Line values against the torus image");
  prop4->add_option("file", file_a)->required();
  prop4->add_option("--sigma", sigma)->capture_default_str();
  prop4->add_option("--grid", grid)->capture_default_str();
  prop4->add_option("--tmax", tmax_list, "Comma-separated t_max values (default 250,500,1000,2000)");
  prop4->add_option("--step", step)->capture_default_str();
  auto* lemma1 = verify->add_subcommand("lemma1", "Torus image does not depend on the basis");
  lemma1->add_option("file", file_a)->required();
  lemma1->add_option("--basis", basis_file, "JSON {\"basis\": [[...], ...]}")->required();
  lemma1->add_option("--sigma", sigma)->capture_default_str();
  lemma1->add_option("--grid", grid)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return kExitError;
  }

  try {
    if (*basis) return cmd_basis(common, file_a);
    if (*equiv) return cmd_equiv(common, file_a, file_b, tol, oracle);
    if (*generate) return cmd_generate(common, file_a, x_text, residue_text, seed, out_path);
    if (*sample) return cmd_sample(common, file_a, kind, sigma, t_max, step, grid, mode_text, out_path);

    Report rep;
    if (*theorem1) {
      ExponentialSum f1 = load_sum_document(file_a, common.precision);
      ExponentialSum f2 = load_sum_document(file_b, common.precision);
      Theorem1Options opt;
      opt.sigma_lo = sigma_lo;
      opt.sigma_hi = sigma_hi;
      opt.sigma_steps = sigma_steps;
      opt.t_max = t_max;
      opt.step = step;
      opt.tol = check_tol;
      rep = verify_theorem1(f1, f2, opt);
    } else if (*prop3) {
      ExponentialSum f1 = load_sum_document(file_a, common.precision);
      ExponentialSum f2 = load_sum_document(file_b, common.precision);
      EquivVerdict v = decide_equiv(f1, f2);
      const std::uint64_t s = seed ? *seed : fresh_seed();
      Lcg64 rng(s);
      std::vector<SigmaT> pts(samples);
      for (auto& p : pts) {
        p.sigma = sigma_lo + (sigma_hi - sigma_lo) * rng.uniform();
        p.t = t_max * (2.0 * rng.uniform() - 1.0);
      }
      rep = verify_prop3(f1, f2, v, pts);
      rep.note = "seed " + std::to_string(s);
    } else if (*prop4) {
      ExponentialSum f = load_sum_document(file_a, common.precision);
      Prop4Options opt;
      opt.sigma0 = sigma;
      opt.grid = grid;
      opt.step = step;
      if (!tmax_list.empty()) {
        opt.t_max.clear();
        for (const auto& item : split_list(tmax_list)) opt.t_max.push_back(parse_rational(item).get_d());
      }
      rep = verify_prop4(f, opt);
    } else if (*lemma1) {
      ExponentialSum f = load_sum_document(file_a, common.precision);
      auto other = parse_basis_document(read_text_file(basis_file), f.exponents().generators());
      rep = verify_lemma1(f, other, sigma, grid);
    }
    std::cout << report_json(rep).dump(2) << "\n";
    return rep.pass ? 0 : kExitFail;
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(e.kind_name())}, {"message", e.what()}}.dump() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return kExitError;
  }
}
