#include "bohreq/valuesets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bohreq/error.hpp"
#include "bohreq/kernels/kernels.hpp"
#include "bohreq/nearest.hpp"

namespace bohreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Metric metric(std::string name, double value, double bound) {
  return Metric{std::move(name), value, bound, value < bound};
}

double safe_pow(std::size_t base, std::size_t exp) {
  double r = 1.0;
  for (std::size_t i = 0; i < exp; ++i) r *= static_cast<double>(base);
  return r;
}

std::vector<std::vector<Rational>> residue_offsets(const Matrix<Rational>& coords, const std::vector<bool>& active,
                                                   ResidueMode mode, std::size_t limit) {
  const std::size_t n = coords.rows();
  if (mode == ResidueMode::zero) return {std::vector<Rational>(n, Rational(0))};

  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < n; ++j)
    if (active[j]) rows.push_back(j);
  Matrix<Rational> sub(rows.size(), coords.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < coords.cols(); ++c) sub(i, c) = coords(rows[i], c);

  std::vector<std::vector<Rational>> reduced;
  if (mode == ResidueMode::all) {
    reduced = reachable_offsets(sub, limit);
  } else {
    std::vector<std::int64_t> d(rows.size());
    double total = 1.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      d[i] = to_int64(denominator_lcm(sub.row(i)));
      total *= static_cast<double>(d[i]);
    }
    if (total > static_cast<double>(limit))
      throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(limit) + " residue tuples");
    std::vector<std::int64_t> k(rows.size(), 0);
    while (true) {
      std::vector<Rational> row(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        row[i] = Rational(k[i], d[i]);
        row[i].canonicalize();
      }
      reduced.push_back(std::move(row));
      std::size_t i = 0;
      while (i < rows.size() && ++k[i] == d[i]) k[i++] = 0;
      if (i == rows.size()) break;
    }
  }
  std::vector<std::vector<Rational>> out;
  out.reserve(reduced.size());
  for (auto& r : reduced) {
    std::vector<Rational> full(n, Rational(0));
    for (std::size_t i = 0; i < rows.size(); ++i) full[rows[i]] = r[i];
    out.push_back(std::move(full));
  }
  return out;
}

ValueCloud torus_cloud(const ExponentialSum& f, const Matrix<Rational>& coords, double sigma0, std::size_t grid,
                       ResidueMode mode, std::size_t budget, bool natural) {
  f.require_in_strip(sigma0);
  if (grid < 2) throw Error(ErrorKind::InvalidArgument, "grid must be at least 2");
  const std::size_t n = coords.rows();
  const std::size_t m = coords.cols();
  const double cells = safe_pow(grid, m);
  if (cells > static_cast<double>(budget))
    throw Error(ErrorKind::BudgetExceeded, "grid^m exceeds the sample budget");

  std::vector<bool> active(n);
  for (std::size_t j = 0; j < n; ++j) active[j] = !f.coefficients()[j].is_zero();
  const auto tuple_limit = static_cast<std::size_t>(static_cast<double>(budget) / cells);
  auto offsets = residue_offsets(coords, active, mode, std::max<std::size_t>(tuple_limit, 1));
  if (cells * static_cast<double>(offsets.size()) > static_cast<double>(budget))
    throw Error(ErrorKind::BudgetExceeded, std::to_string(offsets.size()) + " residue tuples times " +
                                               std::to_string(static_cast<std::size_t>(cells)) +
                                               " grid points exceeds the sample budget");

  const auto points = static_cast<std::size_t>(cells);
  std::vector<double> x(m * points);
  for (std::size_t p = 0; p < points; ++p) {
    std::size_t rest = p;
    for (std::size_t l = m; l-- > 0;) {
      x[l * points + p] = static_cast<double>(rest % grid) / static_cast<double>(grid);
      rest /= grid;
    }
  }
  std::vector<double> rows(n * m);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < m; ++l) rows[j * m + l] = coords(j, l).get_d();

  const auto amps = f.amplitudes(sigma0);
  ValueCloud cloud;
  cloud.source = TorusSource{sigma0, grid, mode, offsets.size(), natural};
  cloud.points.reserve(points * offsets.size());
  std::vector<double> c_re(n), c_im(n), re(points), im(points);
  for (const auto& off : offsets) {
    for (std::size_t j = 0; j < n; ++j) {
      double turns = off[j].get_d();
      ComplexPoint c = amps[j] * ComplexPoint(std::cos(kTwoPi * turns), std::sin(kTwoPi * turns));
      c_re[j] = c.real();
      c_im[j] = c.imag();
    }
    kernels::turn_sum(c_re.data(), c_im.data(), rows.data(), n, m, x.data(), points, re.data(), im.data());
    for (std::size_t p = 0; p < points; ++p) cloud.points.emplace_back(re[p], im[p]);
  }
  return cloud;
}

std::vector<double> sigma_grid(double lo, double hi, std::size_t steps) {
  std::vector<double> s;
  for (std::size_t i = 1; i <= steps; ++i)
    s.push_back(lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(steps + 1));
  return s;
}

}  // namespace

std::string_view residue_mode_name(ResidueMode mode) {
  switch (mode) {
    case ResidueMode::zero: return "zero";
    case ResidueMode::all: return "all";
    case ResidueMode::independent: return "independent";
  }
  return "?";
}

ResidueMode parse_residue_mode(std::string_view text) {
  if (text == "zero") return ResidueMode::zero;
  if (text == "all") return ResidueMode::all;
  if (text == "independent") return ResidueMode::independent;
  throw Error(ErrorKind::InvalidArgument, "residue mode must be zero, all or independent");
}

ComplexPoint eval_aux(const ExponentialSum& f, double sigma, std::span<const double> x_turns,
                      std::span<const Integer> residues) {
  f.require_in_strip(sigma);
  const BasisData& basis = f.basis();
  if (x_turns.size() != basis.dimension() || residues.size() != f.size())
    throw Error(ErrorKind::DimensionMismatch, "auxiliary point needs " + std::to_string(basis.dimension()) +
                                                  " coordinates and " + std::to_string(f.size()) + " residues");
  for (std::size_t j = 0; j < residues.size(); ++j)
    if (residues[j] < 0 || residues[j] >= basis.row_denominators[j])
      throw Error(ErrorKind::ResidueOutOfRange, "residue " + std::to_string(j) + " out of range");
  const auto amps = f.amplitudes(sigma);
  ComplexPoint total(0.0, 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    long double phase = static_cast<long double>(residues[j].get_d()) / basis.row_denominators[j].get_d();
    for (std::size_t k = 0; k < x_turns.size(); ++k)
      phase += static_cast<long double>(basis.coord_matrix(j, k).get_d()) * x_turns[k];
    double turns = static_cast<double>(phase - std::nearbyint(phase));
    total += amps[j] * ComplexPoint(std::cos(kTwoPi * turns), std::sin(kTwoPi * turns));
  }
  return total;
}

ValueCloud sample_line(const ExponentialSum& f, double sigma0, double t_max, double step, std::size_t budget) {
  f.require_in_strip(sigma0);
  if (!(t_max >= 0.0) || !(step > 0.0) || !std::isfinite(t_max))
    throw Error(ErrorKind::InvalidArgument, "t_max must be nonnegative and step positive");
  const double count = std::floor(2.0 * t_max / step + 1e-9) + 1.0;
  if (count > static_cast<double>(budget)) throw Error(ErrorKind::BudgetExceeded, "line sample exceeds the budget");
  std::vector<double> t(static_cast<std::size_t>(count));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = -t_max + static_cast<double>(k) * step;
  ValueCloud cloud;
  cloud.points = evaluate_line(f, sigma0, t);
  cloud.source = LineSource{sigma0, t_max, step};
  return cloud;
}

ValueCloud sample_torus(const ExponentialSum& f, double sigma0, std::size_t grid, ResidueMode mode,
                        std::size_t budget) {
  return torus_cloud(f, f.basis().coord_matrix, sigma0, grid, mode, budget, true);
}

ValueCloud sample_torus_in_basis(const ExponentialSum& f, const ChangeOfBasis& change, double sigma0,
                                 std::size_t grid, ResidueMode mode, std::size_t budget) {
  return torus_cloud(f, change.other_coords, sigma0, grid, mode, budget, false);
}

double hausdorff(const ValueCloud& a, const ValueCloud& b) { return hausdorff_distance(a.points, b.points); }

double directed_hausdorff(const ValueCloud& from, const ValueCloud& to) {
  return directed_hausdorff(std::span<const ComplexPoint>(from.points), std::span<const ComplexPoint>(to.points));
}

double grid_tolerance(const ExponentialSum& f, double sigma0, std::size_t grid, const Matrix<Rational>* other) {
  const Matrix<Rational>& r = f.basis().coord_matrix;
  double total = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    double norm = 0.0;
    for (std::size_t k = 0; k < r.cols(); ++k) norm += std::abs(r(j, k).get_d());
    if (other) {
      double s = 0.0;
      for (std::size_t k = 0; k < other->cols(); ++k) s += std::abs((*other)(j, k).get_d());
      norm = std::max(norm, s);
    }
    total += f.coefficients()[j].modulus() * std::exp(f.exponents()[j].value() * sigma0) * norm;
  }
  return 3.0 * kTwoPi * total / static_cast<double>(grid);
}

Report verify_prop3(const ExponentialSum& f1, const ExponentialSum& f2, const EquivVerdict& verdict,
                    std::span<const SigmaT> samples, double tol) {
  if (!verdict.equivalent || !verdict.certificate)
    throw Error(ErrorKind::NoCertificate, "verdict carries no equivalence certificate");
  const BasisData& basis = f1.basis();
  const EquivCertificate& cert = *verdict.certificate;
  const std::size_t m = basis.dimension();
  if (cert.x0.size() != m || cert.residues.size() != f1.size())
    throw Error(ErrorKind::DimensionMismatch, "certificate does not match the sums");
  const auto g = basis.basis_values();

  double worst = 0.0;
  std::vector<double> x(m);
  std::vector<Integer> shift(m);
  for (const auto& s : samples) {
    for (std::size_t k = 0; k < m; ++k) {
      long double v = static_cast<long double>(cert.x0[k]) + static_cast<long double>(s.t) * g[k] / kTwoPi;
      long double n = std::floor(v);
      x[k] = static_cast<double>(v - n);
      if (x[k] >= 1.0) x[k] = 0.0;
      shift[k] = Integer(static_cast<double>(n));
    }
    auto extra = residues_from_shift(basis, shift);
    std::vector<Integer> k(f1.size());
    for (std::size_t j = 0; j < f1.size(); ++j) {
      Integer sum = cert.residues[j] + extra[j];
      mpz_fdiv_r(k[j].get_mpz_t(), sum.get_mpz_t(), basis.row_denominators[j].get_mpz_t());
    }
    worst = std::max(worst, std::abs(evaluate(f2, s.sigma, s.t) - eval_aux(f1, s.sigma, x, k)));
  }
  Report rep;
  rep.check = "prop3";
  rep.metrics.push_back(metric("max_deviation", worst, tol));
  rep.metrics.push_back(Metric{"samples", static_cast<double>(samples.size()), 0.0, true});
  rep.pass = rep.metrics.front().ok;
  return rep;
}

Report verify_lemma1(const ExponentialSum& f, const std::vector<Frequency>& other_basis, double sigma0,
                     std::size_t grid) {
  ChangeOfBasis change = change_of_basis(f.basis(), other_basis);
  ValueCloud natural = sample_torus(f, sigma0, grid, ResidueMode::all);
  ValueCloud other = sample_torus_in_basis(f, change, sigma0, grid, ResidueMode::all);
  const double tol = grid_tolerance(f, sigma0, grid, &change.other_coords);
  Report rep;
  rep.check = "lemma1";
  rep.metrics.push_back(metric("hausdorff", hausdorff(natural, other), tol));
  rep.pass = rep.metrics.front().ok;
  std::ostringstream note;
  note << natural.points.size() << " natural-coordinate points, " << other.points.size() << " other-basis points";
  rep.note = note.str();
  return rep;
}

Report verify_prop4(const ExponentialSum& f, const Prop4Options& options) {
  if (options.t_max.empty()) throw Error(ErrorKind::InvalidArgument, "prop4 needs at least one t_max");
  ValueCloud torus = sample_torus(f, options.sigma0, options.grid, ResidueMode::all);
  const double tol = grid_tolerance(f, options.sigma0, options.grid);
  Report rep;
  rep.check = "prop4";
  rep.pass = true;

  std::vector<double> sorted = options.t_max;
  std::sort(sorted.begin(), sorted.end());
  double previous = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    ValueCloud line = sample_line(f, options.sigma0, sorted[i], options.step);
    if (i + 1 == sorted.size()) {
      rep.metrics.push_back(metric("line_to_torus", directed_hausdorff(line, torus), tol));
      rep.pass = rep.pass && rep.metrics.back().ok;
    }
    double d = directed_hausdorff(torus, line);
    std::ostringstream name;
    name << "torus_to_line@" << sorted[i];
    Metric mtr{name.str(), d, i == 0 ? d : previous + options.slack, i == 0 || d <= previous + options.slack};
    rep.pass = rep.pass && mtr.ok;
    rep.metrics.push_back(std::move(mtr));
    previous = d;
  }
  double radius = 0.0;
  for (auto p : torus.points) radius = std::max(radius, std::abs(p));
  const double bound = f.modulus_bound(options.sigma0);
  Metric bounded{"torus_radius", radius, bound, radius <= bound * (1.0 + 1e-12) + 1e-12};
  rep.pass = rep.pass && bounded.ok;
  rep.metrics.push_back(std::move(bounded));
  return rep;
}

Report verify_theorem1(const ExponentialSum& f1, const ExponentialSum& f2, const Theorem1Options& options) {
  if (!(options.sigma_lo < options.sigma_hi) || options.sigma_steps == 0)
    throw Error(ErrorKind::InvalidArgument, "need sigma_lo < sigma_hi and at least one sigma step");
  EquivVerdict verdict = decide_equiv(f1, f2, options.equiv_tol);
  if (!verdict.equivalent)
    throw Error(ErrorKind::NotEquivalent, "sums are not equivalent (" + verdict.reason + "); nothing to verify");

  ValueCloud c1, c2;
  for (double sigma : sigma_grid(options.sigma_lo, options.sigma_hi, options.sigma_steps)) {
    auto a = sample_line(f1, sigma, options.t_max, options.step);
    auto b = sample_line(f2, sigma, options.t_max, options.step);
    c1.points.insert(c1.points.end(), a.points.begin(), a.points.end());
    c2.points.insert(c2.points.end(), b.points.begin(), b.points.end());
  }
  Report rep;
  rep.check = "theorem1";
  rep.metrics.push_back(metric("f1_to_f2", directed_hausdorff(c1, c2), options.tol));
  rep.metrics.push_back(metric("f2_to_f1", directed_hausdorff(c2, c1), options.tol));
  rep.pass = rep.metrics[0].ok && rep.metrics[1].ok;
  rep.note = "sampled check; distances shrink as t_max grows";
  return rep;
}

}  // namespace bohreq
