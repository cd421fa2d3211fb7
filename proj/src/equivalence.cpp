#include "bohreq/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <numbers>
#include <set>

#include "bohreq/error.hpp"

namespace bohreq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_turns(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

// Shared pre-pass: zero pattern, moduli, and phase differences.
struct Prepared {
  bool exact = true;
  std::vector<bool> active;
  std::vector<Rational> theta_exact;
  std::vector<double> theta;
  std::optional<std::string> failure;
};

Prepared prepare(const ExponentialSum& f1, const ExponentialSum& f2, double tol) {
  if (!(f1.exponents() == f2.exponents()))
    throw Error(ErrorKind::ExponentSetMismatch, "sums are defined over different exponent sets");
  if (f1.is_exact() != f2.is_exact())
    throw Error(ErrorKind::MixedCoefficientModes, "one sum is exact-polar and the other numeric");
  Prepared p;
  p.exact = f1.is_exact();
  if (!p.exact && !(tol >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be nonnegative");

  const std::size_t n = f1.size();
  p.active.assign(n, false);
  p.theta_exact.assign(n, Rational(0));
  p.theta.assign(n, 0.0);

  double scale = 0.0;
  if (!p.exact)
    for (std::size_t j = 0; j < n; ++j)
      scale = std::max({scale, f1.coefficients()[j].modulus(), f2.coefficients()[j].modulus()});

  for (std::size_t j = 0; j < n; ++j) {
    const Coefficient& a = f1.coefficients()[j];
    const Coefficient& b = f2.coefficients()[j];
    if (p.exact) {
      bool za = a.is_zero(), zb = b.is_zero();
      if (za != zb) {
        p.failure = "coefficient " + std::to_string(j) + " vanishes in only one sum";
        return p;
      }
      if (za) continue;
      if (a.polar().modulus != b.polar().modulus) {
        p.failure = "moduli differ at coefficient " + std::to_string(j);
        return p;
      }
      p.theta_exact[j] = frac(b.polar().phase_turns - a.polar().phase_turns);
      p.theta[j] = p.theta_exact[j].get_d();
    } else {
      double ma = a.modulus(), mb = b.modulus();
      bool za = ma <= tol * scale, zb = mb <= tol * scale;
      if (za != zb) {
        p.failure = "coefficient " + std::to_string(j) + " vanishes in only one sum";
        return p;
      }
      if (za) continue;
      if (std::abs(ma - mb) > tol * std::max(ma, mb)) {
        p.failure = "moduli differ at coefficient " + std::to_string(j);
        return p;
      }
      p.theta[j] = reduce_turns(b.phase_turns() - a.phase_turns());
    }
    p.active[j] = true;
  }
  return p;
}

template <class T>
EquivCertificate make_certificate(const BasisData& basis, const std::vector<T>& y) {
  EquivCertificate c;
  for (const auto& v : y) {
    if constexpr (std::is_same_v<T, Rational>) {
      Integer n = floor(v);
      Rational x = v - Rational(n);
      c.x0_exact.push_back(x);
      c.x0.push_back(x.get_d());
      c.shift.push_back(n);
    } else {
      double n = std::floor(v);
      c.x0.push_back(std::min(v - n, std::nextafter(1.0, 0.0)));
      c.shift.push_back(Integer(n));
    }
  }
  c.residues = residues_from_shift(basis, c.shift);
  return c;
}

EquivVerdict failed_prepass(const Prepared& p) {
  EquivVerdict v;
  v.exact = p.exact;
  v.theta = p.theta;
  v.reason = *p.failure;
  return v;
}

template <class T>
EquivVerdict decide_via_basis(const ExponentialSum& f1, const Prepared& p, double tol) {
  const BasisData& basis = f1.basis();
  const Matrix<Rational>& r = basis.coord_matrix;
  const std::size_t m = basis.dimension();
  const std::size_t n = r.rows();

  std::vector<bool> is_basis_row(n, false);
  for (auto b : basis.basis_indices) is_basis_row[b] = true;
  // Basis coordinates pinned by an active basis row (shared integer shift),
  // and free real coordinates.
  std::vector<std::size_t> pinned, free;
  for (std::size_t k = 0; k < m; ++k) (p.active[basis.basis_indices[k]] ? pinned : free).push_back(k);
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < n; ++j)
    if (p.active[j] && !is_basis_row[j]) rows.push_back(j);

  auto theta_of = [&](std::size_t j) -> T {
    if constexpr (std::is_same_v<T, Rational>)
      return p.theta_exact[j];
    else
      return p.theta[j];
  };

  Matrix<Rational> a(rows.size(), free.size());
  Matrix<Rational> g(rows.size(), pinned.size() + rows.size());
  std::vector<T> target(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t j = rows[i];
    for (std::size_t c = 0; c < free.size(); ++c) a(i, c) = r(j, free[c]);
    for (std::size_t c = 0; c < pinned.size(); ++c) g(i, c) = r(j, pinned[c]);
    g(i, pinned.size() + i) = 1;
    if constexpr (std::is_same_v<T, Rational>) {
      Rational acc = p.theta_exact[j];
      for (auto k : pinned) acc -= r(j, k) * p.theta_exact[basis.basis_indices[k]];
      target[i] = acc;
    } else {
      long double acc = p.theta[j];
      for (auto k : pinned) acc -= static_cast<long double>(r(j, k).get_d()) * p.theta[basis.basis_indices[k]];
      target[i] = static_cast<double>(acc);
    }
  }

  EquivVerdict v;
  v.exact = p.exact;
  v.theta = p.theta;
  std::vector<T> y(m, T(0));
  for (auto k : pinned) y[k] = theta_of(basis.basis_indices[k]);

  if (!rows.empty()) {
    CongruenceResult<T> res = solve_lattice_congruence(a, g, target, std::is_same_v<T, Rational> ? 0.0 : tol);
    if (!res.solution) {
      std::vector<Rational> u(n, Rational(0));
      for (std::size_t i = 0; i < rows.size(); ++i) u[rows[i]] = res.witness[i];
      for (auto k : pinned) {
        Rational acc = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) acc -= res.witness[i] * r(rows[i], k);
        u[basis.basis_indices[k]] = acc;
      }
      v.witness = primitive_integer_vector(u);
      v.reason = "phase congruence has no solution";
      return v;
    }
    for (std::size_t c = 0; c < pinned.size(); ++c) {
      if constexpr (std::is_same_v<T, Rational>)
        y[pinned[c]] += Rational(res.solution->w[c]);
      else
        y[pinned[c]] += res.solution->w[c].get_d();
    }
    for (std::size_t c = 0; c < free.size(); ++c) y[free[c]] = res.solution->y[c];
  }
  v.equivalent = true;
  v.certificate = make_certificate(basis, y);
  v.reason = "equivalent";
  return v;
}

template <class T>
EquivVerdict decide_by_prefixes(const ExponentialSum& f1, const Prepared& p, double tol) {
  const BasisData& basis = f1.basis();
  const Matrix<Rational>& r = basis.coord_matrix;
  const std::size_t m = basis.dimension();
  const std::size_t n = r.rows();

  EquivVerdict v;
  v.exact = p.exact;
  v.theta = p.theta;
  std::vector<T> y(m, T(0));
  for (std::size_t prefix = 1; prefix <= n; ++prefix) {
    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < prefix; ++j)
      if (p.active[j]) rows.push_back(j);
    if (rows.empty()) continue;
    PhaseSystem<T> sys{Matrix<Rational>(rows.size(), m), {}, std::vector<Rational>(rows.size(), Rational(1))};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t k = 0; k < m; ++k) sys.a(i, k) = r(rows[i], k);
      if constexpr (std::is_same_v<T, Rational>)
        sys.theta.push_back(p.theta_exact[rows[i]]);
      else
        sys.theta.push_back(p.theta[rows[i]]);
    }
    Feasibility<T> res = solve_phase_system(sys, std::is_same_v<T, Rational> ? 0.0 : tol);
    if (const auto* bad = std::get_if<Infeasible>(&res)) {
      std::vector<Integer> u(n, Integer(0));
      for (std::size_t i = 0; i < rows.size(); ++i) u[rows[i]] = bad->u[i];
      v.witness = std::move(u);
      v.reason = "phase system infeasible at truncation " + std::to_string(prefix);
      return v;
    }
    y = std::get<Feasible<T>>(res).y;
  }
  v.equivalent = true;
  v.certificate = make_certificate(basis, y);
  v.reason = "equivalent";
  return v;
}

}  // namespace

EquivVerdict decide_equiv(const ExponentialSum& f1, const ExponentialSum& f2, double tol) {
  Prepared p = prepare(f1, f2, tol);
  if (p.failure) return failed_prepass(p);
  return p.exact ? decide_via_basis<Rational>(f1, p, 0.0) : decide_via_basis<double>(f1, p, tol);
}

EquivVerdict decide_equiv_prop1_all_n(const ExponentialSum& f1, const ExponentialSum& f2, double tol) {
  Prepared p = prepare(f1, f2, tol);
  if (p.failure) return failed_prepass(p);
  return p.exact ? decide_by_prefixes<Rational>(f1, p, 0.0) : decide_by_prefixes<double>(f1, p, tol);
}

bool verify_verdict(const ExponentialSum& f1, const ExponentialSum& f2, const EquivVerdict& verdict, double tol) {
  Prepared p = prepare(f1, f2, tol);
  const BasisData& basis = f1.basis();
  const Matrix<Rational>& r = basis.coord_matrix;
  const std::size_t n = r.rows();
  const std::size_t m = basis.dimension();

  if (!verdict.equivalent) {
    if (!verdict.witness) return p.failure.has_value();
    if (p.failure) return false;
    const auto& u = *verdict.witness;
    if (u.size() != n) return false;
    bool nonzero = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (u[j] == 0) continue;
      if (!p.active[j]) return false;
      nonzero = true;
    }
    if (!nonzero) return false;
    for (std::size_t k = 0; k < m; ++k) {
      Rational acc = 0;
      for (std::size_t j = 0; j < n; ++j) acc += Rational(u[j]) * r(j, k);
      if (acc != 0) return false;
    }
    if (p.exact) {
      Rational dot = 0;
      for (std::size_t j = 0; j < n; ++j) dot += Rational(u[j]) * p.theta_exact[j];
      return !is_integer(dot);
    }
    long double dot = 0;
    for (std::size_t j = 0; j < n; ++j) dot += static_cast<long double>(u[j].get_d()) * p.theta[j];
    return distance_to_integer(static_cast<double>(dot)) > tol;
  }

  if (p.failure || !verdict.certificate) return false;
  const EquivCertificate& c = *verdict.certificate;
  if (c.x0.size() != m || c.shift.size() != m || c.residues.size() != n) return false;
  if (c.residues != residues_from_shift(basis, c.shift)) return false;
  for (double x : c.x0)
    if (!(x >= 0.0 && x < 1.0)) return false;
  if (p.exact && c.x0_exact.size() != m) return false;

  for (std::size_t j = 0; j < n; ++j) {
    if (!p.active[j]) continue;
    Rational mu = Rational(1) / Rational(basis.row_denominators[j]);
    if (p.exact) {
      Rational acc = p.theta_exact[j] - Rational(c.residues[j]) * mu;
      for (std::size_t k = 0; k < m; ++k) acc -= r(j, k) * c.x0_exact[k];
      if (!is_integer(acc)) return false;
    } else {
      long double acc = p.theta[j] - static_cast<long double>(c.residues[j].get_d()) * mu.get_d();
      for (std::size_t k = 0; k < m; ++k) acc -= static_cast<long double>(r(j, k).get_d()) * c.x0[k];
      if (distance_to_integer(static_cast<double>(acc)) > tol + 1e-12) return false;
    }
  }
  return true;
}

std::vector<Integer> residues_from_shift(const BasisData& basis, std::span<const Integer> shift) {
  const Matrix<Rational>& r = basis.coord_matrix;
  if (shift.size() != r.cols()) throw Error(ErrorKind::DimensionMismatch, "shift length differs from basis size");
  std::vector<Integer> k(r.rows());
  for (std::size_t j = 0; j < r.rows(); ++j) {
    Rational acc = 0;
    for (std::size_t c = 0; c < r.cols(); ++c) acc += r(j, c) * Rational(shift[c]);
    Rational scaled = frac(acc) * Rational(basis.row_denominators[j]);
    k[j] = scaled.get_num();
  }
  return k;
}

bool residues_realizable(const BasisData& basis, std::span<const Integer> residues) {
  const Matrix<Rational>& r = basis.coord_matrix;
  const std::size_t n = r.rows();
  const std::size_t m = r.cols();
  if (residues.size() != n) throw Error(ErrorKind::DimensionMismatch, "residue count differs from frequency count");
  Matrix<Rational> g(n, m + n);
  std::vector<Rational> target(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < m; ++c) g(j, c) = r(j, c);
    g(j, m + j) = 1;
    target[j] = Rational(residues[j]) / Rational(basis.row_denominators[j]);
  }
  return solve_lattice_congruence(Matrix<Rational>(n, 0), g, target, 0.0).solution.has_value();
}

std::vector<std::vector<Rational>> reachable_offsets(const Matrix<Rational>& coords, std::size_t limit) {
  const std::size_t n = coords.rows();
  const std::size_t m = coords.cols();
  std::vector<Integer> d(n);
  for (std::size_t j = 0; j < n; ++j) d[j] = denominator_lcm(coords.row(j));

  // Work with numerators modulo d_j.
  using Key = std::vector<std::int64_t>;
  std::vector<Key> gens(m, Key(n));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t j = 0; j < n; ++j) gens[c][j] = to_int64(Rational(frac(coords(j, c)) * Rational(d[j])).get_num());
  std::vector<std::int64_t> dj(n);
  for (std::size_t j = 0; j < n; ++j) dj[j] = to_int64(d[j]);

  std::set<Key> seen{Key(n, 0)};
  std::deque<Key> queue{Key(n, 0)};
  std::vector<Key> order{Key(n, 0)};
  while (!queue.empty()) {
    Key cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& gk : gens) {
      Key next(n);
      for (std::size_t j = 0; j < n; ++j) next[j] = (cur[j] + gk[j]) % dj[j];
      if (seen.insert(next).second) {
        if (seen.size() > limit)
          throw Error(ErrorKind::BudgetExceeded, "more than " + std::to_string(limit) + " residue tuples");
        queue.push_back(next);
        order.push_back(std::move(next));
      }
    }
  }
  std::sort(order.begin(), order.end());
  std::vector<std::vector<Rational>> out;
  out.reserve(order.size());
  for (const auto& key : order) {
    std::vector<Rational> row(n);
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = Rational(key[j], dj[j]);
      row[j].canonicalize();
    }
    out.push_back(std::move(row));
  }
  return out;
}

namespace {

void check_member_args(const ExponentialSum& f, std::size_t x_size, std::span<const Integer> residues) {
  const BasisData& basis = f.basis();
  if (x_size != basis.dimension())
    throw Error(ErrorKind::DimensionMismatch, "x has " + std::to_string(x_size) + " entries, basis has " +
                                                  std::to_string(basis.dimension()));
  if (residues.size() != f.size())
    throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(f.size()) + " residues");
  for (std::size_t j = 0; j < residues.size(); ++j)
    if (residues[j] < 0 || residues[j] >= basis.row_denominators[j])
      throw Error(ErrorKind::ResidueOutOfRange, "residue " + std::to_string(j) + " must lie in [0, " +
                                                    to_string(basis.row_denominators[j]) + ")");
  if (!residues_realizable(basis, residues))
    throw Error(ErrorKind::InconsistentResidues, "residues are not produced by any common integer shift");
}

}  // namespace

ExponentialSum generate_member(const ExponentialSum& f, std::span<const Rational> x_turns,
                               std::span<const Integer> residues) {
  if (!f.is_exact())
    throw Error(ErrorKind::MixedCoefficientModes, "exact member generation needs exact-polar coefficients");
  check_member_args(f, x_turns.size(), residues);
  const BasisData& basis = f.basis();
  std::vector<Coefficient> out;
  out.reserve(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const ExactPolar& a = f.coefficients()[j].polar();
    Rational shift = Rational(residues[j]) / Rational(basis.row_denominators[j]);
    for (std::size_t k = 0; k < x_turns.size(); ++k) shift += basis.coord_matrix(j, k) * x_turns[k];
    out.push_back(Coefficient::exact(a.modulus, a.phase_turns + shift));
  }
  return ExponentialSum(f.exponents(), std::move(out), f.strip(), ExponentialSum::ZeroPolicy::allow);
}

ExponentialSum generate_member(const ExponentialSum& f, std::span<const double> x_turns,
                               std::span<const Integer> residues) {
  check_member_args(f, x_turns.size(), residues);
  const BasisData& basis = f.basis();
  std::vector<Coefficient> out;
  out.reserve(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Coefficient& a = f.coefficients()[j];
    long double phase = static_cast<long double>(residues[j].get_d()) / basis.row_denominators[j].get_d();
    for (std::size_t k = 0; k < x_turns.size(); ++k)
      phase += static_cast<long double>(basis.coord_matrix(j, k).get_d()) * x_turns[k];
    phase += a.phase_turns();
    double turns = reduce_turns(static_cast<double>(phase - std::floor(phase)));
    double m = a.modulus();
    out.push_back(Coefficient::numeric(m * std::cos(kTwoPi * turns), m * std::sin(kTwoPi * turns)));
  }
  return ExponentialSum(f.exponents(), std::move(out), f.strip(), ExponentialSum::ZeroPolicy::allow);
}

}  // namespace bohreq
