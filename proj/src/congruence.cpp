#include "bohreq/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "bohreq/error.hpp"
#include "bohreq/lattice.hpp"

namespace bohreq {

Rational row_modulus(std::span<const Rational> row) { return Rational(Integer(1), denominator_lcm(row)); }

namespace {

template <class T>
constexpr bool kExact = std::is_same_v<T, Rational>;

// y with A y == target on the pivot columns (free coordinates zero).
template <class T>
std::vector<T> back_substitute(const RowEchelon& e, std::size_t unknowns, const std::vector<T>& target) {
  std::vector<T> y(unknowns, T(0));
  for (std::size_t r = 0; r < e.rank(); ++r) {
    if constexpr (kExact<T>) {
      Rational acc = 0;
      for (std::size_t i = 0; i < target.size(); ++i)
        if (e.transform(r, i) != 0) acc += e.transform(r, i) * target[i];
      y[e.pivot_cols[r]] = acc;
    } else {
      long double acc = 0;
      for (std::size_t i = 0; i < target.size(); ++i)
        if (e.transform(r, i) != 0) acc += static_cast<long double>(e.transform(r, i).get_d()) * target[i];
      y[e.pivot_cols[r]] = static_cast<double>(acc);
    }
  }
  return y;
}

template <class T>
std::vector<T> target_after_shift(const Matrix<Rational>& g, const std::vector<T>& theta,
                                  const std::vector<Integer>& w) {
  std::vector<T> t = theta;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t p = 0; p < g.cols(); ++p) {
      if (g(i, p) == 0 || w[p] == 0) continue;
      if constexpr (kExact<T>)
        t[i] -= g(i, p) * Rational(w[p]);
      else
        t[i] -= g(i, p).get_d() * w[p].get_d();
    }
  return t;
}

double mixed_residual(const Matrix<Rational>& a, const Matrix<Rational>& g, const std::vector<double>& theta,
                      const std::vector<double>& y, const std::vector<Integer>& w) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    long double acc = -static_cast<long double>(theta[i]);
    for (std::size_t k = 0; k < a.cols(); ++k) acc += static_cast<long double>(a(i, k).get_d()) * y[k];
    for (std::size_t p = 0; p < g.cols(); ++p) acc += static_cast<long double>(g(i, p).get_d()) * w[p].get_d();
    worst = std::max(worst, static_cast<double>(std::abs(acc)));
  }
  return worst;
}

std::vector<Rational> lift_witness(const std::vector<Rational>& c, const Integer& scale, const Matrix<Integer>& u) {
  std::vector<Rational> out(u.cols(), Rational(0));
  for (std::size_t r = 0; r < u.rows(); ++r) {
    if (c[r] == 0) continue;
    Rational cr = c[r] * Rational(scale);
    for (std::size_t i = 0; i < u.cols(); ++i) out[i] += cr * Rational(u(r, i));
  }
  return out;
}

}  // namespace

template <class T>
CongruenceResult<T> solve_lattice_congruence(const Matrix<Rational>& a, const Matrix<Rational>& generators,
                                             const std::vector<T>& theta, double tol) {
  const std::size_t n = a.rows();
  if (generators.rows() != n || theta.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "congruence system rows disagree");

  RowEchelon echelon = row_reduce(a);
  Matrix<Integer> kernel = integer_left_kernel(a);
  const std::size_t kdim = kernel.rows();
  const std::size_t p = generators.cols();

  CongruenceResult<T> out;
  if (kdim == 0) {
    std::vector<Integer> w(p, Integer(0));
    out.solution = CongruenceSolution<T>{back_substitute(echelon, a.cols(), theta), std::move(w)};
    return out;
  }

  // B = D * U * G, integral.
  Matrix<Rational> ug(kdim, p);
  for (std::size_t r = 0; r < kdim; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      if (kernel(r, i) == 0) continue;
      for (std::size_t c = 0; c < p; ++c)
        if (generators(i, c) != 0) ug(r, c) += Rational(kernel(r, i)) * generators(i, c);
    }
  Integer scale = 1;
  for (std::size_t r = 0; r < kdim; ++r) scale = lcm(scale, denominator_lcm(ug.row(r)));

  std::vector<T> projected(kdim, T(0));
  for (std::size_t r = 0; r < kdim; ++r) {
    if constexpr (kExact<T>) {
      for (std::size_t i = 0; i < n; ++i) projected[r] += Rational(kernel(r, i)) * theta[i];
    } else {
      long double acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += static_cast<long double>(kernel(r, i).get_d()) * theta[i];
      projected[r] = static_cast<double>(acc * static_cast<long double>(scale.get_d()));
    }
  }

  Matrix<Integer> b(kdim, p);
  for (std::size_t r = 0; r < kdim; ++r)
    for (std::size_t c = 0; c < p; ++c) b(r, c) = Rational(ug(r, c) * Rational(scale)).get_num();
  HermiteForm hnf = column_hermite_form(b);

  if constexpr (kExact<T>) {
    if (tol != 0.0) throw Error(ErrorKind::ToleranceInExactMode, "exact congruence solve requires tol == 0");
    std::vector<Rational> target(kdim);
    for (std::size_t r = 0; r < kdim; ++r) target[r] = projected[r] * Rational(scale);
    LatticeMembership member = lattice_membership(hnf, target);
    if (!member.combination) {
      out.witness = lift_witness(member.dual_witness, scale, kernel);
      return out;
    }
    std::vector<Integer> w = std::move(*member.combination);
    auto y = back_substitute(echelon, a.cols(), target_after_shift(generators, theta, w));
    out.solution = CongruenceSolution<T>{std::move(y), std::move(w)};
    return out;
  } else {
    ApproxMembership member = approximate_membership(hnf, projected);
    std::vector<Integer> w = member.combination;
    auto y = back_substitute(echelon, a.cols(), target_after_shift(generators, theta, w));
    if (mixed_residual(a, generators, theta, y, w) <= tol) {
      out.solution = CongruenceSolution<T>{std::move(y), std::move(w)};
      return out;
    }
    if (hnf.rank() == 0) {
      // Degenerate lattice (G annihilated by U): any nonzero kernel row works.
      std::vector<Rational> c(kdim, Rational(0));
      c[0] = Rational(1, 2);
      out.witness = lift_witness(c, Integer(1), kernel);
      return out;
    }
    out.witness = lift_witness(pivot_dual_row(hnf, member.worst_pivot), scale, kernel);
    return out;
  }
}

template <class T>
Feasibility<T> solve_phase_system(const PhaseSystem<T>& sys, double tol) {
  const std::size_t n = sys.a.rows();
  if (sys.theta.size() != n || sys.moduli.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "phase system: " + std::to_string(n) + " rows, " +
                                                  std::to_string(sys.theta.size()) + " phases, " +
                                                  std::to_string(sys.moduli.size()) + " moduli");
  if (tol < 0.0) throw Error(ErrorKind::InvalidArgument, "negative tolerance");
  for (const auto& mu : sys.moduli)
    if (mu <= 0) throw Error(ErrorKind::InvalidArgument, "congruence moduli must be positive");
  if constexpr (kExact<T>) {
    if (tol != 0.0) throw Error(ErrorKind::ToleranceInExactMode, "tolerance must be 0 with rational phases");
    for (const auto& th : sys.theta)
      if (th < 0 || th >= 1) throw Error(ErrorKind::InvalidArgument, "exact phases must lie in [0, 1)");
  }

  Matrix<Rational> g(n, n);
  for (std::size_t j = 0; j < n; ++j) g(j, j) = sys.moduli[j];
  CongruenceResult<T> res = solve_lattice_congruence(sys.a, g, sys.theta, tol);
  if (!res.solution) return Infeasible{primitive_integer_vector(res.witness)};

  std::vector<T> y = std::move(res.solution->y);
  for (std::size_t c = 0; c < sys.a.cols(); ++c) {
    bool periodic = true;
    for (std::size_t j = 0; j < n && periodic; ++j) periodic = is_integer(sys.a(j, c) / sys.moduli[j]);
    if (!periodic) continue;
    if constexpr (kExact<T>)
      y[c] = frac(y[c]);
    else
      y[c] -= std::floor(y[c]);
  }
  std::vector<Integer> k(n);
  for (std::size_t j = 0; j < n; ++j) {
    if constexpr (kExact<T>) {
      Rational acc = sys.theta[j];
      for (std::size_t c = 0; c < sys.a.cols(); ++c) acc -= sys.a(j, c) * y[c];
      Rational kj = acc / sys.moduli[j];
      if (!is_integer(kj)) throw Error(ErrorKind::InvalidArgument, "internal: non-integral congruence multiple");
      k[j] = kj.get_num();
    } else {
      long double acc = sys.theta[j];
      for (std::size_t c = 0; c < sys.a.cols(); ++c) acc -= static_cast<long double>(sys.a(j, c).get_d()) * y[c];
      k[j] = Integer(std::nearbyint(static_cast<double>(acc / static_cast<long double>(sys.moduli[j].get_d()))));
    }
  }
  return Feasible<T>{std::move(y), std::move(k)};
}

template <class T>
bool verify_certificate(const PhaseSystem<T>& sys, const Feasibility<T>& result, double tol) {
  const std::size_t n = sys.a.rows();
  const std::size_t m = sys.a.cols();
  if (const auto* f = std::get_if<Feasible<T>>(&result)) {
    if (f->y.size() != m || f->k.size() != n) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if constexpr (kExact<T>) {
        Rational acc = sys.moduli[j] * Rational(f->k[j]) - sys.theta[j];
        for (std::size_t c = 0; c < m; ++c) acc += sys.a(j, c) * f->y[c];
        if (acc != 0) return false;
      } else {
        long double acc = static_cast<long double>(sys.moduli[j].get_d()) * f->k[j].get_d() - sys.theta[j];
        for (std::size_t c = 0; c < m; ++c) acc += static_cast<long double>(sys.a(j, c).get_d()) * f->y[c];
        if (std::abs(acc) > tol) return false;
      }
    }
    return true;
  }
  const auto& u = std::get<Infeasible>(result).u;
  if (u.size() != n) return false;
  for (std::size_t c = 0; c < m; ++c) {
    Rational acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += Rational(u[j]) * sys.a(j, c);
    if (acc != 0) return false;
  }
  std::vector<Rational> scaled(n);
  for (std::size_t j = 0; j < n; ++j) scaled[j] = Rational(u[j]) * sys.moduli[j];
  Rational g = rational_gcd(scaled);
  if (g == 0) return false;
  if constexpr (kExact<T>) {
    Rational dot = 0;
    for (std::size_t j = 0; j < n; ++j) dot += Rational(u[j]) * sys.theta[j];
    return !is_integer(dot / g);
  } else {
    long double dot = 0;
    for (std::size_t j = 0; j < n; ++j) dot += static_cast<long double>(u[j].get_d()) * sys.theta[j];
    double ratio = static_cast<double>(dot / static_cast<long double>(g.get_d()));
    return distance_to_integer(ratio) * g.get_d() > tol;
  }
}

template CongruenceResult<Rational> solve_lattice_congruence(const Matrix<Rational>&, const Matrix<Rational>&,
                                                             const std::vector<Rational>&, double);
template CongruenceResult<double> solve_lattice_congruence(const Matrix<Rational>&, const Matrix<Rational>&,
                                                           const std::vector<double>&, double);
template Feasibility<Rational> solve_phase_system(const PhaseSystem<Rational>&, double);
template Feasibility<double> solve_phase_system(const PhaseSystem<double>&, double);
template bool verify_certificate(const PhaseSystem<Rational>&, const Feasibility<Rational>&, double);
template bool verify_certificate(const PhaseSystem<double>&, const Feasibility<double>&, double);

}  // namespace bohreq
