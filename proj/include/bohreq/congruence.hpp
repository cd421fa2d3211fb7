#pragma once

// Feasibility of phase congruence systems  A y == theta (mod mu, rowwise)
// with y real, decided exactly over the integers, with certificates.
//
// Phases are in turns (units of 2*pi). Exact mode uses T = Rational and
// requires tol == 0; numeric mode uses T = double.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "bohreq/matrix.hpp"
#include "bohreq/rational.hpp"

namespace bohreq {

inline constexpr double kDefaultNumericTolerance = 1e-9;

template <class T>
struct PhaseSystem {
  Matrix<Rational> a;
  std::vector<T> theta;
  std::vector<Rational> moduli;
};

/// A y + diag(moduli) k == theta.
template <class T>
struct Feasible {
  std::vector<T> y;
  std::vector<Integer> k;
};

/// u^T A == 0 while u^T theta lies off the lattice gcd_j(u_j mu_j) * Z.
struct Infeasible {
  std::vector<Integer> u;
};

template <class T>
using Feasibility = std::variant<Feasible<T>, Infeasible>;

template <class T>
bool is_feasible(const Feasibility<T>& f) {
  return std::holds_alternative<Feasible<T>>(f);
}

/// Generator mu of {<r, n> + Z : n integer}, i.e. 1 / lcm(denominators).
/// The zero row gives 1.
Rational row_modulus(std::span<const Rational> row);

/// Throws ToleranceInExactMode, DimensionMismatch, InvalidArgument.
///
/// The returned y comes from back-substitution with free variables at zero;
/// coordinates whose column is a multiple of mu in every row are then
/// reduced into [0, 1), and k is recomputed.
template <class T>
Feasibility<T> solve_phase_system(const PhaseSystem<T>& sys, double tol);

/// Re-verifies a certificate by substitution (exact for Rational).
template <class T>
bool verify_certificate(const PhaseSystem<T>& sys, const Feasibility<T>& result, double tol);

/// Mixed real/integer form  A y + G w == theta  (y real, w integer).
template <class T>
struct CongruenceSolution {
  std::vector<T> y;
  std::vector<Integer> w;
};

template <class T>
struct CongruenceResult {
  std::optional<CongruenceSolution<T>> solution;
  /// When infeasible: rational c with c A == 0, c G integral, c theta not an
  /// integer.
  std::vector<Rational> witness;
};

/// Decides the mixed system through the integer left kernel U of A:
/// feasible iff U theta lies in the lattice spanned by the columns of U G,
/// tested with a column Hermite normal form.
template <class T>
CongruenceResult<T> solve_lattice_congruence(const Matrix<Rational>& a, const Matrix<Rational>& generators,
                                             const std::vector<T>& theta, double tol);

}  // namespace bohreq
