#pragma once

// Value sets of a sum along a vertical line and of its auxiliary function
//     F_f(sigma, x, k) = sum_j a_j e^{lambda_j sigma} e^{2 pi i (<r_j, x> + k_j / d_j)}
// over the torus x in [0, 1)^m (turns) and the residue choices k, plus
// sampled checks of the structural statements relating them.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bohreq/equivalence.hpp"
#include "bohreq/sums.hpp"

namespace bohreq {

inline constexpr std::size_t kDefaultSampleBudget = 10'000'000;

/// zero: k = 0 only. all: every residue tuple produced by an integer shift,
/// so the torus image is the closure of the line image. independent: every
/// row's residue chosen separately (the full product of Z/d_j).
enum class ResidueMode { zero, all, independent };

std::string_view residue_mode_name(ResidueMode mode);
/// Throws InvalidArgument.
ResidueMode parse_residue_mode(std::string_view text);

struct LineSource {
  double sigma = 0.0;
  double t_max = 0.0;
  double step = 0.0;
};

struct TorusSource {
  double sigma = 0.0;
  std::size_t grid = 0;
  ResidueMode mode = ResidueMode::all;
  std::size_t residue_tuples = 0;
  /// False when sampled in coordinates over another basis.
  bool natural_coordinates = true;
};

struct ValueCloud {
  std::vector<ComplexPoint> points;
  std::variant<LineSource, TorusSource> source;
  std::string sum_id;
};

/// Throws OutsideStrip, DimensionMismatch, ResidueOutOfRange.
ComplexPoint eval_aux(const ExponentialSum& f, double sigma, std::span<const double> x_turns,
                      std::span<const Integer> residues);

/// f(sigma0 + it) for t = -t_max, -t_max + step, ..., up to t_max.
/// Throws OutsideStrip, InvalidArgument, BudgetExceeded.
ValueCloud sample_line(const ExponentialSum& f, double sigma0, double t_max, double step,
                       std::size_t budget = kDefaultSampleBudget);

/// F_f on the uniform grid {i / grid} of [0, 1)^m crossed with the residue
/// tuples of `mode`; points are ordered tuple-major, then grid order.
/// Only rows with nonzero coefficients take part in residue enumeration.
/// Throws BudgetExceeded (grid^m * tuples > budget), OutsideStrip,
/// InvalidArgument (grid < 2).
ValueCloud sample_torus(const ExponentialSum& f, double sigma0, std::size_t grid, ResidueMode mode,
                        std::size_t budget = kDefaultSampleBudget);

/// Same, using coordinates s_j over another basis and integer shifts taken
/// in that basis.
ValueCloud sample_torus_in_basis(const ExponentialSum& f, const ChangeOfBasis& change, double sigma0,
                                 std::size_t grid, ResidueMode mode, std::size_t budget = kDefaultSampleBudget);

double hausdorff(const ValueCloud& a, const ValueCloud& b);
double directed_hausdorff(const ValueCloud& from, const ValueCloud& to);

/// 3 * 2 pi * sum_j |a_j| e^{lambda_j sigma0} |r_j|_1 / grid: a bound on how
/// far a torus point can sit from the sampled grid image. With `other`, the
/// larger of |r_j|_1 and |s_j|_1 is used per row.
double grid_tolerance(const ExponentialSum& f, double sigma0, std::size_t grid,
                      const Matrix<Rational>* other = nullptr);

struct Metric {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool ok = false;
};

struct Report {
  std::string check;
  bool pass = false;
  std::vector<Metric> metrics;
  std::string note;
};

struct SigmaT {
  double sigma = 0.0;
  double t = 0.0;
};

/// With the certificate (x0, k) of f1 ~ f2, checks
///     f2(sigma + it) == F_{f1}(sigma, x0 + t g / 2pi, k)
/// at every sample, after moving the integer part of x0 + t g / 2pi into the
/// residues. Throws NoCertificate.
Report verify_prop3(const ExponentialSum& f1, const ExponentialSum& f2, const EquivVerdict& verdict,
                    std::span<const SigmaT> samples, double tol = 1e-9);

/// Torus clouds in natural coordinates and over `other_basis` must agree
/// within grid_tolerance. Throws NotABasis.
Report verify_lemma1(const ExponentialSum& f, const std::vector<Frequency>& other_basis, double sigma0,
                     std::size_t grid);

struct Prop4Options {
  double sigma0 = 0.0;
  std::size_t grid = 200;
  std::vector<double> t_max = {250, 500, 1000, 2000};
  double step = 0.01;
  /// Allowed increase between consecutive torus-to-line distances.
  double slack = 1e-6;
};

/// Line points lie within grid tolerance of the torus cloud; the distance
/// from the torus cloud to ever longer line clouds does not increase; the
/// torus cloud is bounded by sum_j |a_j| e^{lambda_j sigma0}.
Report verify_prop4(const ExponentialSum& f, const Prop4Options& options);

struct Theorem1Options {
  double sigma_lo = -0.1;
  double sigma_hi = 0.1;
  std::size_t sigma_steps = 5;
  double t_max = 2000;
  double step = 0.01;
  double tol = 0.05;
  double equiv_tol = kDefaultNumericTolerance;
};

/// Sampled check that equivalent sums take the same values on vertical
/// lines over an open sigma-interval. The sigma grid uses interior points
/// lo + i (hi - lo) / (steps + 1), i = 1..steps; each side's cloud is the
/// union of its line samples, and both directed Hausdorff distances must
/// be below tol.
///
/// This is a one-sided converging check, not a proof: each function's values
/// are limit points of translates of the other, so the distances shrink as
/// t_max grows but are positive at any finite resolution.
/// Throws NotEquivalent when decide_equiv rejects the pair, OutsideStrip.
Report verify_theorem1(const ExponentialSum& f1, const ExponentialSum& f2, const Theorem1Options& options);

}  // namespace bohreq
