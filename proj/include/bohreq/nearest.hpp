#pragma once

// Exact nearest-neighbour distances in the plane through a uniform bucket
// grid, and directed Hausdorff distances built on it.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bohreq {

class NearestIndex {
 public:
  /// Throws EmptyCloud.
  explicit NearestIndex(std::span<const std::complex<double>> points);

  /// Euclidean distance from q to the closest indexed point.
  double distance(std::complex<double> q) const;

  std::size_t size() const noexcept { return xs_.size(); }

 private:
  double min_x_ = 0, min_y_ = 0, max_x_ = 0, max_y_ = 0, cell_ = 1;
  std::size_t nx_ = 1, ny_ = 1;
  std::vector<std::size_t> start_;  // nx*ny + 1 offsets into xs_/ys_
  std::vector<double> xs_, ys_;
};

/// max over a in `from` of the distance from a to `to`. Throws EmptyCloud.
/// Queries are spread over hardware threads; the result does not depend on
/// the split.
double directed_hausdorff(std::span<const std::complex<double>> from, std::span<const std::complex<double>> to);

double hausdorff_distance(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b);

}  // namespace bohreq
