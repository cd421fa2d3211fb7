#include "bohreq/nearest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "bohreq/error.hpp"
#include "bohreq/kernels/kernels.hpp"

namespace bohreq {

namespace {
constexpr std::size_t kTargetPerCell = 8;
constexpr std::size_t kMaxCellsPerSide = 4096;
}  // namespace

NearestIndex::NearestIndex(std::span<const std::complex<double>> points) {
  if (points.empty()) throw Error(ErrorKind::EmptyCloud, "cannot index an empty point cloud");
  min_x_ = max_x_ = points[0].real();
  min_y_ = max_y_ = points[0].imag();
  for (auto p : points) {
    min_x_ = std::min(min_x_, p.real());
    max_x_ = std::max(max_x_, p.real());
    min_y_ = std::min(min_y_, p.imag());
    max_y_ = std::max(max_y_, p.imag());
  }
  const double w = max_x_ - min_x_, h = max_y_ - min_y_;
  const double cells_wanted = std::max(1.0, static_cast<double>(points.size()) / kTargetPerCell);
  if (w > 0 && h > 0)
    cell_ = std::sqrt(w * h / cells_wanted);
  else
    cell_ = std::max(w, h) / cells_wanted;
  if (!(cell_ > 0)) cell_ = 1.0;
  cell_ = std::max({cell_, w / kMaxCellsPerSide, h / kMaxCellsPerSide});
  nx_ = std::min(kMaxCellsPerSide, static_cast<std::size_t>(w / cell_) + 1);
  ny_ = std::min(kMaxCellsPerSide, static_cast<std::size_t>(h / cell_) + 1);

  auto cell_of = [&](double x, double y) {
    auto cx = std::min(nx_ - 1, static_cast<std::size_t>((x - min_x_) / cell_));
    auto cy = std::min(ny_ - 1, static_cast<std::size_t>((y - min_y_) / cell_));
    return cy * nx_ + cx;
  };
  start_.assign(nx_ * ny_ + 1, 0);
  for (auto p : points) ++start_[cell_of(p.real(), p.imag()) + 1];
  for (std::size_t c = 0; c < nx_ * ny_; ++c) start_[c + 1] += start_[c];
  std::vector<std::size_t> fill(start_.begin(), start_.end() - 1);
  xs_.resize(points.size());
  ys_.resize(points.size());
  for (auto p : points) {
    std::size_t slot = fill[cell_of(p.real(), p.imag())]++;
    xs_[slot] = p.real();
    ys_[slot] = p.imag();
  }
}

double NearestIndex::distance(std::complex<double> q) const {
  const double qx = q.real(), qy = q.imag();
  // Projection onto the bounding box: every indexed point p satisfies
  // |q - p|^2 >= |q - q'|^2 + |q' - p|^2.
  const double px = std::clamp(qx, min_x_, max_x_), py = std::clamp(qy, min_y_, max_y_);
  const double outside2 = (qx - px) * (qx - px) + (qy - py) * (qy - py);
  const auto cx = static_cast<std::ptrdiff_t>(std::min(nx_ - 1, static_cast<std::size_t>((px - min_x_) / cell_)));
  const auto cy = static_cast<std::ptrdiff_t>(std::min(ny_ - 1, static_cast<std::size_t>((py - min_y_) / cell_)));
  const auto nx = static_cast<std::ptrdiff_t>(nx_), ny = static_cast<std::ptrdiff_t>(ny_);
  const std::ptrdiff_t max_ring = std::max({cx, nx - 1 - cx, cy, ny - 1 - cy});

  double best = std::numeric_limits<double>::infinity();
  auto scan = [&](std::ptrdiff_t x, std::ptrdiff_t y) {
    if (x < 0 || y < 0 || x >= nx || y >= ny) return;
    std::size_t c = static_cast<std::size_t>(y) * nx_ + static_cast<std::size_t>(x);
    std::size_t b = start_[c], e = start_[c + 1];
    if (b != e) best = std::min(best, kernels::min_dist2(xs_.data() + b, ys_.data() + b, e - b, qx, qy));
  };
  for (std::ptrdiff_t ring = 0; ring <= max_ring; ++ring) {
    if (ring == 0) {
      scan(cx, cy);
    } else {
      for (std::ptrdiff_t x = cx - ring; x <= cx + ring; ++x) {
        scan(x, cy - ring);
        scan(x, cy + ring);
      }
      for (std::ptrdiff_t y = cy - ring + 1; y <= cy + ring - 1; ++y) {
        scan(cx - ring, y);
        scan(cx + ring, y);
      }
    }
    // Points beyond this ring are at least ring * cell_ from q'.
    const double reach = static_cast<double>(ring) * cell_;
    if (best <= outside2 + reach * reach) break;
  }
  return std::sqrt(best);
}

double directed_hausdorff(std::span<const std::complex<double>> from, std::span<const std::complex<double>> to) {
  if (from.empty() || to.empty()) throw Error(ErrorKind::EmptyCloud, "Hausdorff distance of an empty cloud");
  NearestIndex index(to);
  const std::size_t n = from.size();
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(1, n / 4096));
  std::vector<double> partial(workers, 0.0);
  auto run = [&](std::size_t w) {
    std::size_t b = n * w / workers, e = n * (w + 1) / workers;
    double worst = 0.0;
    for (std::size_t i = b; i < e; ++i) worst = std::max(worst, index.distance(from[i]));
    partial[w] = worst;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  return *std::max_element(partial.begin(), partial.end());
}

double hausdorff_distance(std::span<const std::complex<double>> a, std::span<const std::complex<double>> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

}  // namespace bohreq
