#include "segstat/edt.hpp"

#include <algorithm>
#include <limits>

namespace segstat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double sq(double x) { return x * x; }

/// Nearest-site pass along a contiguous line where every site has distance 0.
/// Offsets are compared as integers, so no floating-point decision is involved.
void line_nearest_site(const double* in, double* out, std::size_t n, double step) {
  constexpr std::int64_t kFar = std::numeric_limits<std::int64_t>::max() / 4;
  std::int64_t last = -kFar;
  static thread_local std::vector<std::int64_t> delta;
  delta.assign(n, kFar);
  for (std::size_t i = 0; i < n; ++i) {
    if (in[i] == 0.0) last = std::int64_t(i);
    delta[i] = std::int64_t(i) - last;
  }
  std::int64_t next = kFar;
  for (std::size_t r = n; r-- > 0;) {
    if (in[r] == 0.0) next = std::int64_t(r);
    delta[r] = std::min(delta[r], next - std::int64_t(r));
  }
  for (std::size_t i = 0; i < n; ++i)
    out[i] = delta[i] >= kFar / 2 ? kInf : sq(step * double(delta[i]));
}

/// Exact 1D lower-envelope transform: out[i] = min_j (f[j] + (step*(i-j))^2).
/// Parabolas with f = +inf are skipped. At evaluation the selected parabola's
/// envelope neighbors are also tried, which absorbs any rounding of the
/// intersection abscissae near ties.
void line_lower_envelope(const double* f, double* out, std::size_t n, double step,
                         std::vector<std::int64_t>& roots, std::vector<double>& bounds) {
  const double w = step * step;
  roots.clear();
  bounds.clear();
  roots.reserve(n);
  bounds.reserve(n + 1);

  auto intersect = [&](std::int64_t p, std::int64_t q) {
    // abscissa where parabola q overtakes parabola p (p < q)
    return ((f[q] - f[p]) / w + double(q * q - p * p)) / (2.0 * double(q - p));
  };

  for (std::size_t j = 0; j < n; ++j) {
    if (f[j] == kInf) continue;
    const std::int64_t q = std::int64_t(j);
    if (roots.empty()) {
      roots.push_back(q);
      bounds.push_back(-kInf);
      continue;
    }
    double s = intersect(roots.back(), q);
    while (!roots.empty() && s <= bounds.back()) {
      roots.pop_back();
      bounds.pop_back();
      if (roots.empty()) break;
      s = intersect(roots.back(), q);
    }
    bounds.push_back(roots.empty() ? -kInf : s);
    roots.push_back(q);
  }

  if (roots.empty()) {
    std::fill(out, out + n, kInf);
    return;
  }
  bounds.push_back(kInf);

  auto value = [&](std::size_t k, std::int64_t i) {
    const std::int64_t j = roots[k];
    return f[j] + sq(step * double(i - j));
  };

  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = double(i);
    while (bounds[k + 1] < x) ++k;
    double best = value(k, std::int64_t(i));
    if (k > 0) best = std::min(best, value(k - 1, std::int64_t(i)));
    if (k + 1 < roots.size()) best = std::min(best, value(k + 1, std::int64_t(i)));
    out[i] = best;
  }
}

struct Strides {
  std::size_t x, y, z;
};

/// Runs `line_op` over all grid lines along `axis`, gathering each strided
/// line into contiguous scratch. Lines are independent, so the OpenMP loop is
/// deterministic by construction.
template <typename LineOp>
void for_each_line(std::vector<double>& grid, const std::array<std::uint32_t, 3>& dims, int axis,
                   RunMode mode, LineOp line_op) {
  const Strides strides{1, dims[0], std::size_t(dims[0]) * dims[1]};
  const std::size_t axis_stride = axis == 0 ? strides.x : (axis == 1 ? strides.y : strides.z);
  const std::size_t len = dims[std::size_t(axis)];

  const int u = axis == 0 ? 1 : 0;
  const int v = axis == 2 ? 1 : 2;
  const std::size_t nu = dims[std::size_t(u)], nv = dims[std::size_t(v)];
  const std::size_t stride_u = u == 0 ? strides.x : (u == 1 ? strides.y : strides.z);
  const std::size_t stride_v = v == 1 ? strides.y : strides.z;

  const std::int64_t lines = std::int64_t(nu) * std::int64_t(nv);
  auto run_line = [&](std::int64_t line) {
    const std::size_t iu = std::size_t(line) % nu;
    const std::size_t iv = std::size_t(line) / nu;
    const std::size_t base = iu * stride_u + iv * stride_v;
    static thread_local std::vector<double> in, out;
    in.resize(len);
    out.resize(len);
    for (std::size_t i = 0; i < len; ++i) in[i] = grid[base + i * axis_stride];
    line_op(in.data(), out.data(), len);
    for (std::size_t i = 0; i < len; ++i) grid[base + i * axis_stride] = out[i];
  };

  if (mode == RunMode::Serial) {
    for (std::int64_t line = 0; line < lines; ++line) run_line(line);
  } else {
    const int threads = parallel::thread_count();
#pragma omp parallel for num_threads(threads) schedule(static)
    for (std::int64_t line = 0; line < lines; ++line) run_line(line);
  }
}

}  // namespace

std::vector<double> squared_distance_transform(const std::array<std::uint32_t, 3>& dims,
                                               const std::array<double, 3>& spacing,
                                               const std::vector<std::uint8_t>& sites,
                                               RunMode mode) {
  const std::size_t nvox = std::size_t(dims[0]) * dims[1] * dims[2];
  std::vector<double> grid(nvox);
  for (std::size_t i = 0; i < nvox; ++i) grid[i] = sites[i] ? 0.0 : kInf;

  for_each_line(grid, dims, 0, mode, [&](const double* in, double* out, std::size_t n) {
    line_nearest_site(in, out, n, spacing[0]);
  });
  for (int axis = 1; axis < 3; ++axis) {
    const double step = spacing[std::size_t(axis)];
    for_each_line(grid, dims, axis, mode, [&](const double* in, double* out, std::size_t n) {
      static thread_local std::vector<std::int64_t> roots;
      static thread_local std::vector<double> bounds;
      line_lower_envelope(in, out, n, step, roots, bounds);
    });
  }
  return grid;
}

}  // namespace segstat
