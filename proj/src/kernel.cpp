#include "dholo/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "dholo/errors.hpp"

namespace dholo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double signed_power(double sign, int n) { return (n % 2 == 0 || sign > 0.0) ? 1.0 : -1.0; }

// Unit-spacing symmetric dbar and dz of a table-like accessor.
template <class F>
Complex unit_dbar(const F& e, int x, int y) {
  return 0.25 * ((e(x + 1, y) - e(x - 1, y)) + kI * (e(x, y + 1) - e(x, y - 1)));
}

template <class F>
Complex unit_dz(const F& e, int x, int y) {
  return 0.25 * ((e(x + 1, y) - e(x - 1, y)) - kI * (e(x, y + 1) - e(x, y - 1)));
}

}  // namespace

Complex fundamental_solution_integrand(double u, int x, int y) {
  // For fixed u, the v-integrand 2 e^{ivy} / (i sin u - sin v) has poles
  // where sin v = i sin u, i.e. w = e^{iv} = -s +- sqrt(1 + s^2). Exactly
  // one root lies inside the unit circle; for y < 0 the substitution
  // w -> 1/w picks the other one.
  const double s = std::sin(u);
  const double root = std::sqrt(1.0 + s * s);
  const double rho = 1.0 / (root + std::abs(s));
  const double sg = u > 0.0 ? 1.0 : -1.0;
  Complex inner;
  if (y >= 0) {
    inner = -2.0 * kPi * kI * signed_power(sg, y + 1) * std::pow(rho, y) / root;
  } else {
    const int m = -y;
    inner = 2.0 * kPi * kI * signed_power(-sg, m + 1) * std::pow(rho, m) / root;
  }
  return std::polar(1.0, u * x) * inner;
}

Complex fundamental_solution(int x, int y, double quad_tol) {
  if (!(quad_tol > 0.0)) throw std::invalid_argument("quadrature tolerance must be positive");
  using boost::math::quadrature::gauss_kronrod;
  auto f = [x, y](double u) { return fundamental_solution_integrand(u, x, y); };

  // Split each half-interval into panels that resolve the oscillation
  // e^{iux} and the peaks of rho^|y| at u = 0, +-pi.
  const int panels = std::max(1, (std::abs(x) + std::abs(y)) / 8);
  const double scale = 2.0 * kPi * kPi;
  const double panel_tol = quad_tol * scale / (4.0 * panels);
  Complex total = 0.0;
  double error = 0.0;
  for (double lo_half : {-kPi, 0.0}) {
    const double width = kPi / panels;
    for (int k = 0; k < panels; ++k) {
      const double a = lo_half + k * width;
      const double b = k + 1 == panels ? lo_half + kPi : a + width;
      double err = 0.0;
      // Relative tolerance chosen so that the absolute error stays below
      // panel_tol given |integrand| <= 2 pi.
      total += gauss_kronrod<double, 31>::integrate(f, a, b, 20, panel_tol / (2.0 * kPi * width), &err);
      error += err;
    }
  }
  const double achieved = error / scale;
  if (achieved > quad_tol)
    throw QuadratureError(fmt::format("quadrature for E({}, {}) reached {:.3e}, requested {:.3e}", x, y,
                                      achieved, quad_tol),
                          achieved);
  return total / scale;
}

KernelTable::KernelTable(int radius, double quad_tol, std::vector<Complex> values, double achieved_residual)
    : radius_(radius), quad_tol_(quad_tol), achieved_residual_(achieved_residual), values_(std::move(values)) {
  if (radius < 0) throw std::invalid_argument("table radius must be nonnegative");
  const auto side = static_cast<std::size_t>(2 * radius + 1);
  if (values_.size() != side * side) throw std::invalid_argument("table size does not match radius");
}

bool KernelTable::contains(int x, int y) const noexcept {
  return std::abs(x) <= radius_ && std::abs(y) <= radius_;
}

Complex KernelTable::at(int x, int y) const {
  if (!contains(x, y)) throw TableMiss(fmt::format("({}, {}) outside radius {}", x, y, radius_));
  const int side = 2 * radius_ + 1;
  return values_[static_cast<std::size_t>((y + radius_) * side + (x + radius_))];
}

KernelTable KernelTable::restricted(int radius) const {
  if (radius > radius_) throw TableMiss(fmt::format("cannot restrict radius {} to {}", radius_, radius));
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)));
  for (int y = -radius; y <= radius; ++y)
    for (int x = -radius; x <= radius; ++x) out.push_back(at(x, y));
  KernelTable t(radius, quad_tol_, std::move(out), 0.0);
  t.set_achieved_residual(radius >= 2 ? residual_check(t, 1.0) : 0.0);
  return t;
}

KernelTable build_table(int radius, double quad_tol) {
  if (radius < 1) throw std::invalid_argument("table radius must be at least 1");
  const int side = 2 * radius + 1;
  std::vector<Complex> values(static_cast<std::size_t>(side * side));
  auto slot = [&](int x, int y) -> Complex& {
    return values[static_cast<std::size_t>((y + radius) * side + (x + radius))];
  };
  for (int y = 0; y <= radius; ++y) {
    for (int x = -radius; x <= radius; ++x) {
      if (y == 0 && x <= 0) continue;
      const Complex e = fundamental_solution(x, y, quad_tol);
      slot(x, y) = e;
      slot(-x, -y) = -e;
    }
  }
  slot(0, 0) = 0.0;
  KernelTable table(radius, quad_tol, std::move(values), 0.0);
  table.set_achieved_residual(radius >= 2 ? residual_check(table, 1.0) : 0.0);
  return table;
}

Complex fundamental_scaled(const KernelTable& table, int ix, int iy, double h) { return table.scaled(ix, iy, h); }

double residual_check(const KernelTable& table, double h) {
  if (table.radius() < 2) throw std::invalid_argument("residual check needs radius >= 2");
  const int r = table.radius() - 1;
  auto eh = [&](int x, int y) { return table.scaled(x, y, h); };
  double worst = 0.0;
  for (int y = -r; y <= r; ++y) {
    for (int x = -r; x <= r; ++x) {
      // unit_dbar applies 1/2 * 1/2 of differences; divide by h for the
      // spacing-h symmetric difference.
      const Complex d = unit_dbar(eh, x, y) / h;
      const double delta = (x == 0 && y == 0) ? 1.0 / (h * h) : 0.0;
      worst = std::max(worst, std::abs(d - delta) * h * h);
    }
  }
  return worst;
}

std::vector<NormRow> norm_estimates(const KernelTable& table, const std::vector<int>& radii) {
  for (std::size_t k = 1; k < radii.size(); ++k)
    if (radii[k] <= radii[k - 1]) throw std::invalid_argument("radii must be increasing");
  if (!radii.empty() && radii.back() + 2 > table.radius())
    throw TableMiss(fmt::format("norm estimates to R = {} need table radius {}", radii.back(), radii.back() + 2));

  auto e = [&](int x, int y) { return table.at(x, y); };
  auto dze = [&](int x, int y) { return unit_dz(e, x, y); };

  std::vector<NormRow> rows;
  double s3 = 0.0, s2 = 0.0, s1 = 0.0;
  int done = -1;
  for (int r : radii) {
    // Add the shells done+1 .. r in a fixed order.
    for (int y = -r; y <= r; ++y) {
      for (int x = -r; x <= r; ++x) {
        if (std::max(std::abs(x), std::abs(y)) <= done) continue;
        s3 += std::pow(std::abs(e(x, y)), 3);
        s2 += std::norm(dze(x, y));
        s1 += std::abs(unit_dz(dze, x, y));
      }
    }
    NormRow row{r, s3, s2, s1, 0.0, 0.0, 0.0};
    if (!rows.empty()) {
      row.inc_e3 = s3 - rows.back().sum_e3;
      row.inc_dz2 = s2 - rows.back().sum_dz2;
      row.inc_dzz1 = s1 - rows.back().sum_dzz1;
    }
    rows.push_back(row);
    done = r;
  }
  return rows;
}

}  // namespace dholo
