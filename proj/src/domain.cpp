#include "dholo/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace dholo {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double rect_distance(const DomainSpec::Rectangle& r, Complex p) {
  const double dx = std::max({r.corner_lo.real() - p.real(), 0.0, p.real() - r.corner_hi.real()});
  const double dy = std::max({r.corner_lo.imag() - p.imag(), 0.0, p.imag() - r.corner_hi.imag()});
  return std::hypot(dx, dy);
}

Complex parse_point(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) throw std::invalid_argument(std::string(key) + " must be [x, y]");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

DomainSpec DomainSpec::disk(Complex center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("disk radius must be positive");
  return DomainSpec(Disk{center, radius});
}

DomainSpec DomainSpec::rectangle(Complex lo, Complex hi) {
  if (!(lo.real() < hi.real() && lo.imag() < hi.imag()))
    throw std::invalid_argument("rectangle corner_lo must be strictly below corner_hi");
  return DomainSpec(Rectangle{lo, hi});
}

DomainSpec DomainSpec::union_of(std::vector<DomainSpec> members) {
  if (members.empty()) throw std::invalid_argument("union needs at least one member");
  return DomainSpec(Union{std::move(members)});
}

bool DomainSpec::contains(Complex p) const {
  return std::visit(Overloaded{
                        [&](const Disk& d) { return std::abs(p - d.center) < d.radius; },
                        [&](const Rectangle& r) {
                          return r.corner_lo.real() < p.real() && p.real() < r.corner_hi.real() &&
                                 r.corner_lo.imag() < p.imag() && p.imag() < r.corner_hi.imag();
                        },
                        [&](const Union& u) {
                          return std::any_of(u.members.begin(), u.members.end(),
                                             [&](const DomainSpec& m) { return m.contains(p); });
                        }},
                    shape_);
}

bool DomainSpec::contains_closure(Complex p) const {
  return std::visit(Overloaded{
                        [&](const Disk& d) { return std::abs(p - d.center) <= d.radius; },
                        [&](const Rectangle& r) {
                          return r.corner_lo.real() <= p.real() && p.real() <= r.corner_hi.real() &&
                                 r.corner_lo.imag() <= p.imag() && p.imag() <= r.corner_hi.imag();
                        },
                        [&](const Union& u) {
                          return std::any_of(u.members.begin(), u.members.end(),
                                             [&](const DomainSpec& m) { return m.contains_closure(p); });
                        }},
                    shape_);
}

std::pair<Complex, Complex> DomainSpec::bounding_box() const {
  return std::visit(
      Overloaded{[](const Disk& d) {
                   const Complex r{d.radius, d.radius};
                   return std::pair{d.center - r, d.center + r};
                 },
                 [](const Rectangle& r) { return std::pair{r.corner_lo, r.corner_hi}; },
                 [](const Union& u) {
                   auto [lo, hi] = u.members.front().bounding_box();
                   for (const auto& m : u.members) {
                     auto [mlo, mhi] = m.bounding_box();
                     lo = {std::min(lo.real(), mlo.real()), std::min(lo.imag(), mlo.imag())};
                     hi = {std::max(hi.real(), mhi.real()), std::max(hi.imag(), mhi.imag())};
                   }
                   return std::pair{lo, hi};
                 }},
      shape_);
}

double DomainSpec::perimeter() const {
  return std::visit(Overloaded{[](const Disk& d) { return 2.0 * std::numbers::pi * d.radius; },
                               [](const Rectangle& r) {
                                 const Complex e = r.corner_hi - r.corner_lo;
                                 return 2.0 * (e.real() + e.imag());
                               },
                               [](const Union& u) {
                                 double total = 0.0;
                                 for (const auto& m : u.members) total += m.perimeter();
                                 return total;
                               }},
                    shape_);
}

double DomainSpec::diameter() const {
  const auto [lo, hi] = bounding_box();
  return std::abs(hi - lo);
}

std::vector<Complex> DomainSpec::sample_boundary(double step) const {
  if (!(step > 0.0)) throw std::invalid_argument("sampling step must be positive");
  return std::visit(
      Overloaded{
          [&](const Disk& d) {
            const auto n = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi * d.radius / step));
            std::vector<Complex> out;
            out.reserve(n);
            for (std::size_t k = 0; k < n; ++k)
              out.push_back(d.center + std::polar(d.radius, 2.0 * std::numbers::pi * k / n));
            return out;
          },
          [&](const Rectangle& r) {
            const Complex c[4] = {r.corner_lo, {r.corner_hi.real(), r.corner_lo.imag()}, r.corner_hi,
                                  {r.corner_lo.real(), r.corner_hi.imag()}};
            std::vector<Complex> out;
            for (int e = 0; e < 4; ++e) {
              const Complex a = c[e], b = c[(e + 1) % 4];
              const auto n = static_cast<std::size_t>(std::ceil(std::abs(b - a) / step));
              for (std::size_t k = 0; k < n; ++k) out.push_back(a + (b - a) * (double(k) / double(n)));
            }
            return out;
          },
          [&](const Union& u) {
            std::vector<Complex> out;
            for (std::size_t i = 0; i < u.members.size(); ++i) {
              for (auto p : u.members[i].sample_boundary(step)) {
                bool covered = false;
                for (std::size_t j = 0; j < u.members.size() && !covered; ++j)
                  covered = (j != i) && u.members[j].contains(p);
                if (!covered) out.push_back(p);
              }
            }
            return out;
          }},
      shape_);
}

std::vector<Complex> DomainSpec::sample_closure(double step) const {
  auto out = sample_boundary(step);
  const auto [lo, hi] = bounding_box();
  const auto nx = static_cast<int>(std::floor((hi.real() - lo.real()) / step));
  const auto ny = static_cast<int>(std::floor((hi.imag() - lo.imag()) / step));
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      const Complex p = lo + Complex(i * step, j * step);
      if (contains_closure(p)) out.push_back(p);
    }
  return out;
}

double DomainSpec::distance_to_closure(Complex p) const {
  return std::visit(Overloaded{[&](const Disk& d) { return std::max(0.0, std::abs(p - d.center) - d.radius); },
                               [&](const Rectangle& r) { return rect_distance(r, p); },
                               [&](const Union& u) {
                                 double best = std::numeric_limits<double>::infinity();
                                 for (const auto& m : u.members) best = std::min(best, m.distance_to_closure(p));
                                 return best;
                               }},
                    shape_);
}

double DomainSpec::distance_to_boundary(Complex p, double sampling_step) const {
  return std::visit(
      Overloaded{[&](const Disk& d) { return std::abs(std::abs(p - d.center) - d.radius); },
                 [&](const Rectangle& r) {
                   if (!contains_closure(p)) return rect_distance(r, p);
                   return std::min({p.real() - r.corner_lo.real(), r.corner_hi.real() - p.real(),
                                    p.imag() - r.corner_lo.imag(), r.corner_hi.imag() - p.imag()});
                 },
                 [&](const Union&) {
                   double best = std::numeric_limits<double>::infinity();
                   for (auto q : sample_boundary(sampling_step)) best = std::min(best, std::abs(p - q));
                   return best;
                 }},
      shape_);
}

void to_json(nlohmann::json& j, const DomainSpec& d) {
  std::visit(Overloaded{[&](const DomainSpec::Disk& s) {
                          j = {{"shape", "disk"},
                               {"center", {s.center.real(), s.center.imag()}},
                               {"radius", s.radius}};
                        },
                        [&](const DomainSpec::Rectangle& s) {
                          j = {{"shape", "rectangle"},
                               {"corner_lo", {s.corner_lo.real(), s.corner_lo.imag()}},
                               {"corner_hi", {s.corner_hi.real(), s.corner_hi.imag()}}};
                        },
                        [&](const DomainSpec::Union& s) {
                          j = {{"shape", "union"}, {"members", nlohmann::json::array()}};
                          for (const auto& m : s.members) j["members"].push_back(m);
                        }},
             d.shape());
}

DomainSpec parse_domain(const nlohmann::json& j) {
  const auto shape = j.at("shape").get<std::string>();
  if (shape == "disk") return DomainSpec::disk(parse_point(j, "center"), j.at("radius").get<double>());
  if (shape == "rectangle") return DomainSpec::rectangle(parse_point(j, "corner_lo"), parse_point(j, "corner_hi"));
  if (shape == "union") {
    std::vector<DomainSpec> members;
    for (const auto& m : j.at("members")) members.push_back(parse_domain(m));
    return DomainSpec::union_of(std::move(members));
  }
  throw std::invalid_argument("unknown domain shape '" + shape + "'");
}

void from_json(const nlohmann::json& j, DomainSpec& d) { d = parse_domain(j); }

LatticeSet lattice_points_inside(const DomainSpec& spec, double h) {
  const auto [lo, hi] = spec.bounding_box();
  const int x0 = static_cast<int>(std::floor(lo.real() / h)) - 1;
  const int x1 = static_cast<int>(std::ceil(hi.real() / h)) + 1;
  const int y0 = static_cast<int>(std::floor(lo.imag() / h)) - 1;
  const int y1 = static_cast<int>(std::ceil(hi.imag() / h)) + 1;
  std::vector<LatticePoint> pts;
  for (int ix = x0; ix <= x1; ++ix)
    for (int iy = y0; iy <= y1; ++iy)
      if (spec.contains(LatticePoint{ix, iy}.position(h))) pts.push_back({ix, iy});
  return LatticeSet(h, std::move(pts));
}

LatticeSet discretize(const DomainSpec& spec, double h) { return interior(lattice_points_inside(spec, h)); }

SetConvergenceMetrics set_convergence_metrics(const LatticeSet& a, const DomainSpec& spec) {
  if (a.empty()) throw std::invalid_argument("empty discrete set");
  const double h = a.spacing();
  const double step = std::min(h / 4.0, spec.perimeter() / 4096.0);
  const auto bd = boundary(a);
  const NearestPointIndex near_bd(bd);
  const NearestPointIndex near_a(a);

  SetConvergenceMetrics m{0.0, 0.0, 0.0, 0.0, step};
  for (auto q : spec.sample_boundary(step))
    m.boundary_to_discrete_boundary = std::max(m.boundary_to_discrete_boundary, near_bd.distance(q));
  for (auto z : bd)
    m.discrete_boundary_to_boundary =
        std::max(m.discrete_boundary_to_boundary, spec.distance_to_boundary(z.position(h), step));
  for (auto q : spec.sample_closure(step)) m.closure_to_set = std::max(m.closure_to_set, near_a.distance(q));
  for (auto z : a) m.set_to_closure = std::max(m.set_to_closure, spec.distance_to_closure(z.position(h)));
  return m;
}

bool interior_cover_check(const DomainSpec& u, const LatticeSet& a) {
  const auto inside = lattice_points_inside(u, a.spacing());
  return is_subset(inside, a);
}

}  // namespace dholo
