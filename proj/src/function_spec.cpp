#include "dholo/function_spec.hpp"

#include <cmath>
#include <stdexcept>

#include "dholo/calculus.hpp"

namespace dholo {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

Complex horner(const std::vector<Complex>& c, Complex z) {
  Complex acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<Complex> derivative_coefficients(const std::vector<Complex>& c) {
  std::vector<Complex> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

Complex parse_complex(const nlohmann::json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2) throw std::invalid_argument("complex values are written [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

FunctionSpec FunctionSpec::polynomial(std::vector<Complex> coefficients) {
  return FunctionSpec(Polynomial{std::move(coefficients)});
}
FunctionSpec FunctionSpec::exponential(Complex a) { return FunctionSpec(Exponential{a}); }
FunctionSpec FunctionSpec::reciprocal(Complex pole) { return FunctionSpec(Reciprocal{pole}); }
FunctionSpec FunctionSpec::conjugate_monomial(int k) {
  if (k < 0 || k > 16) throw std::invalid_argument("conjugate monomial degree must be in [0, 16]");
  return FunctionSpec(ConjugateMonomial{k});
}

Complex FunctionSpec::value(Complex z) const {
  return std::visit(Overloaded{[&](const Polynomial& p) { return horner(p.coefficients, z); },
                               [&](const Exponential& e) { return std::exp(e.a * z); },
                               [&](const Reciprocal& r) {
                                 if (z == r.pole) throw std::domain_error("reciprocal evaluated at its pole");
                                 return 1.0 / (z - r.pole);
                               },
                               [&](const ConjugateMonomial& m) { return std::pow(std::conj(z), m.k); }},
                    kind_);
}

Complex FunctionSpec::dz(Complex z) const {
  return std::visit(Overloaded{[&](const Polynomial& p) { return horner(derivative_coefficients(p.coefficients), z); },
                               [&](const Exponential& e) { return e.a * std::exp(e.a * z); },
                               [&](const Reciprocal& r) { return -1.0 / ((z - r.pole) * (z - r.pole)); },
                               [&](const ConjugateMonomial&) { return Complex{}; }},
                    kind_);
}

Complex FunctionSpec::dz2(Complex z) const {
  return std::visit(
      Overloaded{[&](const Polynomial& p) {
                   return horner(derivative_coefficients(derivative_coefficients(p.coefficients)), z);
                 },
                 [&](const Exponential& e) { return e.a * e.a * std::exp(e.a * z); },
                 [&](const Reciprocal& r) { return 2.0 / std::pow(z - r.pole, 3); },
                 [&](const ConjugateMonomial&) { return Complex{}; }},
      kind_);
}

bool FunctionSpec::is_holomorphic() const {
  if (const auto* m = std::get_if<ConjugateMonomial>(&kind_)) return m->k == 0;
  return true;
}

void FunctionSpec::require_regular_on(const DomainSpec& domain) const {
  if (const auto* r = std::get_if<Reciprocal>(&kind_); r && domain.contains_closure(r->pole))
    throw std::invalid_argument("reciprocal pole lies in the closed domain");
}

void to_json(nlohmann::json& j, const FunctionSpec& f) {
  std::visit(Overloaded{[&](const FunctionSpec::Polynomial& p) {
                          j = {{"kind", "polynomial"}, {"coefficients", nlohmann::json::array()}};
                          for (auto c : p.coefficients) j["coefficients"].push_back(complex_json(c));
                        },
                        [&](const FunctionSpec::Exponential& e) { j = {{"kind", "exponential"}, {"a", complex_json(e.a)}}; },
                        [&](const FunctionSpec::Reciprocal& r) {
                          j = {{"kind", "reciprocal"}, {"pole", complex_json(r.pole)}};
                        },
                        [&](const FunctionSpec::ConjugateMonomial& m) { j = {{"kind", "conjugate_monomial"}, {"k", m.k}}; }},
             f.kind());
}

FunctionSpec parse_function(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "polynomial") {
    std::vector<Complex> coefficients;
    for (const auto& c : j.at("coefficients")) coefficients.push_back(parse_complex(c));
    return FunctionSpec::polynomial(std::move(coefficients));
  }
  if (kind == "exponential") return FunctionSpec::exponential(parse_complex(j.at("a")));
  if (kind == "reciprocal") return FunctionSpec::reciprocal(parse_complex(j.at("pole")));
  if (kind == "conjugate_monomial") return FunctionSpec::conjugate_monomial(j.at("k").get<int>());
  throw std::invalid_argument("unknown function kind '" + kind + "'");
}

void from_json(const nlohmann::json& j, FunctionSpec& f) { f = parse_function(j); }

GridFunction sample(const FunctionSpec& f, const LatticeSet& points) {
  GridFunction g(points.spacing());
  for (auto z : points) g.set(z, f.value(z.position(points.spacing())));
  return g;
}

}  // namespace dholo
