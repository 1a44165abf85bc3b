#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wnc/circle.hpp"
#include "wnc/function_element.hpp"
#include "wnc/ufunctional.hpp"

namespace wnc {

using json = nlohmann::json;

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2)
    throw DomainViolation("complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

// Command-line form "re", "re+imi" or "re-imi" (locale-free).
inline cplx complex_from_string(const std::string& s) {
  std::size_t pos = 0;
  const double re = std::stod(s, &pos);
  if (pos >= s.size()) return {re, 0.0};
  std::size_t pos2 = 0;
  const double im = std::stod(s.substr(pos), &pos2);
  if (s.substr(pos).substr(pos2) != "i")
    throw DomainViolation("cannot parse complex literal: " + s);
  return {re, im};
}

inline json element_to_json(const FunctionElement& f) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Indicator>) {
          return json{{"indicator", json::array({v.start, v.end})}};
        } else if constexpr (std::is_same_v<T, HermiteSpan>) {
          json coeffs = json::array();
          for (cplx c : v.coeffs) coeffs.push_back(complex_to_json(c));
          return json{{"hermite", coeffs}};
        } else {
          json terms = json::array();
          for (const auto& [w, e] : v.terms)
            terms.push_back(json::array({complex_to_json(w), element_to_json(e)}));
          return json{{"combo", terms}};
        }
      },
      f.value);
}

inline FunctionElement element_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1)
    throw DomainViolation("function element must be a single-key object");
  if (j.contains("indicator")) {
    const json& iv = j["indicator"];
    if (!iv.is_array() || iv.size() != 2)
      throw DomainViolation("indicator payload must be [start, end]");
    return FunctionElement::indicator(iv[0].get<double>(), iv[1].get<double>());
  }
  if (j.contains("hermite")) {
    std::vector<cplx> coeffs;
    for (const json& c : j["hermite"]) coeffs.push_back(complex_from_json(c));
    return FunctionElement::hermite_span(std::move(coeffs));
  }
  if (j.contains("combo")) {
    std::vector<std::pair<cplx, FunctionElement>> terms;
    for (const json& term : j["combo"]) {
      if (!term.is_array() || term.size() != 2)
        throw DomainViolation("combo term must be [weight, element]");
      terms.emplace_back(complex_from_json(term[0]),
                         element_from_json(term[1]));
    }
    return FunctionElement::combination(std::move(terms));
  }
  throw DomainViolation("unknown function element variant: " + j.dump());
}

inline json report_to_json(const ConvergenceReport& r) {
  return json{{"cauchy_max_gap", r.cauchy_max_gap},
              {"bound_violations", r.bound_violations},
              {"verdict", r.verdict}};
}

inline json packet_to_json(const WavePacket& p) {
  json modes = json::object();
  for (const auto& [l, a] : p.coeffs)
    modes[std::to_string(l)] = complex_to_json(a);
  return json{{"packet", modes}, {"s", p.s}};
}

inline WavePacket packet_from_json(const json& j) {
  std::map<int, cplx> coeffs;
  for (const auto& [key, value] : j.at("packet").items())
    coeffs[std::stoi(key)] = complex_from_json(value);
  return WavePacket(std::move(coeffs), j.value("s", 1.0));
}

}  // namespace wnc
