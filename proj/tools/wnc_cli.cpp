// Command-line front end for the white-noise toolkit.
//
// Exit codes: 0 success, 2 domain violation (sector membership, theta
// convergence domain, Re(a^2) and friends), 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wnc/io.hpp"
#include "wnc/wnc.hpp"

namespace {

using namespace wnc;

FunctionElement parse_element(const std::string& text) {
  if (text == "zero") return FunctionElement::zero();
  if (text.size() > 1 && text[0] == 'e') {
    // basis shorthand e0, e1, ...
    char* end = nullptr;
    const long k = std::strtol(text.c_str() + 1, &end, 10);
    if (end && *end == '\0' && k >= 0)
      return FunctionElement::basis(static_cast<std::size_t>(k));
  }
  if (text.rfind("ind:", 0) == 0) {
    std::istringstream in(text.substr(4));
    double s, e;
    char colon;
    if (in >> s >> colon >> e)
      return FunctionElement::indicator(s, e);
    throw DomainViolation("cannot parse indicator spec: " + text);
  }
  if (!text.empty() && text[0] == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw DomainViolation("cannot open element file: " + text);
    json j;
    in >> j;
    return element_from_json(j);
  }
  // inline JSON
  return element_from_json(json::parse(text));
}

void emit(const json& j, const std::string& output) {
  if (output.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(output);
    out << j.dump(2) << "\n";
  }
}

json complex_result(cplx v) {
  return json{{"re", v.real()}, {"im", v.imag()}};
}

int run_verify(const std::string& suite, std::uint64_t trials,
               std::uint64_t seed, const std::string& output) {
  std::uint64_t violations = 0;
  double max_gap = 0.0;
  if (suite == "homogeneity") {
    for (std::uint64_t i = 0; i < trials; ++i) {
      CounterRng rng(seed, i);
      const cplx z = std::polar(0.5 + 1.5 * rng.next_uniform(),
                                (rng.next_uniform() - 0.5) * 0.45 * M_PI);
      const cplx a{rng.next_normal(), rng.next_normal()};
      std::vector<cplx> coeffs(1 + rng.next_u64() % 8);
      for (cplx& c : coeffs) c = {rng.next_normal(), 0.0};
      const auto xi = FunctionElement::hermite_span(coeffs);
      const auto eta = FunctionElement::indicator(0.0, 1.0);
      const cplx lhs = s_scaled_delta(DonskerDelta(eta, a, z), xi);
      const cplx rhs = s_scaled_delta(DonskerDelta(eta, a / z), xi) / z;
      const double gap = std::abs(lhs - rhs);
      max_gap = std::max(max_gap, gap);
      if (gap >= 1e-12) ++violations;
    }
  } else if (suite == "growth") {
    const auto cert = donsker_certificate(1.0, cplx{0.5, 0.0}, 1.0);
    UFunctional f{[](const FunctionElement& xi) {
                    return s_delta(1.0, cplx{0.5, 0.0}, xi);
                  },
                  cert};
    const ConvergenceReport r = verify_growth_bound(f, cert, trials, seed);
    violations = r.bound_violations;
  } else if (suite == "sector") {
    for (std::uint64_t i = 0; i < trials; ++i) {
      CounterRng rng(seed, i);
      const double alpha = (rng.next_uniform() - 0.5) * 0.49 * M_PI;
      Sector s(alpha);
      const cplx z = std::polar(0.1 + 3.0 * rng.next_uniform(),
                                (rng.next_uniform() - 0.5) * 2.0 * M_PI);
      const double dist =
          std::min(std::abs(std::arg(z) - (alpha - M_PI / 4)),
                   std::abs(std::arg(z) - (alpha + M_PI / 4)));
      if (dist < 1e-12) continue;
      if (s.contains(z) != sector_sign_test(s, z)) ++violations;
    }
  } else {
    throw DomainViolation("unknown verify suite: " + suite);
  }
  emit(json{{"suite", suite},
            {"trials", trials},
            {"seed", seed},
            {"violations", violations},
            {"max_gap", max_gap}},
       output);
  return violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"white-noise calculus toolkit"};
  app.require_subcommand(1);

  std::string a_str = "0";
  std::string z_str = "1";
  std::string rho_str = "0";
  std::string tau_str = "0+1i";
  std::string xi_str = "zero";
  std::string eta_str;
  std::string output;
  std::string packet_file;
  std::string input_file;
  double t = 1.0;
  double alpha = 0.0;
  double phi0 = 0.0;
  double tol = 1e-10;
  double eps = 0.05;
  double h = 1e-3;
  unsigned n = 8;
  unsigned workers = default_workers();
  std::uint64_t samples = 100000;
  std::uint64_t steps = 1000;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  std::string suite = "homogeneity";
  std::string kind = "S";
  bool residual_mode = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", output, "write result to file");
  };

  auto* cmd_delta = app.add_subcommand("delta", "S-transform of Donsker's delta");
  cmd_delta->add_option("--t", t);
  cmd_delta->add_option("--a", a_str);
  cmd_delta->add_option("--xi", xi_str);
  add_common(cmd_delta);

  auto* cmd_scaled = app.add_subcommand("scaled-delta", "complex-scaled delta");
  cmd_scaled->add_option("--eta", eta_str);
  cmd_scaled->add_option("--t", t);
  cmd_scaled->add_option("--a", a_str);
  cmd_scaled->add_option("--z", z_str);
  cmd_scaled->add_option("--alpha", alpha);
  cmd_scaled->add_option("--xi", xi_str);
  add_common(cmd_scaled);

  auto* cmd_approx = app.add_subcommand("approximant", "regularized approximant");
  cmd_approx->add_option("--n", n);
  cmd_approx->add_option("--t", t);
  cmd_approx->add_option("--coeffs", samples)->description("eta_n span length");
  cmd_approx->add_option("--a", a_str);
  cmd_approx->add_option("--z", z_str);
  cmd_approx->add_option("--alpha", alpha);
  cmd_approx->add_option("--xi", xi_str);
  add_common(cmd_approx);

  auto* cmd_product = app.add_subcommand("product", "product of scaled deltas");
  cmd_product->add_option("--input", input_file)->required();
  cmd_product->add_option("--xi", xi_str);
  cmd_product->add_option("--alpha", alpha);
  add_common(cmd_product);

  auto* cmd_series = app.add_subcommand("series", "infinite shifted-delta series");
  cmd_series->add_option("--z", z_str);
  cmd_series->add_option("--t", t);
  cmd_series->add_option("--a", a_str);
  cmd_series->add_option("--xi", xi_str);
  add_common(cmd_series);

  auto* cmd_theta = app.add_subcommand("theta", "Jacobi theta function");
  cmd_theta->add_option("--rho", rho_str);
  cmd_theta->add_option("--tau", tau_str);
  cmd_theta->add_option("--tol", tol);
  add_common(cmd_theta);

  auto* cmd_local = app.add_subcommand("localtime", "Brownian local time");
  cmd_local->add_option("--t", t);
  cmd_local->add_option("--a", a_str);
  cmd_local->add_option("--xi", xi_str);
  cmd_local->add_option("--tol", tol);
  add_common(cmd_local);

  auto* cmd_circle = app.add_subcommand("circle", "particle on a circle");
  cmd_circle->add_option("--phi0", phi0);
  cmd_circle->add_option("--t", t);
  cmd_circle->add_option("--packet", packet_file, "wave packet JSON file");
  cmd_circle->add_flag("--residual", residual_mode,
                       "emit Schroedinger residual CSV");
  cmd_circle->add_option("--step", h);
  add_common(cmd_circle);

  auto* cmd_verify = app.add_subcommand("verify", "verification suites");
  cmd_verify->add_option("--suite", suite);
  cmd_verify->add_option("--trials", trials);
  cmd_verify->add_option("--seed", seed);
  add_common(cmd_verify);

  auto* cmd_oracle = app.add_subcommand("oracle", "Monte Carlo transform oracle");
  cmd_oracle->add_option("--kind", kind);
  cmd_oracle->add_option("--t", t);
  cmd_oracle->add_option("--a", a_str);
  cmd_oracle->add_option("--eps", eps);
  cmd_oracle->add_option("--xi", xi_str);
  cmd_oracle->add_option("--samples", samples);
  cmd_oracle->add_option("--steps", steps);
  cmd_oracle->add_option("--seed", seed);
  cmd_oracle->add_option("--workers", workers);
  add_common(cmd_oracle);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_delta->parsed()) {
      const cplx v = s_delta(t, complex_from_string(a_str),
                             parse_element(xi_str));
      emit(complex_result(v), output);
    } else if (cmd_scaled->parsed()) {
      const FunctionElement eta = eta_str.empty()
                                      ? FunctionElement::indicator(0.0, t)
                                      : parse_element(eta_str);
      DonskerDelta d(eta, complex_from_string(a_str),
                     complex_from_string(z_str), Sector(alpha));
      emit(complex_result(s_scaled_delta(d, parse_element(xi_str))), output);
    } else if (cmd_approx->parsed()) {
      const std::size_t count =
          cmd_approx->count("--coeffs") ? samples : std::size_t(n) * n;
      ApproximantSpec spec(n, Sector(alpha), project_indicator(0.0, t, count));
      const cplx v = s_approximant(spec, complex_from_string(z_str),
                                   complex_from_string(a_str),
                                   parse_element(xi_str));
      emit(complex_result(v), output);
    } else if (cmd_product->parsed()) {
      std::ifstream in(input_file);
      if (!in) throw DomainViolation("cannot open input: " + input_file);
      json j;
      in >> j;
      std::vector<std::pair<FunctionElement, cplx>> factors;
      for (const json& fj : j.at("factors"))
        factors.emplace_back(element_from_json(fj.at("f")),
                             complex_from_json(fj.at("a")));
      DeltaProduct p(complex_from_json(j.at("z")), std::move(factors),
                     Sector(alpha));
      emit(complex_result(s_product(p, parse_element(xi_str))), output);
    } else if (cmd_series->parsed()) {
      DeltaSeries d(complex_from_string(z_str), t, complex_from_string(a_str));
      emit(complex_result(s_series(d, parse_element(xi_str))), output);
    } else if (cmd_theta->parsed()) {
      ThetaArgs args(complex_from_string(rho_str),
                     complex_from_string(tau_str));
      const ThetaResult r = theta(args, tol);
      json out = complex_result(r.value);
      out["truncation"] = r.truncation;
      emit(out, output);
    } else if (cmd_local->parsed()) {
      LocalTimeQuery q(t, complex_from_string(a_str));
      emit(complex_result(s_local_time(q, parse_element(xi_str), tol)), output);
    } else if (cmd_circle->parsed()) {
      WavePacket packet({{1, cplx{1.0, 0.0}}}, 1.0);
      if (!packet_file.empty()) {
        std::ifstream in(packet_file);
        if (!in) throw DomainViolation("cannot open packet: " + packet_file);
        json j;
        in >> j;
        packet = packet_from_json(j);
      }
      if (residual_mode) {
        std::ostringstream csv;
        csv << "phi0,t,psi_re,psi_im,residual\n";
        for (int i = 0; i < 10; ++i)
          for (int k = 0; k < 10; ++k) {
            const double p = 2.0 * M_PI * i / 10.0;
            const double tt = t * (k + 1) / 10.0;
            const cplx psi = feynman_integral(CircleState(p, tt, packet));
            const double r =
                schroedinger_residual(packet, {p}, {tt}, h);
            csv << p << "," << tt << "," << psi.real() << "," << psi.imag()
                << "," << r << "\n";
          }
        if (output.empty())
          std::cout << csv.str();
        else
          std::ofstream(output) << csv.str();
      } else {
        emit(complex_result(feynman_integral(CircleState(phi0, t, packet))),
             output);
      }
    } else if (cmd_verify->parsed()) {
      return run_verify(suite, trials, seed, output);
    } else if (cmd_oracle->parsed()) {
      const double a = complex_from_string(a_str).real();
      const FunctionElement xi = parse_element(xi_str);
      const FunctionElement eta = FunctionElement::indicator(0.0, t);
      const TransformKind k =
          (kind == "T") ? TransformKind::T : TransformKind::S;
      auto mollified = [a, eps](std::span<const double> x) -> cplx {
        const double d = x[0] - a;
        return std::exp(-d * d / (2.0 * eps)) / std::sqrt(kTwoPi * eps);
      };
      const Estimate est = estimate_transform(k, mollified, {eta}, xi,
                                              samples, seed, workers);
      emit(json{{"re", est.value.real()},
                {"im", est.value.imag()},
                {"stderr", est.stderr_}},
           output);
    }
  } catch (const wnc::DomainError& e) {
    std::cerr << "{\"error\":\"domain\",\"message\":\"" << e.what() << "\"}\n";
    return 2;
  } catch (const wnc::NumericalError& e) {
    std::cerr << "{\"error\":\"numerical\",\"message\":\"" << e.what()
              << "\"}\n";
    return 3;
  }
  return 0;
}
