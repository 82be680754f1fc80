#include "maxbell/cli.hpp"

#include "maxbell/bellman.hpp"
#include "maxbell/extremal.hpp"
#include "maxbell/hardy.hpp"
#include "maxbell/io.hpp"
#include "maxbell/maximal.hpp"
#include "maxbell/sampling.hpp"
#include "maxbell/selftest.hpp"
#include "maxbell/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace maxbell {

namespace {

constexpr double kGapTolerance = 1e-11;

struct Outcome {
  std::string text;
  bool violation = false;
};

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw std::invalid_argument(std::string("missing ") + flag);
  return *v;
}

bool below_tolerance(const GapReport& r) { return r.gap < -kGapTolerance * std::max(1.0, std::abs(r.rhs)); }

SpineLayout parse_layout(const std::string& s) {
  if (s == "interleaved") return SpineLayout::interleaved;
  if (s == "chain") return SpineLayout::chain;
  throw std::invalid_argument("layout must be chain or interleaved");
}

// Depths D−10, D−8, …, D at fixed arity, dropping levels below 1.
std::vector<Refinement> ladder(const RunConfig& c) {
  const int arity = c.arity.value_or(2);
  const int finest = c.depth.value_or(20);
  if (finest < 1) throw std::invalid_argument("depth must be at least 1");
  std::vector<Refinement> out;
  for (int d = finest - 10; d <= finest; d += 2) {
    if (d >= 1) out.push_back({arity, d});
  }
  for (const Refinement& r : out) make_tree(r.arity, r.depth);
  return out;
}

std::string row(std::initializer_list<double> xs) {
  std::string s;
  for (double x : xs) {
    if (!s.empty()) s += ',';
    s += format_double(x);
  }
  return s + '\n';
}

Outcome cmd_bellman(const RunConfig& c, Format fmt) {
  const double f = need(c.f, "f");
  const double F = need(c.F, "F");
  const double p = need(c.p, "p");
  Params{.p = p, .f = f, .F = F}.validate_pair();
  const double beta = solve_beta(f, F, p);
  const double omega = omega_p(std::min(1.0, std::pow(f, p) / F), p);
  const double B = bellman_value(f, F, p);
  if (fmt == Format::csv) return {"f,F,p,beta,omega,bellman\n" + row({f, F, p, beta, omega, B})};
  std::string out = "{";
  const std::pair<const char*, double> items[] = {{"f", f},         {"F", F},         {"p", p},
                                                  {"beta", beta},   {"omega", omega}, {"bellman", B}};
  for (const auto& [k, v] : items) {
    if (out.size() > 1) out += ',';
    out += '"' + std::string(k) + "\":" + format_double(v);
  }
  return {out + "}\n"};
}

Outcome cmd_verify(const RunConfig& c, Format fmt) {
  const double p = c.p.value_or(2.0);
  const double q = c.q.value_or(1.0);
  if (!(p > 1.0)) throw std::invalid_argument("p must be greater than 1");
  const double beta = c.beta.value_or(1.0 / (p - 1.0));
  Params{.p = p, .q = q, .beta = beta}.validate();

  std::vector<StepFunction> phis;
  if (!c.input.empty()) {
    phis.push_back(read_step_function(c.input));
  } else {
    Rng rng(c.seed);
    const std::size_t n = c.samples.value_or(1);
    if (n < 1) throw std::invalid_argument("samples must be at least 1");
    const TreeConfig config = make_tree(c.arity.value_or(2), c.depth.value_or(4));
    for (std::size_t i = 0; i < n; ++i) phis.push_back(random_step_function(rng, config));
  }

  Outcome o;
  std::string body;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const StepFunction& phi = phis[i];
    std::vector<GapReport> reports = {ineq_18_report(phi, p, q, beta), ineq_41_report(phi, p, q, beta),
                                      theorem_a_report(phi, p), lp_bound_gap(phi, p)};
    const double f = integrate(phi);
    if (f > 0.0) reports.push_back(weak_type_gap(phi, f));
    for (const GapReport& r : reports) {
      o.violation = o.violation || below_tolerance(r);
      if (fmt == Format::csv) {
        body += std::to_string(i) + ',' + r.name + ',' + row({r.lhs, r.rhs, r.gap});
      } else {
        if (!body.empty()) body += ',';
        body += "{\"sample\":" + std::to_string(i) + ",\"report\":" + gap_report_json(r) + '}';
      }
    }
  }
  o.text = fmt == Format::csv ? "sample,name,lhs,rhs,gap\n" + body : "{\"reports\":[" + body + "]}\n";
  return o;
}

Outcome cmd_sweep(const RunConfig& c, Format fmt) {
  const double p = c.p.value_or(2.0);
  if (!(p > 1.0)) throw std::invalid_argument("p must be greater than 1");
  const double q = c.q.value_or(p);
  const std::size_t n = c.samples.value_or(30);
  if (n < 2) throw std::invalid_argument("samples must be at least 2");
  std::ostringstream os;
  Outcome o;
  if (c.kind == "alpha") {
    const auto points = sharpness_sweep(p, q, geometric_alpha_grid(p, n, 0.5 / p, 1e-6));
    for (std::size_t k = 1; k < points.size(); ++k) o.violation |= !(points[k].abs_err < points[k - 1].abs_err);
    if (fmt == Format::csv) {
      write_sweep_csv(os, points);
    } else {
      os << "[";
      for (std::size_t k = 0; k < points.size(); ++k) {
        const SweepPoint& s = points[k];
        os << (k ? "," : "") << "{\"alpha\":" << format_double(s.alpha) << ",\"G\":" << format_double(s.G)
           << ",\"limit\":" << format_double(s.limit) << ",\"abs_err\":" << format_double(s.abs_err) << '}';
      }
      os << "]\n";
    }
  } else if (c.kind == "beta") {
    std::vector<double> betas(n);
    for (std::size_t k = 0; k < n; ++k) betas[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(n) / (p - 1.0);
    const auto points = beta_sweep(p, q, betas);
    for (const BetaSweepPoint& s : points) o.violation |= !(s.abs_err <= 1e-9);
    if (fmt == Format::csv) {
      write_beta_sweep_csv(os, points);
    } else {
      os << "[";
      for (std::size_t k = 0; k < points.size(); ++k) {
        const BetaSweepPoint& s = points[k];
        os << (k ? "," : "") << "{\"beta\":" << format_double(s.beta) << ",\"J\":" << format_double(s.J)
           << ",\"expected\":" << format_double(s.expected) << ",\"abs_err\":" << format_double(s.abs_err) << '}';
      }
      os << "]\n";
    }
  } else {
    throw std::invalid_argument("sweep kind must be alpha or beta");
  }
  o.text = os.str();
  return o;
}

Outcome cmd_extremal(const RunConfig& c, Format fmt) {
  const double f = c.f.value_or(1.0);
  const double F = c.F.value_or(4.0 / 3.0);
  const double p = c.p.value_or(2.0);
  const double q = c.q.value_or(0.5 * (1.0 + p));
  Params{.p = p, .f = f, .F = F}.validate_pair();
  const auto refinements = ladder(c);
  const auto rows = run_extremal_experiment(f, F, p, q, refinements, parse_layout(c.layout));

  Outcome o;
  for (const ExperimentRow& r : rows) o.violation |= r.gap18 < -1e-9 * std::max(1.0, r.maximal_p_integral);
  std::ostringstream os;
  if (fmt == Format::csv) {
    write_experiment_csv(os, rows);
  } else {
    os << "[";
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const ExperimentRow& r = rows[k];
      os << (k ? "," : "") << "{\"step\":" << r.step << ",\"arity\":" << r.arity << ",\"depth\":" << r.depth;
      const std::pair<const char*, double> items[] = {
          {"f", r.f},         {"F_measured", r.F_measured}, {"maximal_p_integral", r.maximal_p_integral},
          {"bellman_target", r.bellman_target}, {"gap18", r.gap18}, {"gap41", r.gap41},
          {"stability", r.stability}, {"A_q", r.A_q}, {"q_measured", r.q_measured},
          {"q_predicted", r.q_predicted}};
      for (const auto& [key, v] : items) os << ",\"" << key << "\":" << format_double(v);
      os << '}';
    }
    os << "]\n";
  }
  o.text = os.str();
  return o;
}

double max_slack(const StepFunction& phi, const Linearization& lin, double q, double beta, double p) {
  const auto slack = linearization_slack(phi, lin, q, beta, p);
  double worst = 0.0;
  for (const SupportNode& n : lin.nodes) {
    if (n.a_measure > 0.0) worst = std::max(worst, slack.at(n.id));
  }
  return worst;
}

Outcome cmd_stability(const RunConfig& c, Format fmt) {
  const double p = c.p.value_or(2.0);
  if (!(p > 1.0)) throw std::invalid_argument("p must be greater than 1");
  const double q = c.q.value_or(0.5 * (1.0 + p));
  if (!(q > 1.0 && q < p)) throw std::invalid_argument("q must lie in (1,p)");
  Outcome o;

  if (!c.input.empty()) {
    const StepFunction phi = read_step_function(c.input);
    const double beta = c.beta ? *c.beta : solve_beta(integrate(phi), power_integral(phi, p), p);
    Params{.p = p, .q = q, .beta = beta}.validate();
    const Linearization lin = linearize(phi);
    const double stab = stability_metric(phi, beta, p);
    const GapReport g41 = ineq_41_report(phi, p, q, beta);
    const double slack = max_slack(phi, lin, q, beta, p);
    o.violation = below_tolerance(g41);
    if (fmt == Format::csv) {
      o.text = "beta,gap41,stability,max_slack\n" + row({beta, g41.gap, stab, slack});
    } else {
      o.text = "{\"beta\":" + format_double(beta) + ",\"gap41\":" + format_double(g41.gap) +
               ",\"stability\":" + format_double(stab) + ",\"max_slack\":" + format_double(slack) +
               ",\"linearization\":" + linearization_json(lin) + "}\n";
    }
    return o;
  }

  const double f = c.f.value_or(1.0);
  const double F = c.F.value_or(4.0 / 3.0);
  Params{.p = p, .f = f, .F = F}.validate_pair();
  if (!(F > std::pow(f, p))) throw std::invalid_argument("stability ladder requires f^p < F");
  const auto refinements = ladder(c);
  const ExtremalSequence seq = extremal_sequence(f, F, p, refinements, parse_layout(c.layout));
  std::string body = fmt == Format::csv ? "step,arity,depth,beta,gap41,stability,max_slack\n" : "[";
  for (std::size_t k = 0; k < seq.steps.size(); ++k) {
    const StepFunction& phi = seq.steps[k];
    const GapReport g41 = ineq_41_report(phi, p, q, seq.beta);
    const double stab = stability_metric(phi, seq.beta, p);
    const double slack = max_slack(phi, linearize(phi), q, seq.beta, p);
    o.violation = o.violation || below_tolerance(g41);
    const Refinement& r = seq.refinements[k];
    if (fmt == Format::csv) {
      body += std::to_string(k) + ',' + std::to_string(r.arity) + ',' + std::to_string(r.depth) + ',' +
              row({seq.beta, g41.gap, stab, slack});
    } else {
      body += std::string(k ? "," : "") + "{\"step\":" + std::to_string(k) + ",\"arity\":" + std::to_string(r.arity) +
              ",\"depth\":" + std::to_string(r.depth) + ",\"beta\":" + format_double(seq.beta) +
              ",\"gap41\":" + format_double(g41.gap) + ",\"stability\":" + format_double(stab) +
              ",\"max_slack\":" + format_double(slack) + '}';
    }
  }
  o.text = fmt == Format::csv ? body : body + "]\n";
  return o;
}

Outcome cmd_selftest(const RunConfig& c, Format fmt) {
  const std::size_t n = c.samples.value_or(1000);
  if (n < 1) throw std::invalid_argument("samples must be at least 1");
  const auto results = run_selftest(c.seed, n);
  Outcome o;
  std::string body = fmt == Format::csv ? "suite,checks,failures,worst,status\n" : "[";
  for (std::size_t k = 0; k < results.size(); ++k) {
    const SuiteResult& r = results[k];
    o.violation = o.violation || !r.ok();
    const std::string worst = std::isfinite(r.worst) ? format_double(r.worst) : "\"inf\"";
    if (fmt == Format::csv) {
      body += r.name + ',' + std::to_string(r.checks) + ',' + std::to_string(r.failures) + ',' +
              (std::isfinite(r.worst) ? format_double(r.worst) : "inf") + ',' + (r.ok() ? "PASS" : "FAIL") + '\n';
    } else {
      nlohmann::json name = r.name;
      nlohmann::json first = r.first_failure;
      body += std::string(k ? "," : "") + "{\"suite\":" + name.dump() + ",\"checks\":" + std::to_string(r.checks) +
              ",\"failures\":" + std::to_string(r.failures) + ",\"worst\":" + worst +
              ",\"first_failure\":" + first.dump() + '}';
    }
  }
  o.text = fmt == Format::csv ? body : body + "]\n";
  return o;
}

Format default_format(Command c) {
  switch (c) {
    case Command::bellman:
    case Command::verify:
      return Format::json;
    default:
      return Format::csv;
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome o;
  try {
    const Format fmt = config.format.value_or(default_format(config.command));
    switch (config.command) {
      case Command::bellman: o = cmd_bellman(config, fmt); break;
      case Command::verify: o = cmd_verify(config, fmt); break;
      case Command::sweep: o = cmd_sweep(config, fmt); break;
      case Command::extremal: o = cmd_extremal(config, fmt); break;
      case Command::stability: o = cmd_stability(config, fmt); break;
      case Command::selftest: o = cmd_selftest(config, fmt); break;
    }
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::length_error& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  if (config.output.empty()) {
    out << o.text;
  } else {
    std::ofstream file(config.output, std::ios::binary);
    if (!file) {
      err << "invalid configuration: cannot write " << config.output << '\n';
      return 2;
    }
    file << o.text;
  }
  if (o.violation) {
    err << "invariant violation\n";
    return 1;
  }
  return 0;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tree maximal operator and Bellman function toolkit", "maxbell"};
  app.set_config("--config", "", "TOML or INI file with flag values; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::vector<double> positional;
  std::string format;
  app.add_option("--p", cfg.p, "exponent p > 1");
  app.add_option("--q", cfg.q, "exponent q in [1,p]");
  app.add_option("--beta", cfg.beta, "beta > 0");
  app.add_option("--f", cfg.f, "integral of phi");
  app.add_option("--F", cfg.F, "integral of phi^p");
  app.add_option("--arity", cfg.arity, "tree arity");
  app.add_option("--depth", cfg.depth, "tree depth (finest level of a ladder)");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");
  app.add_option("--samples", cfg.samples, "sample count or grid size");
  app.add_option("--input", cfg.input, "StepFunction JSON input");
  app.add_option("--out", cfg.output, "output path (default stdout)");
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--kind", cfg.kind, "sweep family: alpha or beta")->check(CLI::IsMember({"alpha", "beta"}));
  app.add_option("--layout", cfg.layout, "spine layout: chain or interleaved")
      ->check(CLI::IsMember({"chain", "interleaved"}));

  const std::pair<const char*, Command> commands[] = {
      {"bellman", Command::bellman},   {"verify", Command::verify},       {"sweep", Command::sweep},
      {"extremal", Command::extremal}, {"stability", Command::stability}, {"selftest", Command::selftest}};
  const char* help[] = {"print beta, omega_p and B(f,F) for f F p", "evaluate the tree inequalities",
                        "sharpness sweeps as CSV", "extremal refinement ladder",
                        "stability trajectory or single-function linearization", "run every invariant suite"};
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) subs.push_back(app.add_subcommand(commands[i].first, help[i]));
  subs[0]->add_option("values", positional, "f F p")->expected(0, 3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) cfg.command = commands[i].second;
  }
  if (!format.empty()) cfg.format = format == "json" ? Format::json : Format::csv;
  if (!positional.empty()) {
    if (positional.size() != 3) {
      err << "invalid configuration: bellman takes f F p\n";
      return 2;
    }
    cfg.f = positional[0];
    cfg.F = positional[1];
    cfg.p = positional[2];
  }
  return run(cfg, out, err);
}

}  // namespace maxbell
