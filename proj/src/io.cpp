#include "maxbell/io.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace maxbell {

namespace {

using nlohmann::ordered_json;

// nlohmann prints doubles with %.17g; numbers are written by hand to keep
// the shortest round-trip form.
void append_number(std::string& out, double x) { out += format_double(x); }

void append_string(std::string& out, const std::string& s) { out += ordered_json(s).dump(); }

template <class Map>
void append_number_map(std::string& out, const Map& m) {
  out += '{';
  bool first = true;
  for (const auto& [k, v] : m) {
    if (!first) out += ',';
    first = false;
    append_string(out, k);
    out += ':';
    append_number(out, v);
  }
  out += '}';
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot serialize a non-finite number");
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string step_function_json(const StepFunction& phi) {
  std::string out = "{\"arity\":" + std::to_string(phi.config().arity) +
                    ",\"depth\":" + std::to_string(phi.config().depth) + ",\"values\":[";
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (i > 0) out += ',';
    append_number(out, phi[i]);
  }
  out += "]}";
  return out;
}

StepFunction step_function_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw std::invalid_argument(std::string("step function JSON does not parse: ") + e.what());
  }
  if (!j.is_object() || !j.contains("arity") || !j.contains("depth") || !j.contains("values")) {
    throw std::invalid_argument("step function JSON needs arity, depth and values");
  }
  if (!j["arity"].is_number_integer() || !j["depth"].is_number_integer() || !j["values"].is_array()) {
    throw std::invalid_argument("step function JSON has fields of the wrong type");
  }
  const TreeConfig config = make_tree(j["arity"].get<int>(), j["depth"].get<int>());
  const auto& vals = j["values"];
  if (vals.size() != config.leaf_count()) throw std::invalid_argument("values array length must equal arity^depth");
  Eigen::ArrayXd v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i].is_number()) throw std::invalid_argument("values must be numbers");
    v[static_cast<Eigen::Index>(i)] = vals[i].get<double>();
  }
  return StepFunction(config, std::move(v));
}

StepFunction read_step_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return step_function_from_json(ss.str());
}

std::string linearization_json(const Linearization& lin) {
  const int m = lin.config.arity;
  std::map<std::string, double> y;
  std::map<std::string, double> a;
  std::string support = "[";
  std::string star = "{";
  bool first_star = true;
  for (std::size_t i = 0; i < lin.nodes.size(); ++i) {
    const SupportNode& n = lin.nodes[i];
    const std::string key = n.id.digits(m);
    if (i > 0) support += ',';
    append_string(support, key);
    y[key] = n.average;
    a[key] = n.a_measure;
    if (n.star) {
      if (!first_star) star += ',';
      first_star = false;
      append_string(star, key);
      star += ':';
      append_string(star, lin.nodes[*n.star].id.digits(m));
    }
  }
  support += ']';
  star += '}';

  std::string out = "{\"support\":" + support + ",\"y\":";
  append_number_map(out, y);
  out += ",\"aMeasure\":";
  append_number_map(out, a);
  out += ",\"star\":" + star + "}";
  return out;
}

std::string gap_report_json(const GapReport& r) {
  std::string out = "{\"name\":";
  append_string(out, r.name);
  out += ",\"lhs\":";
  append_number(out, r.lhs);
  out += ",\"rhs\":";
  append_number(out, r.rhs);
  out += ",\"gap\":";
  append_number(out, r.gap);
  out += ",\"components\":";
  append_number_map(out, r.components);
  out += ",\"params\":";
  append_number_map(out, r.params);
  out += '}';
  return out;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepPoint> points) {
  os << "alpha,G,limit,abs_err\n";
  for (const SweepPoint& s : points) {
    os << format_double(s.alpha) << ',' << format_double(s.G) << ',' << format_double(s.limit) << ','
       << format_double(s.abs_err) << '\n';
  }
}

void write_beta_sweep_csv(std::ostream& os, std::span<const BetaSweepPoint> points) {
  os << "beta,J,expected,abs_err\n";
  for (const BetaSweepPoint& s : points) {
    os << format_double(s.beta) << ',' << format_double(s.J) << ',' << format_double(s.expected) << ','
       << format_double(s.abs_err) << '\n';
  }
}

void write_experiment_csv(std::ostream& os, std::span<const ExperimentRow> rows) {
  os << "step,arity,depth,f,F_measured,maximal_p_integral,bellman_target,gap18,gap41,stability,A_q,q_measured,"
        "q_predicted\n";
  for (const ExperimentRow& r : rows) {
    os << r.step << ',' << r.arity << ',' << r.depth;
    for (double x : {r.f, r.F_measured, r.maximal_p_integral, r.bellman_target, r.gap18, r.gap41, r.stability,
                     r.A_q, r.q_measured, r.q_predicted}) {
      os << ',' << format_double(x);
    }
    os << '\n';
  }
}

}  // namespace maxbell
