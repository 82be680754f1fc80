#include "maxbell/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace maxbell {

namespace {

// Running maximum of ancestor averages, carried root to leaves. `level_of`
// records the level of the largest (closest to root) cell attaining it:
// only a strictly larger average moves the attaining cell down.
struct RunningMax {
  Eigen::ArrayXd value;
  std::vector<int> level_of;
};

RunningMax running_max(const StepFunction& phi) {
  const auto averages = level_averages(phi);
  const int arity = phi.config().arity;
  RunningMax cur{averages[0], {0}};
  for (std::size_t k = 1; k < averages.size(); ++k) {
    const Eigen::ArrayXd& avg = averages[k];
    RunningMax next{Eigen::ArrayXd(avg.size()), std::vector<int>(static_cast<std::size_t>(avg.size()))};
    for (Eigen::Index i = 0; i < avg.size(); ++i) {
      const Eigen::Index parent = i / arity;
      if (avg[i] > cur.value[parent]) {
        next.value[i] = avg[i];
        next.level_of[static_cast<std::size_t>(i)] = static_cast<int>(k);
      } else {
        next.value[i] = cur.value[parent];
        next.level_of[static_cast<std::size_t>(i)] = cur.level_of[static_cast<std::size_t>(parent)];
      }
    }
    cur = std::move(next);
  }
  return cur;
}

std::uint64_t node_key(const TreeConfig& config, const NodeId& node) {
  // Level-order numbering: all nodes of shallower levels come first.
  std::uint64_t offset = 0;
  for (int l = 0; l < node.level; ++l) offset += config.nodes_at(l);
  return offset + node.index;
}

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must be greater than 1");
}

}  // namespace

GapReport make_gap_report(std::string name, double lhs, double rhs) {
  GapReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = rhs - lhs;
  return r;
}

StepFunction maximal_function(const StepFunction& phi) {
  return StepFunction(phi.config(), running_max(phi).value);
}

std::optional<std::size_t> Linearization::find(const NodeId& id) const {
  const auto it = std::lower_bound(nodes.begin(), nodes.end(), id,
                                   [](const SupportNode& n, const NodeId& key) { return n.id < key; });
  if (it == nodes.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

std::vector<std::size_t> Linearization::star_children(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (nodes[j].star && *nodes[j].star == i) out.push_back(j);
  }
  return out;
}

Eigen::ArrayXd Linearization::reconstruct() const {
  Eigen::ArrayXd out(static_cast<Eigen::Index>(owner.size()));
  for (std::size_t x = 0; x < owner.size(); ++x) out[static_cast<Eigen::Index>(x)] = nodes[owner[x]].average;
  return out;
}

Linearization linearize(const StepFunction& phi) {
  const TreeConfig& config = phi.config();
  const auto averages = level_averages(phi);
  const RunningMax rm = running_max(phi);
  const std::size_t leaves = phi.size();

  // I_φ(x) for each leaf, as a node id.
  std::vector<NodeId> owner_ids(leaves);
  for (std::size_t x = 0; x < leaves; ++x) {
    const int lvl = rm.level_of[x];
    const NodeId id{lvl, x / config.nodes_at(config.depth - lvl)};
    // Every finite-depth step function is 𝒯-good: the supremum is the
    // average of an actual ancestor.
    if (averages[static_cast<std::size_t>(lvl)][static_cast<Eigen::Index>(id.index)] !=
        rm.value[static_cast<Eigen::Index>(x)]) {
      throw std::logic_error("maximal value not attained by an ancestor cell");
    }
    owner_ids[x] = id;
  }

  std::vector<NodeId> support = owner_ids;
  support.push_back(NodeId::root());
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  Linearization lin;
  lin.config = config;
  lin.nodes.reserve(support.size());
  std::unordered_map<std::uint64_t, std::size_t> index_of;
  for (const NodeId& id : support) {
    SupportNode node;
    node.id = id;
    node.measure = node_measure(config, id);
    node.average = averages[static_cast<std::size_t>(id.level)][static_cast<Eigen::Index>(id.index)];
    index_of.emplace(node_key(config, id), lin.nodes.size());
    lin.nodes.push_back(node);
  }

  lin.owner.resize(leaves);
  for (std::size_t x = 0; x < leaves; ++x) {
    const std::size_t i = index_of.at(node_key(config, owner_ids[x]));
    lin.owner[x] = i;
    ++lin.nodes[i].a_count;
  }
  const double leaf_measure = config.leaf_measure();
  for (SupportNode& node : lin.nodes) {
    node.a_measure = static_cast<double>(node.a_count) * leaf_measure;
    if (node.id.level == 0) continue;
    NodeId up = node.id.parent(config.arity);
    while (true) {
      const auto it = index_of.find(node_key(config, up));
      if (it != index_of.end()) {
        node.star = it->second;
        break;
      }
      up = up.parent(config.arity);
    }
  }
  return lin;
}

GapReport weak_type_gap(const StepFunction& phi, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const StepFunction m = maximal_function(phi);
  const Eigen::ArrayXd masked = (m.values() > lambda).select(phi.values(), 0.0);
  const double level_set = distribution(m, lambda);
  const double mass = tree_sum(masked, phi.config().arity) * phi.config().leaf_measure();
  GapReport r = make_gap_report("weak_type", level_set, mass / lambda);
  r.components["level_set_measure"] = level_set;
  r.components["level_set_integral"] = mass;
  r.params["lambda"] = lambda;
  return r;
}

GapReport lp_bound_gap(const StepFunction& phi, double p) {
  require_p(p);
  const StepFunction m = maximal_function(phi);
  const double maximal_p = power_integral(m, p);
  const double F = power_integral(phi, p);
  GapReport r = make_gap_report("lp_bound", std::pow(maximal_p, 1.0 / p), p / (p - 1.0) * std::pow(F, 1.0 / p));
  r.components["maximal_p_integral"] = maximal_p;
  r.components["F"] = F;
  r.params["p"] = p;
  return r;
}

std::map<NodeId, double> linearization_slack(const StepFunction& phi, double q, double beta, double p) {
  return linearization_slack(phi, linearize(phi), q, beta, p);
}

std::map<NodeId, double> linearization_slack(const StepFunction& phi, const Linearization& lin, double q,
                                             double beta, double p) {
  require_p(p);
  if (!(q > 1.0 && q <= p)) throw std::invalid_argument("q must lie in (1,p]");
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be positive");

  const double leaf_measure = phi.config().leaf_measure();
  std::vector<double> a_integral(lin.nodes.size(), 0.0);
  for (std::size_t x = 0; x < lin.owner.size(); ++x) a_integral[lin.owner[x]] += std::pow(phi[x], q) * leaf_measure;

  const double bq = std::pow(beta + 1.0, q - 1.0);
  std::vector<double> child_term(lin.nodes.size(), 0.0);
  for (const SupportNode& node : lin.nodes) {
    if (node.star) child_term[*node.star] += node.measure * std::pow(node.average, q) / bq;
  }

  std::map<NodeId, double> slack;
  for (std::size_t i = 0; i < lin.nodes.size(); ++i) {
    const SupportNode& node = lin.nodes[i];
    const double rho = node.a_measure / node.measure;
    const double tau = (beta + 1.0) - beta * rho;
    const double bracket = node.measure * std::pow(node.average, q) / std::pow(tau, q - 1.0) - child_term[i];
    slack.emplace(node.id, a_integral[i] - bracket);
  }
  return slack;
}

}  // namespace maxbell
