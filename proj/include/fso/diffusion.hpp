#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace fso {

using Rng = std::mt19937_64;

// Portable draws: the std distributions are implementation-defined, which
// would make traces differ between standard libraries.
double uniform01(Rng& rng);
std::size_t uniform_index(Rng& rng, std::size_t bound);  // in [0, bound), bound > 0

struct Edge {
  std::size_t u;
  std::size_t v;  // u < v
  auto operator<=>(const Edge&) const = default;
};

// Undirected simple graph over vertices 0..n-1 with a sorted edge list.
struct Graph {
  std::size_t n = 0;
  std::vector<Edge> edges;

  void add_edge(std::size_t a, std::size_t b);  // normalizes, keeps sorted, ignores duplicates
  std::vector<std::vector<std::size_t>> adjacency() const;
  bool operator==(const Graph&) const = default;
};

// Balanced rooted tree in level order: vertex i hangs under (i - 1) / branching.
Graph gen_hierarchy(std::size_t n, std::size_t branching);

// Ring of cliques. Cells of `cell_size` consecutive agents are cliques and
// each pair of adjacent cells is joined by two vertex-disjoint bridges.
// Throws InvalidParams unless cell_size >= 3 divides n.
Graph gen_fractal(std::size_t n, std::size_t cell_size);

// Connectivity of the vertices not marked in `removed`.
bool is_connected(const Graph& g, const std::vector<bool>& removed = {});
// Articulation points (Tarjan low-link), ascending.
std::vector<std::size_t> cut_vertices(const Graph& g);
bool is_biconnected(const Graph& g);

// Agents x knowledge x tasks. Only the agent-agent layer drives dynamics.
class MetaNetwork {
 public:
  // Agent i starts knowing unit (i mod knowledge_units) and performs task
  // (i mod tasks).
  MetaNetwork(Graph graph, std::size_t knowledge_units, std::size_t tasks);

  std::size_t agents() const noexcept { return graph_.n; }
  std::size_t knowledge_units() const noexcept { return units_; }
  std::size_t tasks() const noexcept { return tasks_; }
  const Graph& graph() const noexcept { return graph_; }

  bool knows(std::size_t agent, std::size_t unit) const { return knows_[agent * units_ + unit] != 0; }
  void learn(std::size_t agent, std::size_t unit) { knows_[agent * units_ + unit] = 1; }
  std::size_t known_count(std::size_t agent) const;
  std::size_t task_of(std::size_t agent) const { return assignment_[agent]; }

  bool is_isolated(std::size_t agent) const { return isolated_[agent]; }
  void mark_isolated(std::size_t agent) { isolated_[agent] = true; }
  std::size_t isolated_count() const;
  std::size_t live_degree(std::size_t agent) const;
  // Edges whose endpoints are both non-isolated, in canonical order.
  std::vector<Edge> live_edges() const;

  bool operator==(const MetaNetwork&) const = default;

 private:
  Graph graph_;
  std::size_t units_;
  std::size_t tasks_;
  std::vector<std::uint8_t> knows_;
  std::vector<std::size_t> assignment_;
  std::vector<bool> isolated_;
};

// Fraction of (agent, unit) pairs where the agent knows the unit.
double diffusion_measure(const MetaNetwork& net);

// One synchronous round. For every live edge in canonical order and each
// direction (u->v, then v->u): with probability p the sender passes one
// uniformly chosen unit the receiver lacks. Decisions see the pre-round state.
void step(MetaNetwork& net, Rng& rng, double p);

enum class IsolationStrategy { Random, MaxDegree };
enum class Topology { Fractal, Hierarchy };

std::string_view to_string(IsolationStrategy s);
std::string_view to_string(Topology t);

// Cuts every edge of one agent and returns it: uniform among non-isolated
// agents, or the highest live degree (lowest id on ties). Throws NoAgentsLeft.
std::size_t isolate(MetaNetwork& net, IsolationStrategy strategy, Rng& rng);

struct IsolationEvent {
  std::size_t time;  // applied just before the round producing trace[time]
  IsolationStrategy strategy = IsolationStrategy::MaxDegree;
  bool operator==(const IsolationEvent&) const = default;
};

struct ScenarioSpec {
  Topology topology = Topology::Fractal;
  std::size_t agents = 15;
  std::size_t knowledge_units = 15;
  std::size_t tasks = 15;
  std::size_t branching = 2;
  std::size_t cell_size = 3;
  std::size_t horizon = 150;
  double transmit_probability = 0.5;
  std::vector<IsolationEvent> isolations;
  std::uint64_t seed = 0;

  void validate() const;  // throws InvalidParams
  bool operator==(const ScenarioSpec&) const = default;
};

// The three reported scenarios: 1 = no isolation, 2 = one isolation at t=10,
// 3 = five isolations at t = 10, 20, 40, 70, 120.
ScenarioSpec standard_scenario(int number, Topology topology);

Graph build_topology(const ScenarioSpec& spec);

struct IsolationRecord {
  std::size_t time;
  std::size_t agent;
  IsolationStrategy strategy;
  bool operator==(const IsolationRecord&) const = default;
};

struct DiffusionTrace {
  std::vector<double> values;  // horizon + 1 entries, values[0] is the initial state
  std::vector<IsolationRecord> isolations;
  bool operator==(const DiffusionTrace&) const = default;
};

DiffusionTrace run_scenario(const ScenarioSpec& spec);

struct AggregateTrace {
  std::vector<double> mean;
  std::vector<double> min;
  std::vector<double> max;
  std::vector<DiffusionTrace> replicates;  // replicate r ran with seed + r
};

// Replicates run on up to `threads` workers (0 = hardware concurrency); the
// result does not depend on the schedule.
AggregateTrace monte_carlo(const ScenarioSpec& spec, std::size_t replicates, unsigned threads = 0);

// Order-fixed reduction of per-replicate traces.
AggregateTrace aggregate(std::vector<DiffusionTrace> traces);

}  // namespace fso
