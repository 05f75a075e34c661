#include "fso/diffusion.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "fso/errors.hpp"

namespace fso {

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t uniform_index(Rng& rng, std::size_t bound) {
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

void Graph::add_edge(std::size_t a, std::size_t b) {
  if (a == b || a >= n || b >= n) throw InvalidParams("invalid edge");
  Edge e{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) edges.insert(it, e);
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

Graph gen_hierarchy(std::size_t n, std::size_t branching) {
  if (n < 1 || branching < 2) throw InvalidParams("hierarchy needs n >= 1 and branching >= 2");
  Graph g{n, {}};
  for (std::size_t i = 1; i < n; ++i) g.add_edge((i - 1) / branching, i);
  return g;
}

Graph gen_fractal(std::size_t n, std::size_t cell_size) {
  if (cell_size < 3) throw InvalidParams("fractal cell size must be at least 3");
  if (n == 0 || n % cell_size != 0) {
    throw InvalidParams("agent count " + std::to_string(n) + " is not a multiple of cell size " +
                        std::to_string(cell_size));
  }
  Graph g{n, {}};
  const std::size_t cells = n / cell_size;
  auto at = [&](std::size_t cell, std::size_t k) { return cell * cell_size + k; };
  for (std::size_t c = 0; c < cells; ++c)
    for (std::size_t i = 0; i < cell_size; ++i)
      for (std::size_t j = i + 1; j < cell_size; ++j) g.add_edge(at(c, i), at(c, j));

  // Two cells share one adjacent pair; three or more close the ring.
  const std::size_t links = cells < 2 ? 0 : (cells == 2 ? 1 : cells);
  for (std::size_t c = 0; c < links; ++c) {
    const std::size_t next = (c + 1) % cells;
    g.add_edge(at(c, cell_size - 1), at(next, 0));
    g.add_edge(at(c, cell_size - 2), at(next, 1));
  }
  return g;
}

bool is_connected(const Graph& g, const std::vector<bool>& removed) {
  auto gone = [&](std::size_t v) { return !removed.empty() && removed[v]; };
  const auto adj = g.adjacency();
  std::size_t start = g.n;
  std::size_t alive = 0;
  for (std::size_t v = 0; v < g.n; ++v) {
    if (gone(v)) continue;
    ++alive;
    if (start == g.n) start = v;
  }
  if (alive <= 1) return true;
  std::vector<bool> seen(g.n, false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v]) {
      if (seen[w] || gone(w)) continue;
      seen[w] = true;
      ++reached;
      stack.push_back(w);
    }
  }
  return reached == alive;
}

std::vector<std::size_t> cut_vertices(const Graph& g) {
  const auto adj = g.adjacency();
  constexpr std::size_t unvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> order(g.n, unvisited), low(g.n, 0);
  std::vector<bool> is_cut(g.n, false);
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t parent;
    std::size_t next = 0;
    std::size_t tree_children = 0;
  };
  for (std::size_t root = 0; root < g.n; ++root) {
    if (order[root] != unvisited) continue;
    std::vector<Frame> stack{{root, unvisited}};
    order[root] = low[root] = counter++;
    while (!stack.empty()) {
      auto& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto w = adj[f.v][f.next++];
        if (order[w] == unvisited) {
          ++f.tree_children;
          order[w] = low[w] = counter++;
          stack.push_back({w, f.v});
        } else if (w != f.parent) {
          low[f.v] = std::min(low[f.v], order[w]);
        }
        continue;
      }
      Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.tree_children >= 2) is_cut[done.v] = true;
        continue;
      }
      auto& up = stack.back();
      low[up.v] = std::min(low[up.v], low[done.v]);
      if (up.parent != unvisited && low[done.v] >= order[up.v]) is_cut[up.v] = true;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.n; ++v)
    if (is_cut[v]) out.push_back(v);
  return out;
}

bool is_biconnected(const Graph& g) { return is_connected(g) && cut_vertices(g).empty(); }

MetaNetwork::MetaNetwork(Graph graph, std::size_t knowledge_units, std::size_t tasks)
    : graph_(std::move(graph)),
      units_(knowledge_units),
      tasks_(tasks),
      knows_(graph_.n * knowledge_units, 0),
      assignment_(graph_.n, 0),
      isolated_(graph_.n, false) {
  if (units_ == 0 || tasks_ == 0) throw InvalidParams("knowledge and task counts must be positive");
  for (std::size_t a = 0; a < graph_.n; ++a) {
    learn(a, a % units_);
    assignment_[a] = a % tasks_;
  }
}

std::size_t MetaNetwork::known_count(std::size_t agent) const {
  auto row = knows_.begin() + static_cast<std::ptrdiff_t>(agent * units_);
  return static_cast<std::size_t>(std::count(row, row + static_cast<std::ptrdiff_t>(units_), 1));
}

std::size_t MetaNetwork::isolated_count() const {
  return static_cast<std::size_t>(std::count(isolated_.begin(), isolated_.end(), true));
}

std::size_t MetaNetwork::live_degree(std::size_t agent) const {
  if (isolated_[agent]) return 0;
  std::size_t d = 0;
  for (const auto& e : graph_.edges) {
    if ((e.u == agent && !isolated_[e.v]) || (e.v == agent && !isolated_[e.u])) ++d;
  }
  return d;
}

std::vector<Edge> MetaNetwork::live_edges() const {
  std::vector<Edge> out;
  for (const auto& e : graph_.edges)
    if (!isolated_[e.u] && !isolated_[e.v]) out.push_back(e);
  return out;
}

double diffusion_measure(const MetaNetwork& net) {
  if (net.agents() == 0) return 0.0;
  std::size_t known = 0;
  for (std::size_t a = 0; a < net.agents(); ++a) known += net.known_count(a);
  return static_cast<double>(known) /
         static_cast<double>(net.agents() * net.knowledge_units());
}

void step(MetaNetwork& net, Rng& rng, double p) {
  std::vector<std::pair<std::size_t, std::size_t>> transfers;  // (receiver, unit)
  std::vector<std::size_t> candidates;
  auto offer = [&](std::size_t sender, std::size_t receiver) {
    if (uniform01(rng) >= p) return;
    candidates.clear();
    for (std::size_t k = 0; k < net.knowledge_units(); ++k) {
      if (net.knows(sender, k) && !net.knows(receiver, k)) candidates.push_back(k);
    }
    if (candidates.empty()) return;
    transfers.emplace_back(receiver, candidates[uniform_index(rng, candidates.size())]);
  };
  for (const auto& e : net.live_edges()) {
    offer(e.u, e.v);
    offer(e.v, e.u);
  }
  for (const auto& [receiver, unit] : transfers) net.learn(receiver, unit);
}

std::string_view to_string(IsolationStrategy s) {
  return s == IsolationStrategy::Random ? "random" : "max_degree";
}

std::string_view to_string(Topology t) { return t == Topology::Fractal ? "fractal" : "hierarchy"; }

std::size_t isolate(MetaNetwork& net, IsolationStrategy strategy, Rng& rng) {
  std::vector<std::size_t> alive;
  for (std::size_t a = 0; a < net.agents(); ++a)
    if (!net.is_isolated(a)) alive.push_back(a);
  if (alive.empty()) throw NoAgentsLeft("every agent is already isolated");

  std::size_t chosen = alive.front();
  if (strategy == IsolationStrategy::Random) {
    chosen = alive[uniform_index(rng, alive.size())];
  } else {
    std::size_t best = net.live_degree(chosen);
    for (auto a : alive) {
      auto d = net.live_degree(a);
      if (d > best) {
        best = d;
        chosen = a;
      }
    }
  }
  net.mark_isolated(chosen);
  return chosen;
}

void ScenarioSpec::validate() const {
  if (agents < 1) throw InvalidParams("scenario needs at least one agent");
  if (knowledge_units < 1 || tasks < 1) throw InvalidParams("knowledge and task counts must be positive");
  if (!(transmit_probability > 0.0 && transmit_probability <= 1.0)) {
    throw InvalidParams("transmit probability must lie in (0, 1]");
  }
  for (const auto& e : isolations) {
    if (e.time < 1 || e.time > horizon) {
      throw InvalidParams("isolation time " + std::to_string(e.time) + " outside 1.." +
                          std::to_string(horizon));
    }
  }
  if (isolations.size() > agents) throw InvalidParams("more isolations than agents");
  if (topology == Topology::Hierarchy && branching < 2) throw InvalidParams("branching must be >= 2");
  if (topology == Topology::Fractal && (cell_size < 3 || agents % cell_size != 0)) {
    throw InvalidParams("fractal topology needs cell_size >= 3 dividing the agent count");
  }
}

ScenarioSpec standard_scenario(int number, Topology topology) {
  ScenarioSpec spec;
  spec.topology = topology;
  switch (number) {
    case 1: break;
    case 2: spec.isolations = {{10}}; break;
    case 3: spec.isolations = {{10}, {20}, {40}, {70}, {120}}; break;
    default: throw InvalidParams("scenario number must be 1, 2 or 3");
  }
  return spec;
}

Graph build_topology(const ScenarioSpec& spec) {
  return spec.topology == Topology::Fractal ? gen_fractal(spec.agents, spec.cell_size)
                                            : gen_hierarchy(spec.agents, spec.branching);
}

DiffusionTrace run_scenario(const ScenarioSpec& spec) {
  spec.validate();
  MetaNetwork net(build_topology(spec), spec.knowledge_units, spec.tasks);
  Rng rng(spec.seed);

  auto events = spec.isolations;
  std::stable_sort(events.begin(), events.end(),
                   [](const IsolationEvent& a, const IsolationEvent& b) { return a.time < b.time; });

  DiffusionTrace trace;
  trace.values.reserve(spec.horizon + 1);
  trace.values.push_back(diffusion_measure(net));
  auto next_event = events.begin();
  for (std::size_t t = 1; t <= spec.horizon; ++t) {
    for (; next_event != events.end() && next_event->time == t; ++next_event) {
      auto agent = isolate(net, next_event->strategy, rng);
      trace.isolations.push_back({t, agent, next_event->strategy});
    }
    step(net, rng, spec.transmit_probability);
    trace.values.push_back(diffusion_measure(net));
  }
  return trace;
}

AggregateTrace aggregate(std::vector<DiffusionTrace> traces) {
  AggregateTrace out;
  if (traces.empty()) return out;
  const std::size_t len = traces.front().values.size();
  out.mean.assign(len, 0.0);
  out.min.assign(len, std::numeric_limits<double>::infinity());
  out.max.assign(len, -std::numeric_limits<double>::infinity());
  for (const auto& tr : traces) {
    for (std::size_t t = 0; t < len; ++t) {
      out.mean[t] += tr.values[t];
      out.min[t] = std::min(out.min[t], tr.values[t]);
      out.max[t] = std::max(out.max[t], tr.values[t]);
    }
  }
  for (auto& m : out.mean) m /= static_cast<double>(traces.size());
  out.replicates = std::move(traces);
  return out;
}

AggregateTrace monte_carlo(const ScenarioSpec& spec, std::size_t replicates, unsigned threads) {
  if (replicates < 1) throw InvalidParams("need at least one replicate");
  spec.validate();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, replicates));

  std::vector<DiffusionTrace> traces(replicates);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < replicates; r = next++) {
      auto s = spec;
      s.seed = spec.seed + r;
      traces[r] = run_scenario(s);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return aggregate(std::move(traces));
}

}  // namespace fso
