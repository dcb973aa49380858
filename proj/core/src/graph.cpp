#include "soundcone/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace soundcone {

Graph build_graph(int n_sites, std::vector<std::pair<int, int>> edges) {
  if (n_sites < 1) throw std::invalid_argument("graph needs at least one site");
  std::set<std::pair<int, int>> seen;
  for (auto& [j, k] : edges) {
    if (j < 0 || j >= n_sites || k < 0 || k >= n_sites)
      throw std::invalid_argument("edge (" + std::to_string(j) + "," +
                                  std::to_string(k) + ") out of range");
    if (j == k)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(j));
    if (j > k) std::swap(j, k);
    if (!seen.insert({j, k}).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(j) + "," +
                                  std::to_string(k) + ")");
  }
  Graph g;
  g.n_sites = n_sites;
  g.edges.assign(seen.begin(), seen.end());
  g.adjacency = Eigen::MatrixXd::Zero(n_sites, n_sites);
  for (auto [j, k] : g.edges) {
    g.adjacency(j, k) = 1.0;
    g.adjacency(k, j) = 1.0;
  }
  auto dist = distances_from(g, {0});
  g.connected =
      std::all_of(dist.begin(), dist.end(), [](auto d) { return d.has_value(); });
  return g;
}

Graph make_path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int j = 0; j + 1 < n; ++j) e.push_back({j, j + 1});
  return build_graph(n, e);
}

Graph make_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 sites");
  std::vector<std::pair<int, int>> e;
  for (int j = 0; j < n; ++j) e.push_back({j, (j + 1) % n});
  return build_graph(n, e);
}

Graph make_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dims must be positive");
  std::vector<std::pair<int, int>> e;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) e.push_back({id(r, c), id(r + 1, c)});
    }
  return build_graph(rows * cols, e);
}

Graph make_star(int n) {
  if (n < 2) throw std::invalid_argument("star needs at least 2 sites");
  std::vector<std::pair<int, int>> e;
  for (int j = 1; j < n; ++j) e.push_back({0, j});
  return build_graph(n, e);
}

Graph parse_graph_descriptor(const std::string& desc) {
  auto colon = desc.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("bad graph descriptor: " + desc);
  std::string kind = desc.substr(0, colon);
  std::string arg = desc.substr(colon + 1);
  try {
    if (kind == "path") return make_path(std::stoi(arg));
    if (kind == "cycle") return make_cycle(std::stoi(arg));
    if (kind == "star") return make_star(std::stoi(arg));
    if (kind == "grid") {
      auto x = arg.find('x');
      if (x == std::string::npos) throw std::invalid_argument("grid wants AxB");
      return make_grid(std::stoi(arg.substr(0, x)), std::stoi(arg.substr(x + 1)));
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad graph descriptor: " + desc);
  }
  throw std::invalid_argument("unknown graph generator: " + kind);
}

std::vector<std::optional<int>> distances_from(const Graph& g,
                                               const std::vector<int>& sources) {
  std::vector<std::optional<int>> dist(g.n_sites);
  std::queue<int> q;
  for (int s : sources) {
    if (s < 0 || s >= g.n_sites)
      throw std::invalid_argument("vertex out of range");
    dist[s] = 0;
    q.push(s);
  }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w = 0; w < g.n_sites; ++w) {
      if (g.adjacency(v, w) != 0.0 && !dist[w]) {
        dist[w] = *dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

std::optional<int> graph_distance(const Graph& g, int j, int k) {
  if (k < 0 || k >= g.n_sites) throw std::invalid_argument("vertex out of range");
  return distances_from(g, {j})[k];
}

int max_degree(const Graph& g) {
  int d = 0;
  for (int j = 0; j < g.n_sites; ++j)
    d = std::max(d, static_cast<int>(g.adjacency.row(j).sum()));
  return d;
}

double spectral_half_norm(const Graph& g) {
  if (g.edges.empty()) return 0.0;
  if (g.n_sites <= 512) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.adjacency,
                                                      Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1))) / 2.0;
  }
  // Power iteration on M^2 so the sign of the extremal eigenvalue is moot.
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(g.n_sites);
  for (int i = 0; i < g.n_sites; ++i) v(i) = gauss(rng);
  v.normalize();
  double lambda = 0;
  for (int it = 0; it < 10000; ++it) {
    Eigen::VectorXd w = g.adjacency * (g.adjacency * v);
    double next = v.dot(w);
    w.normalize();
    if (it > 2 && std::abs(next - lambda) < 1e-13 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
    v = w;
  }
  return std::sqrt(lambda) / 2.0;
}

double solve_chi() {
  // f(chi) = chi ln chi - chi - 1 is monotone increasing on [e, 4].
  auto f = [](double x) { return x * std::log(x) - x - 1.0; };
  double lo = std::exp(1.0), hi = 4.0;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {  // bisection seed
    (f(x) < 0 ? lo : hi) = x;
    x = 0.5 * (lo + hi);
  }
  for (int it = 0; it < 50; ++it) {
    double fx = f(x);
    if (std::abs(fx) < 1e-15) break;
    x -= fx / std::log(x);  // f' = ln x
  }
  return x;
}

VelocityBound velocity_bound(const Graph& g, double tau) {
  if (tau <= 0) throw std::invalid_argument("hopping rate must be positive");
  VelocityBound vb;
  vb.tau = tau;
  vb.delta = spectral_half_norm(g);
  vb.max_deg = max_degree(g);
  vb.chi = solve_chi();
  vb.v0 = vb.chi * vb.delta * tau;
  vb.v = vb.v0 + vb.max_deg;
  vb.c_const = 2.0 * vb.chi * vb.chi / (vb.chi - 1.0);
  return vb;
}

}  // namespace soundcone
