#ifndef SOUNDCONE_GRAPH_HPP
#define SOUNDCONE_GRAPH_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace soundcone {

/// Undirected simple interaction graph. Adjacency is kept dense (0/1,
/// symmetric, zero diagonal); disconnected graphs are allowed but flagged.
struct Graph {
  int n_sites = 0;
  std::vector<std::pair<int, int>> edges;  // normalized j < k, sorted
  Eigen::MatrixXd adjacency;
  bool connected = true;
};

Graph build_graph(int n_sites, std::vector<std::pair<int, int>> edges);

Graph make_path(int n);
Graph make_cycle(int n);
Graph make_grid(int rows, int cols);
Graph make_star(int n);  // n sites total: center 0 plus n-1 leaves

/// Parses generator descriptors: "path:4", "cycle:6", "grid:3x3", "star:5".
Graph parse_graph_descriptor(const std::string& desc);

/// Shortest-path distance by BFS; nullopt if k is unreachable from j.
std::optional<int> graph_distance(const Graph& g, int j, int k);

/// BFS distances from a set of source vertices (min over sources).
std::vector<std::optional<int>> distances_from(const Graph& g,
                                               const std::vector<int>& sources);

int max_degree(const Graph& g);

/// Half the operator norm of the adjacency matrix. Dense symmetric
/// eigensolver up to n = 512, power iteration beyond.
double spectral_half_norm(const Graph& g);

/// The root chi > 1 of chi*ln(chi) = chi + 1, residual below 1e-12.
double solve_chi();

struct VelocityBound {
  double tau = 0;      // hopping rate
  double delta = 0;    // ||M|| / 2
  int max_deg = 0;     // maximal vertex degree
  double chi = 0;
  double v0 = 0;       // chi * delta * tau
  double v = 0;        // v0 + max_deg
  double c_const = 0;  // 2 chi^2 / (chi - 1)
};

VelocityBound velocity_bound(const Graph& g, double tau);

}  // namespace soundcone

#endif
