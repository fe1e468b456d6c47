#include "coopreg/graph.hpp"

#include <deque>
#include <vector>

namespace coopreg {

void check_graph(const AugmentedGraph& g) {
  const int N = g.n_followers();
  if (N <= 0) throw ValidationError("graph: need at least one follower");
  if (g.adjacency.rows() != N || g.adjacency.cols() != N)
    throw ValidationError("graph: adjacency must be N x N");
  for (int i = 0; i < N; ++i) {
    if (g.adjacency(i, i) != 0.0)
      throw ValidationError("graph: self loop at node " + std::to_string(i + 1));
    if (g.leader_gains(i) < 0.0)
      throw ValidationError("graph: negative leader gain at node " +
                            std::to_string(i + 1));
    for (int j = 0; j < N; ++j)
      if (g.adjacency(i, j) < 0.0)
        throw ValidationError("graph: negative adjacency weight");
  }
}

bool has_spanning_tree_from_leader(const AugmentedGraph& g) {
  check_graph(g);
  const int N = g.n_followers();
  std::vector<bool> reached(N, false);
  std::deque<int> frontier;
  for (int i = 0; i < N; ++i) {
    if (g.leader_gains(i) > 0.0) {
      reached[i] = true;
      frontier.push_back(i);
    }
  }
  while (!frontier.empty()) {
    const int j = frontier.front();
    frontier.pop_front();
    for (int i = 0; i < N; ++i) {
      if (!reached[i] && g.adjacency(i, j) > 0.0) {
        reached[i] = true;
        frontier.push_back(i);
      }
    }
  }
  for (int i = 0; i < N; ++i)
    if (!reached[i]) return false;
  return true;
}

GraphMatrices graph_matrices(const AugmentedGraph& g, int p) {
  check_graph(g);
  if (p <= 0) throw ValidationError("graph_matrices: p must be positive");
  const int N = g.n_followers();

  GraphMatrices gm;
  gm.p = p;
  gm.F = Matrix::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    const double denom = g.adjacency.row(i).sum() + g.leader_gains(i);
    if (denom <= 0.0)
      throw DegenerateNode("graph_matrices: node " + std::to_string(i + 1) +
                           " has no neighbors and no leader edge");
    gm.F(i, i) = 1.0 / denom;
  }
  const Matrix FA = gm.F * g.adjacency;
  gm.IminusFA = Matrix::Identity(N, N) - FA;
  gm.W = kron(gm.IminusFA, Matrix::Identity(p, p));
  gm.rho_FA = spectral_radius(FA);
  return gm;
}

bool check_lemma1(const GraphMatrices& gm) {
  const double scale = Eigen::JacobiSVD<Matrix>(gm.IminusFA).singularValues()(0);
  return eigenvalues(gm.IminusFA).real().minCoeff() > 1e-9 * scale;
}

}  // namespace coopreg
