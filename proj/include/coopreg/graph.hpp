#pragma once

#include "coopreg/numlin.hpp"

namespace coopreg {

// Weighted directed follower graph plus leader-edge gains. Entry a_ij > 0 means
// node j sends to node i; k_i > 0 means node i observes the leader.
struct AugmentedGraph {
  Matrix adjacency;      // N x N, nonnegative, zero diagonal
  Vector leader_gains;   // length N, nonnegative

  int n_followers() const { return static_cast<int>(leader_gains.size()); }
};

// Throws ValidationError on malformed graphs (shape, sign, diagonal).
void check_graph(const AugmentedGraph& g);

struct GraphMatrices {
  Matrix F;          // diag(1 / (d_i + k_i))
  Matrix IminusFA;   // I_N - F * adjacency
  Matrix W;          // (I_N - F A) kron I_p
  double rho_FA = 0.0;
  int p = 0;
};

// Every follower reachable from the leader along directed edges (BFS).
bool has_spanning_tree_from_leader(const AugmentedGraph& g);

// Throws DegenerateNode when some d_i + k_i = 0.
GraphMatrices graph_matrices(const AugmentedGraph& g, int p);

// Min Re(lambda) of I - FA positive (relative tolerance 1e-9 on the 2-norm).
bool check_lemma1(const GraphMatrices& gm);

}  // namespace coopreg
