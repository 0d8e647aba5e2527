#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace nvsc {

// Directed communication graph over leader (node 0) and N followers.
// adjacency(i, j) = 1 iff node i receives information from node j.
struct Topology {
    int n_followers = 0;
    Eigen::MatrixXi adjacency;  // (N+1) x (N+1), entries in {0,1}

    int size() const { return n_followers + 1; }
    // In-degree of follower i (number of sources it listens to).
    int degree(int i) const { return adjacency.row(i).sum(); }
};

// Leader-predecessor-follower chain: every follower hears the leader,
// followers 2..N also hear their predecessor.
Topology build_lpf(int n_followers);

// Returns every violated invariant; empty means valid.
// Checked: square/dimension, entries in {0,1}, zero leader row, no
// self-loops, and reachability of every node from the leader.
std::vector<std::string> validate(const Topology& t);

// In-neighbor set {j : adjacency(i,j) = 1} for follower i in [1, N].
std::vector<int> neighbors(const Topology& t, int i);

}  // namespace nvsc
