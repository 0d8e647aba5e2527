#include "nvsc/topology.hpp"

#include <deque>
#include <stdexcept>

namespace nvsc {

Topology build_lpf(int n_followers) {
    if (n_followers < 1)
        throw std::invalid_argument("build_lpf: need at least one follower");
    Topology t;
    t.n_followers = n_followers;
    t.adjacency = Eigen::MatrixXi::Zero(n_followers + 1, n_followers + 1);
    for (int i = 1; i <= n_followers; ++i) {
        t.adjacency(i, 0) = 1;
        if (i >= 2) t.adjacency(i, i - 1) = 1;
    }
    return t;
}

std::vector<std::string> validate(const Topology& t) {
    std::vector<std::string> violations;
    const int n = t.size();
    if (t.adjacency.rows() != n || t.adjacency.cols() != n) {
        violations.push_back("adjacency dimension does not match n_followers+1");
        return violations;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (t.adjacency(i, j) != 0 && t.adjacency(i, j) != 1) {
                violations.push_back("adjacency entries must be 0 or 1");
                i = n;
                break;
            }
    for (int j = 0; j < n; ++j)
        if (t.adjacency(0, j) != 0) {
            violations.push_back("leader row nonzero");
            break;
        }
    for (int i = 0; i < n; ++i)
        if (t.adjacency(i, i) != 0) {
            violations.push_back("self-loop at node " + std::to_string(i));
        }

    // BFS from the leader along information flow (edge j -> i when a_ij = 1).
    std::vector<bool> seen(n, false);
    std::deque<int> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
        const int j = queue.front();
        queue.pop_front();
        for (int i = 0; i < n; ++i)
            if (!seen[i] && t.adjacency(i, j) == 1) {
                seen[i] = true;
                queue.push_back(i);
            }
    }
    for (int i = 0; i < n; ++i)
        if (!seen[i])
            violations.push_back("node " + std::to_string(i) + " unreachable from root");
    return violations;
}

std::vector<int> neighbors(const Topology& t, int i) {
    if (i < 1 || i > t.n_followers)
        throw std::out_of_range("neighbors: follower index out of range");
    std::vector<int> out;
    for (int j = 0; j < t.size(); ++j)
        if (t.adjacency(i, j) == 1) out.push_back(j);
    return out;
}

}  // namespace nvsc
