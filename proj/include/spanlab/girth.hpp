#ifndef SPANLAB_GIRTH_HPP
#define SPANLAB_GIRTH_HPP

#include <deque>

#include "spanlab/graph.hpp"

namespace spanlab {

inline constexpr u64 kInfGirth = std::numeric_limits<u64>::max();

// Length of the shortest cycle, ignoring weights; kInfGirth for forests.
// BFS from every vertex; the first non-tree edge seen from root r closes a
// cycle of length dist[x]+dist[y]+1, and the minimum over all roots is exact.
inline u64 girth(const Graph& g)
{
    const std::uint32_t n = g.n();
    u64 best = kInfGirth;
    std::vector<u64> dist(n);
    std::vector<std::uint32_t> via_edge(n);
    for (Vertex r = 0; r < n; ++r) {
        std::fill(dist.begin(), dist.end(), kInfGirth);
        dist[r] = 0;
        via_edge[r] = UINT32_MAX;
        std::deque<Vertex> queue{r};
        while (!queue.empty()) {
            Vertex x = queue.front();
            queue.pop_front();
            if (best != kInfGirth && 2 * dist[x] + 1 >= best)
                break; // deeper levels cannot improve
            for (const Arc& a : g.adj(x)) {
                if (dist[a.to] == kInfGirth) {
                    dist[a.to] = dist[x] + 1;
                    via_edge[a.to] = a.edge;
                    queue.push_back(a.to);
                } else if (a.edge != via_edge[x]) {
                    best = std::min(best, dist[x] + dist[a.to] + 1);
                }
            }
        }
    }
    return best;
}

} // namespace spanlab

#endif
