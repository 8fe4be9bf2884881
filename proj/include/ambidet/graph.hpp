#pragma once
// Small graph algorithms shared by the decision procedures.

#include <utility>
#include <vector>

namespace ambidet {

// Strongly connected components (iterative Tarjan). Returns the number of
// components and a component id per vertex. Components are numbered in
// reverse topological order of the condensation: every edge u -> v satisfies
// comp[u] >= comp[v].
inline std::pair<int, std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<int> comp(n, -1), index(n, -1), low(n, 0), stk;
  std::vector<char> on_stack(n, 0);
  std::vector<std::pair<int, std::size_t>> call;  // (vertex, next child slot)
  int next_index = 0, ncomp = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    index[root] = low[root] = next_index++;
    stk.push_back(root);
    on_stack[root] = 1;
    call.push_back({root, 0});
    while (!call.empty()) {
      int v = call.back().first;
      if (call.back().second < adj[v].size()) {
        int w = adj[v][call.back().second++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stk.push_back(w);
          on_stack[w] = 1;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        if (low[v] == index[v]) {
          while (true) {
            int w = stk.back();
            stk.pop_back();
            on_stack[w] = 0;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
        call.pop_back();
        if (!call.empty()) {
          int u = call.back().first;
          low[u] = std::min(low[u], low[v]);
        }
      }
    }
  }
  return {ncomp, comp};
}

}  // namespace ambidet
