#include "qdt/network.hpp"

#include <algorithm>
#include <set>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

// Kahn's algorithm; returns empty when the edge relation has a cycle.
std::vector<int> topological_order(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  for (auto [p, c] : edges) {
    children[static_cast<std::size_t>(p)].push_back(c);
    ++indegree[static_cast<std::size_t>(c)];
  }
  std::vector<int> order;
  std::vector<int> queue;
  for (int i = 0; i < n; ++i)
    if (indegree[static_cast<std::size_t>(i)] == 0) queue.push_back(i);
  while (!queue.empty()) {
    int v = queue.front();
    queue.erase(queue.begin());
    order.push_back(v);
    for (int c : children[static_cast<std::size_t>(v)])
      if (--indegree[static_cast<std::size_t>(c)] == 0) queue.push_back(c);
  }
  if (static_cast<int>(order.size()) != n) return {};
  return order;
}

std::vector<std::vector<int>> parent_lists(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::set<int>> sets(static_cast<std::size_t>(n));
  for (auto [p, c] : edges)
    if (p >= 0 && p < n && c >= 0 && c < n) sets[static_cast<std::size_t>(c)].insert(p);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)].assign(sets[static_cast<std::size_t>(i)].begin(),
                                            sets[static_cast<std::size_t>(i)].end());
  return out;
}

}  // namespace

std::vector<Diagnostic> validate_network(const NetworkDraft& draft) {
  std::vector<Diagnostic> out;
  const int n = static_cast<int>(draft.variables.size());

  if (n > kMaxVariables)
    out.push_back({"too many variables", std::to_string(n) + " variables exceed the cap of " +
                                             std::to_string(kMaxVariables)});

  std::set<std::string> names;
  for (int i = 0; i < n; ++i) {
    const Variable& v = draft.variables[static_cast<std::size_t>(i)];
    if (v.index != i)
      out.push_back({"bad index", "variable '" + v.name + "' declared with index " +
                                      std::to_string(v.index) + ", expected " + std::to_string(i)});
    if (!names.insert(v.name).second)
      out.push_back({"duplicate name", "variable '" + v.name + "' declared twice"});
    if (v.persistence < 1)
      out.push_back({"bad persistence",
                     "variable '" + v.name + "' has persistence < 1"});
  }

  for (auto [p, c] : draft.edges) {
    if (p < 0 || p >= n || c < 0 || c >= n) {
      out.push_back({"bad index", "edge endpoint out of range"});
      return out;  // later checks would index out of bounds
    }
    if (p == c) out.push_back({"cycle", "self-loop on variable index " + std::to_string(p)});
  }

  if (topological_order(n, draft.edges).empty() && n > 0)
    out.push_back({"cycle", "edge relation is cyclic"});

  auto parents = parent_lists(n, draft.edges);
  std::vector<bool> has_table(static_cast<std::size_t>(n), false);
  for (const ConditionalRankTable& t : draft.tables) {
    if (t.node < 0 || t.node >= n) {
      out.push_back({"bad index", "table for unknown variable index " + std::to_string(t.node)});
      continue;
    }
    const std::string& name = draft.variables[static_cast<std::size_t>(t.node)].name;
    if (has_table[static_cast<std::size_t>(t.node)])
      out.push_back({"duplicate table", "variable '" + name + "' has two tables"});
    has_table[static_cast<std::size_t>(t.node)] = true;

    std::vector<int> sorted = t.parents;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != t.parents || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      out.push_back({"parent mismatch",
                     "table for '" + name + "' lists parents out of order or twice"});
    if (sorted != parents[static_cast<std::size_t>(t.node)])
      out.push_back({"parent mismatch",
                     "table for '" + name + "' does not match its graph parents"});
    if (t.parents.size() > 20) {
      out.push_back({"too many variables", "table for '" + name + "' has too many parents"});
      continue;
    }
    if (t.rows.size() != (std::size_t{1} << t.parents.size()))
      out.push_back({"bad row count", "table for '" + name + "' has " +
                                          std::to_string(t.rows.size()) + " rows, expected " +
                                          std::to_string(std::size_t{1} << t.parents.size())});
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (min(t.rows[r].if_true, t.rows[r].if_false) != Rank())
        out.push_back({"row not normalized", "table for '" + name + "', row " +
                                                 std::to_string(r) + ": neither value has rank 0"});
    }
  }
  for (int i = 0; i < n; ++i)
    if (!has_table[static_cast<std::size_t>(i)])
      out.push_back({"missing table",
                     "variable '" + draft.variables[static_cast<std::size_t>(i)].name +
                         "' has no rank table"});

  return out;
}

CausalNetwork CausalNetwork::build(NetworkDraft draft) {
  auto diagnostics = validate_network(draft);
  if (!diagnostics.empty()) {
    std::string msg = "invalid network:";
    for (const Diagnostic& d : diagnostics) msg += "\n  [" + d.code + "] " + d.message;
    throw SemanticError(msg);
  }
  CausalNetwork net;
  const int n = static_cast<int>(draft.variables.size());
  net.vars_ = std::move(draft.variables);
  net.edges_ = std::move(draft.edges);
  net.parents_ = parent_lists(n, net.edges_);
  net.tables_.resize(static_cast<std::size_t>(n));
  for (ConditionalRankTable& t : draft.tables)
    net.tables_[static_cast<std::size_t>(t.node)] = std::move(t);
  net.topo_ = topological_order(n, net.edges_);
  return net;
}

std::vector<int> CausalNetwork::descendants(int i) const {
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n_vars()));
  for (auto [p, c] : edges_) children[static_cast<std::size_t>(p)].push_back(c);
  std::vector<bool> seen(static_cast<std::size_t>(n_vars()), false);
  std::vector<int> stack = children[static_cast<std::size_t>(i)];
  std::vector<int> out;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(v)]) continue;
    seen[static_cast<std::size_t>(v)] = true;
    out.push_back(v);
    for (int c : children[static_cast<std::size_t>(v)]) stack.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RankingFunction CausalNetwork::stratified_joint() const {
  const std::uint32_t count = world_count(n_vars());
  std::vector<Rank> ranks(count);
  for (std::uint32_t w = 0; w < count; ++w) {
    Rank sum;
    for (int i = 0; i < n_vars() && sum.is_finite(); ++i) sum += cond_rank(i, World{w});
    ranks[w] = sum;
  }
  return RankingFunction::exact(n_vars(), std::move(ranks));
}

RankingFunction CausalNetwork::atomic_action_update(AtomicAction a) const {
  if (a.variable < 0 || a.variable >= n_vars())
    throw SemanticError("action on unknown variable index " + std::to_string(a.variable));
  const std::uint32_t count = world_count(n_vars());
  std::vector<Rank> ranks(count, Rank::infinity());
  for (std::uint32_t w = 0; w < count; ++w) {
    World world{w};
    if (world.value(a.variable) != a.value) continue;
    Rank sum;
    for (int i = 0; i < n_vars() && sum.is_finite(); ++i) {
      if (i == a.variable) continue;
      sum += cond_rank(i, world);
    }
    ranks[w] = sum;
  }
  return RankingFunction::exact(n_vars(), std::move(ranks));
}

}  // namespace qdt
