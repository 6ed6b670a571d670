#include "qdt/action.hpp"

#include <algorithm>

#include "qdt/errors.hpp"

namespace qdt {

ActionConjunct ActionConjunct::of(std::vector<std::pair<int, bool>> lits) {
  if (lits.empty()) throw SemanticError("empty action conjunct");
  std::sort(lits.begin(), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i) {
    if (lits[i].first == lits[i - 1].first) {
      if (lits[i].second != lits[i - 1].second)
        throw SemanticError("inconsistent action conjunct: variable index " +
                            std::to_string(lits[i].first) + " set both ways");
      lits.erase(lits.begin() + static_cast<std::ptrdiff_t>(i));
      --i;
    }
  }
  return ActionConjunct{std::move(lits)};
}

bool ActionConjunct::targets(int var) const {
  for (auto [v, _] : literals)
    if (v == var) return true;
  return false;
}

bool ActionConjunct::satisfied_by(World w) const {
  for (auto [v, val] : literals)
    if (w.value(v) != val) return false;
  return true;
}

Prop ActionConjunct::to_prop() const {
  Prop p = Prop::lit(literals.front().first, literals.front().second);
  for (std::size_t i = 1; i < literals.size(); ++i)
    p = p & Prop::lit(literals[i].first, literals[i].second);
  return p;
}

Prop ActionDNF::to_prop() const {
  if (disjuncts.empty()) throw SemanticError("empty action disjunction");
  Prop p = disjuncts.front().to_prop();
  for (std::size_t i = 1; i < disjuncts.size(); ++i) p = p | disjuncts[i].to_prop();
  return p;
}

std::vector<ActionConjunct> negate_dnf(const ActionDNF& a) {
  // De Morgan then distribution, dropping inconsistent combinations.
  std::vector<std::vector<std::pair<int, bool>>> acc = {{}};
  for (const ActionConjunct& c : a.disjuncts) {
    std::vector<std::vector<std::pair<int, bool>>> next;
    for (const auto& partial : acc) {
      for (auto [v, val] : c.literals) {
        auto extended = partial;
        bool consistent = true;
        bool present = false;
        for (auto [pv, pval] : partial) {
          if (pv == v) {
            present = true;
            consistent = (pval == !val);
            break;
          }
        }
        if (!consistent) continue;
        if (!present) extended.emplace_back(v, !val);
        next.push_back(std::move(extended));
      }
    }
    acc = std::move(next);
    if (acc.empty()) break;
  }
  std::vector<ActionConjunct> out;
  for (auto& lits : acc) {
    ActionConjunct c = ActionConjunct::of(std::move(lits));
    bool duplicate = false;
    for (const ActionConjunct& seen : out)
      if (seen.literals == c.literals) duplicate = true;
    if (!duplicate) out.push_back(std::move(c));
  }
  return out;
}

Rank spontaneity(const CausalNetwork& net, int i, World now, World prev) {
  if (now.value(i) == prev.value(i)) return Rank();
  const Variable& v = net.variable(i);
  if (net.is_root(i)) return Rank::finite(v.persistence);
  // The change lacks causal support exactly when keeping the old value would
  // have been unsurprising under the new parent assignment.
  if (net.cond_rank_value(i, now, !now.value(i)) == Rank()) return Rank::finite(v.persistence);
  return Rank();
}

RankingFunction post_action_ranking(const CausalNetwork& net, const RankingFunction& belief,
                                    const ActionConjunct& a, PostActionTrace* trace) {
  const int n = net.n_vars();
  if (belief.n_vars() != n) throw SemanticError("belief and network variable sets differ");
  for (auto [v, _] : a.literals)
    if (v < 0 || v >= n) throw SemanticError("action on unknown variable index " + std::to_string(v));

  const std::uint32_t count = world_count(n);
  std::vector<Rank> ranks(count, Rank::infinity());
  if (trace) trace->argmin_prev.assign(count, {});

  // Variables whose causal term survives the residual: not acted on, not root.
  std::vector<int> causal_vars;
  std::vector<int> free_vars;  // not acted on: these owe persistence
  for (int i = 0; i < n; ++i) {
    if (a.targets(i)) continue;
    free_vars.push_back(i);
    if (!net.is_root(i)) causal_vars.push_back(i);
  }

  for (std::uint32_t wb = 0; wb < count; ++wb) {
    World w{wb};
    if (!a.satisfied_by(w)) continue;

    Rank causal;
    for (int i : causal_vars) {
      causal += net.cond_rank(i, w);
      if (causal.is_infinite()) break;
    }
    if (causal.is_infinite()) continue;

    Rank best = Rank::infinity();
    std::vector<std::uint32_t> argmins;
    for (std::uint32_t pb = 0; pb < count; ++pb) {
      Rank total = belief.at(World{pb});
      if (total.is_infinite()) continue;
      for (int i : free_vars) total += spontaneity(net, i, w, World{pb});
      if (total < best) {
        best = total;
        if (trace) argmins.assign(1, pb);
      } else if (trace && total == best) {
        argmins.push_back(pb);
      }
    }
    ranks[wb] = causal + best;
    if (trace) trace->argmin_prev[wb] = std::move(argmins);
  }

  // The residual sum plus the cheapest explanation reaches 0 at some world,
  // so exact() holds whenever the action is enforceable at all.
  return RankingFunction::exact(n, std::move(ranks));
}

RankingFunction doubled_network_ranking(const CausalNetwork& net, const RankingFunction& belief,
                                        const ActionConjunct& a) {
  const int n = net.n_vars();
  if (n > 10)
    throw CapError("doubled-network construction is capped at 10 variables, got " +
                   std::to_string(n));
  if (belief.n_vars() != n) throw SemanticError("belief and network variable sets differ");

  const std::uint32_t count = world_count(n);
  std::vector<Rank> ranks(count, Rank::infinity());

  for (std::uint32_t wb = 0; wb < count; ++wb) {
    World w{wb};
    if (!a.satisfied_by(w)) continue;
    Rank best = Rank::infinity();
    for (std::uint32_t pb = 0; pb < count; ++pb) {
      World prev{pb};
      Rank total = belief.at(prev);
      if (total.is_infinite()) continue;
      for (int i = 0; i < n && total.is_finite(); ++i) {
        if (a.targets(i)) continue;  // clamped by the action at zero rank
        const bool changed = w.value(i) != prev.value(i);
        if (net.is_root(i)) {
          // The persistence link is the node's only parent in the pre layer.
          if (changed) total += Rank::finite(net.variable(i).persistence);
        } else if (changed && net.cond_rank_value(i, w, !w.value(i)) == Rank()) {
          total += Rank::finite(net.variable(i).persistence) + net.cond_rank(i, w);
        } else {
          total += net.cond_rank(i, w);
        }
      }
      best = min(best, total);
    }
    ranks[wb] = best;
  }

  return RankingFunction::exact(n, std::move(ranks));
}

RankingFunction post_action_ranking_dnf(const CausalNetwork& net, const RankingFunction& belief,
                                        const ActionDNF& a, PostActionTrace* trace) {
  if (a.disjuncts.empty()) throw SemanticError("empty action disjunction");
  const std::uint32_t count = world_count(net.n_vars());
  std::vector<Rank> ranks(count, Rank::infinity());
  if (trace) trace->argmin_prev.assign(count, {});

  for (const ActionConjunct& c : a.disjuncts) {
    PostActionTrace branch;
    RankingFunction part = post_action_ranking(net, belief, c, trace ? &branch : nullptr);
    for (std::uint32_t w = 0; w < count; ++w) {
      Rank r = part.at(World{w});
      if (r < ranks[w]) {
        ranks[w] = r;
        if (trace) trace->argmin_prev[w] = branch.argmin_prev[w];
      } else if (trace && r == ranks[w] && r.is_finite()) {
        auto& dst = trace->argmin_prev[w];
        for (std::uint32_t p : branch.argmin_prev[w])
          if (std::find(dst.begin(), dst.end(), p) == dst.end()) dst.push_back(p);
        std::sort(dst.begin(), dst.end());
      }
    }
  }
  return RankingFunction::exact(net.n_vars(), std::move(ranks));
}

}  // namespace qdt
