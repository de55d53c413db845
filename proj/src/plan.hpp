// SPDX-License-Identifier: Apache-2.0

#ifndef ENRIFACT_SRC_PLAN_HPP
#define ENRIFACT_SRC_PLAN_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace enrifact::detail {

struct PlanEdge {
   std::size_t from;
   std::size_t to;
};

/// Order in which to assign values to the nodes of a diagram when
/// enumerating compatible families. A node reachable by an edge from an
/// assigned node is forced and goes next; otherwise the node with the most
/// incoming edges, so that wide cospans are enumerated sink-first.
struct AssignmentPlan {
   std::vector<std::size_t> order;
   std::vector<std::optional<std::size_t>> forced_by;   // edge index per position
   std::vector<std::vector<std::size_t>> checks;        // edge indices closed at each position
};

inline AssignmentPlan plan_assignment(std::size_t n, std::span<const PlanEdge> edges) {
   AssignmentPlan plan;
   std::vector<bool> assigned(n, false);
   std::vector<std::size_t> indegree(n, 0);
   for(const auto& e : edges) {
      indegree[e.to] += 1;
   }
   while(plan.order.size() < n) {
      std::size_t pick = n;
      std::optional<std::size_t> forced;
      for(std::size_t i = 0; i < edges.size(); ++i) {
         const auto& e = edges[i];
         if(assigned[e.from] && !assigned[e.to] && (pick == n || e.to < pick)) {
            pick = e.to;
            forced = i;
         }
      }
      if(pick == n) {
         for(std::size_t v = 0; v < n; ++v) {
            if(!assigned[v] && (pick == n || indegree[v] > indegree[pick])) {
               pick = v;
            }
         }
      }
      assigned[pick] = true;
      std::vector<std::size_t> checks;
      for(std::size_t i = 0; i < edges.size(); ++i) {
         const auto& e = edges[i];
         if((e.from == pick || e.to == pick) && assigned[e.from] && assigned[e.to]) {
            checks.push_back(i);
         }
      }
      plan.order.push_back(pick);
      plan.forced_by.push_back(forced);
      plan.checks.push_back(std::move(checks));
   }
   return plan;
}

}  // namespace enrifact::detail

#endif
