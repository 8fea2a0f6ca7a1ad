#pragma once

#include <map>
#include <set>
#include <vector>

#include "delcheck/formula.hpp"

namespace delcheck {

// A knowledge structure plus the query to decide against it.  The law is
// restricted to Boolean connectives; each agent observes a subset of the
// vocabulary.
struct Scene {
  std::vector<Proposition> vocabulary;
  Formula law = Formula::top();
  std::map<AgentName, std::set<Proposition>> observations;
  Formula query = Formula::top();

  bool operator==(const Scene&) const = default;
};

using Assignment = std::map<Proposition, bool>;

// Checks the structural invariants: all propositions declared, all query
// agents present in the observation map, law free of epistemic operators.
// Returns its argument so calls can be chained.
const Scene& validate_scene(const Scene& scene);

}  // namespace delcheck
