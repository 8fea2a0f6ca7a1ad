#include "delcheck/scene.hpp"

#include <algorithm>

#include "delcheck/errors.hpp"

namespace delcheck {

namespace {

bool contains_modal(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::KnowsThat:
    case Formula::Kind::KnowsWhether:
    case Formula::Kind::Announce:
      return true;
    default:
      break;
  }
  return std::any_of(f.children().begin(), f.children().end(),
                     [](const Formula& c) { return contains_modal(c); });
}

void require_declared(const std::set<Proposition>& used,
                      const std::set<Proposition>& vocab) {
  for (Proposition p : used) {
    if (!vocab.contains(p)) throw UndeclaredPropositionError(p.id());
  }
}

}  // namespace

const Scene& validate_scene(const Scene& scene) {
  if (contains_modal(scene.law)) throw EpistemicLawError();

  std::set<Proposition> vocab(scene.vocabulary.begin(),
                              scene.vocabulary.end());
  require_declared(free_props(scene.law), vocab);
  for (const auto& [agent, observed] : scene.observations) {
    require_declared(observed, vocab);
  }
  require_declared(free_props(scene.query), vocab);

  for (const AgentName& a : agents_of(scene.query)) {
    if (!scene.observations.contains(a)) {
      throw UndeclaredAgentError(a.str());
    }
  }
  return scene;
}

}  // namespace delcheck
