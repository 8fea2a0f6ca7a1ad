#include "delcheck/generator.hpp"

#include <string>
#include <utility>

#include "delcheck/checker.hpp"

namespace delcheck {

SceneGenerator::SceneGenerator(GenOptions opts, std::uint64_t seed)
    : opts_(opts), rng_(seed) {}

std::uint64_t SceneGenerator::draw(std::uint64_t bound) {
  return rng_() % bound;
}

Formula SceneGenerator::leaf() {
  switch (draw(6)) {
    case 0:
      return Formula::top();
    case 1:
      return Formula::bot();
    default:
      return Formula::prop(vocab_[draw(vocab_.size())]);
  }
}

Formula SceneGenerator::formula(int depth, int announce_budget,
                                bool boolean_only) {
  --budget_;
  if (depth <= 0 || budget_ <= 0) return leaf();
  int kinds = boolean_only ? 6 : (announce_budget > 0 ? 9 : 8);
  switch (draw(kinds)) {
    case 0:
      return leaf();
    case 1:
      return Formula::neg(formula(depth - 1, announce_budget, boolean_only));
    case 2:
    case 3: {
      auto arity = 2 + draw(static_cast<std::uint64_t>(opts_.max_arity) - 1);
      std::vector<Formula> parts;
      bool conj = draw(2) == 0;
      for (std::uint64_t i = 0; i < arity; ++i) {
        parts.push_back(formula(depth - 1, announce_budget, boolean_only));
      }
      return conj ? Formula::conj(std::move(parts))
                  : Formula::disj(std::move(parts));
    }
    case 4:
      return Formula::impl(formula(depth - 1, announce_budget, boolean_only),
                           formula(depth - 1, announce_budget, boolean_only));
    case 5:
      return Formula::equiv(formula(depth - 1, announce_budget, boolean_only),
                            formula(depth - 1, announce_budget, boolean_only));
    case 6:
      return Formula::knows_that(agents_[draw(agents_.size())],
                                 formula(depth - 1, announce_budget, false));
    case 7:
      return Formula::knows_whether(agents_[draw(agents_.size())],
                                    formula(depth - 1, announce_budget, false));
    default:
      return Formula::announce(formula(depth - 1, announce_budget - 1, false),
                               formula(depth - 1, announce_budget - 1, false));
  }
}

Scene SceneGenerator::next() {
  auto n_props = 1 + draw(static_cast<std::uint64_t>(opts_.max_props));
  // Occasionally space the ids out to exercise id-to-position mapping.
  int stride = draw(4) == 0 ? 2 : 1;
  vocab_.clear();
  for (std::uint64_t i = 0; i < n_props; ++i) {
    vocab_.push_back(Proposition(static_cast<int>(1 + i * stride)));
  }

  auto n_agents = 1 + draw(static_cast<std::uint64_t>(opts_.max_agents));
  agents_.clear();
  Scene scene;
  scene.vocabulary = vocab_;
  for (std::uint64_t i = 0; i < n_agents; ++i) {
    AgentName agent(std::string(1, static_cast<char>('a' + i)));
    std::set<Proposition> observed;
    for (Proposition p : vocab_) {
      if (draw(2) == 0) observed.insert(p);
    }
    agents_.push_back(agent);
    scene.observations.emplace(std::move(agent), std::move(observed));
  }

  budget_ = opts_.node_budget;
  scene.law = formula(opts_.law_depth, 0, true);
  scene.query = formula(opts_.max_depth, opts_.max_announce_nesting, false);
  validate_scene(scene);
  return scene;
}

VerifySummary verify_equivalence(
    const GenOptions& opts, std::uint64_t seed, int count,
    const std::function<bool(const Scene&)>& symbolic) {
  std::function<bool(const Scene&)> decide = symbolic;
  if (!decide) {
    decide = [](const Scene& s) { return check_valid(s).verdict; };
  }
  SceneGenerator gen(opts, seed);
  VerifySummary summary;
  for (int i = 0; i < count; ++i) {
    Scene scene = gen.next();
    ++summary.total;
    if (decide(scene) == check_valid_explicit(scene)) {
      ++summary.agreed;
    } else if (!summary.first_mismatch) {
      summary.first_mismatch = scene;
    }
  }
  return summary;
}

}  // namespace delcheck
