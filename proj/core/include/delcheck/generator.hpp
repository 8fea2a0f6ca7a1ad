#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

#include "delcheck/scene.hpp"

namespace delcheck {

// Bounds for random scene generation.
struct GenOptions {
  int max_props = 6;
  int max_agents = 4;
  int max_depth = 5;
  int max_announce_nesting = 2;
  int max_arity = 4;
  int law_depth = 3;
  int node_budget = 400;
};

// Deterministic stream of validated scenes. All randomness is drawn from a
// seeded mt19937_64 via modulo so the stream is identical across platforms.
class SceneGenerator {
 public:
  SceneGenerator(GenOptions opts, std::uint64_t seed);

  Scene next();

 private:
  std::uint64_t draw(std::uint64_t bound);
  Formula formula(int depth, int announce_budget, bool boolean_only);
  Formula leaf();

  GenOptions opts_;
  std::mt19937_64 rng_;
  std::vector<Proposition> vocab_;
  std::vector<AgentName> agents_;
  int budget_ = 0;
};

struct VerifySummary {
  int total = 0;
  int agreed = 0;
  std::optional<Scene> first_mismatch;
};

// Compares the symbolic verdict against the explicit-state verdict on
// `count` generated scenes. `symbolic` defaults to check_valid; injecting a
// different function lets tests exercise the mismatch path.
VerifySummary verify_equivalence(
    const GenOptions& opts, std::uint64_t seed, int count,
    const std::function<bool(const Scene&)>& symbolic = {});

}  // namespace delcheck
