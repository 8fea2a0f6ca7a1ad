#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "delcheck/bdd.hpp"
#include "delcheck/scene.hpp"

namespace delcheck {

// Explicit-state enumeration refuses vocabularies above this size.
inline constexpr std::size_t kExplicitVocabularyLimit = 20;

// A scene together with the Boolean function describing the states still
// considered possible. Announcements strengthen current_law; the vocabulary
// and observation sets never change.
struct KnowledgeState {
  Scene scene;
  BoolFn current_law;
};

struct QueryResult {
  bool verdict = false;
  std::uint64_t state_count = 0;    // satisfying assignments of the law
  std::size_t peak_node_count = 0;  // manager size after the query
  std::chrono::microseconds elapsed{0};
};

// Builds the initial knowledge state of a validated scene on the given
// manager (current_law = the BDD of scene.law).
KnowledgeState make_state(BddManager& m, Scene scene);

// Local-truth function of f in ks: propositional connectives map to BoolFn
// connectives, knowledge quantifies over the unobserved variables, and
// announcements strengthen current_law for their continuation.
BoolFn translate(BddManager& m, const KnowledgeState& ks, const Formula& f);

// Symbolic verdict: the query holds at every state satisfying the law.
// Builds a fresh manager per call.
QueryResult check_valid(const Scene& scene);

// Independent brute-force verdict over the enumerated state space.
bool check_valid_explicit(const Scene& scene);

// parse + validate + check_valid.
QueryResult run_query(const std::string& text);

// Number of satisfying assignments of f over the manager's vocabulary,
// saturating at the maximum representable value.
std::uint64_t count_satisfying(const BddManager& m, BoolFn f);

}  // namespace delcheck
