#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace delcheck {

// Atomic proposition label. Ids are positive and compared by value.
class Proposition {
 public:
  explicit Proposition(int id);
  int id() const { return id_; }
  auto operator<=>(const Proposition&) const = default;

 private:
  int id_;
};

// Case-sensitive agent identifier: letters and digits, starting with a letter.
class AgentName {
 public:
  explicit AgentName(std::string name);
  const std::string& str() const { return name_; }
  auto operator<=>(const AgentName&) const = default;

 private:
  std::string name_;
};

// Immutable epistemic formula. Copies share structure; values are safe to
// pass between threads.
class Formula {
 public:
  enum class Kind {
    Top,
    Bot,
    Prop,
    Neg,
    Conj,
    Disj,
    Impl,
    Equiv,
    KnowsThat,
    KnowsWhether,
    Announce,
  };

  static Formula top();
  static Formula bot();
  static Formula prop(Proposition p);
  static Formula neg(Formula body);
  static Formula conj(std::vector<Formula> parts);  // arity >= 2
  static Formula disj(std::vector<Formula> parts);  // arity >= 2
  static Formula impl(Formula lhs, Formula rhs);
  static Formula equiv(Formula lhs, Formula rhs);
  static Formula knows_that(AgentName agent, Formula body);
  static Formula knows_whether(AgentName agent, Formula body);
  static Formula announce(Formula announced, Formula continuation);

  Kind kind() const;
  Proposition atom() const;        // Kind::Prop only
  const AgentName& agent() const;  // KnowsThat / KnowsWhether only
  const std::vector<Formula>& children() const;
  const Formula& child(std::size_t i = 0) const;
  const Formula& announced() const;     // Announce
  const Formula& continuation() const;  // Announce

  bool operator==(const Formula& other) const;  // structural

  std::size_t node_count() const;  // tree size

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

std::set<Proposition> free_props(const Formula& f);
std::set<AgentName> agents_of(const Formula& f);

// Replaces every knows-whether by the disjunction of knowing the body and
// knowing its negation. Idempotent; preserves free propositions.
Formula expand_knows_whether(const Formula& f);

}  // namespace delcheck
