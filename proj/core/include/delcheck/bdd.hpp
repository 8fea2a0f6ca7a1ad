#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "delcheck/formula.hpp"
#include "delcheck/scene.hpp"

namespace delcheck {

class BddManager;

// Handle to a Boolean function owned by one BddManager. Within a manager,
// two handles are equal iff they denote the same function.
class BoolFn {
 public:
  BoolFn() = default;
  bool operator==(const BoolFn&) const = default;

 private:
  friend class BddManager;
  BoolFn(const BddManager* mgr, std::uint32_t ref) : mgr_(mgr), ref_(ref) {}

  const BddManager* mgr_ = nullptr;
  std::uint32_t ref_ = 0;
};

// Reduced ordered BDDs with a fixed variable order (ascending proposition id),
// a unique table and an operation cache. No garbage collection or reordering;
// managers are cheap enough to build one per query. Not safe for concurrent
// mutation.
class BddManager {
 public:
  explicit BddManager(std::vector<Proposition> vocabulary);
  BddManager(const BddManager&) = delete;
  BddManager& operator=(const BddManager&) = delete;

  BoolFn constant(bool value) const;
  BoolFn var(Proposition p) const;

  BoolFn neg(BoolFn f);
  BoolFn conj(BoolFn f, BoolFn g);
  BoolFn disj(BoolFn f, BoolFn g);
  BoolFn impl(BoolFn f, BoolFn g);
  BoolFn equiv(BoolFn f, BoolFn g);

  BoolFn forall_set(const std::set<Proposition>& vars, BoolFn f);
  BoolFn exists_set(const std::set<Proposition>& vars, BoolFn f);

  bool eval(BoolFn f, const Assignment& a) const;
  bool is_tautology(BoolFn f) const;

  // Distinct nodes reachable from f, terminals included.
  std::size_t node_count(BoolFn f) const;
  // Total nodes ever created in this manager.
  std::size_t size() const { return nodes_.size(); }

  const std::vector<Proposition>& vocabulary() const { return vocabulary_; }

  // Structure access for external walkers (DOT dump, model counting).
  struct NodeView {
    Proposition var;
    BoolFn low;
    BoolFn high;
  };
  bool is_terminal(BoolFn f) const;
  bool terminal_value(BoolFn f) const;
  NodeView node(BoolFn f) const;
  // Position of f's root variable in the order; terminals sit one past the
  // last variable.
  std::size_t level(BoolFn f) const;
  // Stable node identifier, usable as a memo key by external walkers.
  std::uint32_t id(BoolFn f) const { return unwrap(f); }

  std::string to_dot(BoolFn f) const;

 private:
  struct Node {
    std::uint32_t level;
    std::uint32_t low;
    std::uint32_t high;
  };

  enum class Op : std::uint64_t { And, Or, Xor, Forall, Exists };

  std::uint32_t unwrap(BoolFn f) const;
  std::uint32_t make(std::uint32_t level, std::uint32_t low,
                     std::uint32_t high);
  std::uint32_t apply(Op op, std::uint32_t f, std::uint32_t g);
  std::uint32_t quantify(Op op, std::uint32_t f, std::uint32_t cube);
  std::uint32_t cube_of(const std::set<Proposition>& vars);

  std::vector<Proposition> vocabulary_;
  std::map<Proposition, std::uint32_t> var_level_;
  std::vector<std::uint32_t> var_ref_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::uint32_t> unique_;
  std::unordered_map<std::uint64_t, std::uint32_t> cache_;
};

}  // namespace delcheck
