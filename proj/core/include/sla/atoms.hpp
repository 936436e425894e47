#pragma once

// Orbit-finite sets over the integer atoms (Z, +1).
//
// Every single-orbit set is Z_k for some k >= 0, where Z_0 = Z. Automorphisms
// are translations, so an element is a pair (orbit, value) and the action adds
// to the value (modulo k for finite characteristic).

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "sla/arith.hpp"

namespace sla {

using OrbitId = std::string;

struct Orbit {
  OrbitId id;
  Int characteristic = 0;  // 0 denotes Z

  bool operator==(const Orbit&) const = default;
};

struct Element {
  OrbitId orbit;
  Int value = 0;

  auto operator<=>(const Element&) const = default;
};

std::string to_string(const Element& e);

class OrbitFiniteSet {
 public:
  OrbitFiniteSet() = default;
  /// Throws Error on duplicate ids or negative characteristics.
  explicit OrbitFiniteSet(std::vector<Orbit> orbits);

  const std::vector<Orbit>& orbits() const { return orbits_; }
  std::size_t size() const { return orbits_.size(); }
  bool contains(const OrbitId& id) const;
  const Orbit& at(const OrbitId& id) const;
  Int characteristic(const OrbitId& id) const { return at(id).characteristic; }
  std::size_t index_of(const OrbitId& id) const;

  /// Throws on duplicates.
  void add(Orbit orbit);

  bool operator==(const OrbitFiniteSet&) const = default;

 private:
  std::vector<Orbit> orbits_;
};

/// Value reduced into [0, k) for characteristic k >= 1. Throws on unknown orbit.
Element canonicalize(const Element& e, const OrbitFiniteSet& universe);

/// Translation by pi.
Element act(const Element& e, Int pi, const OrbitFiniteSet& universe);

}  // namespace sla
