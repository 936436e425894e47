#include "sla/atoms.hpp"

#include <algorithm>

namespace sla {

std::string to_string(const Element& e) { return e.orbit + ":" + std::to_string(e.value); }

OrbitFiniteSet::OrbitFiniteSet(std::vector<Orbit> orbits) {
  for (auto& o : orbits) add(std::move(o));
}

void OrbitFiniteSet::add(Orbit orbit) {
  if (orbit.characteristic < 0)
    throw Error("orbit '" + orbit.id + "' has negative characteristic");
  if (contains(orbit.id)) throw Error("duplicate orbit id '" + orbit.id + "'");
  orbits_.push_back(std::move(orbit));
}

bool OrbitFiniteSet::contains(const OrbitId& id) const {
  return std::any_of(orbits_.begin(), orbits_.end(), [&](const Orbit& o) { return o.id == id; });
}

std::size_t OrbitFiniteSet::index_of(const OrbitId& id) const {
  for (std::size_t i = 0; i < orbits_.size(); ++i)
    if (orbits_[i].id == id) return i;
  throw Error("unknown orbit '" + id + "'");
}

const Orbit& OrbitFiniteSet::at(const OrbitId& id) const { return orbits_[index_of(id)]; }

Element canonicalize(const Element& e, const OrbitFiniteSet& universe) {
  Int k = universe.characteristic(e.orbit);
  return {e.orbit, arith::mod0(e.value, k)};
}

Element act(const Element& e, Int pi, const OrbitFiniteSet& universe) {
  Int k = universe.characteristic(e.orbit);
  if (k == 0) return {e.orbit, arith::add(e.value, pi)};
  return {e.orbit, arith::mod(arith::add(arith::mod(e.value, k), arith::mod(pi, k)), k)};
}

}  // namespace sla
