#pragma once

#include <vector>

#include "fpp/rootsys.hpp"

namespace fpp {

/// One connected component of a Levi sub-diagram. `nodes` are ambient 1-based node
/// indices in the canonical local order: the induced Cartan submatrix under this
/// order equals build_root_datum(family, local_rank).cartan, so long/short ends of
/// B/C components and the branch conventions of D/E are fixed by the match.
struct ComponentInfo {
  char family = 0;
  int local_rank = 0;
  std::vector<int> nodes;
};

struct LeviDatum {
  const RootDatum* datum = nullptr;
  std::vector<int> nodes;  // sorted ambient nodes
  std::vector<ComponentInfo> components;
};

/// Splits a node subset into connected components and classifies each one by
/// matching its Cartan submatrix against the simple types.
std::vector<ComponentInfo> classify_components(const RootDatum& datum,
                                               const std::vector<int>& nodes);

/// The Levi subgroup determined by the vanishing coordinates of a dominant weight:
/// nodes = {i | ⟨η, β_i^∨⟩ = 0}.
LeviDatum levi_from_eta(const Weight& eta);

/// Highest weight of the adjoint representation of a component, re-indexed to the
/// ambient simple-root basis.
RootVector adjoint_delta(const RootDatum& ambient, const ComponentInfo& component);

/// The per-family list of cx-basic highest weights, in local coordinates:
/// A/D/E: zero; B: zero or [0,…,0,1]; C: zero or a single 1 anywhere;
/// F4: 0, [0,0,1,0], [0,0,0,1]; G2: [0,0], [1,0], [2,0].
bool is_cx_basic(const ComponentInfo& component, const QVec& tau_local);

/// The unique maximal Levi containing the η-Levi on which every component sees a
/// cx-basic restriction of η. Exhaustive superset search; uniqueness is asserted.
LeviDatum compute_mcx(const Weight& eta);

/// γ defines a bottom-layer type iff it is dominant for the ambient group.
bool is_bottom_layer(const Weight& eta, const Weight& gamma);

/// Catalog of indefinite-form weights at level p for one simple factor, in local
/// coordinates: the adjoint weight for τ = 0, the spin/fundamental catalogs for
/// non-spherical B/C, and the fixed F4/G2 lists. Throws input_error otherwise.
std::vector<Weight> indefinite_gammas(char family, int rank, const Weight& tau);

/// Local τ of η on a component, as a weight of the component's own datum.
Weight restrict_to_component(const Weight& eta, const ComponentInfo& component);

/// The catalog γ's of a component transported to the ambient group: η plus the
/// corresponding nonnegative combination of ambient simple roots.
std::vector<Weight> component_gammas(const Weight& eta, const ComponentInfo& component);

}  // namespace fpp
