#include "fpp/levi.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace fpp {

namespace {

struct Candidate {
  char family;
  int rank;
};

std::vector<Candidate> candidates_for_size(int m) {
  std::vector<Candidate> out;
  out.push_back({'A', m});
  if (m >= 2) out.push_back({'B', m});
  if (m >= 3) out.push_back({'C', m});
  if (m >= 4) out.push_back({'D', m});
  if (m == 6 || m == 7 || m == 8) out.push_back({'E', m});
  if (m == 4) out.push_back({'F', 4});
  if (m == 2) out.push_back({'G', 2});
  return out;
}

// Depth-first search for an ordering of `nodes` whose Cartan submatrix equals the
// target; candidate nodes are tried in ascending order, so the match is canonical.
bool match_order(const RootDatum& datum, const std::vector<int>& nodes,
                 const std::vector<std::vector<long>>& target, std::vector<int>& order,
                 std::vector<bool>& used) {
  const std::size_t pos = order.size();
  if (pos == nodes.size()) return true;
  for (std::size_t c = 0; c < nodes.size(); ++c) {
    if (used[c]) continue;
    const int node = nodes[c];
    bool consistent = true;
    for (std::size_t p = 0; p < pos; ++p) {
      if (datum.cartan[node - 1][order[p] - 1] != target[pos][p] ||
          datum.cartan[order[p] - 1][node - 1] != target[p][pos]) {
        consistent = false;
        break;
      }
    }
    if (!consistent) continue;
    used[c] = true;
    order.push_back(node);
    if (match_order(datum, nodes, target, order, used)) return true;
    order.pop_back();
    used[c] = false;
  }
  return false;
}

ComponentInfo classify_one(const RootDatum& datum, const std::vector<int>& nodes) {
  const int m = static_cast<int>(nodes.size());
  for (const Candidate& cand : candidates_for_size(m)) {
    const RootDatum& local = build_root_datum(cand.family, cand.rank);
    std::vector<int> order;
    order.reserve(m);
    std::vector<bool> used(m, false);
    if (match_order(datum, nodes, local.cartan, order, used))
      return ComponentInfo{cand.family, cand.rank, std::move(order)};
  }
  throw internal_error("connected sub-diagram matches no simple type");
}

using ClassifyKey = std::pair<const RootDatum*, std::uint32_t>;

std::uint32_t nodes_mask(const std::vector<int>& nodes) {
  std::uint32_t mask = 0;
  for (int n : nodes) mask |= 1u << (n - 1);
  return mask;
}

const std::vector<ComponentInfo>& classify_cached(const RootDatum& datum, std::uint32_t mask) {
  static std::map<ClassifyKey, std::unique_ptr<std::vector<ComponentInfo>>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  const ClassifyKey key{&datum, mask};
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<int> nodes;
    for (int i = 1; i <= datum.rank; ++i)
      if (mask & (1u << (i - 1))) nodes.push_back(i);

    auto components = std::make_unique<std::vector<ComponentInfo>>();
    std::vector<bool> used(nodes.size(), false);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (used[i]) continue;
      std::vector<int> component{nodes[i]};
      used[i] = true;
      for (std::size_t scan = 0; scan < component.size(); ++scan) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          if (!used[j] && datum.adjacent(component[scan], nodes[j])) {
            used[j] = true;
            component.push_back(nodes[j]);
          }
        }
      }
      std::sort(component.begin(), component.end());
      components->push_back(classify_one(datum, component));
    }
    std::sort(components->begin(), components->end(),
              [](const ComponentInfo& a, const ComponentInfo& b) {
                return *std::min_element(a.nodes.begin(), a.nodes.end()) <
                       *std::min_element(b.nodes.begin(), b.nodes.end());
              });
    it = cache.emplace(key, std::move(components)).first;
  }
  return *it->second;
}

}  // namespace

std::vector<ComponentInfo> classify_components(const RootDatum& datum,
                                               const std::vector<int>& nodes) {
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int n : sorted)
    if (n < 1 || n > datum.rank) throw input_error("node out of range");
  if (datum.rank > 31) throw input_error("component classification supports rank <= 31");
  return classify_cached(datum, nodes_mask(sorted));
}

LeviDatum levi_from_eta(const Weight& eta) {
  if (!is_dominant(eta)) throw input_error("levi_from_eta requires a dominant weight");
  std::vector<int> nodes;
  for (int i = 1; i <= eta.datum->rank; ++i)
    if (eta.coords[i - 1] == 0) nodes.push_back(i);
  return LeviDatum{eta.datum, nodes, classify_components(*eta.datum, nodes)};
}

RootVector adjoint_delta(const RootDatum& ambient, const ComponentInfo& component) {
  const int p = component.local_rank;
  std::vector<long> local(p, 0);
  switch (component.family) {
    case 'A':
      std::fill(local.begin(), local.end(), 1L);
      break;
    case 'B':
      std::fill(local.begin(), local.end(), 2L);
      local[0] = 1;
      break;
    case 'C':
      std::fill(local.begin(), local.end(), 2L);
      local[p - 1] = 1;
      break;
    case 'D':
      std::fill(local.begin(), local.end(), 2L);
      local[0] = 1;
      local[p - 2] = 1;
      local[p - 1] = 1;
      break;
    case 'E':
      if (p == 6)
        local = {1, 2, 2, 3, 2, 1};
      else if (p == 7)
        local = {2, 2, 3, 4, 3, 2, 1};
      else
        local = {2, 3, 4, 6, 5, 4, 3, 2};
      break;
    case 'F':
      local = {2, 3, 4, 2};
      break;
    case 'G':
      local = {3, 2};
      break;
    default:
      throw internal_error("unclassified component");
  }
  QVec coeffs(ambient.rank, Rat(0));
  for (int j = 0; j < p; ++j) coeffs[component.nodes[j] - 1] = Rat(local[j]);
  return RootVector{&ambient, std::move(coeffs)};
}

bool is_cx_basic(const ComponentInfo& component, const QVec& tau_local) {
  if (static_cast<int>(tau_local.size()) != component.local_rank)
    throw input_error("restricted weight has the wrong length");
  for (const Rat& c : tau_local)
    if (!is_integer(c) || c < 0)
      throw input_error("cx-basic test requires nonnegative integer coordinates");
  const auto nonzero_slots = [&]() {
    std::vector<int> slots;
    for (int i = 0; i < component.local_rank; ++i)
      if (tau_local[i] != 0) slots.push_back(i);
    return slots;
  }();
  if (nonzero_slots.empty()) return true;
  switch (component.family) {
    case 'A':
    case 'D':
    case 'E':
      return false;
    case 'B':
      return nonzero_slots.size() == 1 && nonzero_slots[0] == component.local_rank - 1 &&
             tau_local[component.local_rank - 1] == 1;
    case 'C':
      // A single 1 strictly before the long-root end; the last fundamental
      // weight does not count as basic.
      return nonzero_slots.size() == 1 && nonzero_slots[0] < component.local_rank - 1 &&
             tau_local[nonzero_slots[0]] == 1;
    case 'F':
      return nonzero_slots.size() == 1 &&
             (nonzero_slots[0] == 2 || nonzero_slots[0] == 3) &&
             tau_local[nonzero_slots[0]] == 1;
    case 'G':
      return nonzero_slots.size() == 1 && nonzero_slots[0] == 0 &&
             (tau_local[0] == 1 || tau_local[0] == 2);
  }
  throw internal_error("unclassified component");
}

Weight restrict_to_component(const Weight& eta, const ComponentInfo& component) {
  const RootDatum& local = build_root_datum(component.family, component.local_rank);
  QVec coords(component.local_rank);
  for (int j = 0; j < component.local_rank; ++j)
    coords[j] = eta.coords[component.nodes[j] - 1];
  return make_weight(local, std::move(coords));
}

LeviDatum compute_mcx(const Weight& eta) {
  const RootDatum& datum = *eta.datum;
  if (!is_dominant(eta)) throw input_error("compute_mcx requires a dominant weight");
  for (const Rat& c : eta.coords)
    if (!is_integer(c)) throw input_error("compute_mcx requires an integral weight");

  std::uint32_t base = 0;       // I(M_f)
  std::vector<int> free_nodes;  // nodes that could additionally become cx-basic
  for (int i = 1; i <= datum.rank; ++i) {
    const Rat& k = eta.coords[i - 1];
    if (k == 0) {
      base |= 1u << (i - 1);
    } else if (k == 1 || (datum.family == 'G' && i == 1 && k == 2)) {
      free_nodes.push_back(i);
    }
  }
  if (free_nodes.size() > 20) throw input_error("compute_mcx superset search too large");

  const auto valid = [&](std::uint32_t mask) {
    for (const ComponentInfo& c : classify_cached(datum, mask)) {
      QVec tau(c.local_rank);
      for (int j = 0; j < c.local_rank; ++j) tau[j] = eta.coords[c.nodes[j] - 1];
      if (!is_cx_basic(c, tau)) return false;
    }
    return true;
  };

  std::vector<std::uint32_t> valid_masks;
  std::uint32_t best = base;  // the η-Levi itself is always valid
  for (std::uint32_t bits = 0; bits < (1u << free_nodes.size()); ++bits) {
    std::uint32_t mask = base;
    for (std::size_t j = 0; j < free_nodes.size(); ++j)
      if (bits & (1u << j)) mask |= 1u << (free_nodes[j] - 1);
    if (!valid(mask)) continue;
    valid_masks.push_back(mask);
    if (__builtin_popcount(mask) > __builtin_popcount(best)) best = mask;
  }
  for (std::uint32_t mask : valid_masks) {
    if ((mask & best) != mask)
      throw internal_error("maximal cx-basic Levi is not unique for " + weight_str(eta));
  }

  std::vector<int> nodes;
  for (int i = 1; i <= datum.rank; ++i)
    if (best & (1u << (i - 1))) nodes.push_back(i);
  return LeviDatum{&datum, nodes, classify_cached(datum, best)};
}

bool is_bottom_layer(const Weight& eta, const Weight& gamma) {
  if (eta.datum != gamma.datum) throw input_error("weights belong to different data");
  if (!is_dominant(eta)) throw input_error("is_bottom_layer requires a dominant lowest type");
  return is_dominant(gamma);
}

std::vector<Weight> indefinite_gammas(char family, int rank, const Weight& tau) {
  const RootDatum& datum = build_root_datum(family, rank);
  if (tau.datum != &datum) throw input_error("tau belongs to a different datum");
  const bool zero = std::all_of(tau.coords.begin(), tau.coords.end(),
                                [](const Rat& c) { return c == 0; });
  if (zero) {
    const ComponentInfo whole{family, rank, [&] {
                                std::vector<int> all(rank);
                                for (int i = 0; i < rank; ++i) all[i] = i + 1;
                                return all;
                              }()};
    return {from_root_coords(adjoint_delta(datum, whole))};
  }

  const auto root_sum = [&](int from, int to) {  // β_from + ... + β_to, 1-based inclusive
    Weight sum = zero_weight(datum);
    for (int i = from; i <= to; ++i) sum = sum + simple_root(datum, i);
    return sum;
  };

  if (family == 'B') {
    QVec spin(rank, Rat(0));
    spin[rank - 1] = 1;
    if (tau.coords == spin) return {tau + root_sum(1, rank)};
  } else if (family == 'C') {
    int slot = 0, nonzero = 0;
    for (int i = 1; i <= rank; ++i) {
      if (tau.coords[i - 1] != 0) {
        ++nonzero;
        slot = i;
      }
    }
    if (nonzero == 1 && slot < rank && tau.coords[slot - 1] == 1) {
      std::vector<Weight> out;
      if (slot >= 2) out.push_back(tau + root_sum(1, slot - 1));
      Weight gamma2 = tau + root_sum(1, slot) + simple_root(datum, rank);
      for (int i = slot + 1; i <= rank - 1; ++i)
        gamma2 = gamma2 + Rat(2) * simple_root(datum, i);
      out.push_back(gamma2);
      return out;
    }
  } else if (family == 'F') {
    if (tau.coords == QVec{0, 0, 1, 0})
      return {make_weight(datum, {1, 0, 0, 1}), make_weight(datum, {0, 0, 0, 2})};
    if (tau.coords == QVec{0, 0, 0, 1}) return {make_weight(datum, {0, 0, 1, 0})};
  } else if (family == 'G') {
    if (tau.coords == QVec{1, 0}) return {make_weight(datum, {2, 0})};
    if (tau.coords == QVec{2, 0}) return {make_weight(datum, {1, 1})};
  }
  throw input_error("no indefinite-gamma catalog entry for " + datum.name() + " with tau = " +
                    weight_str(tau));
}

std::vector<Weight> component_gammas(const Weight& eta, const ComponentInfo& component) {
  const Weight tau = restrict_to_component(eta, component);
  std::vector<Weight> out;
  for (const Weight& gamma_local : indefinite_gammas(component.family, component.local_rank, tau)) {
    const RootVector diff = to_root_coords(gamma_local - tau);
    Weight ambient = eta;
    for (int j = 0; j < component.local_rank; ++j) {
      if (diff.coeffs[j] == 0) continue;
      ambient = ambient + diff.coeffs[j] * simple_root(*eta.datum, component.nodes[j]);
    }
    out.push_back(std::move(ambient));
  }
  return out;
}

}  // namespace fpp
