#include "fpp/weyl.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace fpp {

namespace {

// Action on simple-root coordinates, one row per simple root: row j holds the
// root coordinates of w(β_j). Right multiplication by s_i is a cheap row update.
struct RootAction {
  const RootDatum* datum;
  std::vector<std::vector<long>> rows;

  explicit RootAction(const RootDatum& d) : datum(&d) {
    const int n = d.rank;
    rows.assign(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1;
  }

  // w := w ∘ s_i, i.e. w'(β_j) = w(β_j) − c_{ji} w(β_i).
  void right_multiply(int i) {
    const int n = datum->rank;
    const std::vector<long> beta_i = rows[i - 1];
    for (int j = 0; j < n; ++j) {
      const long c = datum->cartan[j][i - 1];
      if (c == 0) continue;
      for (int k = 0; k < n; ++k) rows[j][k] -= c * beta_i[k];
    }
  }

  bool is_identity() const {
    const int n = datum->rank;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rows[i][j] != (i == j ? 1 : 0)) return false;
    return true;
  }

  // w(β_j) is a root, so its coordinates have a uniform sign.
  bool sends_negative(int j) const {
    for (long c : rows[j - 1])
      if (c > 0) return false;
    return true;
  }

  // Sign of w(α) for α given in simple-root coordinates.
  bool image_negative(const std::vector<long>& alpha) const {
    const int n = datum->rank;
    for (int k = 0; k < n; ++k) {
      long value = 0;
      for (int j = 0; j < n; ++j) value += alpha[j] * rows[j][k];
      if (value > 0) return false;
      if (value < 0) return true;
    }
    throw internal_error("root image vanished");
  }
};

RootAction action_of(const WeylWord& w) {
  RootAction act(*w.datum);
  for (int letter : w.letters) act.right_multiply(letter);
  return act;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t simple_order(char family, int rank) {
  switch (family) {
    case 'A': return factorial(rank + 1);
    case 'B':
    case 'C': return factorial(rank) << rank;
    case 'D': return factorial(rank) << (rank - 1);
    case 'E': return rank == 6 ? 51840ull : (rank == 7 ? 2903040ull : 696729600ull);
    case 'F': return 1152;
    case 'G': return 12;
  }
  throw internal_error("unknown family");
}

struct LongHash {
  std::size_t operator()(const std::vector<long>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (long x : v) {
      h ^= static_cast<std::size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

void apply_simple_long(const RootDatum& d, int i, std::vector<long>& coords) {
  const long c = coords[i - 1];
  if (c == 0) return;
  for (int j = 0; j < d.rank; ++j) coords[j] -= c * d.cartan[i - 1][j];
}

}  // namespace

WeylWord make_word(const RootDatum& datum, std::vector<int> letters) {
  for (int l : letters)
    if (l < 1 || l > datum.rank) throw input_error("word letter out of range");
  return WeylWord{&datum, std::move(letters)};
}

WeylWord parse_word(const RootDatum& datum, std::string_view csv) {
  std::vector<int> letters;
  if (!csv.empty()) {
    for (const Rat& r : parse_rational_vector(csv)) {
      if (!is_integer(r)) throw input_error("word letters must be integers");
      letters.push_back(static_cast<int>(r.get_num().get_si()));
    }
  }
  return make_word(datum, std::move(letters));
}

std::string word_str(const WeylWord& w) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) os << ',';
    os << w.letters[i];
  }
  os << ']';
  return os.str();
}

Weight apply_simple(int i, const Weight& lambda) {
  const RootDatum& d = *lambda.datum;
  if (i < 1 || i > d.rank) throw input_error("node index out of range");
  Weight out = lambda;
  const Rat c = lambda.coords[i - 1];
  if (c == 0) return out;
  for (int j = 0; j < d.rank; ++j) out.coords[j] -= c * Rat(d.cartan[i - 1][j]);
  return out;
}

Weight apply_word(const WeylWord& w, const Weight& lambda) {
  if (w.datum != lambda.datum) throw input_error("word and weight belong to different data");
  Weight out = lambda;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    const Rat c = out.coords[*it - 1];
    if (c == 0) continue;
    for (int j = 0; j < w.datum->rank; ++j) out.coords[j] -= c * Rat(w.datum->cartan[*it - 1][j]);
  }
  return out;
}

WeylWord compose(const WeylWord& u, const WeylWord& v) {
  if (u.datum != v.datum) throw input_error("words belong to different data");
  std::vector<int> letters = u.letters;
  letters.insert(letters.end(), v.letters.begin(), v.letters.end());
  return WeylWord{u.datum, std::move(letters)};
}

WeylWord inverse(const WeylWord& w) {
  std::vector<int> letters(w.letters.rbegin(), w.letters.rend());
  return WeylWord{w.datum, std::move(letters)};
}

int weyl_length(const WeylWord& w) {
  const RootAction act = action_of(w);
  int count = 0;
  for (const auto& alpha : w.datum->positive_roots)
    if (act.image_negative(alpha)) ++count;
  return count;
}

WeylWord reduce_word(const WeylWord& w) {
  RootAction act = action_of(w);
  const int guard = static_cast<int>(w.datum->positive_roots.size());
  std::vector<int> peeled;
  while (!act.is_identity()) {
    int descent = 0;
    for (int i = 1; i <= w.datum->rank; ++i) {
      if (act.sends_negative(i)) {
        descent = i;
        break;
      }
    }
    if (descent == 0) throw internal_error("non-identity element without a descent");
    act.right_multiply(descent);
    peeled.push_back(descent);
    if (static_cast<int>(peeled.size()) > guard)
      throw internal_error("reduction exceeded the positive-root count");
  }
  std::reverse(peeled.begin(), peeled.end());
  return WeylWord{w.datum, std::move(peeled)};
}

bool same_element(const WeylWord& a, const WeylWord& b) {
  if (a.datum != b.datum) return false;
  const Weight r = rho(*a.datum);
  return apply_word(a, r) == apply_word(b, r);
}

Dominantization dominantize(const Weight& lambda) {
  const RootDatum& d = *lambda.datum;
  const int guard = static_cast<int>(d.positive_roots.size());
  Weight current = lambda;
  std::vector<int> applied;
  while (true) {
    int index = 0;
    for (int i = 1; i <= d.rank; ++i) {
      if (current.coords[i - 1] < 0) {
        index = i;
        break;
      }
    }
    if (index == 0) break;
    current = apply_simple(index, current);
    applied.push_back(index);
    if (static_cast<int>(applied.size()) > guard)
      throw internal_error("first negative index algorithm exceeded the positive-root count");
  }
  std::reverse(applied.begin(), applied.end());
  return Dominantization{std::move(current), WeylWord{&d, std::move(applied)}};
}

std::uint64_t weyl_order(const RootDatum& datum, const std::vector<int>& nodes) {
  // Split `nodes` into connected components of the sub-diagram and multiply orders.
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::uint64_t order = 1;
  std::vector<bool> used(sorted.size(), false);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (used[i]) continue;
    std::vector<int> component{sorted[i]};
    used[i] = true;
    for (std::size_t scan = 0; scan < component.size(); ++scan) {
      for (std::size_t j = 0; j < sorted.size(); ++j) {
        if (!used[j] && datum.adjacent(component[scan], sorted[j])) {
          used[j] = true;
          component.push_back(sorted[j]);
        }
      }
    }
    // The order of an irreducible component depends only on its Coxeter matrix;
    // identify it by bond multiplicities and the branch-node shape.
    const int m = static_cast<int>(component.size());
    auto degree_in = [&](int a) {
      int deg = 0;
      for (int b : component)
        if (b != a && datum.adjacent(a, b)) ++deg;
      return deg;
    };
    int triples = 0, branch_node = 0;
    bool interior_double = false, has_double = false;
    for (int a : component) {
      if (degree_in(a) >= 3) branch_node = a;
      for (int b : component) {
        if (b == a || !datum.adjacent(a, b)) continue;
        const long prod = datum.cartan[a - 1][b - 1] * datum.cartan[b - 1][a - 1];
        if (prod == 3) ++triples;
        if (prod == 2) {
          has_double = true;
          if (degree_in(a) == 2 && degree_in(b) == 2) interior_double = true;
        }
      }
    }
    if (triples > 0)
      order *= simple_order('G', 2);
    else if (interior_double)
      order *= simple_order('F', 4);
    else if (has_double)
      order *= simple_order('B', m);  // |W(B_m)| = |W(C_m)|
    else if (branch_node != 0) {
      int leaf_neighbors = 0;
      for (int b : component)
        if (datum.adjacent(branch_node, b) && degree_in(b) == 1) ++leaf_neighbors;
      order *= leaf_neighbors >= 2 ? simple_order('D', m) : simple_order('E', m);
    } else
      order *= simple_order('A', m);
  }
  return order;
}

std::uint64_t weyl_order(const RootDatum& datum) {
  return simple_order(datum.family, datum.rank);
}

std::vector<WeylElement> enumerate_weyl(const RootDatum& datum,
                                        const std::optional<std::vector<int>>& restricted_to,
                                        const EnumerationOptions& options) {
  std::vector<int> generators;
  if (restricted_to) {
    generators = *restricted_to;
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    for (int g : generators)
      if (g < 1 || g > datum.rank) throw input_error("restricted node out of range");
  } else {
    generators.resize(datum.rank);
    std::iota(generators.begin(), generators.end(), 1);
  }
  const bool full = static_cast<int>(generators.size()) == datum.rank;
  const bool classical = datum.family == 'A' || datum.family == 'B' || datum.family == 'C' ||
                         datum.family == 'D';
  if (full) {
    if (!(datum.rank <= 4 || (classical && datum.rank <= 6)))
      throw input_error("enumeration budget exceeded: full Weyl group of " + datum.name());
  } else if (datum.rank > 8) {
    throw input_error("enumeration budget exceeded: parabolic subgroups only for rank <= 8");
  }
  const std::uint64_t order =
      full ? weyl_order(datum) : weyl_order(datum, generators);
  if (order > options.max_elements)
    throw input_error("enumeration budget exceeded: group order " + std::to_string(order));

  const int n = datum.rank;
  std::vector<long> start(n, 1);  // ρ
  std::unordered_map<std::vector<long>, std::size_t, LongHash> seen;
  std::vector<WeylElement> elements;
  elements.push_back(WeylElement{{}, start});
  seen.emplace(std::move(start), 0);
  for (std::size_t scan = 0; scan < elements.size(); ++scan) {
    for (int i : generators) {
      std::vector<long> image = elements[scan].rho_image;
      apply_simple_long(datum, i, image);
      if (seen.count(image)) continue;
      // New element s_i ∘ parent, discovered at minimal length, so the word is reduced.
      std::vector<int> word;
      word.reserve(elements[scan].word.size() + 1);
      word.push_back(i);
      word.insert(word.end(), elements[scan].word.begin(), elements[scan].word.end());
      seen.emplace(image, elements.size());
      elements.push_back(WeylElement{std::move(word), std::move(image)});
    }
  }
  if (elements.size() != order)
    throw internal_error("enumeration produced " + std::to_string(elements.size()) +
                         " elements, expected " + std::to_string(order));
  std::sort(elements.begin(), elements.end(), [](const WeylElement& a, const WeylElement& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  });
  return elements;
}

const std::vector<WeylElement>& enumerate_weyl_cached(
    const RootDatum& datum, const std::optional<std::vector<int>>& restricted_to) {
  static std::map<std::pair<const RootDatum*, std::vector<int>>,
                  std::unique_ptr<std::vector<WeylElement>>>
      cache;
  static std::mutex mutex;
  std::vector<int> key_nodes;
  if (restricted_to) {
    key_nodes = *restricted_to;
    std::sort(key_nodes.begin(), key_nodes.end());
    key_nodes.erase(std::unique(key_nodes.begin(), key_nodes.end()), key_nodes.end());
  } else {
    key_nodes.resize(datum.rank);
    std::iota(key_nodes.begin(), key_nodes.end(), 1);
  }
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(&datum, key_nodes);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto value = std::make_unique<std::vector<WeylElement>>(
        enumerate_weyl(datum, key_nodes, EnumerationOptions{}));
    it = cache.emplace(key, std::move(value)).first;
  }
  return *it->second;
}

WeylWord longest_element(const RootDatum& datum, const std::vector<int>& nodes) {
  if (nodes.empty()) throw input_error("longest_element requires a nonempty node set");
  std::vector<int> sorted = nodes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int g : sorted)
    if (g < 1 || g > datum.rank) throw input_error("node out of range");

  // Count positive roots supported on the node set; this is the length of w0.
  int target_length = 0;
  for (const auto& alpha : datum.positive_roots) {
    bool supported = true;
    for (int j = 0; j < datum.rank; ++j) {
      if (alpha[j] != 0 && !std::binary_search(sorted.begin(), sorted.end(), j + 1)) {
        supported = false;
        break;
      }
    }
    if (supported) ++target_length;
  }

  // Walk ρ restricted to the parabolic into the anti-dominant chamber.
  std::vector<long> x(datum.rank, 0);
  for (int g : sorted) x[g - 1] = 1;
  std::vector<int> applied;
  while (true) {
    int index = 0;
    for (int g : sorted) {
      if (x[g - 1] > 0) {
        index = g;
        break;
      }
    }
    if (index == 0) break;
    apply_simple_long(datum, index, x);
    applied.push_back(index);
    if (static_cast<int>(applied.size()) > target_length)
      throw internal_error("longest element walk exceeded the parabolic length");
  }
  std::reverse(applied.begin(), applied.end());
  WeylWord w{&datum, std::move(applied)};
  if (static_cast<int>(w.letters.size()) != target_length || weyl_length(w) != target_length)
    throw internal_error("longest element construction produced a non-reduced word");
  return w;
}

std::set<int> module_support(const Weight& lambda, const WeylWord& w) {
  if (lambda.datum != w.datum) throw input_error("weight and word belong to different data");
  const Dominantization dom = dominantize(lambda);
  const WeylWord x = reduce_word(compose(dom.word, compose(w, inverse(dom.word))));
  return std::set<int>(x.letters.begin(), x.letters.end());
}

ModulePair make_pair(Weight lambda_L, Weight lambda_R) {
  if (lambda_L.datum != lambda_R.datum)
    throw input_error("module pair coordinates belong to different data");
  return ModulePair{std::move(lambda_L), std::move(lambda_R)};
}

std::optional<WeylWord> hermitian_witness(const ModulePair& p) {
  const RootDatum& d = *p.lambda_L.datum;
  const Weight mu = p.mu();
  const Weight nu = p.nu();
  const Weight minus_nu = -nu;
  for (const WeylElement& e : enumerate_weyl_cached(d)) {
    WeylWord w{&d, e.word};
    if (apply_word(w, mu) == mu && apply_word(w, nu) == minus_nu) return w;
  }
  return std::nullopt;
}

bool is_hermitian_pair(const ModulePair& p) { return hermitian_witness(p).has_value(); }

std::optional<WeylWord> equivalence_witness(const ModulePair& p, const ModulePair& q) {
  const RootDatum& d = *p.lambda_L.datum;
  if (q.lambda_L.datum != &d) throw input_error("pairs belong to different data");
  for (const WeylElement& e : enumerate_weyl_cached(d)) {
    WeylWord w{&d, e.word};
    if (apply_word(w, p.lambda_L) == q.lambda_L && apply_word(w, p.lambda_R) == q.lambda_R)
      return w;
  }
  return std::nullopt;
}

bool modules_equivalent(const ModulePair& p, const ModulePair& q) {
  return equivalence_witness(p, q).has_value();
}

}  // namespace fpp
