#include "fpp/rootsys.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace fpp {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw input_error(message);
}

std::vector<std::vector<long>> cartan_matrix(char family, int rank) {
  const int n = rank;
  std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto chain = [&](int i, int j) {  // 1-based single bond
    c[i - 1][j - 1] = -1;
    c[j - 1][i - 1] = -1;
  };
  switch (family) {
    case 'A':
      require(n >= 1, "type A requires rank >= 1");
      for (int i = 1; i < n; ++i) chain(i, i + 1);
      break;
    case 'B':
      require(n >= 2, "type B requires rank >= 2");
      for (int i = 1; i < n; ++i) chain(i, i + 1);
      c[n - 2][n - 1] = -2;  // ⟨β_{n-1}, β_n^∨⟩ = -2, short root last
      break;
    case 'C':
      require(n >= 3, "type C requires rank >= 3");
      for (int i = 1; i < n; ++i) chain(i, i + 1);
      c[n - 1][n - 2] = -2;  // ⟨β_n, β_{n-1}^∨⟩ = -2, long root last
      break;
    case 'D':
      require(n >= 4, "type D requires rank >= 4");
      for (int i = 1; i < n - 1; ++i) chain(i, i + 1);
      chain(n - 2, n);
      break;
    case 'E':
      require(n == 6 || n == 7 || n == 8, "type E requires rank 6, 7 or 8");
      chain(1, 3);
      for (int i = 3; i < n; ++i) chain(i, i + 1);
      chain(2, 4);  // node 2 is the branch node attached to node 4
      break;
    case 'F':
      require(n == 4, "type F requires rank 4");
      chain(1, 2);
      chain(3, 4);
      c[1][2] = -2;  // ⟨β_2, β_3^∨⟩ = -2
      c[2][1] = -1;
      break;
    case 'G':
      require(n == 2, "type G requires rank 2");
      c[0][1] = -1;
      c[1][0] = -3;  // β_1 = [2,-1], β_2 = [-3,2]
      break;
    default:
      throw input_error(std::string("unknown family letter '") + family + "'");
  }
  return c;
}

std::vector<QVec> invert_matrix(const std::vector<std::vector<long>>& m) {
  const std::size_t n = m.size();
  std::vector<QVec> a(n, QVec(2 * n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m[i][j]);
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw internal_error("Cartan matrix is singular");
    std::swap(a[pivot], a[col]);
    const Rat inv = Rat(1) / a[col][col];
    for (auto& entry : a[col]) entry *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rat factor = a[row][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[row][j] -= factor * a[col][j];
    }
  }
  std::vector<QVec> inv(n, QVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
  return inv;
}

long expected_positive_roots(char family, int rank) {
  const long n = rank;
  switch (family) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : (n == 7 ? 63 : 120);
    case 'F': return 24;
    case 'G': return 6;
  }
  return -1;
}

// Closure generation: starting from the simple roots, α + β_i is added whenever the
// root-string criterion p - ⟨α, β_i^∨⟩ > 0 admits it (p = maximal k with α - kβ_i a root).
std::vector<std::vector<long>> generate_positive_roots(const std::vector<std::vector<long>>& cartan) {
  const int n = static_cast<int>(cartan.size());
  std::map<std::vector<long>, bool> known;
  std::vector<std::vector<long>> roots;
  for (int i = 0; i < n; ++i) {
    std::vector<long> beta(n, 0);
    beta[i] = 1;
    known.emplace(beta, true);
    roots.push_back(std::move(beta));
  }
  std::size_t scanned = 0;
  while (scanned < roots.size()) {
    const std::vector<long> alpha = roots[scanned++];
    for (int i = 0; i < n; ++i) {
      long q = 0;  // ⟨α, β_i^∨⟩
      for (int j = 0; j < n; ++j) q += alpha[j] * cartan[j][i];
      long p = 0;
      std::vector<long> down = alpha;
      while (true) {
        down[i] -= 1;
        bool negative = std::all_of(down.begin(), down.end(), [](long c) { return c <= 0; });
        if (negative || !known.count(down)) break;
        ++p;
      }
      if (p - q > 0) {
        std::vector<long> up = alpha;
        up[i] += 1;
        if (known.emplace(up, true).second) roots.push_back(std::move(up));
      }
    }
    if (roots.size() > 400) throw internal_error("positive-root closure did not stabilize");
  }
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    const long ha = std::accumulate(a.begin(), a.end(), 0L);
    const long hb = std::accumulate(b.begin(), b.end(), 0L);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return roots;
}

}  // namespace

const RootDatum& build_root_datum(char family, int rank) {
  static std::map<std::pair<char, int>, std::unique_ptr<RootDatum>> registry;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  const auto key = std::make_pair(family, rank);
  auto it = registry.find(key);
  if (it != registry.end()) return *it->second;

  auto datum = std::make_unique<RootDatum>();
  datum->family = family;
  datum->rank = rank;
  datum->cartan = cartan_matrix(family, rank);
  datum->cartan_inverse = invert_matrix(datum->cartan);
  datum->positive_roots = generate_positive_roots(datum->cartan);
  if (static_cast<long>(datum->positive_roots.size()) != expected_positive_roots(family, rank))
    throw internal_error("positive-root closure produced the wrong count for " + datum->name());
  auto [pos, ok] = registry.emplace(key, std::move(datum));
  (void)ok;
  return *pos->second;
}

const RootDatum& root_datum_by_name(std::string_view name) {
  require(name.size() >= 2, "datum name must be letter+rank, e.g. \"F4\"");
  const char family = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
  int rank = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    require(std::isdigit(static_cast<unsigned char>(name[i])), "invalid rank in datum name");
    rank = rank * 10 + (name[i] - '0');
  }
  require(rank >= 1 && rank <= 64, "rank out of range");
  return build_root_datum(family, rank);
}

Weight make_weight(const RootDatum& datum, QVec coords) {
  if (static_cast<int>(coords.size()) != datum.rank)
    throw input_error("weight has " + std::to_string(coords.size()) + " coordinates, datum " +
                      datum.name() + " has rank " + std::to_string(datum.rank));
  return Weight{&datum, std::move(coords)};
}

Weight parse_weight(const RootDatum& datum, std::string_view csv) {
  return make_weight(datum, parse_rational_vector(csv));
}

Weight zero_weight(const RootDatum& datum) { return Weight{&datum, QVec(datum.rank, Rat(0))}; }

Weight rho(const RootDatum& datum) { return Weight{&datum, QVec(datum.rank, Rat(1))}; }

Weight simple_root(const RootDatum& datum, int i) {
  if (i < 1 || i > datum.rank) throw input_error("node index out of range");
  QVec coords(datum.rank);
  for (int j = 0; j < datum.rank; ++j) coords[j] = Rat(datum.cartan[i - 1][j]);
  return Weight{&datum, std::move(coords)};
}

namespace {
void check_same_datum(const Weight& a, const Weight& b) {
  if (a.datum != b.datum) throw input_error("weights belong to different root data");
}
}  // namespace

Weight operator+(const Weight& a, const Weight& b) {
  check_same_datum(a, b);
  Weight out = a;
  for (int i = 0; i < a.datum->rank; ++i) out.coords[i] += b.coords[i];
  return out;
}

Weight operator-(const Weight& a, const Weight& b) {
  check_same_datum(a, b);
  Weight out = a;
  for (int i = 0; i < a.datum->rank; ++i) out.coords[i] -= b.coords[i];
  return out;
}

Weight operator-(const Weight& a) {
  Weight out = a;
  for (auto& c : out.coords) c = -c;
  return out;
}

Weight operator*(const Rat& scalar, const Weight& w) {
  Weight out = w;
  for (auto& c : out.coords) c *= scalar;
  return out;
}

Rat pairing(const Weight& lambda, int i) {
  if (i < 1 || i > lambda.datum->rank) throw input_error("node index out of range");
  return lambda.coords[i - 1];
}

RootVector to_root_coords(const Weight& lambda) {
  const auto& inv = lambda.datum->cartan_inverse;
  const int n = lambda.datum->rank;
  QVec coeffs(n, Rat(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) coeffs[j] += lambda.coords[i] * inv[i][j];
  return RootVector{lambda.datum, std::move(coeffs)};
}

Weight from_root_coords(const RootVector& v) {
  const auto& cartan = v.datum->cartan;
  const int n = v.datum->rank;
  QVec coords(n, Rat(0));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) coords[j] += v.coeffs[i] * Rat(cartan[i][j]);
  return Weight{v.datum, std::move(coords)};
}

Rat height(const Weight& lambda) {
  const RootVector v = to_root_coords(lambda);
  Rat sum(0);
  for (const auto& c : v.coeffs) sum += c;
  return sum;
}

bool is_dominant(const Weight& lambda) {
  return std::all_of(lambda.coords.begin(), lambda.coords.end(),
                     [](const Rat& c) { return c >= 0; });
}

QVec usual_coords(const Weight& lambda) {
  const RootDatum& d = *lambda.datum;
  const int n = d.rank;
  const QVec& k = lambda.coords;
  switch (d.family) {
    case 'A': {
      // x_j = t + sum_{i>=j} k_i with t chosen so the coordinates sum to zero.
      QVec x(n + 1, Rat(0));
      for (int j = n - 1; j >= 0; --j) x[j] = x[j + 1] + k[j];
      Rat total(0);
      for (const auto& v : x) total += v;
      const Rat shift = total / Rat(n + 1);
      for (auto& v : x) v -= shift;
      return x;
    }
    case 'B': {
      QVec x(n);
      x[n - 1] = k[n - 1] / 2;
      for (int j = n - 2; j >= 0; --j) x[j] = x[j + 1] + k[j];
      return x;
    }
    case 'C': {
      QVec x(n);
      x[n - 1] = k[n - 1];
      for (int j = n - 2; j >= 0; --j) x[j] = x[j + 1] + k[j];
      return x;
    }
    case 'D': {
      QVec x(n);
      x[n - 1] = (k[n - 1] - k[n - 2]) / 2;
      x[n - 2] = (k[n - 1] + k[n - 2]) / 2;
      for (int j = n - 3; j >= 0; --j) x[j] = x[j + 1] + k[j];
      return x;
    }
    default:
      throw input_error("usual coordinates are only defined for the classical families");
  }
}

Weight from_usual(const RootDatum& datum, const QVec& usual) {
  const int n = datum.rank;
  QVec k(n);
  switch (datum.family) {
    case 'A':
      if (static_cast<int>(usual.size()) != n + 1)
        throw input_error("type A usual coordinates need rank+1 entries");
      for (int i = 0; i < n; ++i) k[i] = usual[i] - usual[i + 1];
      break;
    case 'B':
      if (static_cast<int>(usual.size()) != n) throw input_error("usual coordinates need rank entries");
      for (int i = 0; i + 1 < n; ++i) k[i] = usual[i] - usual[i + 1];
      k[n - 1] = 2 * usual[n - 1];
      break;
    case 'C':
      if (static_cast<int>(usual.size()) != n) throw input_error("usual coordinates need rank entries");
      for (int i = 0; i + 1 < n; ++i) k[i] = usual[i] - usual[i + 1];
      k[n - 1] = usual[n - 1];
      break;
    case 'D':
      if (static_cast<int>(usual.size()) != n) throw input_error("usual coordinates need rank entries");
      for (int i = 0; i + 1 < n; ++i) k[i] = usual[i] - usual[i + 1];
      k[n - 1] = usual[n - 2] + usual[n - 1];
      break;
    default:
      throw input_error("usual coordinates are only defined for the classical families");
  }
  return Weight{&datum, std::move(k)};
}

std::string weight_str(const Weight& lambda) { return qvec_str(lambda.coords); }

}  // namespace fpp
