#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fpp/rational.hpp"

namespace fpp {

/// Cartan data for one simple type. Weights are written in the fundamental-weight
/// basis: coordinate i of a weight λ is the pairing ⟨λ, β_i^∨⟩, so row i of the
/// Cartan matrix gives the fundamental-weight coordinates of the simple root β_i.
///
/// Node numbering follows the usual Dynkin-diagram conventions: B_n has the short
/// root at node n, C_n the long root at node n, D_n forks at node n-2, the E types
/// have node 2 attached to node 4, F4 has ⟨β_2, β_3^∨⟩ = -2, and G2 has
/// β_1 = [2,-1] (short), β_2 = [-3,2] (long).
struct RootDatum {
  char family = 0;  // 'A'..'G'
  int rank = 0;
  std::vector<std::vector<long>> cartan;          // cartan[i][j] = ⟨β_{i+1}, β_{j+1}^∨⟩
  std::vector<QVec> cartan_inverse;               // exact rational inverse
  std::vector<std::vector<long>> positive_roots;  // simple-root coordinates, by height

  std::string name() const { return std::string(1, family) + std::to_string(rank); }
  bool adjacent(int i, int j) const { return i != j && cartan[i - 1][j - 1] != 0; }
};

/// Returns the cached immutable datum for a valid simple type
/// (A_n n>=1, B_n n>=2, C_n n>=3, D_n n>=4, E_6/7/8, F_4, G_2).
/// Throws input_error for anything else.
const RootDatum& build_root_datum(char family, int rank);

/// Parses a name of the form letter+rank, e.g. "F4" or "B8".
const RootDatum& root_datum_by_name(std::string_view name);

/// A weight in fundamental-weight coordinates, tied to its datum.
struct Weight {
  const RootDatum* datum = nullptr;
  QVec coords;

  bool operator==(const Weight& other) const {
    return datum == other.datum && coords == other.coords;
  }
};

/// A vector expressed in the simple-root basis of its datum.
struct RootVector {
  const RootDatum* datum = nullptr;
  QVec coeffs;
};

Weight make_weight(const RootDatum& datum, QVec coords);
Weight parse_weight(const RootDatum& datum, std::string_view csv);
Weight zero_weight(const RootDatum& datum);
Weight rho(const RootDatum& datum);

/// β_i in fundamental-weight coordinates (row i of the Cartan matrix).
Weight simple_root(const RootDatum& datum, int i);

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator-(const Weight& a);
Weight operator*(const Rat& scalar, const Weight& w);

/// ⟨λ, β_i^∨⟩, i.e. coordinate i (1-based). The ϖ-basis makes this a projection.
Rat pairing(const Weight& lambda, int i);

/// Basis change to simple-root coordinates; result · cartan = λ.coords.
RootVector to_root_coords(const Weight& lambda);
Weight from_root_coords(const RootVector& v);

/// Sum of the simple-root coefficients of λ.
Rat height(const Weight& lambda);

/// True iff every fundamental-weight coordinate is >= 0.
bool is_dominant(const Weight& lambda);

/// Standard ε-coordinate realization for the classical families.
/// A_n yields n+1 entries (the traceless representative), B/C/D_n yield n entries.
/// Throws input_error for exceptional families.
QVec usual_coords(const Weight& lambda);
Weight from_usual(const RootDatum& datum, const QVec& usual);

std::string weight_str(const Weight& lambda);

}  // namespace fpp
