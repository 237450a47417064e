#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpp/weyl.hpp"

namespace fpp {

/// Ordered list of parameter names shared by the affine forms of one computation.
struct ParamSpace {
  std::vector<std::string> names;

  int index_of(std::string_view name) const;
};
using ParamSpacePtr = std::shared_ptr<const ParamSpace>;

ParamSpacePtr make_space(std::vector<std::string> names);

/// constant + Σ coef[i] · parameter_i, with exact rational entries.
struct AffineForm {
  Rat constant;
  QVec coef;

  bool is_constant() const;
  Rat eval(const QVec& point) const;
  bool operator==(const AffineForm& other) const {
    return constant == other.constant && coef == other.coef;
  }
};

AffineForm constant_form(const ParamSpace& space, Rat value);
AffineForm parameter_form(const ParamSpace& space, std::string_view name);

AffineForm operator+(const AffineForm& a, const AffineForm& b);
AffineForm operator-(const AffineForm& a, const AffineForm& b);
AffineForm operator-(const AffineForm& a);
AffineForm operator*(const Rat& scalar, const AffineForm& a);

/// Relation of a constraint "form REL 0".
enum class Rel { LT, LE, EQ };

struct Constraint {
  AffineForm form;
  Rel rel;
};

/// Conjunction of affine constraints over a shared parameter space.
struct Region {
  ParamSpacePtr space;
  std::vector<Constraint> constraints;
};

Region make_region(ParamSpacePtr space);
Region with_constraint(Region region, AffineForm form, Rel rel);

/// Exact satisfiability over the rationals via Fourier–Motzkin elimination.
/// Strictness is tracked exactly: a strict and a non-strict bound combine to strict.
/// Returns a rational point satisfying every constraint, or nullopt if empty.
std::optional<QVec> region_witness(const Region& region);
bool region_is_empty(const Region& region);

/// Weights whose coordinates are affine forms in the region parameters.
struct AffineWeight {
  const RootDatum* datum = nullptr;
  ParamSpacePtr space;
  std::vector<AffineForm> coords;
};

AffineWeight make_affine_weight(const RootDatum& datum, ParamSpacePtr space,
                                std::vector<AffineForm> coords);
AffineWeight constant_affine_weight(const Weight& w, ParamSpacePtr space);
Weight specialize(const AffineWeight& lambda, const QVec& point);

AffineWeight apply_simple(int i, const AffineWeight& lambda);
AffineWeight apply_word(const WeylWord& w, const AffineWeight& lambda);
AffineWeight operator-(const AffineWeight& a, const AffineWeight& b);
AffineWeight operator-(const AffineWeight& a);

/// One case of a parametric dominantization: on every point of `region`, the first
/// negative index algorithm applies exactly `word` and lands on `image`.
struct Cell {
  Region region;
  WeylWord word;
  AffineWeight image;
};

/// Lifts the first negative index algorithm to parameters by sign case-splitting at
/// the first coordinate not provably nonnegative. The returned cells partition the
/// input region; on each cell the image is dominant region-wide. Recursion depth is
/// guarded by the positive-root count.
std::vector<Cell> parametric_dominantize(const AffineWeight& lambda, const Region& region);

/// For each cell and node i, the subregion where ⟨Λ, β_i^∨⟩ > 1; empty pieces are
/// dropped and the union is returned in disjunctive normal form.
std::vector<Region> outside_fpp_regions(const std::vector<Cell>& cells);

/// Point-set equality of two unions of regions (mutual inclusion via emptiness of
/// pairwise differences).
bool region_equiv(const std::vector<Region>& a, const std::vector<Region>& b);

/// A point of ∪a not covered by ∪b, if one exists.
std::optional<QVec> uncovered_point(const std::vector<Region>& a, const std::vector<Region>& b);

/// The subset of `region` where λ equals the target exactly (one equality per
/// coordinate).
Region solve_equal(const AffineWeight& lambda, const Weight& target, const Region& region);

std::string form_str(const ParamSpace& space, const AffineForm& form);
std::string constraint_str(const ParamSpace& space, const Constraint& c);
std::vector<std::string> region_strings(const Region& region);
std::string point_str(const ParamSpace& space, const QVec& point);

}  // namespace fpp
