#include "fpp/param.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace fpp {

int ParamSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw input_error("unknown parameter '" + std::string(name) + "'");
}

ParamSpacePtr make_space(std::vector<std::string> names) {
  return std::make_shared<const ParamSpace>(ParamSpace{std::move(names)});
}

bool AffineForm::is_constant() const {
  return std::all_of(coef.begin(), coef.end(), [](const Rat& c) { return c == 0; });
}

Rat AffineForm::eval(const QVec& point) const {
  Rat value = constant;
  for (std::size_t i = 0; i < coef.size(); ++i)
    if (coef[i] != 0) value += coef[i] * point[i];
  return value;
}

AffineForm constant_form(const ParamSpace& space, Rat value) {
  return AffineForm{std::move(value), QVec(space.names.size(), Rat(0))};
}

AffineForm parameter_form(const ParamSpace& space, std::string_view name) {
  AffineForm f = constant_form(space, Rat(0));
  f.coef[space.index_of(name)] = 1;
  return f;
}

namespace {
void check_same_size(const AffineForm& a, const AffineForm& b) {
  if (a.coef.size() != b.coef.size()) throw input_error("affine forms from different spaces");
}
}  // namespace

AffineForm operator+(const AffineForm& a, const AffineForm& b) {
  check_same_size(a, b);
  AffineForm out = a;
  out.constant += b.constant;
  for (std::size_t i = 0; i < out.coef.size(); ++i) out.coef[i] += b.coef[i];
  return out;
}

AffineForm operator-(const AffineForm& a, const AffineForm& b) {
  check_same_size(a, b);
  AffineForm out = a;
  out.constant -= b.constant;
  for (std::size_t i = 0; i < out.coef.size(); ++i) out.coef[i] -= b.coef[i];
  return out;
}

AffineForm operator-(const AffineForm& a) {
  AffineForm out = a;
  out.constant = -out.constant;
  for (auto& c : out.coef) c = -c;
  return out;
}

AffineForm operator*(const Rat& scalar, const AffineForm& a) {
  AffineForm out = a;
  out.constant *= scalar;
  for (auto& c : out.coef) c *= scalar;
  return out;
}

namespace {
bool same_space(const ParamSpacePtr& a, const ParamSpacePtr& b) {
  return a == b || (a && b && a->names == b->names);
}
}  // namespace

Region make_region(ParamSpacePtr space) { return Region{std::move(space), {}}; }

Region with_constraint(Region region, AffineForm form, Rel rel) {
  region.constraints.push_back(Constraint{std::move(form), rel});
  return region;
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin with exact strictness tracking and witness reconstruction.
// ---------------------------------------------------------------------------

namespace {

struct LinCon {
  Rat b;    // constant
  QVec a;   // coefficients
  Rel rel;  // b + a·x REL 0
};

// Scales to primitive integer coefficients with a positive multiplier; the result
// is the canonical representative used for deduplication.
void canonicalize(LinCon& c) {
  mpz_class den_lcm = c.b.get_den();
  mpz_class num_gcd = abs(c.b.get_num());
  for (const Rat& v : c.a) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den_lcm.get_mpz_t(), v.get_den().get_mpz_t());
    den_lcm = l;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), num_gcd.get_mpz_t(), v.get_num().get_mpz_t());
    num_gcd = abs(g);
  }
  if (num_gcd == 0) return;  // identically zero form
  Rat scale(den_lcm, num_gcd);
  scale.canonicalize();
  c.b *= scale;
  for (auto& v : c.a) v *= scale;
}

bool tighter(const std::pair<Rat, Rel>& lhs, const std::pair<Rat, Rel>& rhs) {
  // For b + a·x REL 0 with fixed a, larger b is tighter; strict beats non-strict.
  if (lhs.first != rhs.first) return lhs.first > rhs.first;
  return lhs.second == Rel::LT && rhs.second == Rel::LE;
}

class FMSolver {
public:
  explicit FMSolver(const Region& region) : n_(region.space->names.size()) {
    for (const Constraint& c : region.constraints)
      pending_.push_back(LinCon{c.form.constant, c.form.coef, c.rel});
  }

  std::optional<QVec> solve() {
    if (!eliminate_equalities()) return std::nullopt;
    if (!eliminate_inequalities()) return std::nullopt;
    return reconstruct();
  }

private:
  struct Level {  // record for eliminating one variable from inequalities
    std::size_t var;
    std::vector<LinCon> lowers;  // a[var] < 0
    std::vector<LinCon> uppers;  // a[var] > 0
  };

  std::size_t n_;
  std::vector<LinCon> pending_;
  std::vector<std::pair<std::size_t, LinCon>> substitutions_;  // x_var = -(b + a·x)/1, a[var]=0
  std::vector<Level> levels_;
  std::vector<bool> eliminated_ = std::vector<bool>(n_, false);

  static bool constant_violated(const LinCon& c) {
    switch (c.rel) {
      case Rel::LT: return !(c.b < 0);
      case Rel::LE: return !(c.b <= 0);
      case Rel::EQ: return c.b != 0;
    }
    return true;
  }

  bool is_constant(const LinCon& c) const {
    for (const Rat& v : c.a)
      if (v != 0) return false;
    return true;
  }

  bool eliminate_equalities() {
    while (true) {
      std::size_t pick = pending_.size();
      std::size_t var = 0;
      for (std::size_t i = 0; i < pending_.size(); ++i) {
        if (pending_[i].rel != Rel::EQ || is_constant(pending_[i])) continue;
        pick = i;
        for (std::size_t j = n_; j-- > 0;) {
          if (pending_[i].a[j] != 0) {
            var = j;
            break;
          }
        }
        break;
      }
      if (pick == pending_.size()) break;
      LinCon eq = pending_[pick];
      pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(pick));
      // Normalize to x_var = -(b + Σ a_j x_j) with unit coefficient.
      const Rat inv = Rat(1) / eq.a[var];
      eq.b *= inv;
      for (auto& v : eq.a) v *= inv;
      eq.a[var] = 0;
      for (LinCon& c : pending_) {
        if (c.a[var] == 0) continue;
        const Rat factor = c.a[var];
        c.b -= factor * eq.b;
        for (std::size_t j = 0; j < n_; ++j) c.a[j] -= factor * eq.a[j];
        c.a[var] = 0;
      }
      eliminated_[var] = true;
      substitutions_.emplace_back(var, std::move(eq));
    }
    // Only constant equalities remain (if any).
    std::vector<LinCon> rest;
    for (LinCon& c : pending_) {
      if (is_constant(c)) {
        if (constant_violated(c)) return false;
      } else {
        rest.push_back(std::move(c));
      }
    }
    pending_ = std::move(rest);
    return true;
  }

  // Deduplicate by coefficient vector, keeping the tightest bound.
  static std::vector<LinCon> compact(std::vector<LinCon> cons) {
    std::map<QVec, std::pair<Rat, Rel>> best;
    for (LinCon& c : cons) {
      canonicalize(c);
      auto it = best.find(c.a);
      if (it == best.end())
        best.emplace(std::move(c.a), std::make_pair(std::move(c.b), c.rel));
      else if (tighter({c.b, c.rel}, it->second))
        it->second = {c.b, c.rel};
    }
    std::vector<LinCon> out;
    out.reserve(best.size());
    for (auto& [a, br] : best) out.push_back(LinCon{br.first, a, br.second});
    return out;
  }

  bool eliminate_inequalities() {
    while (true) {
      pending_ = compact(std::move(pending_));
      for (const LinCon& c : pending_)
        if (is_constant(c) && constant_violated(c)) return false;

      // Pick the remaining variable with the fewest lower×upper products.
      std::size_t var = n_;
      std::size_t best_cost = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (eliminated_[j]) continue;
        std::size_t lo = 0, hi = 0;
        for (const LinCon& c : pending_) {
          if (c.a[j] < 0) ++lo;
          if (c.a[j] > 0) ++hi;
        }
        if (lo == 0 && hi == 0) continue;
        const std::size_t cost = lo * hi;
        if (var == n_ || cost < best_cost) {
          var = j;
          best_cost = cost;
        }
      }
      if (var == n_) return true;  // no variable left in any constraint

      Level level{var, {}, {}};
      std::vector<LinCon> rest;
      for (LinCon& c : pending_) {
        if (c.a[var] < 0)
          level.lowers.push_back(std::move(c));
        else if (c.a[var] > 0)
          level.uppers.push_back(std::move(c));
        else
          rest.push_back(std::move(c));
      }
      for (const LinCon& lo : level.lowers) {
        for (const LinCon& up : level.uppers) {
          LinCon combined;
          combined.rel = (lo.rel == Rel::LT || up.rel == Rel::LT) ? Rel::LT : Rel::LE;
          const Rat wl = up.a[var];   // > 0
          const Rat wu = -lo.a[var];  // > 0
          combined.b = wl * lo.b + wu * up.b;
          combined.a.resize(n_);
          for (std::size_t j = 0; j < n_; ++j) combined.a[j] = wl * lo.a[j] + wu * up.a[j];
          rest.push_back(std::move(combined));
          if (rest.size() > 200000) throw internal_error("Fourier-Motzkin blow-up");
        }
      }
      eliminated_[var] = true;
      levels_.push_back(std::move(level));
      pending_ = std::move(rest);
    }
  }

  QVec reconstruct() const {
    QVec point(n_, Rat(0));
    std::vector<bool> assigned(n_, false);
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
      // Bounds reference only variables eliminated later, which are already assigned.
      bool has_lo = false, has_hi = false;
      Rat lo, hi;
      Rel lo_rel = Rel::LE, hi_rel = Rel::LE;
      for (const LinCon& c : it->lowers) {  // b + a·x REL 0, a[var] < 0: x >= value
        Rat rest = c.b;
        for (std::size_t j = 0; j < n_; ++j)
          if (j != it->var && c.a[j] != 0) rest += c.a[j] * point[j];
        const Rat value = rest / -c.a[it->var];
        if (!has_lo || value > lo || (value == lo && c.rel == Rel::LT)) {
          lo = value;
          lo_rel = c.rel;
          has_lo = true;
        }
      }
      for (const LinCon& c : it->uppers) {
        Rat rest = c.b;
        for (std::size_t j = 0; j < n_; ++j)
          if (j != it->var && c.a[j] != 0) rest += c.a[j] * point[j];
        const Rat value = rest / -c.a[it->var];
        if (!has_hi || value < hi || (value == hi && c.rel == Rel::LT)) {
          hi = value;
          hi_rel = c.rel;
          has_hi = true;
        }
      }
      Rat value;
      if (has_lo && has_hi) {
        if (lo == hi) {
          if (lo_rel == Rel::LT || hi_rel == Rel::LT)
            throw internal_error("empty interval during witness reconstruction");
          value = lo;
        } else {
          value = (lo + hi) / 2;
        }
      } else if (has_lo) {
        value = lo_rel == Rel::LT ? lo + 1 : lo;
      } else if (has_hi) {
        value = hi_rel == Rel::LT ? hi - 1 : hi;
      } else {
        value = 0;
      }
      point[it->var] = value;
      assigned[it->var] = true;
    }
    // Equality substitutions, most recent first: each expression references only
    // variables that are still alive at its substitution time.
    for (auto it = substitutions_.rbegin(); it != substitutions_.rend(); ++it) {
      Rat value = -it->second.b;
      for (std::size_t j = 0; j < n_; ++j)
        if (it->second.a[j] != 0) value -= it->second.a[j] * point[j];
      point[it->first] = value;
      assigned[it->first] = true;
    }
    return point;
  }
};

}  // namespace

std::optional<QVec> region_witness(const Region& region) { return FMSolver(region).solve(); }

bool region_is_empty(const Region& region) { return !region_witness(region).has_value(); }

// ---------------------------------------------------------------------------
// Affine weights
// ---------------------------------------------------------------------------

AffineWeight make_affine_weight(const RootDatum& datum, ParamSpacePtr space,
                                std::vector<AffineForm> coords) {
  if (static_cast<int>(coords.size()) != datum.rank)
    throw input_error("affine weight has the wrong number of coordinates");
  return AffineWeight{&datum, std::move(space), std::move(coords)};
}

AffineWeight constant_affine_weight(const Weight& w, ParamSpacePtr space) {
  std::vector<AffineForm> coords;
  coords.reserve(w.coords.size());
  for (const Rat& c : w.coords) coords.push_back(constant_form(*space, c));
  return AffineWeight{w.datum, std::move(space), std::move(coords)};
}

Weight specialize(const AffineWeight& lambda, const QVec& point) {
  QVec coords(lambda.coords.size());
  for (std::size_t i = 0; i < lambda.coords.size(); ++i) coords[i] = lambda.coords[i].eval(point);
  return Weight{lambda.datum, std::move(coords)};
}

AffineWeight apply_simple(int i, const AffineWeight& lambda) {
  const RootDatum& d = *lambda.datum;
  if (i < 1 || i > d.rank) throw input_error("node index out of range");
  AffineWeight out = lambda;
  const AffineForm pivot = lambda.coords[i - 1];
  for (int j = 0; j < d.rank; ++j) {
    const long c = d.cartan[i - 1][j];
    if (c == 0) continue;
    out.coords[j] = out.coords[j] - Rat(c) * pivot;
  }
  return out;
}

AffineWeight apply_word(const WeylWord& w, const AffineWeight& lambda) {
  if (w.datum != lambda.datum) throw input_error("word and weight belong to different data");
  AffineWeight out = lambda;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out = apply_simple(*it, out);
  return out;
}

AffineWeight operator-(const AffineWeight& a, const AffineWeight& b) {
  if (a.datum != b.datum || !same_space(a.space, b.space))
    throw input_error("affine weights from different data or spaces");
  AffineWeight out = a;
  for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] = out.coords[i] - b.coords[i];
  return out;
}

AffineWeight operator-(const AffineWeight& a) {
  AffineWeight out = a;
  for (auto& form : out.coords) form = -form;
  return out;
}

// ---------------------------------------------------------------------------
// Parametric dominantization
// ---------------------------------------------------------------------------

namespace {

void dominantize_rec(AffineWeight lambda, Region region, std::vector<int> applied, int guard,
                     std::vector<Cell>& out) {
  const int rank = lambda.datum->rank;
  for (int i = 1; i <= rank; ++i) {
    Region negative = with_constraint(region, lambda.coords[i - 1], Rel::LT);
    if (region_is_empty(negative)) continue;  // coordinate provably >= 0 here
    if (static_cast<int>(applied.size()) >= guard)
      throw internal_error("parametric dominantization exceeded the positive-root depth guard");
    std::vector<int> deeper = applied;
    deeper.push_back(i);
    dominantize_rec(apply_simple(i, lambda), std::move(negative), std::move(deeper), guard, out);
    Region nonneg = with_constraint(std::move(region), -lambda.coords[i - 1], Rel::LE);
    if (region_is_empty(nonneg)) return;  // everything went to the negative branch
    region = std::move(nonneg);
  }
  std::vector<int> word(applied.rbegin(), applied.rend());
  out.push_back(Cell{std::move(region), WeylWord{lambda.datum, std::move(word)}, std::move(lambda)});
}

}  // namespace

std::vector<Cell> parametric_dominantize(const AffineWeight& lambda, const Region& region) {
  if (!same_space(lambda.space, region.space))
    throw input_error("weight and region parameter spaces differ");
  if (region_is_empty(region)) throw input_error("parametric dominantization of an empty region");
  std::vector<Cell> cells;
  const int guard = static_cast<int>(lambda.datum->positive_roots.size());
  dominantize_rec(lambda, region, {}, guard, cells);
  return cells;
}

std::vector<Region> outside_fpp_regions(const std::vector<Cell>& cells) {
  std::vector<Region> out;
  for (const Cell& cell : cells) {
    for (int i = 0; i < cell.image.datum->rank; ++i) {
      // ⟨Λ, β_i^∨⟩ > 1, i.e. 1 − Λ_i < 0.
      Region r = with_constraint(cell.region,
                                 constant_form(*cell.region.space, Rat(1)) - cell.image.coords[i],
                                 Rel::LT);
      if (!region_is_empty(r)) out.push_back(std::move(r));
    }
  }
  return out;
}

namespace {

std::vector<Constraint> negate_constraint(const Constraint& c) {
  switch (c.rel) {
    case Rel::LT: return {Constraint{-c.form, Rel::LE}};
    case Rel::LE: return {Constraint{-c.form, Rel::LT}};
    case Rel::EQ: return {Constraint{c.form, Rel::LT}, Constraint{-c.form, Rel::LT}};
  }
  return {};
}

// Prefix decomposition of a ∖ b into disjoint pieces.
std::vector<Region> subtract(const Region& a, const Region& b) {
  std::vector<Region> pieces;
  Region prefix = a;
  for (const Constraint& c : b.constraints) {
    for (const Constraint& neg : negate_constraint(c)) {
      Region piece = prefix;
      piece.constraints.push_back(neg);
      if (!region_is_empty(piece)) pieces.push_back(std::move(piece));
    }
    prefix.constraints.push_back(c);
  }
  return pieces;
}

}  // namespace

std::optional<QVec> uncovered_point(const std::vector<Region>& a, const std::vector<Region>& b) {
  for (const Region& r : a) {
    std::vector<Region> pieces{r};
    for (const Region& cover : b) {
      std::vector<Region> next;
      for (const Region& piece : pieces) {
        auto sub = subtract(piece, cover);
        next.insert(next.end(), std::make_move_iterator(sub.begin()),
                    std::make_move_iterator(sub.end()));
      }
      pieces = std::move(next);
      if (pieces.empty()) break;
    }
    if (!pieces.empty()) return region_witness(pieces.front());
  }
  return std::nullopt;
}

bool region_equiv(const std::vector<Region>& a, const std::vector<Region>& b) {
  return !uncovered_point(a, b).has_value() && !uncovered_point(b, a).has_value();
}

Region solve_equal(const AffineWeight& lambda, const Weight& target, const Region& region) {
  if (lambda.datum != target.datum) throw input_error("weights belong to different data");
  Region out = region;
  for (int i = 0; i < lambda.datum->rank; ++i)
    out.constraints.push_back(
        Constraint{lambda.coords[i] - constant_form(*region.space, target.coords[i]), Rel::EQ});
  return out;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string form_str(const ParamSpace& space, const AffineForm& form) {
  std::ostringstream os;
  os << rat_str(form.constant);
  for (std::size_t i = 0; i < form.coef.size(); ++i)
    os << " + " << rat_str(form.coef[i]) << "*" << space.names[i];
  return os.str();
}

std::string constraint_str(const ParamSpace& space, const Constraint& c) {
  const char* rel = c.rel == Rel::LT ? "<" : (c.rel == Rel::LE ? "<=" : "=");
  return form_str(space, c.form) + " " + rel + " 0";
}

std::vector<std::string> region_strings(const Region& region) {
  std::vector<std::string> out;
  out.reserve(region.constraints.size());
  for (const Constraint& c : region.constraints) out.push_back(constraint_str(*region.space, c));
  return out;
}

std::string point_str(const ParamSpace& space, const QVec& point) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < space.names.size(); ++i) {
    if (i) os << ", ";
    os << space.names[i] << " = " << rat_str(point[i]);
  }
  os << '}';
  return os.str();
}

}  // namespace fpp
