#include "fpp/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <set>
#include <thread>

namespace fpp::verify {

namespace {

struct Stopwatch {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void parallel_for(int threads, std::size_t count, const std::function<void(std::size_t)>& body) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  workers = static_cast<int>(std::min<std::size_t>(workers, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

using Term = std::pair<const char*, Rat>;

AffineForm lin(const ParamSpacePtr& space, const Rat& constant, std::initializer_list<Term> terms) {
  AffineForm f = constant_form(*space, constant);
  for (const auto& [name, value] : terms) f.coef[space->index_of(name)] += value;
  return f;
}

AffineForm constant_like(const AffineForm& f, const Rat& value) {
  return AffineForm{value, QVec(f.coef.size(), Rat(0))};
}

Region add_ge(Region r, const AffineForm& f, const Rat& bound) {  // f >= bound
  return with_constraint(std::move(r), constant_like(f, bound) - f, Rel::LE);
}
Region add_gt(Region r, const AffineForm& f, const Rat& bound) {  // f > bound
  return with_constraint(std::move(r), constant_like(f, bound) - f, Rel::LT);
}
Region add_le(Region r, const AffineForm& f, const Rat& bound) {  // f <= bound
  return with_constraint(std::move(r), f - constant_like(f, bound), Rel::LE);
}
Region add_lt(Region r, const AffineForm& f, const Rat& bound) {  // f < bound
  return with_constraint(std::move(r), f - constant_like(f, bound), Rel::LT);
}
Region add_eq(Region r, const AffineForm& f, const Rat& bound) {  // f = bound
  return with_constraint(std::move(r), f - constant_like(f, bound), Rel::EQ);
}

Json point_json(const ParamSpace& space, const QVec& point) {
  Json out = Json::object();
  for (std::size_t i = 0; i < space.names.size(); ++i) out[space.names[i]] = rat_str(point[i]);
  return out;
}

Json regions_json(const std::vector<Region>& regions) {
  Json out = Json::array();
  for (const Region& r : regions) out.push_back(region_strings(r));
  return out;
}

std::string letters_csv(const std::vector<int>& letters) {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(letters[i]);
  }
  return out;
}

Json forms_json(const AffineWeight& w) {
  Json out = Json::array();
  for (const AffineForm& f : w.coords) out.push_back(form_str(*w.space, f));
  return out;
}

bool inside_fpp(const Weight& dominant) {
  return std::all_of(dominant.coords.begin(), dominant.coords.end(),
                     [](const Rat& c) { return c <= 1; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Builtin templates
// ---------------------------------------------------------------------------

std::vector<std::string> builtin_case_names() {
  return {"g2-eta10",          "g2-eta20",        "f4-eta0010",      "f4-eta0001",
          "f4-reduction-0020", "g2-reduction-a0", "g2-reduction-0b"};
}

HermitianTemplate builtin_template(std::string_view case_name) {
  HermitianTemplate t;
  t.name = std::string(case_name);
  if (case_name == "g2-eta10" || case_name == "g2-eta20") {
    const RootDatum& g2 = build_root_datum('G', 2);
    const auto sp = make_space({"x"});
    const Rat h = case_name == "g2-eta10" ? Rat(1, 2) : Rat(1);
    t.datum = &g2;
    t.space = sp;
    t.eta = constant_affine_weight(make_weight(g2, {2 * h, 0}), sp);
    t.lambda_L = make_affine_weight(g2, sp, {lin(sp, h, {{"x", -3}}), lin(sp, 0, {{"x", 2}})});
    t.lambda_R = make_affine_weight(g2, sp, {lin(sp, -h, {{"x", -3}}), lin(sp, 0, {{"x", 2}})});
    t.base_region = add_ge(make_region(sp), parameter_form(*sp, "x"), 0);
    t.mf_nodes = {2};
    if (case_name == "g2-eta10") {
      t.gammas = {make_weight(g2, {2, 0})};
      t.expected_outside = {add_gt(make_region(sp), parameter_form(*sp, "x"), Rat(3, 2))};
    } else {
      t.gammas = {make_weight(g2, {1, 1})};
      t.expected_outside = {add_gt(make_region(sp), parameter_form(*sp, "x"), Rat(2, 3))};
    }
    return t;
  }
  if (case_name == "f4-eta0010") {
    const RootDatum& f4 = build_root_datum('F', 4);
    const auto sp = make_space({"x", "z"});
    t.datum = &f4;
    t.space = sp;
    t.eta = constant_affine_weight(make_weight(f4, {0, 0, 1, 0}), sp);
    t.lambda_L = make_affine_weight(
        f4, sp,
        {lin(sp, 0, {{"x", 1}}), lin(sp, 0, {{"x", 1}}),
         lin(sp, Rat(1, 2), {{"x", -2}, {"z", -1}}), lin(sp, 0, {{"z", 2}})});
    t.lambda_R = make_affine_weight(
        f4, sp,
        {lin(sp, 0, {{"x", 1}}), lin(sp, 0, {{"x", 1}}),
         lin(sp, Rat(-1, 2), {{"x", -2}, {"z", -1}}), lin(sp, 0, {{"z", 2}})});
    Region base = add_ge(make_region(sp), parameter_form(*sp, "x"), 0);
    base = add_ge(std::move(base), parameter_form(*sp, "z"), 0);
    base = add_le(std::move(base), parameter_form(*sp, "z"), Rat(1, 2));
    t.base_region = std::move(base);
    t.mf_nodes = {1, 2, 4};
    t.gammas = {make_weight(f4, {1, 0, 0, 1}), make_weight(f4, {0, 0, 0, 2})};
    Region expected = add_gt(make_region(sp), parameter_form(*sp, "x"), 2);
    expected = add_ge(std::move(expected), parameter_form(*sp, "z"), 0);
    expected = add_le(std::move(expected), parameter_form(*sp, "z"), Rat(1, 2));
    t.expected_outside = {std::move(expected)};
    return t;
  }
  if (case_name == "f4-eta0001") {
    const RootDatum& f4 = build_root_datum('F', 4);
    const auto sp = make_space({"a", "b", "c"});
    t.datum = &f4;
    t.space = sp;
    t.eta = constant_affine_weight(make_weight(f4, {0, 0, 0, 1}), sp);
    t.lambda_L = make_affine_weight(
        f4, sp,
        {lin(sp, 0, {{"a", 1}}), lin(sp, 0, {{"b", 1}}), lin(sp, 0, {{"c", 1}}),
         lin(sp, Rat(1, 2), {{"a", -1}, {"b", -2}, {"c", Rat(-3, 2)}})});
    t.lambda_R = make_affine_weight(
        f4, sp,
        {lin(sp, 0, {{"a", 1}}), lin(sp, 0, {{"b", 1}}), lin(sp, 0, {{"c", 1}}),
         lin(sp, Rat(-1, 2), {{"a", -1}, {"b", -2}, {"c", Rat(-3, 2)}})});
    Region base = make_region(sp);
    for (const char* p : {"a", "b", "c"}) base = add_ge(std::move(base), parameter_form(*sp, p), 0);
    t.base_region = std::move(base);
    t.mf_nodes = {1, 2, 3};
    t.gammas = {make_weight(f4, {0, 0, 1, 0})};
    const AffineForm a = parameter_form(*sp, "a");
    const AffineForm b = parameter_form(*sp, "b");
    const AffineForm c = parameter_form(*sp, "c");
    Region b1 = add_ge(make_region(sp), a, 0);
    b1 = add_lt(std::move(b1), a, Rat(1, 2));
    b1 = add_gt(std::move(b1), b - a, 1);            // 1 + a < b
    b1 = add_le(std::move(b1), b, Rat(3, 2));
    b1 = add_gt(std::move(b1), c + Rat(2) * b, 3);   // 3 - 2b < c
    b1 = add_le(std::move(b1), c + Rat(2) * a, 1);   // c <= 1 - 2a
    Region b2 = add_ge(make_region(sp), a, 0);
    b2 = add_lt(std::move(b2), a, Rat(1, 2));
    b2 = add_gt(std::move(b2), b, Rat(3, 2));
    b2 = add_ge(std::move(b2), c, 0);
    b2 = add_le(std::move(b2), c + Rat(2) * a, 1);
    Region b3 = add_eq(make_region(sp), a, Rat(1, 2));
    b3 = add_gt(std::move(b3), b, Rat(3, 2));
    b3 = add_eq(std::move(b3), c, 0);
    t.expected_outside = {std::move(b1), std::move(b2), std::move(b3)};
    return t;
  }
  if (case_name == "f4-reduction-0020") {
    const RootDatum& f4 = build_root_datum('F', 4);
    const auto sp = make_space({"x", "y"});
    t.datum = &f4;
    t.space = sp;
    t.eta = constant_affine_weight(make_weight(f4, {0, 0, 2, 0}), sp);
    t.lambda_L = make_affine_weight(
        f4, sp,
        {lin(sp, 0, {{"x", 1}}), lin(sp, 0, {{"x", 1}}),
         lin(sp, 1, {{"x", -2}, {"y", -1}}), lin(sp, 0, {{"y", 2}})});
    t.lambda_R = make_affine_weight(
        f4, sp,
        {lin(sp, 0, {{"x", 1}}), lin(sp, 0, {{"x", 1}}),
         lin(sp, -1, {{"x", -2}, {"y", -1}}), lin(sp, 0, {{"y", 2}})});
    Region base = add_ge(make_region(sp), parameter_form(*sp, "x"), 0);
    base = add_le(std::move(base), parameter_form(*sp, "x"), 1);
    base = add_ge(std::move(base), parameter_form(*sp, "y"), 0);
    base = add_le(std::move(base), parameter_form(*sp, "y"), Rat(1, 2));
    t.base_region = std::move(base);
    t.mf_nodes = {1, 2, 4};
    return t;
  }
  if (case_name == "g2-reduction-a0") {
    const RootDatum& g2 = build_root_datum('G', 2);
    const auto sp = make_space({"a", "x"});
    t.datum = &g2;
    t.space = sp;
    t.eta = make_affine_weight(g2, sp, {lin(sp, 0, {{"a", 1}}), constant_form(*sp, 0)});
    t.lambda_L = make_affine_weight(
        g2, sp, {lin(sp, 0, {{"a", Rat(1, 2)}, {"x", -3}}), lin(sp, 0, {{"x", 2}})});
    t.lambda_R = make_affine_weight(
        g2, sp, {lin(sp, 0, {{"a", Rat(-1, 2)}, {"x", -3}}), lin(sp, 0, {{"x", 2}})});
    Region base = add_ge(make_region(sp), parameter_form(*sp, "a"), 3);
    base = add_ge(std::move(base), parameter_form(*sp, "x"), 0);
    base = add_le(std::move(base), parameter_form(*sp, "x"), Rat(1, 2));
    t.base_region = std::move(base);
    t.mf_nodes = {2};
    return t;
  }
  if (case_name == "g2-reduction-0b") {
    const RootDatum& g2 = build_root_datum('G', 2);
    const auto sp = make_space({"b", "y"});
    t.datum = &g2;
    t.space = sp;
    t.eta = make_affine_weight(g2, sp, {constant_form(*sp, 0), lin(sp, 0, {{"b", 1}})});
    t.lambda_L = make_affine_weight(
        g2, sp, {lin(sp, 0, {{"y", 2}}), lin(sp, 0, {{"b", Rat(1, 2)}, {"y", -1}})});
    t.lambda_R = make_affine_weight(
        g2, sp, {lin(sp, 0, {{"y", 2}}), lin(sp, 0, {{"b", Rat(-1, 2)}, {"y", -1}})});
    Region base = add_ge(make_region(sp), parameter_form(*sp, "b"), 1);
    base = add_ge(std::move(base), parameter_form(*sp, "y"), 0);
    base = add_le(std::move(base), parameter_form(*sp, "y"), Rat(1, 2));
    t.base_region = std::move(base);
    t.mf_nodes = {1};
    return t;
  }
  throw input_error("unknown verification case '" + std::string(case_name) + "'");
}

// ---------------------------------------------------------------------------
// Thresholds
// ---------------------------------------------------------------------------

VerificationReport verify_outside_fpp_threshold(std::string_view case_name,
                                                const VerifyOptions& options) {
  (void)options;
  Stopwatch clock;
  const HermitianTemplate tpl = builtin_template(case_name);
  if (tpl.expected_outside.empty())
    throw input_error("case '" + tpl.name + "' has no outside-FPP threshold claim");

  const std::vector<Cell> cells = parametric_dominantize(tpl.lambda_L, tpl.base_region);
  const std::vector<Region> outside = outside_fpp_regions(cells);
  const bool equal = region_equiv(outside, tpl.expected_outside);

  VerificationReport rep;
  rep.case_name = tpl.name;
  rep.status = equal ? "verified" : "counterexample";
  rep.details["count"] = cells.size();
  rep.details["regions"] = Json{{"computed", regions_json(outside)},
                                {"expected", regions_json(tpl.expected_outside)}};
  Json witnesses = Json::array();
  for (const Region& r : outside) {
    if (auto pt = region_witness(r)) witnesses.push_back(point_json(*tpl.space, *pt));
  }
  if (!equal) {
    if (auto pt = uncovered_point(outside, tpl.expected_outside)) {
      Json j;
      j["uncovered_computed_point"] = point_json(*tpl.space, *pt);
      witnesses.push_back(std::move(j));
    }
    if (auto pt = uncovered_point(tpl.expected_outside, outside)) {
      Json j;
      j["uncovered_expected_point"] = point_json(*tpl.space, *pt);
      witnesses.push_back(std::move(j));
    }
  }
  rep.details["witnesses"] = std::move(witnesses);
  rep.details["inputs"] = Json{{"case", tpl.name}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// The F4 η=[0,0,0,1] enumeration
// ---------------------------------------------------------------------------

namespace {

struct F4WitnessData {
  std::vector<std::size_t> element_indices;  // into enumerate_weyl_cached(F4)
  std::vector<std::vector<Region>> pieces;   // parallel: nonempty witness regions
};

const F4WitnessData& f4_witness_data() {
  static F4WitnessData data;
  static std::once_flag flag;
  std::call_once(flag, [] {
    const HermitianTemplate tpl = builtin_template("f4-eta0001");
    const auto& elements = enumerate_weyl_cached(*tpl.datum);
    for (std::size_t idx = 0; idx < elements.size(); ++idx) {
      const WeylWord w{tpl.datum, elements[idx].word};
      const AffineWeight image = apply_word(w, tpl.lambda_L);
      Region dominant = tpl.base_region;
      for (const AffineForm& f : image.coords) dominant = add_ge(std::move(dominant), f, 0);
      if (region_is_empty(dominant)) continue;
      std::vector<Region> pieces;
      for (const std::string& pname : tpl.space->names) {  // max{a,b,c} > 1 in DNF
        Region with_max = add_gt(dominant, parameter_form(*tpl.space, pname), 1);
        if (region_is_empty(with_max)) continue;
        for (const AffineForm& f : image.coords) {  // outside FPP in DNF
          Region piece = add_gt(with_max, f, 1);
          if (!region_is_empty(piece)) pieces.push_back(std::move(piece));
        }
      }
      if (!pieces.empty()) {
        data.element_indices.push_back(idx);
        data.pieces.push_back(std::move(pieces));
      }
    }
  });
  return data;
}

}  // namespace

VerificationReport enumerate_outside_fpp_witnesses(const VerifyOptions& options) {
  (void)options;
  Stopwatch clock;
  const HermitianTemplate tpl = builtin_template("f4-eta0001");
  const auto& elements = enumerate_weyl_cached(*tpl.datum);
  const F4WitnessData& data = f4_witness_data();

  // The element s1 s2 s3 s4, identified by its action on ρ.
  const Weight rho_image = apply_word(make_word(*tpl.datum, {1, 2, 3, 4}), rho(*tpl.datum));
  std::size_t special = elements.size();
  for (std::size_t k = 0; k < data.element_indices.size(); ++k) {
    const auto& e = elements[data.element_indices[k]];
    bool match = true;
    for (int i = 0; i < tpl.datum->rank; ++i)
      if (Rat(e.rho_image[i]) != rho_image.coords[i]) match = false;
    if (match) {
      special = k;
      break;
    }
  }

  bool image_ok = false, region_ok = false;
  Json special_json;
  if (special < data.element_indices.size()) {
    const auto& e = elements[data.element_indices[special]];
    const AffineWeight image = apply_word(WeylWord{tpl.datum, e.word}, tpl.lambda_L);
    const AffineWeight expected_image = make_affine_weight(
        *tpl.datum, tpl.space,
        {lin(tpl.space, Rat(-1, 2), {{"b", 1}, {"c", Rat(1, 2)}}), lin(tpl.space, 0, {{"a", 1}}),
         lin(tpl.space, Rat(1, 2), {{"a", -1}, {"c", Rat(-1, 2)}}), lin(tpl.space, 0, {{"c", 1}})});
    image_ok = image.coords == expected_image.coords;
    region_ok = region_equiv(data.pieces[special], tpl.expected_outside);
    special_json["word"] = letters_csv(e.word);
    special_json["image"] = forms_json(image);
    special_json["computed"] = regions_json(data.pieces[special]);
    special_json["expected"] = regions_json(tpl.expected_outside);
  }

  VerificationReport rep;
  rep.case_name = "f4-eta0001";
  const bool ok = data.element_indices.size() == 29 && image_ok && region_ok;
  rep.status = ok ? "verified" : "counterexample";
  rep.details["count"] = data.element_indices.size();
  rep.details["regions"] = std::move(special_json);
  Json witnesses = Json::array();
  for (std::size_t k = 0; k < data.element_indices.size(); ++k) {
    const auto& e = elements[data.element_indices[k]];
    Json j;
    j["word"] = letters_csv(e.word);
    j["rho_image"] = e.rho_image;
    if (auto pt = region_witness(data.pieces[k].front()))
      j["point"] = point_json(*tpl.space, *pt);
    witnesses.push_back(std::move(j));
  }
  rep.details["witnesses"] = std::move(witnesses);
  rep.details["inputs"] = Json{{"case", "f4-eta0001"}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// Character-formula exclusion
// ---------------------------------------------------------------------------

namespace {

std::vector<Region> hypothesis_regions(const HermitianTemplate& tpl) {
  if (tpl.name == "f4-eta0001") {
    std::vector<Region> out;
    for (const auto& pieces : f4_witness_data().pieces)
      out.insert(out.end(), pieces.begin(), pieces.end());
    return out;
  }
  if (tpl.expected_outside.empty())
    throw input_error("case '" + tpl.name + "' has no hypothesis region");
  std::vector<Region> out;
  for (const Region& claim : tpl.expected_outside) {
    Region r = tpl.base_region;
    r.constraints.insert(r.constraints.end(), claim.constraints.begin(), claim.constraints.end());
    if (!region_is_empty(r)) out.push_back(std::move(r));
  }
  return out;
}

AffineWeight restrict_affine(const AffineWeight& w, const ComponentInfo& component) {
  const RootDatum& local = build_root_datum(component.family, component.local_rank);
  std::vector<AffineForm> coords;
  coords.reserve(component.local_rank);
  for (int j = 0; j < component.local_rank; ++j)
    coords.push_back(w.coords[component.nodes[j] - 1]);
  return make_affine_weight(local, w.space, std::move(coords));
}

struct ExclusionResult {
  std::size_t tested = 0;
  std::size_t cells = 0;
  std::vector<Json> hits;        // cells on which the dominant form is γ identically
  std::vector<Json> degenerate;  // proper lower-dimensional equality slices
};

// All weights in the Weyl orbit of a dominant weight.
std::vector<Weight> weight_orbit(const Weight& dominant) {
  std::vector<Weight> orbit{dominant};
  std::map<QVec, bool> seen{{dominant.coords, true}};
  for (std::size_t scan = 0; scan < orbit.size(); ++scan) {
    const Weight current = orbit[scan];
    for (int i = 1; i <= dominant.datum->rank; ++i) {
      Weight next = apply_simple(i, current);
      if (seen.emplace(next.coords, true).second) orbit.push_back(std::move(next));
    }
  }
  return orbit;
}

// Exact solver for "μ(params) = target": a point, an affine subspace, or empty.
struct EqualitySolution {
  enum class Kind { empty, point, subspace } kind = Kind::empty;
  QVec point;
};

EqualitySolution solve_forms_equal(const AffineWeight& mu, const Weight& target) {
  const std::size_t vars = mu.space->names.size();
  const std::size_t rows = mu.coords.size();
  std::vector<QVec> m(rows, QVec(vars + 1, Rat(0)));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < vars; ++c) m[r][c] = mu.coords[r].coef[c];
    m[r][vars] = target.coords[r] - mu.coords[r].constant;
  }
  std::vector<std::size_t> pivot_of_var(vars, rows);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < vars && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    const Rat inv = Rat(1) / m[rank][col];
    for (auto& entry : m[rank]) entry *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      const Rat factor = m[r][col];
      for (std::size_t c = col; c <= vars; ++c) m[r][c] -= factor * m[rank][c];
    }
    pivot_of_var[col] = rank;
    ++rank;
  }
  EqualitySolution out;
  for (std::size_t r = rank; r < rows; ++r)
    if (m[r][vars] != 0) return out;  // inconsistent
  if (rank < vars) {
    out.kind = EqualitySolution::Kind::subspace;
    return out;
  }
  out.kind = EqualitySolution::Kind::point;
  out.point.assign(vars, Rat(0));
  for (std::size_t col = 0; col < vars; ++col) out.point[col] = m[pivot_of_var[col]][vars];
  return out;
}

// Dimension of the affine hull: parameters minus the rank of the equality forms,
// where tight inequalities (those that cannot be strict anywhere on the region)
// count as equalities. Assumes the region is nonempty.
int region_dimension(const Region& region) {
  std::vector<QVec> directions;
  for (const Constraint& c : region.constraints) {
    bool tight = false;
    if (c.rel == Rel::EQ) {
      tight = true;
    } else if (c.rel == Rel::LE) {
      tight = region_is_empty(with_constraint(region, c.form, Rel::LT));
    }
    if (tight) directions.push_back(c.form.coef);
  }
  const std::size_t n = region.space->names.size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < directions.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < directions.size() && directions[pivot][col] == 0) ++pivot;
    if (pivot == directions.size()) continue;
    std::swap(directions[pivot], directions[rank]);
    for (std::size_t r = 0; r < directions.size(); ++r) {
      if (r == rank || directions[r][col] == 0) continue;
      const Rat factor = directions[r][col] / directions[rank][col];
      for (std::size_t k = col; k < n; ++k) directions[r][k] -= factor * directions[rank][k];
    }
    ++rank;
  }
  return static_cast<int>(n - rank);
}

bool point_in_region(const Region& region, const QVec& point) {
  for (const Constraint& c : region.constraints) {
    const Rat v = c.form.eval(point);
    if (c.rel == Rel::LT && !(v < 0)) return false;
    if (c.rel == Rel::LE && !(v <= 0)) return false;
    if (c.rel == Rel::EQ && v != 0) return false;
  }
  return true;
}

// At a singular parameter the labels of the character-formula terms collapse: the
// same standard character X(λ_L, ξ) can be written with labels inside and outside
// W(M_f). A term that agrees with some first-part term on the whole equality set,
// up to the diagonal Weyl action fixing λ_L, contributes to the character of the
// induced module, not to the genuine second part.
bool collapses_into_first_part(const HermitianTemplate& tpl, const AffineWeight& term_second,
                               const Region& equality_set, const QVec& witness) {
  const auto& elements = enumerate_weyl_cached(*tpl.datum);
  const std::set<int> mf(tpl.mf_nodes.begin(), tpl.mf_nodes.end());
  const int rank = tpl.datum->rank;
  const Weight lambda_at = specialize(tpl.lambda_L, witness);
  const Weight term_at = specialize(term_second, witness);
  const Weight lambda_r_at = specialize(tpl.lambda_R, witness);

  std::vector<Region> loci;
  for (const WeylElement& ue : elements) {
    const WeylWord u{tpl.datum, ue.word};
    // u must fix λ on the whole set, hence at the witness.
    if (!(apply_word(u, lambda_at) == lambda_at)) continue;
    const AffineWeight u_lambda = apply_word(u, tpl.lambda_L);
    const AffineWeight u_term = apply_word(u, term_second);
    const Weight u_term_at = apply_word(u, term_at);
    for (const WeylElement& fe : elements) {
      bool in_levi = true;
      for (int letter : fe.word)
        if (!mf.count(letter)) in_levi = false;
      if (!in_levi) continue;
      const WeylWord w1{tpl.datum, fe.word};
      const AffineWeight first = apply_word(w1, tpl.lambda_R);
      Region locus = equality_set;
      for (int i = 0; i < rank; ++i)
        locus = with_constraint(std::move(locus), u_lambda.coords[i] - tpl.lambda_L.coords[i],
                                Rel::EQ);
      for (int i = 0; i < rank; ++i)
        locus = with_constraint(std::move(locus), u_term.coords[i] - first.coords[i], Rel::EQ);
      if (apply_word(w1, lambda_r_at) == u_term_at) {
        if (!uncovered_point({equality_set}, {locus}).has_value()) return true;
      }
      if (!region_is_empty(locus)) loci.push_back(std::move(locus));
    }
  }
  if (loci.empty()) return false;
  return !uncovered_point({equality_set}, loci).has_value();
}

ExclusionResult run_exclusion(const HermitianTemplate& tpl, const std::vector<Region>& hypothesis,
                              const std::vector<Weight>& gammas, int threads) {
  const auto& elements = enumerate_weyl_cached(*tpl.datum);
  const std::set<int> mf(tpl.mf_nodes.begin(), tpl.mf_nodes.end());
  std::vector<std::size_t> wprime;
  for (std::size_t idx = 0; idx < elements.size(); ++idx) {
    bool in_levi = true;
    for (int letter : elements[idx].word)
      if (!mf.count(letter)) in_levi = false;
    if (!in_levi) wprime.push_back(idx);
  }

  std::vector<std::vector<Weight>> per_gamma_orbit;
  per_gamma_orbit.reserve(gammas.size());
  for (const Weight& gamma : gammas) per_gamma_orbit.push_back(weight_orbit(gamma));

  std::vector<int> piece_dimension;
  piece_dimension.reserve(hypothesis.size());
  for (const Region& piece : hypothesis) piece_dimension.push_back(region_dimension(piece));

  struct Slot {
    std::size_t cells = 0;
    std::vector<Json> hits;
    std::vector<Json> degenerate;
  };
  std::vector<Slot> slots(wprime.size());
  parallel_for(threads, wprime.size(), [&](std::size_t s) {
    const auto& e = elements[wprime[s]];
    const WeylWord w{tpl.datum, e.word};
    // The term labeled w' is X(λ_L, −w'wλ) with wλ = −λ_R, so its extremal K-type
    // parameter is μ(w') = λ_L − w'(λ_R); at w' = e this is the lowest type η.
    const AffineWeight mu = tpl.lambda_L - apply_word(w, tpl.lambda_R);
    for (std::size_t g = 0; g < gammas.size(); ++g) {
      // The dominant form of μ equals γ at a point iff μ lands on the orbit of γ
      // there, so cells need examining only when some orbit equation meets the
      // hypothesis region.
      bool possible = false;
      for (const Weight& q : per_gamma_orbit[g]) {
        const EqualitySolution sol = solve_forms_equal(mu, q);
        if (sol.kind == EqualitySolution::Kind::empty) continue;
        if (sol.kind == EqualitySolution::Kind::subspace) {
          possible = true;
        } else {
          for (const Region& piece : hypothesis) {
            if (point_in_region(piece, sol.point)) {
              possible = true;
              break;
            }
          }
        }
        if (possible) break;
      }
      if (!possible) continue;
      for (std::size_t p = 0; p < hypothesis.size(); ++p) {
        const Region& piece = hypothesis[p];
        const std::vector<Cell> cells = parametric_dominantize(mu, piece);
        slots[s].cells += cells.size();
        for (const Cell& cell : cells) {
          const Region equal = solve_equal(cell.image, gammas[g], cell.region);
          if (auto pt = region_witness(equal)) {
            Json j;
            j["word"] = letters_csv(e.word);
            j["gamma"] = weight_str(gammas[g]);
            j["point"] = point_json(*tpl.space, *pt);
            j["mu_dominant"] = weight_str(dominantize(specialize(mu, *pt)).dominant);
            // The equality set is an affine slice of the hypothesis piece: a
            // failure of the exclusion claim if it has full dimension there, a
            // degenerate locus (reported but not failing) if the dimension drops.
            if (region_dimension(equal) < piece_dimension[p]) {
              slots[s].degenerate.push_back(std::move(j));
            } else if (collapses_into_first_part(tpl, apply_word(w, tpl.lambda_R), equal, *pt)) {
              j["collapsed"] = true;
              slots[s].degenerate.push_back(std::move(j));
            } else {
              slots[s].hits.push_back(std::move(j));
            }
          }
        }
      }
    }
  });

  ExclusionResult out;
  out.tested = wprime.size();
  for (Slot& slot : slots) {
    out.cells += slot.cells;
    for (Json& j : slot.hits) out.hits.push_back(std::move(j));
    for (Json& j : slot.degenerate) out.degenerate.push_back(std::move(j));
  }
  return out;
}

VerificationReport exclusion_report(const HermitianTemplate& tpl,
                                    const std::vector<Weight>& gammas, int threads) {
  Stopwatch clock;
  const ExclusionResult result = run_exclusion(tpl, hypothesis_regions(tpl), gammas, threads);
  VerificationReport rep;
  rep.case_name = tpl.name + "-exclusion";
  rep.status = result.hits.empty() ? "verified" : "counterexample";
  rep.details["count"] = result.tested;
  rep.details["regions"] = Json{{"cells", result.cells}};
  rep.details["witnesses"] = result.hits;
  rep.details["degenerate_loci"] = result.degenerate;
  Json gamma_list = Json::array();
  for (const Weight& g : gammas) gamma_list.push_back(weight_str(g));
  rep.details["inputs"] = Json{{"case", tpl.name}, {"gammas", std::move(gamma_list)}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

}  // namespace

VerificationReport second_part_excludes(std::string_view case_name, const Weight& gamma,
                                        const VerifyOptions& options) {
  const HermitianTemplate tpl = builtin_template(case_name);
  if (gamma.datum != tpl.datum) throw input_error("gamma belongs to a different datum");
  return exclusion_report(tpl, {gamma}, options.threads);
}

VerificationReport second_part_excludes_all(std::string_view case_name,
                                            const VerifyOptions& options) {
  const HermitianTemplate tpl = builtin_template(case_name);
  if (tpl.gammas.empty()) throw input_error("case '" + tpl.name + "' has no exclusion targets");
  return exclusion_report(tpl, tpl.gammas, options.threads);
}

// ---------------------------------------------------------------------------
// Reduction cases
// ---------------------------------------------------------------------------

VerificationReport verify_reduction_case(std::string_view case_name) {
  Stopwatch clock;
  if (case_name != "f4-reduction-0020" && case_name != "g2-reduction-a0" &&
      case_name != "g2-reduction-0b")
    throw input_error("unknown reduction case '" + std::string(case_name) + "'");
  const HermitianTemplate tpl = builtin_template(case_name);

  // Full support requires a strictly negative coordinate at the node outside I(M_f).
  std::vector<int> outside;
  for (int i = 1; i <= tpl.datum->rank; ++i)
    if (std::find(tpl.mf_nodes.begin(), tpl.mf_nodes.end(), i) == tpl.mf_nodes.end())
      outside.push_back(i);
  if (outside.size() != 1) throw internal_error("reduction case with more than one free node");
  const Region fully_supported =
      with_constraint(tpl.base_region, tpl.lambda_L.coords[outside[0] - 1], Rel::LT);

  VerificationReport rep;
  rep.case_name = tpl.name;
  rep.details["count"] = 0;
  Json witnesses = Json::array();
  if (case_name == "f4-reduction-0020") {
    std::size_t checked = 0;
    if (!region_is_empty(fully_supported)) {
      const std::vector<Cell> cells = parametric_dominantize(tpl.lambda_L, fully_supported);
      checked = cells.size();
      for (const Cell& cell : cells) {
        for (const AffineForm& f : cell.image.coords) {
          const Region escape = add_gt(cell.region, f, 1);
          if (auto pt = region_witness(escape)) {
            Json j;
            j["point"] = point_json(*tpl.space, *pt);
            j["word"] = letters_csv(cell.word.letters);
            j["dominant"] = weight_str(specialize(cell.image, *pt));
            witnesses.push_back(std::move(j));
          }
        }
      }
    }
    rep.details["count"] = checked;
    rep.status = witnesses.empty() ? "verified" : "counterexample";
  } else {
    const auto pt = region_witness(fully_supported);
    rep.status = pt ? "counterexample" : "verified";
    if (pt) {
      Json j;
      j["point"] = point_json(*tpl.space, *pt);
      witnesses.push_back(std::move(j));
    }
  }
  rep.details["regions"] = Json{{"fully_supported", region_strings(fully_supported)}};
  rep.details["witnesses"] = std::move(witnesses);
  rep.details["inputs"] = Json{{"case", tpl.name}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// Classical samplers
// ---------------------------------------------------------------------------

namespace {

struct ClassicalSampler {
  const RootDatum& datum;
  std::mt19937_64 rng;

  explicit ClassicalSampler(const RootDatum& d, std::uint64_t seed) : datum(d), rng(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng() % n; }

  Rat grid_value(long max_num_over_den) {  // nonnegative rationals with denominator <= 8
    const long den = 1L << below(4);
    const long num = static_cast<long>(below(static_cast<std::uint64_t>(max_num_over_den * den + 1)));
    Rat v(num, den);
    v.canonicalize();
    return v;
  }

  // One random template instance: λ usual coordinates and η usual coordinates.
  void draw(QVec& lambda_usual, QVec& eta_usual) {
    const int N = datum.family == 'A' ? datum.rank + 1 : datum.rank;
    int blocks = 1 + static_cast<int>(below(std::min(N, 4)));
    blocks = std::min(blocks, N);
    std::set<int> cuts;
    while (static_cast<int>(cuts.size()) < blocks - 1)
      cuts.insert(1 + static_cast<int>(below(N - 1)));
    std::vector<int> lengths;
    int prev = 0;
    for (int cut : cuts) {
      lengths.push_back(cut - prev);
      prev = cut;
    }
    lengths.push_back(N - prev);

    const bool spin = (datum.family == 'B' || datum.family == 'D') && below(2) == 0;
    const bool zero_tail = !spin && datum.family != 'A' && below(2) == 0;
    QVec levels(blocks);
    if (spin)
      levels[blocks - 1] = Rat(2 * static_cast<long>(below(3)) + 1, 4);
    else if (zero_tail)
      levels[blocks - 1] = 0;
    else
      levels[blocks - 1] = Rat(static_cast<long>(below(4)) + (datum.family == 'A' ? 0 : 1), 2);
    for (int j = blocks - 2; j >= 0; --j)
      levels[j] = levels[j + 1] + Rat(1 + static_cast<long>(below(2)), 2);
    for (auto& level : levels) level.canonicalize();

    lambda_usual.clear();
    eta_usual.clear();
    for (int j = 0; j < blocks; ++j) {
      const int len = lengths[j];
      QVec pert(len, Rat(0));
      const bool tail_block = zero_tail && j == blocks - 1;
      if (below(8) != 0) {  // an occasional all-zero perturbation exercises ν = 0
        if (tail_block) {
          for (int t = 0; t < len; ++t) pert[t] = grid_value(2);
          std::sort(pert.begin(), pert.end(), [](const Rat& u, const Rat& v) { return u > v; });
        } else {
          QVec half(len / 2);
          for (auto& v : half) v = grid_value(2);
          std::sort(half.begin(), half.end(), [](const Rat& u, const Rat& v) { return u > v; });
          for (int t = 0; t < len / 2; ++t) {
            pert[t] = half[t];
            pert[len - 1 - t] = -half[t];
          }
        }
      }
      for (int t = 0; t < len; ++t) {
        lambda_usual.push_back(levels[j] + pert[t]);
        eta_usual.push_back(2 * levels[j]);
      }
    }
  }
};

}  // namespace

VerificationReport verify_classical(char family, int rank, int samples, std::uint64_t seed,
                                    const VerifyOptions& options) {
  (void)options;
  Stopwatch clock;
  const int min_rank = family == 'A' ? 1 : (family == 'B' ? 2 : (family == 'C' ? 3 : 4));
  if (family != 'A' && family != 'B' && family != 'C' && family != 'D')
    throw input_error("classical sampler requires a classical family");
  if (rank < min_rank || rank > 6)
    throw input_error("classical sampler supports ranks up to 6");
  if (samples < 1) throw input_error("sample count must be positive");
  const RootDatum& datum = build_root_datum(family, rank);

  ClassicalSampler sampler(datum, seed);
  std::size_t tested = 0, skipped_hypothesis = 0, skipped_no_witness = 0;
  Json failures = Json::array();
  QVec lambda_usual, eta_usual;
  for (int s = 0; s < samples; ++s) {
    sampler.draw(lambda_usual, eta_usual);
    const Weight lambda = from_usual(datum, lambda_usual);
    const Weight eta = from_usual(datum, eta_usual);
    for (const Rat& k : eta.coords)
      if (!is_integer(k) || k < 0) throw internal_error("sampler produced a bad lowest type");

    // Hypothesis: every simple factor of the cx-basic Levi stays inside its FPP.
    const LeviDatum mcx = compute_mcx(eta);
    bool inside = true;
    for (const ComponentInfo& comp : mcx.components) {
      const Weight local = restrict_to_component(lambda, comp);
      if (!inside_fpp(dominantize(local).dominant)) {
        inside = false;
        break;
      }
    }
    if (!inside) {
      ++skipped_hypothesis;
      continue;
    }

    // Hermitian witness: longest elements of the M_f factors, verified exactly.
    const LeviDatum mf = levi_from_eta(eta);
    WeylWord w{&datum, {}};
    for (const ComponentInfo& comp : mf.components)
      w = compose(w, longest_element(datum, comp.nodes));
    const Weight nu = lambda - Rat(1, 2) * eta;
    if (apply_word(w, eta) != eta) throw internal_error("witness moved the lowest type");
    if (!(apply_word(w, nu) == -nu)) {
      ++skipped_no_witness;
      continue;
    }
    ++tested;

    const std::set<int> support = module_support(lambda, w);
    bool missing_outside_node = false;
    for (int i = 1; i <= rank; ++i) {
      const bool in_mf =
          std::find(mf.nodes.begin(), mf.nodes.end(), i) != mf.nodes.end();
      if (!in_mf && !support.count(i)) {
        missing_outside_node = true;
        break;
      }
    }
    if (missing_outside_node || inside_fpp(dominantize(lambda).dominant)) continue;

    Json j;
    j["lambda_usual"] = qvec_str(lambda_usual);
    j["eta"] = weight_str(eta);
    j["dominant"] = weight_str(dominantize(lambda).dominant);
    j["support"] = std::vector<int>(support.begin(), support.end());
    failures.push_back(std::move(j));
  }

  VerificationReport rep;
  rep.case_name = std::string("classical-") + family + std::to_string(rank);
  rep.status = failures.empty() ? "verified" : "counterexample";
  rep.details["count"] = samples;
  rep.details["samples"] = Json{{"total", samples},
                                {"tested", tested},
                                {"skipped_hypothesis", skipped_hypothesis},
                                {"skipped_no_witness", skipped_no_witness}};
  rep.details["witnesses"] = std::move(failures);
  rep.details["inputs"] = Json{{"family", std::string(1, family)},
                               {"rank", rank},
                               {"samples", samples},
                               {"seed", seed}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// Bottom-layer sweeps
// ---------------------------------------------------------------------------

VerificationReport verify_bottom_layer_sweep(char family, int rank, int cap,
                                             const VerifyOptions& options) {
  (void)options;
  Stopwatch clock;
  if (rank > 8) throw input_error("bottom-layer sweep supports rank <= 8");
  if (cap < 0 || cap > 4) throw input_error("bottom-layer sweep supports caps <= 4");
  const RootDatum& datum = build_root_datum(family, rank);

  std::size_t eta_count = 0, checks = 0;
  Json failures = Json::array();
  std::vector<int> odometer(rank, 0);
  while (true) {
    QVec coords(rank);
    for (int i = 0; i < rank; ++i) coords[i] = odometer[i];
    const Weight eta = make_weight(datum, std::move(coords));
    ++eta_count;

    for (const ComponentInfo& comp : compute_mcx(eta).components) {
      const Weight tau = restrict_to_component(eta, comp);
      const bool spherical = std::all_of(tau.coords.begin(), tau.coords.end(),
                                         [](const Rat& c) { return c == 0; });
      std::vector<Weight> targets;
      if (spherical) {
        targets.push_back(eta + from_root_coords(adjoint_delta(datum, comp)));
      } else {
        targets = component_gammas(eta, comp);
      }
      for (const Weight& gamma : targets) {
        ++checks;
        if (!is_bottom_layer(eta, gamma)) {
          Json j;
          j["eta"] = weight_str(eta);
          j["gamma"] = weight_str(gamma);
          j["component"] = std::string(1, comp.family) + std::to_string(comp.local_rank);
          failures.push_back(std::move(j));
        }
      }
    }

    int pos = rank - 1;
    while (pos >= 0 && odometer[pos] == cap) odometer[pos--] = 0;
    if (pos < 0) break;
    ++odometer[pos];
  }

  VerificationReport rep;
  rep.case_name = std::string("sweep-") + family + std::to_string(rank);
  rep.status = failures.empty() ? "verified" : "counterexample";
  rep.details["count"] = eta_count;
  rep.details["samples"] = Json{{"checks", checks}};
  rep.details["witnesses"] = std::move(failures);
  rep.details["inputs"] =
      Json{{"family", std::string(1, family)}, {"rank", rank}, {"cap", cap}};
  rep.elapsed_ms = clock.ms();
  return rep;
}

// ---------------------------------------------------------------------------
// Whole suite
// ---------------------------------------------------------------------------

std::vector<VerificationReport> verify_all(const VerifyAllOptions& options) {
  const VerifyOptions vo{options.threads};
  std::vector<VerificationReport> reports;
  for (const char* name : {"g2-eta10", "g2-eta20", "f4-eta0010"})
    reports.push_back(verify_outside_fpp_threshold(name, vo));
  reports.push_back(enumerate_outside_fpp_witnesses(vo));
  for (const char* name : {"g2-eta10", "g2-eta20", "f4-eta0010", "f4-eta0001"})
    reports.push_back(second_part_excludes_all(name, vo));
  for (const char* name : {"f4-reduction-0020", "g2-reduction-a0", "g2-reduction-0b"})
    reports.push_back(verify_reduction_case(name));
  for (char family : {'A', 'B', 'C', 'D'}) {
    const int min_rank = family == 'A' ? 1 : (family == 'B' ? 2 : (family == 'C' ? 3 : 4));
    for (int rank = min_rank; rank <= 6; ++rank)
      reports.push_back(verify_classical(family, rank, options.samples, options.seed, vo));
  }
  for (char family : {'A', 'B', 'C', 'D'}) {
    const int min_rank = family == 'A' ? 1 : (family == 'B' ? 2 : (family == 'C' ? 3 : 4));
    for (int rank = min_rank; rank <= 8; ++rank)
      reports.push_back(verify_bottom_layer_sweep(family, rank, options.cap, vo));
  }
  for (int rank : {6, 7, 8})
    reports.push_back(verify_bottom_layer_sweep('E', rank, options.cap, vo));
  reports.push_back(verify_bottom_layer_sweep('F', 4, options.cap, vo));
  reports.push_back(verify_bottom_layer_sweep('G', 2, options.cap, vo));
  return reports;
}

Json VerificationReport::to_json(bool with_timing) const {
  Json out;
  out["case"] = case_name;
  out["status"] = status;
  for (const auto& [key, value] : details.items()) out[key] = value;
  if (with_timing) out["elapsed_ms"] = elapsed_ms;
  return out;
}

}  // namespace fpp::verify
