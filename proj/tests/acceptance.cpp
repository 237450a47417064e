// Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fpp/verify.hpp"

using namespace fpp;
using namespace fpp::verify;

namespace {

struct Harness {
  int failures = 0;

  void run(const std::string& name, double budget_seconds,
           const std::function<bool(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string note;
    bool ok = false;
    try {
      ok = body(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && elapsed > budget_seconds) {
      ok = false;
      note += " [exceeded " + std::to_string(budget_seconds) + " s budget]";
    }
    std::printf("%s  %-14s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), elapsed,
                note.empty() ? "" : "  ", note.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
};

Rat random_rat(std::mt19937_64& rng, long max_num, long max_den) {
  Rat v(static_cast<long>(rng() % (max_num + 1)), 1 + static_cast<long>(rng() % max_den));
  v.canonicalize();
  return v;
}

bool point_in(const Region& r, const QVec& p) {
  for (const Constraint& c : r.constraints) {
    const Rat v = c.form.eval(p);
    if (c.rel == Rel::LT && !(v < 0)) return false;
    if (c.rel == Rel::LE && !(v <= 0)) return false;
    if (c.rel == Rel::EQ && v != 0) return false;
  }
  return true;
}

// Parametric cells against the numeric first negative index algorithm at random
// rational points of the base region; exact agreement, every point in one cell.
bool parametric_matches_numeric(const std::string& case_name, int required_points,
                                std::string& note) {
  const HermitianTemplate tpl = builtin_template(case_name);
  Region box = tpl.base_region;
  for (const std::string& name : tpl.space->names) {
    AffineForm f = parameter_form(*tpl.space, name);
    AffineForm bound = constant_form(*tpl.space, Rat(4));
    box = with_constraint(std::move(box), f - bound, Rel::LE);
  }
  const std::vector<Cell> cells = parametric_dominantize(tpl.lambda_L, box);
  std::mt19937_64 rng(981 + tpl.space->names.size());
  int checked = 0;
  while (checked < required_points) {
    QVec point;
    for (std::size_t i = 0; i < tpl.space->names.size(); ++i)
      point.push_back(random_rat(rng, 4096, 1024));
    if (!point_in(box, point)) continue;
    int containing = 0;
    for (const Cell& cell : cells) {
      if (!point_in(cell.region, point)) continue;
      ++containing;
      const auto dom = dominantize(specialize(tpl.lambda_L, point));
      if (dom.word.letters != cell.word.letters) {
        note = "word mismatch at " + point_str(*tpl.space, point);
        return false;
      }
      if (!(dom.dominant == specialize(cell.image, point))) {
        note = "image mismatch at " + point_str(*tpl.space, point);
        return false;
      }
    }
    if (containing != 1) {
      note = "point in " + std::to_string(containing) + " cells at " +
             point_str(*tpl.space, point);
      return false;
    }
    ++checked;
  }
  return true;
}

}  // namespace

int main() {
  Harness h;

  h.run("criterion-1", 1.0, [](std::string& note) {
    const auto rep = verify_outside_fpp_threshold("g2-eta10");
    note = "outside-FPP set = {x > 3/2}";
    return rep.verified();
  });

  h.run("criterion-2", 1.0, [](std::string& note) {
    const auto rep = verify_outside_fpp_threshold("g2-eta20");
    note = "outside-FPP set = {x > 2/3}";
    return rep.verified();
  });

  h.run("criterion-3", 30.0, [](std::string& note) {
    const auto rep = verify_outside_fpp_threshold("f4-eta0010");
    note = "outside-FPP set = {x > 2} within 0 <= z <= 1/2";
    return rep.verified();
  });

  h.run("criterion-4", 300.0, [](std::string& note) {
    const auto rep = enumerate_outside_fpp_witnesses();
    note = "count = " + rep.details["count"].dump() +
           ", s1s2s3s4 image and bullet regions match";
    return rep.verified() && rep.details["count"] == 29;
  });

  h.run("criterion-5", 0.0, [](std::string& note) {
    std::size_t degenerate = 0;
    bool ok = true;
    for (const char* name : {"g2-eta10", "g2-eta20", "f4-eta0010", "f4-eta0001"}) {
      const auto rep = second_part_excludes_all(name);
      ok = ok && rep.verified() && rep.details["witnesses"].empty();
      degenerate += rep.details["degenerate_loci"].size();
    }
    note = "zero region-wide equality sets; " + std::to_string(degenerate) +
           " lower-dimensional loci reported";
    return ok;
  });

  h.run("criterion-6", 0.0, [](std::string& note) {
    bool ok = verify_reduction_case("f4-reduction-0020").verified();
    ok = ok && verify_reduction_case("g2-reduction-a0").verified();
    ok = ok && verify_reduction_case("g2-reduction-0b").verified();
    note = "every cell inside FPP; both G2 regions empty";
    return ok;
  });

  h.run("criterion-7", 0.0, [](std::string& note) {
    const RootDatum& f4 = build_root_datum('F', 4);
    const Weight eta = parse_weight(f4, "0,0,1,0");
    bool ok = true;

    // Adjoint bottom-layer checks of the two M_f factors of F4, eta = [0,0,1,0].
    const Weight not_bottom = eta + simple_root(f4, 1) + simple_root(f4, 2);
    ok = ok && not_bottom.coords == QVec{1, 1, -1, 0} && !is_bottom_layer(eta, not_bottom);
    const Weight bottom = eta + simple_root(f4, 4);
    ok = ok && bottom.coords == QVec{0, 0, 0, 2} && is_bottom_layer(eta, bottom);

    // The E8 example: both adjoint types of the spherical factors are bottom layer.
    const RootDatum& e8 = build_root_datum('E', 8);
    const Weight eta8 = parse_weight(e8, "1,2,0,0,0,3,0,0");
    const LeviDatum mcx8 = compute_mcx(eta8);
    ok = ok && mcx8.nodes == std::vector<int>{3, 4, 5, 7, 8};
    for (const ComponentInfo& comp : mcx8.components) {
      const Weight gamma = eta8 + from_root_coords(adjoint_delta(e8, comp));
      ok = ok && is_bottom_layer(eta8, gamma);
    }

    // The F4 bottom-layer computation for eta = [0,0,1,k], k >= 1: I(M_cx) = {1,2,3}
    // and gamma = eta + beta_1 + beta_2 + beta_3 is bottom layer.
    for (long k : {1, 2}) {
      const Weight etak = make_weight(f4, {0, 0, 1, Rat(k)});
      const LeviDatum mcx = compute_mcx(etak);
      ok = ok && mcx.nodes == std::vector<int>{1, 2, 3};
      const auto gammas = component_gammas(etak, mcx.components[0]);
      ok = ok && gammas.size() == 1 && is_bottom_layer(etak, gammas[0]);
      const Weight expected =
          etak + simple_root(f4, 1) + simple_root(f4, 2) + simple_root(f4, 3);
      ok = ok && gammas[0] == expected;
    }

    // All rows of the F4 eta -> I(M_cx) table, two representatives per symbol.
    struct Row {
      std::vector<int> pattern;  // -1: any >= 1, -2: any >= 2
      std::vector<int> nodes;
    };
    const std::vector<Row> rows = {
        {{-1, -1, -1, -1}, {}},          {{0, -1, -1, -1}, {1}},
        {{-1, 0, -2, -1}, {2}},          {{-1, -1, 0, -1}, {3}},
        {{-1, -1, -1, 0}, {4}},          {{0, 0, -2, -1}, {1, 2}},
        {{0, -1, 0, -1}, {1, 3}},        {{0, -1, -1, 0}, {1, 4}},
        {{-1, 0, 0, -2}, {2, 3}},        {{-1, 0, 1, -1}, {2, 3}},
        {{-1, 0, -2, 0}, {2, 4}},        {{-1, -1, 0, 0}, {3, 4}},
        {{0, 0, 0, -2}, {1, 2, 3}},      {{0, 0, 1, -1}, {1, 2, 3}},
        {{0, 0, -2, 0}, {1, 2, 4}},      {{0, -1, 0, 0}, {1, 3, 4}},
        {{-1, 0, 0, 0}, {2, 3, 4}},      {{-1, 0, 1, 0}, {2, 3, 4}},
        {{-1, 0, 0, 1}, {2, 3, 4}},      {{0, 0, 0, 0}, {1, 2, 3, 4}},
        {{0, 0, 1, 0}, {1, 2, 3, 4}},    {{0, 0, 0, 1}, {1, 2, 3, 4}},
    };
    int instances = 0;
    for (const Row& row : rows) {
      std::vector<QVec> etas{QVec{}};
      for (int entry : row.pattern) {
        const std::vector<long> choices = entry == -1   ? std::vector<long>{1, 2}
                                          : entry == -2 ? std::vector<long>{2, 3}
                                                        : std::vector<long>{entry};
        std::vector<QVec> next;
        for (const QVec& prefix : etas) {
          for (long c : choices) {
            QVec coords = prefix;
            coords.push_back(Rat(c));
            next.push_back(std::move(coords));
          }
        }
        etas = std::move(next);
      }
      for (const QVec& coords : etas) {
        ++instances;
        if (compute_mcx(make_weight(f4, coords)).nodes != row.nodes) ok = false;
      }
    }
    note = "Example pairings, E8 factors, F4 closing check, " + std::to_string(instances) +
           " table instances";
    return ok;
  });

  h.run("criterion-8", 0.0, [](std::string& note) {
    bool ok = true;

    // Reflection involution on random rational weights.
    std::mt19937_64 rng(88);
    for (const char* name : {"A4", "B5", "C6", "D5", "E7", "F4", "G2"}) {
      const RootDatum& d = root_datum_by_name(name);
      for (int s = 0; s < 1000; ++s) {
        QVec coords(d.rank);
        for (auto& c : coords) {
          c = Rat(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 8));
          c.canonicalize();
        }
        const Weight w = make_weight(d, coords);
        const int i = 1 + static_cast<int>(rng() % d.rank);
        if (!(apply_simple(i, apply_simple(i, w)) == w)) ok = false;
      }
      // Dominantization words are reduced: length equals the inversion count.
      for (int s = 0; s < 250; ++s) {
        QVec coords(d.rank);
        for (auto& c : coords) {
          c = Rat(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 8));
          c.canonicalize();
        }
        const auto dom = dominantize(make_weight(d, coords));
        if (weyl_length(dom.word) != static_cast<int>(dom.word.letters.size())) ok = false;
      }
    }

    // Weyl orders and positive-root counts.
    ok = ok && enumerate_weyl_cached(build_root_datum('G', 2)).size() == 12;
    ok = ok && enumerate_weyl_cached(build_root_datum('F', 4)).size() == 1152;
    ok = ok && build_root_datum('G', 2).positive_roots.size() == 6;
    ok = ok && build_root_datum('F', 4).positive_roots.size() == 24;
    ok = ok && build_root_datum('E', 8).positive_roots.size() == 120;
    ok = ok && build_root_datum('B', 8).positive_roots.size() == 64;

    // Parametric vs numeric dominantization, >= 1000 points per parametric case.
    std::string sub;
    for (const char* name :
         {"g2-eta10", "g2-eta20", "f4-eta0010", "f4-eta0001", "f4-reduction-0020"}) {
      if (!parametric_matches_numeric(name, 1000, sub)) {
        note = std::string(name) + ": " + sub;
        ok = false;
      }
    }
    if (note.empty()) note = "involution, reducedness, orders, 5x1000 sampled points";
    return ok;
  });

  h.run("criterion-9", 600.0, [](std::string& note) {
    bool ok = true;
    std::size_t tested = 0;
    for (char family : {'A', 'B', 'C', 'D'}) {
      const int min_rank = family == 'A' ? 1 : (family == 'B' ? 2 : (family == 'C' ? 3 : 4));
      for (int rank = min_rank; rank <= 6; ++rank) {
        const auto rep = verify_classical(family, rank, 10000, 20240001);
        ok = ok && rep.verified() && rep.details["witnesses"].empty();
        tested += rep.details["samples"]["tested"].get<std::size_t>();
      }
    }
    note = "18 family/rank runs, 10^4 samples each, " + std::to_string(tested) +
           " tested, 0 counterexamples";
    return ok;
  });

  h.run("criterion-10", 300.0, [](std::string& note) {
    bool ok = true;
    std::size_t checks = 0;
    const auto sweep = [&](char family, int rank) {
      const auto rep = verify_bottom_layer_sweep(family, rank, 3);
      ok = ok && rep.verified() && rep.details["witnesses"].empty();
      checks += rep.details["samples"]["checks"].get<std::size_t>();
    };
    for (int rank = 1; rank <= 8; ++rank) sweep('A', rank);
    for (int rank = 2; rank <= 8; ++rank) sweep('B', rank);
    for (int rank = 3; rank <= 8; ++rank) sweep('C', rank);
    for (int rank = 4; rank <= 8; ++rank) sweep('D', rank);
    for (int rank : {6, 7, 8}) sweep('E', rank);
    sweep('F', 4);
    sweep('G', 2);
    note = "31 data, cap 3, " + std::to_string(checks) + " bottom-layer checks";
    return ok;
  });

  if (h.failures == 0) std::printf("acceptance: all criteria passed\n");
  else std::printf("acceptance: %d criterion(s) FAILED\n", h.failures);
  return h.failures;
}
