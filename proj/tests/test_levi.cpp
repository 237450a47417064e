#include "fpp/levi.hpp"

#include <random>

#include "doctest.h"

using namespace fpp;

namespace {

std::vector<int> mcx_nodes(const RootDatum& d, const QVec& eta_coords) {
  return compute_mcx(make_weight(d, eta_coords)).nodes;
}

}  // namespace

TEST_CASE("levi from eta") {
  const RootDatum& f4 = build_root_datum('F', 4);
  const LeviDatum mf = levi_from_eta(parse_weight(f4, "0,0,1,0"));
  CHECK(mf.nodes == std::vector<int>{1, 2, 4});
  REQUIRE(mf.components.size() == 2);
  CHECK(mf.components[0].family == 'A');
  CHECK(mf.components[0].local_rank == 2);
  CHECK(mf.components[0].nodes == std::vector<int>{1, 2});
  CHECK(mf.components[1].family == 'A');
  CHECK(mf.components[1].local_rank == 1);

  const RootDatum& e8 = build_root_datum('E', 8);
  const LeviDatum me = levi_from_eta(parse_weight(e8, "1,2,0,0,0,3,0,0"));
  CHECK(me.nodes == std::vector<int>{3, 4, 5, 7, 8});
  REQUIRE(me.components.size() == 2);
  CHECK(me.components[0].family == 'A');
  CHECK(me.components[0].local_rank == 3);
  CHECK(me.components[1].family == 'A');
  CHECK(me.components[1].local_rank == 2);

  CHECK(levi_from_eta(rho(e8)).nodes.empty());
  CHECK_THROWS_AS(levi_from_eta(parse_weight(f4, "-1,0,0,0")), input_error);
}

TEST_CASE("component classification") {
  const RootDatum& b8 = build_root_datum('B', 8);
  const auto tail = classify_components(b8, {7, 8});
  REQUIRE(tail.size() == 1);
  CHECK(tail[0].family == 'B');
  CHECK(tail[0].local_rank == 2);
  CHECK(tail[0].nodes == std::vector<int>{7, 8});

  const auto mixed = classify_components(b8, {2, 3, 5, 7, 8});
  REQUIRE(mixed.size() == 3);
  CHECK(mixed[0].family == 'A');
  CHECK(mixed[0].local_rank == 2);
  CHECK(mixed[1].family == 'A');
  CHECK(mixed[1].local_rank == 1);
  CHECK(mixed[2].family == 'B');
  CHECK(mixed[2].local_rank == 2);

  const RootDatum& f4 = build_root_datum('F', 4);
  const auto c3 = classify_components(f4, {2, 3, 4});
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].family == 'C');
  CHECK(c3[0].local_rank == 3);
  CHECK(c3[0].nodes == std::vector<int>{4, 3, 2});  // short end first
  const auto b3 = classify_components(f4, {1, 2, 3});
  CHECK(b3[0].family == 'B');
  CHECK(b3[0].nodes == std::vector<int>{1, 2, 3});

  const RootDatum& e7 = build_root_datum('E', 7);
  const auto d_comp = classify_components(e7, {2, 3, 4, 5});
  REQUIRE(d_comp.size() == 1);
  CHECK(d_comp[0].family == 'D');
  CHECK(d_comp[0].local_rank == 4);

  for (int i = 1; i <= 8; ++i) {
    const auto single = classify_components(b8, {i});
    CHECK(single[0].family == 'A');
    CHECK(single[0].local_rank == 1);
  }
}

TEST_CASE("adjoint highest weights") {
  const RootDatum& f4 = build_root_datum('F', 4);
  const auto comps = classify_components(f4, {1, 2});
  RootVector delta = adjoint_delta(f4, comps[0]);
  CHECK(delta.coeffs == QVec{1, 1, 0, 0});  // beta1 + beta2

  const RootDatum& g2 = build_root_datum('G', 2);
  const auto whole = classify_components(g2, {1, 2});
  CHECK(adjoint_delta(g2, whole[0]).coeffs == QVec{3, 2});

  const RootDatum& b8 = build_root_datum('B', 8);
  const auto tail = classify_components(b8, {7, 8});
  CHECK(adjoint_delta(b8, tail[0]).coeffs == QVec{0, 0, 0, 0, 0, 0, 1, 2});
}

TEST_CASE("cx-basic classification") {
  const RootDatum& f4 = build_root_datum('F', 4);
  const ComponentInfo whole_f4 = classify_components(f4, {1, 2, 3, 4})[0];
  CHECK(is_cx_basic(whole_f4, {0, 0, 0, 0}));
  CHECK(is_cx_basic(whole_f4, {0, 0, 1, 0}));
  CHECK(is_cx_basic(whole_f4, {0, 0, 0, 1}));
  CHECK_FALSE(is_cx_basic(whole_f4, {1, 0, 0, 0}));
  CHECK_FALSE(is_cx_basic(whole_f4, {0, 0, 2, 0}));

  const RootDatum& a5 = build_root_datum('A', 5);
  const ComponentInfo whole_a5 = classify_components(a5, {1, 2, 3, 4, 5})[0];
  CHECK(is_cx_basic(whole_a5, {0, 0, 0, 0, 0}));
  CHECK_FALSE(is_cx_basic(whole_a5, {0, 0, 1, 0, 0}));

  const RootDatum& c5 = build_root_datum('C', 5);
  const ComponentInfo whole_c5 = classify_components(c5, {1, 2, 3, 4, 5})[0];
  CHECK(is_cx_basic(whole_c5, {1, 0, 0, 0, 0}));
  CHECK(is_cx_basic(whole_c5, {0, 0, 1, 0, 0}));
  CHECK_FALSE(is_cx_basic(whole_c5, {0, 0, 0, 0, 1}));
  CHECK_FALSE(is_cx_basic(whole_c5, {0, 1, 1, 0, 0}));
  CHECK_FALSE(is_cx_basic(whole_c5, {0, 0, 2, 0, 0}));

  const RootDatum& b5 = build_root_datum('B', 5);
  const ComponentInfo whole_b5 = classify_components(b5, {1, 2, 3, 4, 5})[0];
  CHECK(is_cx_basic(whole_b5, {0, 0, 0, 0, 1}));
  CHECK_FALSE(is_cx_basic(whole_b5, {0, 0, 0, 1, 0}));

  const RootDatum& g2 = build_root_datum('G', 2);
  const ComponentInfo whole_g2 = classify_components(g2, {1, 2})[0];
  CHECK(is_cx_basic(whole_g2, {1, 0}));
  CHECK(is_cx_basic(whole_g2, {2, 0}));
  CHECK_FALSE(is_cx_basic(whole_g2, {0, 1}));
  CHECK_FALSE(is_cx_basic(whole_g2, {3, 0}));

  CHECK_THROWS_AS(is_cx_basic(whole_g2, {Rat(1, 2), 0}), input_error);
}

TEST_CASE("maximal cx-basic Levi") {
  const RootDatum& b8 = build_root_datum('B', 8);
  CHECK(mcx_nodes(b8, {2, 0, 0, 3, 0, 1, 0, 1}) == std::vector<int>{2, 3, 5, 7, 8});

  const RootDatum& f4 = build_root_datum('F', 4);
  CHECK(mcx_nodes(f4, {2, 0, 3, 1}) == std::vector<int>{2});
  CHECK(mcx_nodes(f4, {1, 0, 1, 2}) == std::vector<int>{2, 3});

  // Type G2: the four cases of the eta/I(M_cx) classification.
  const RootDatum& g2 = build_root_datum('G', 2);
  for (long a : {1, 2, 3}) {
    for (long b : {1, 2}) CHECK(mcx_nodes(g2, {Rat(a), Rat(b)}).empty());
    CHECK(mcx_nodes(g2, {0, Rat(a)}) == std::vector<int>{1});
  }
  for (long a : {3, 4, 5}) CHECK(mcx_nodes(g2, {Rat(a), 0}) == std::vector<int>{2});
  for (long a : {0, 1, 2}) CHECK(mcx_nodes(g2, {Rat(a), 0}) == std::vector<int>{1, 2});
}

TEST_CASE("F4 table of maximal Levis") {
  const RootDatum& f4 = build_root_datum('F', 4);
  // Patterns: -1 stands for "any integer >= 1", -2 for "any integer >= 2".
  struct Row {
    std::vector<int> pattern;
    std::vector<int> nodes;
  };
  const std::vector<Row> rows = {
      {{-1, -1, -1, -1}, {}},
      {{0, -1, -1, -1}, {1}},
      {{-1, 0, -2, -1}, {2}},
      {{-1, -1, 0, -1}, {3}},
      {{-1, -1, -1, 0}, {4}},
      {{0, 0, -2, -1}, {1, 2}},
      {{0, -1, 0, -1}, {1, 3}},
      {{0, -1, -1, 0}, {1, 4}},
      {{-1, 0, 0, -2}, {2, 3}},
      {{-1, 0, 1, -1}, {2, 3}},
      {{-1, 0, -2, 0}, {2, 4}},
      {{-1, -1, 0, 0}, {3, 4}},
      {{0, 0, 0, -2}, {1, 2, 3}},
      {{0, 0, 1, -1}, {1, 2, 3}},
      {{0, 0, -2, 0}, {1, 2, 4}},
      {{0, -1, 0, 0}, {1, 3, 4}},
      {{-1, 0, 0, 0}, {2, 3, 4}},
      {{-1, 0, 1, 0}, {2, 3, 4}},
      {{-1, 0, 0, 1}, {2, 3, 4}},
      {{0, 0, 0, 0}, {1, 2, 3, 4}},
      {{0, 0, 1, 0}, {1, 2, 3, 4}},
      {{0, 0, 0, 1}, {1, 2, 3, 4}},
  };
  // Substitute two representatives per symbol and check every instantiation.
  std::vector<QVec> stack;
  for (const Row& row : rows) {
    std::vector<QVec> instances{{QVec{}}};
    for (int entry : row.pattern) {
      std::vector<long> choices;
      if (entry == -1)
        choices = {1, 2};
      else if (entry == -2)
        choices = {2, 3};
      else
        choices = {entry};
      std::vector<QVec> next;
      for (const QVec& prefix : instances) {
        for (long c : choices) {
          QVec coords = prefix;
          coords.push_back(Rat(c));
          next.push_back(std::move(coords));
        }
      }
      instances = std::move(next);
    }
    for (const QVec& eta : instances) {
      CAPTURE(qvec_str(eta));
      CHECK(mcx_nodes(f4, eta) == row.nodes);
    }
  }
}

TEST_CASE("bottom layer membership") {
  const RootDatum& f4 = build_root_datum('F', 4);
  const Weight eta = parse_weight(f4, "0,0,1,0");
  const Weight delta_a2 = simple_root(f4, 1) + simple_root(f4, 2);
  CHECK_FALSE(is_bottom_layer(eta, eta + delta_a2));
  CHECK((eta + delta_a2).coords == QVec{1, 1, -1, 0});
  CHECK(is_bottom_layer(eta, eta + simple_root(f4, 4)));
  CHECK((eta + simple_root(f4, 4)).coords == QVec{0, 0, 0, 2});
  CHECK(is_bottom_layer(eta, eta));
}

TEST_CASE("indefinite gamma catalog") {
  // B_l spin: gamma = tau + beta_1 + ... + beta_l, i.e. (3/2, 1/2, ..., 1/2).
  for (int l : {2, 3, 5}) {
    const RootDatum& b = build_root_datum('B', l);
    QVec tau_coords(l, Rat(0));
    tau_coords[l - 1] = 1;
    const Weight tau = make_weight(b, tau_coords);
    const auto gammas = indefinite_gammas('B', l, tau);
    REQUIRE(gammas.size() == 1);
    QVec usual = usual_coords(gammas[0]);
    CHECK(usual[0] == Rat(3, 2));
    for (int i = 1; i < l; ++i) CHECK(usual[i] == Rat(1, 2));
  }

  // C_l fundamental with 1 in slot i: usual coordinates (2,1^{i-2},0^{j+1}) and
  // (2,1^i,0^{j-1}).
  for (int l : {3, 4, 6}) {
    const RootDatum& c = build_root_datum('C', l);
    for (int slot = 1; slot < l; ++slot) {
      QVec tau_coords(l, Rat(0));
      tau_coords[slot - 1] = 1;
      const Weight tau = make_weight(c, tau_coords);
      const auto gammas = indefinite_gammas('C', l, tau);
      const std::size_t expected = (slot >= 2 ? 1 : 0) + 1;
      REQUIRE(gammas.size() == expected);
      std::size_t at = 0;
      if (slot >= 2) {
        QVec usual = usual_coords(gammas[at++]);
        CHECK(usual[0] == 2);
        for (int i = 1; i < slot - 1; ++i) CHECK(usual[i] == 1);
        for (int i = slot - 1; i < l; ++i) CHECK(usual[i] == 0);
      }
      QVec usual = usual_coords(gammas[at]);
      CHECK(usual[0] == 2);
      for (int i = 1; i <= slot; ++i) CHECK(usual[i] == 1);
      for (int i = slot + 1; i < l; ++i) CHECK(usual[i] == 0);
    }
    QVec last(l, Rat(0));
    last[l - 1] = 1;
    CHECK_THROWS_AS(indefinite_gammas('C', l, make_weight(c, last)), input_error);
  }

  const RootDatum& g2 = build_root_datum('G', 2);
  CHECK(indefinite_gammas('G', 2, parse_weight(g2, "1,0"))[0] == parse_weight(g2, "2,0"));
  CHECK(indefinite_gammas('G', 2, parse_weight(g2, "2,0"))[0] == parse_weight(g2, "1,1"));

  const RootDatum& f4 = build_root_datum('F', 4);
  const auto f4_0010 = indefinite_gammas('F', 4, parse_weight(f4, "0,0,1,0"));
  REQUIRE(f4_0010.size() == 2);
  CHECK(f4_0010[0] == parse_weight(f4, "1,0,0,1"));
  CHECK(f4_0010[1] == parse_weight(f4, "0,0,0,2"));
  CHECK(indefinite_gammas('F', 4, parse_weight(f4, "0,0,0,1"))[0] == parse_weight(f4, "0,0,1,0"));

  // Spherical tau yields the adjoint weight.
  CHECK(indefinite_gammas('G', 2, zero_weight(g2))[0] == parse_weight(g2, "0,1"));

  CHECK_THROWS_AS(indefinite_gammas('G', 2, parse_weight(g2, "3,0")), input_error);
  CHECK_THROWS_AS(indefinite_gammas('B', 3, make_weight(build_root_datum('B', 3), {0, 1, 0})),
                  input_error);
}

TEST_CASE("M_f is contained in M_cx") {
  std::mt19937_64 rng(31);
  for (const char* name : {"A4", "B5", "C6", "D6", "E6", "E8", "F4", "G2", "B8"}) {
    const RootDatum& d = root_datum_by_name(name);
    for (int s = 0; s < 150; ++s) {
      QVec coords(d.rank);
      for (auto& c : coords) c = Rat(static_cast<long>(rng() % 5));
      const Weight eta = make_weight(d, std::move(coords));
      const auto mf = levi_from_eta(eta).nodes;
      const auto mcx = compute_mcx(eta).nodes;
      for (int node : mf)
        CHECK(std::find(mcx.begin(), mcx.end(), node) != mcx.end());
    }
  }
}
