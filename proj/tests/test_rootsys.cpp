#include "fpp/rootsys.hpp"

#include <random>

#include "doctest.h"

using namespace fpp;

namespace {

Rat rr(long num, long den = 1) {
  Rat v(num, den);
  v.canonicalize();
  return v;
}

std::vector<const RootDatum*> test_data() {
  return {&build_root_datum('A', 1), &build_root_datum('A', 3), &build_root_datum('A', 5),
          &build_root_datum('B', 2), &build_root_datum('B', 6), &build_root_datum('C', 3),
          &build_root_datum('C', 6), &build_root_datum('D', 4), &build_root_datum('D', 6),
          &build_root_datum('E', 6), &build_root_datum('E', 7), &build_root_datum('E', 8),
          &build_root_datum('F', 4), &build_root_datum('G', 2)};
}

Weight random_weight(const RootDatum& d, std::mt19937_64& rng) {
  QVec coords(d.rank);
  for (auto& c : coords) {
    const long num = static_cast<long>(rng() % 41) - 20;
    const long den = 1 + static_cast<long>(rng() % 8);
    c = Rat(num, den);
    c.canonicalize();
  }
  return make_weight(d, std::move(coords));
}

}  // namespace

TEST_CASE("cartan conventions") {
  const RootDatum& g2 = build_root_datum('G', 2);
  CHECK(g2.cartan == std::vector<std::vector<long>>{{2, -1}, {-3, 2}});
  const RootDatum& a1 = build_root_datum('A', 1);
  CHECK(a1.cartan == std::vector<std::vector<long>>{{2}});
  const RootDatum& f4 = build_root_datum('F', 4);
  CHECK(f4.cartan[1] == std::vector<long>{-1, 2, -2, 0});
  CHECK(f4.cartan[2] == std::vector<long>{0, -1, 2, -1});
  const RootDatum& b6 = build_root_datum('B', 6);
  CHECK(b6.cartan[4][5] == -2);
  CHECK(b6.cartan[5][4] == -1);
  const RootDatum& c6 = build_root_datum('C', 6);
  CHECK(c6.cartan[4][5] == -1);
  CHECK(c6.cartan[5][4] == -2);
  // E types: node 2 is the branch node attached to node 4.
  for (int rank : {6, 7, 8}) {
    const RootDatum& e = build_root_datum('E', rank);
    CHECK(e.cartan[1][3] == -1);
    CHECK(e.cartan[1][2] == 0);
    CHECK(e.cartan[0][2] == -1);
    CHECK(e.cartan[0][1] == 0);
  }
}

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS_AS(build_root_datum('C', 2), input_error);
  CHECK_THROWS_AS(build_root_datum('D', 3), input_error);
  CHECK_THROWS_AS(build_root_datum('E', 5), input_error);
  CHECK_THROWS_AS(build_root_datum('F', 3), input_error);
  CHECK_THROWS_AS(build_root_datum('G', 3), input_error);
  CHECK_THROWS_AS(build_root_datum('H', 3), input_error);
  CHECK_THROWS_AS(root_datum_by_name("Z9"), input_error);
  CHECK(root_datum_by_name("f4").name() == "F4");
}

TEST_CASE("cartan inverse is exact") {
  for (const RootDatum* d : test_data()) {
    for (int i = 0; i < d->rank; ++i) {
      for (int j = 0; j < d->rank; ++j) {
        Rat entry(0);
        for (int k = 0; k < d->rank; ++k) entry += Rat(d->cartan[i][k]) * d->cartan_inverse[k][j];
        CHECK(entry == (i == j ? 1 : 0));
      }
    }
  }
}

TEST_CASE("positive root counts") {
  CHECK(build_root_datum('A', 5).positive_roots.size() == 15);
  CHECK(build_root_datum('B', 6).positive_roots.size() == 36);
  CHECK(build_root_datum('C', 6).positive_roots.size() == 36);
  CHECK(build_root_datum('D', 6).positive_roots.size() == 30);
  CHECK(build_root_datum('G', 2).positive_roots.size() == 6);
  CHECK(build_root_datum('F', 4).positive_roots.size() == 24);
  CHECK(build_root_datum('E', 6).positive_roots.size() == 36);
  CHECK(build_root_datum('E', 7).positive_roots.size() == 63);
  CHECK(build_root_datum('E', 8).positive_roots.size() == 120);
}

TEST_CASE("pairing is projection and linear") {
  const RootDatum& f4 = build_root_datum('F', 4);
  CHECK(pairing(parse_weight(f4, "1,1,-1,0"), 3) == -1);
  for (int i = 1; i <= 4; ++i) CHECK(pairing(rho(f4), i) == 1);
  const Weight w = parse_weight(f4, "0,0,1,0") + simple_root(f4, 4);
  CHECK(pairing(w, 4) == 2);
  CHECK_THROWS_AS(pairing(rho(f4), 5), input_error);

  std::mt19937_64 rng(11);
  for (const RootDatum* d : test_data()) {
    for (int s = 0; s < 50; ++s) {
      const Weight a = random_weight(*d, rng);
      const Weight b = random_weight(*d, rng);
      const Rat c = rr(static_cast<long>(rng() % 11) - 5, 1 + rng() % 4);
      const int i = 1 + static_cast<int>(rng() % d->rank);
      CHECK(pairing(a + c * b, i) == pairing(a, i) + c * pairing(b, i));
    }
  }
}

TEST_CASE("root coordinates") {
  const RootDatum& g2 = build_root_datum('G', 2);
  CHECK(to_root_coords(parse_weight(g2, "0,1")).coeffs == QVec{3, 2});
  CHECK(to_root_coords(parse_weight(g2, "2,-1")).coeffs == QVec{1, 0});
  CHECK(to_root_coords(zero_weight(build_root_datum('E', 8))).coeffs == QVec(8, Rat(0)));

  std::mt19937_64 rng(12);
  for (const RootDatum* d : test_data()) {
    for (int s = 0; s < 1000; ++s) {
      const Weight w = random_weight(*d, rng);
      CHECK(from_root_coords(to_root_coords(w)) == w);
    }
  }
}

TEST_CASE("height") {
  const RootDatum& g2 = build_root_datum('G', 2);
  const RootDatum& f4 = build_root_datum('F', 4);
  for (const RootDatum* d : {&g2, &f4}) {
    for (int i = 1; i <= d->rank; ++i) CHECK(height(simple_root(*d, i)) == 1);
  }
  CHECK(height(parse_weight(g2, "0,1")) == 5);   // 3b1 + 2b2
  const Weight f4_delta = from_root_coords(RootVector{&f4, {2, 3, 4, 2}});
  CHECK(height(f4_delta) == 11);
}

TEST_CASE("dominance") {
  const RootDatum& f4 = build_root_datum('F', 4);
  CHECK_FALSE(is_dominant(parse_weight(f4, "1,1,-1,0")));
  CHECK(is_dominant(zero_weight(f4)));
  CHECK(is_dominant(parse_weight(f4, "0,0,0,2")));
}

TEST_CASE("usual coordinates") {
  const RootDatum& b5 = build_root_datum('B', 5);
  QVec spin = usual_coords(parse_weight(b5, "0,0,0,0,1"));
  CHECK(spin == QVec(5, Rat(1, 2)));

  const RootDatum& c5 = build_root_datum('C', 5);
  for (int slot = 1; slot <= 5; ++slot) {
    QVec coords(5, Rat(0));
    coords[slot - 1] = 1;
    QVec usual = usual_coords(make_weight(c5, coords));
    for (int i = 0; i < 5; ++i) CHECK(usual[i] == (i < slot ? 1 : 0));
  }

  for (const char* name : {"A4", "B4", "C4", "D4"}) {
    const RootDatum& d = root_datum_by_name(name);
    QVec zero = usual_coords(zero_weight(d));
    for (const Rat& c : zero) CHECK(c == 0);
  }

  CHECK_THROWS_AS(usual_coords(zero_weight(build_root_datum('F', 4))), input_error);

  std::mt19937_64 rng(13);
  for (const char* name : {"A1", "A4", "B2", "B5", "C3", "C5", "D4", "D6"}) {
    const RootDatum& d = root_datum_by_name(name);
    for (int s = 0; s < 300; ++s) {
      const Weight w = random_weight(d, rng);
      CHECK(from_usual(d, usual_coords(w)) == w);
    }
  }
}

TEST_CASE("weight parsing and printing") {
  const RootDatum& f4 = build_root_datum('F', 4);
  const Weight w = parse_weight(f4, "1/2, 0,-3, 2");
  CHECK(w.coords == QVec{Rat(1, 2), 0, -3, 2});
  CHECK(weight_str(w) == "[1/2,0,-3,2]");
  CHECK_THROWS_AS(parse_weight(f4, "1,2,3"), input_error);
  CHECK_THROWS_AS(parse_weight(f4, "1,2,x,4"), input_error);
  CHECK_THROWS_AS(parse_rational("1/0"), input_error);
  CHECK(parse_rational("-6/4") == Rat(-3, 2));
}
