#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "symspread/spread.hpp"
#include "symspread/zsig.hpp"

using namespace symspread;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("spread over F_9 is the four frozen lines") {
  Tower t = Tower::make(3, 1, 1);
  Spread s = build_spread(t);
  REQUIRE(s.members.size() == 4);
  CHECK(s.members[0].basis == std::vector<Fq>{1, 0});
  CHECK(s.members[1].basis == std::vector<Fq>{0, 1});
  CHECK(s.members[2].basis == std::vector<Fq>{1, 2});
  CHECK(s.members[3].basis == std::vector<Fq>{1, 1});
}

TEST_CASE("member counts across the parameter matrix") {
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}, {7, 1, 1}, {11, 1, 1},
                         {13, 1, 1}, {3, 1, 2}, {5, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    Spread s = build_spread(t);
    CHECK(s.members.size() == t.qm() + 1);
    GramForm form = gram_from_trace_form(t);
    SpreadValidation v = validate_spread(t.fq(), s, form);
    CHECK(v.ok);
  }
}

TEST_CASE("union of members covers the space, by exhaustive enumeration") {
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}, {3, 1, 2}, {5, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    Spread s = build_spread(t);
    std::set<VecQ> covered;
    for (const auto& u : s.members) {
      auto vecs = subspace_vectors(t.fq(), u);
      for (auto& v : vecs) covered.insert(std::move(v));
    }
    CHECK(covered.size() == t.size());
  }
}

TEST_CASE("validation reports engineered failures with witnesses") {
  Tower t = Tower::make(5, 1, 2);
  const auto& fq = t.fq();
  GramForm form = gram_from_trace_form(t);
  Spread good = build_spread(t);

  // a non-isotropic plane: e_0 together with some e_j pairing nontrivially
  int j = 1;
  while (form.gram(0, j) == 0) ++j;
  VecQ e0(4, 0), ej(4, 0);
  e0[0] = 1;
  ej[static_cast<size_t>(j)] = 1;
  Subspace bad_plane = rref_subspace(fq, std::vector<VecQ>{e0, ej}, 4);
  REQUIRE(!is_totally_isotropic(fq, bad_plane, form));

  Spread tampered = good;
  tampered.members[3] = bad_plane;
  SpreadValidation v1 = validate_spread(fq, tampered, form);
  CHECK(!v1.ok);
  CHECK(v1.failed_invariant == "total isotropy");
  CHECK(v1.witness.find("member 3") != std::string::npos);

  Spread duplicated = good;
  duplicated.members[2] = duplicated.members[5];
  SpreadValidation v2 = validate_spread(fq, duplicated, form);
  CHECK(!v2.ok);
  CHECK(v2.failed_invariant == "pairwise trivial intersection");

  Spread short_spread = good;
  short_spread.members.pop_back();
  SpreadValidation v3 = validate_spread(fq, short_spread, form);
  CHECK(!v3.ok);
  CHECK(v3.failed_invariant == "member count");
}

TEST_CASE("the scalar action of rho translates member classes by q^m - 1") {
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}, {3, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    Spread s = build_spread(t);
    SpreadAction act = map_spread(t.fq(), build_rho(t), s);
    REQUIRE(act.stabilized);
    const u64 classes = t.qm() + 1;
    for (u64 i = 0; i < classes; ++i) {
      CHECK(act.perm[i] == (i + t.qm() - 1) % classes);
    }

    // translation by q^m - 1 mod q^m + 1 has gcd 2 with the modulus, so the
    // orbits are the two parity classes
    std::set<u32> orbit;
    u32 cur = 0;
    do {
      orbit.insert(cur);
      cur = act.perm[cur];
    } while (cur != 0);
    CHECK(orbit.size() == classes / 2);
  }
}

TEST_CASE("identity induces the identity permutation") {
  Tower t = Tower::make(5, 1, 1);
  Spread s = build_spread(t);
  SpreadAction act = map_spread(t.fq(), MatQ::identity(2), s);
  REQUIRE(act.stabilized);
  for (u32 i = 0; i < act.perm.size(); ++i) CHECK(act.perm[i] == i);
  CHECK(fixed_members(t.fq(), MatQ::identity(2), s).size() == s.members.size());
}

TEST_CASE("pi fixes exactly two members over F_25") {
  Tower t = Tower::make(5, 1, 1);
  Spread s = build_spread(t);
  auto fixed = fixed_members(t.fq(), build_pi(t), s);
  CHECK(fixed == std::vector<u32>{1, 4});
}

TEST_CASE("maps off the spread are detected with a witness") {
  Tower t = Tower::make(3, 1, 2);
  const auto& fq = t.fq();
  Spread s = build_spread(t);

  MatQ mix = MatQ::identity(4);
  mix(3, 3) = 2;  // invertible, scales one coordinate
  REQUIRE(mat_inverse(fq, mix).has_value());
  SpreadAction act = map_spread(fq, mix, s);
  CHECK(!act.stabilized);
  REQUIRE(act.witness_member >= 0);
  // the witness member really does land off the spread
  Subspace img = apply_to_subspace(fq, s.members[static_cast<size_t>(act.witness_member)], mix);
  for (const auto& u : s.members) CHECK(img != u);

  CHECK_THROWS_AS(fixed_members(fq, mix, s), std::invalid_argument);
}

TEST_CASE("file format round-trips and is bit-stable") {
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {3, 1, 2}, {5, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    Spread s = build_spread(t);
    std::string text = spread_to_string(t, s);
    std::istringstream is(text);
    Spread back = read_spread(t, is);
    CHECK(back.members == s.members);
    CHECK(spread_to_string(t, back) == text);
  }
}

TEST_CASE("golden spread files") {
  const std::string dir = SYMSPREAD_GOLDEN_DIR;
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    Spread s = build_spread(t);
    std::string path =
        dir + "/spread_" + std::to_string(p) + "_" + std::to_string(a) + "_" +
        std::to_string(m) + ".txt";
    CHECK(spread_to_string(t, s) == read_file(path));
  }
}

TEST_CASE("malformed files are rejected") {
  Tower t = Tower::make(3, 1, 1);
  Spread s = build_spread(t);

  std::istringstream wrong_header("5 1 1 5\n0 1 0\n");
  CHECK_THROWS_AS(read_spread(t, wrong_header), std::invalid_argument);

  std::istringstream truncated("3 1 1 3\n0 1 0\n1 0 1\n");
  CHECK_THROWS_AS(read_spread(t, truncated), std::invalid_argument);

  std::istringstream bad_digit("3 1 1 3\n0 1 7\n1 0 1\n2 1 2\n3 1 1\n");
  CHECK_THROWS_AS(read_spread(t, bad_digit), std::invalid_argument);
}
