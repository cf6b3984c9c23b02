#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "symspread/grp.hpp"
#include "symspread/linalg.hpp"
#include "symspread/symplectic.hpp"
#include "symspread/zsig.hpp"

using namespace symspread;

namespace {

MatQ random_matrix(const FqTables& fq, int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(0, static_cast<int>(fq.q()) - 1);
  MatQ m = MatQ::zeros(n);
  for (auto& e : m.e) e = static_cast<Fq>(dist(rng));
  return m;
}

VecQ random_vector(const FqTables& fq, int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(0, static_cast<int>(fq.q()) - 1);
  VecQ v(static_cast<size_t>(n));
  for (auto& e : v) e = static_cast<Fq>(dist(rng));
  return v;
}

}  // namespace

TEST_CASE("rref canonicalization") {
  Tower t = Tower::make(3, 1, 2);
  const auto& fq = t.fq();
  const int n = 4;

  VecQ e1{1, 0, 0, 0}, e2{0, 1, 0, 0};
  std::vector<VecQ> fwd{e1, e2}, rev{e2, e1};
  CHECK(rref_subspace(fq, fwd, n) == rref_subspace(fq, rev, n));

  std::mt19937 rng(7);
  VecQ v = random_vector(fq, n, rng);
  while (std::all_of(v.begin(), v.end(), [](Fq c) { return c == 0; })) {
    v = random_vector(fq, n, rng);
  }
  VecQ v2(v.size());
  for (size_t i = 0; i < v.size(); ++i) v2[i] = fq.mul(2, v[i]);
  std::vector<VecQ> dep{v, v2};
  CHECK(rref_subspace(fq, dep, n).dim() == 1);

  // fixed subspace, many spanning sets, identical canonical bits
  std::vector<VecQ> seed{random_vector(fq, n, rng), random_vector(fq, n, rng)};
  Subspace u = rref_subspace(fq, seed, n);
  auto all = subspace_vectors(fq, u);
  std::uniform_int_distribution<size_t> pick(0, all.size() - 1);
  int produced = 0;
  while (produced < 50) {
    std::vector<VecQ> gens;
    for (int k = 0; k < 4; ++k) gens.push_back(all[pick(rng)]);
    Subspace w = rref_subspace(fq, gens, n);
    if (w.dim() != u.dim()) continue;  // did not span, resample
    CHECK(w == u);
    CHECK(w.basis == u.basis);
    ++produced;
  }
}

TEST_CASE("idempotence and containment") {
  Tower t = Tower::make(3, 1, 2);
  const auto& fq = t.fq();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<VecQ> vs{random_vector(fq, 4, rng), random_vector(fq, 4, rng),
                         random_vector(fq, 4, rng)};
    Subspace u = rref_subspace(fq, vs, 4);
    std::vector<VecQ> rows;
    for (int i = 0; i < u.rows; ++i) {
      rows.emplace_back(u.basis.begin() + static_cast<long>(i) * 4,
                        u.basis.begin() + static_cast<long>(i + 1) * 4);
    }
    CHECK(rref_subspace(fq, rows, 4) == u);
    for (const auto& v : vs) CHECK(subspace_contains(fq, u, v));
  }
}

TEST_CASE("intersection matches the exhaustive membership oracle") {
  Tower t = Tower::make(3, 1, 2);
  const auto& fq = t.fq();
  const int n = 4;

  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<VecQ> va{random_vector(fq, n, rng), random_vector(fq, n, rng)};
    std::vector<VecQ> vb{random_vector(fq, n, rng), random_vector(fq, n, rng)};
    Subspace a = rref_subspace(fq, va, n);
    Subspace b = rref_subspace(fq, vb, n);

    CHECK(intersect(fq, a, a) == a);

    auto bvecs = subspace_vectors(fq, b);
    std::set<VecQ> bset(bvecs.begin(), bvecs.end());
    std::vector<VecQ> common;
    for (const auto& v : subspace_vectors(fq, a)) {
      if (bset.count(v)) common.push_back(v);
    }
    Subspace expected = rref_subspace(fq, common, n);
    Subspace got = intersect(fq, a, b);
    CHECK(got == expected);

    Subspace sum = subspace_sum(fq, a, b);
    CHECK(got.dim() == a.dim() + b.dim() - sum.dim());
  }

  Subspace x = rref_subspace(fq, std::vector<VecQ>{{1, 0, 0, 0}, {0, 1, 0, 0}}, n);
  Subspace y = rref_subspace(fq, std::vector<VecQ>{{0, 0, 1, 0}, {0, 0, 0, 1}}, n);
  CHECK(intersect(fq, x, y).dim() == 0);

  Tower t2 = Tower::make(3, 1, 1);
  CHECK_THROWS_AS(intersect(fq, x, whole_space(2)), std::invalid_argument);
  (void)t2;
}

TEST_CASE("canonical bases separate subspaces exactly") {
  Tower t = Tower::make(3, 1, 1);
  const auto& fq = t.fq();
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Subspace a = rref_subspace(
        fq, std::vector<VecQ>{random_vector(fq, 2, rng), random_vector(fq, 2, rng)}, 2);
    Subspace b = rref_subspace(
        fq, std::vector<VecQ>{random_vector(fq, 2, rng), random_vector(fq, 2, rng)}, 2);
    auto va = subspace_vectors(fq, a);
    auto vb = subspace_vectors(fq, b);
    bool same_sets = std::set<VecQ>(va.begin(), va.end()) == std::set<VecQ>(vb.begin(), vb.end());
    CHECK(same_sets == (a == b));
  }
}

TEST_CASE("minimal polynomial basics") {
  Tower t = Tower::make(5, 1, 1);
  const auto& fq = t.fq();
  MatQ id = MatQ::identity(2);

  PolyQ mp_id = minimal_polynomial(fq, id);
  CHECK(mp_id == PolyQ{{fq.neg(1), 1}});  // x - 1

  PolyQ mp_neg = minimal_polynomial(fq, mat_neg(fq, id));
  CHECK(mp_neg == PolyQ{{1, 1}});  // x + 1

  std::mt19937 rng(31);
  for (auto params : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}}) {
    Tower tw = Tower::make(params[0], params[1], params[2]);
    for (int i = 0; i < 100; ++i) {
      MatQ m = random_matrix(tw.fq(), tw.dim(), rng);
      PolyQ mp = minimal_polynomial(tw.fq(), m);
      CHECK(mp.c.back() == 1);
      CHECK(mp.degree() <= tw.dim());
      CHECK(poly_eval_matrix(tw.fq(), mp, m) == MatQ::zeros(tw.dim()));
    }
  }
}

TEST_CASE("an order-3 symplectic element over F_5 acts irreducibly") {
  Tower t = Tower::make(5, 1, 1);
  const auto& fq = t.fq();
  MatGroup sp = enumerate_sp(t);
  MatGroup r3 = sylow(fq, sp, 3);
  REQUIRE(r3.order() == 3);
  MatQ sigma = MatQ::identity(2);
  for (const auto& x : r3.elements) {
    if (!mat_is_identity(x)) {
      sigma = x;
      break;
    }
  }
  REQUIRE(element_order(fq, sigma) == 3);

  PolyQ mp = minimal_polynomial(fq, sigma);
  CHECK(mp.degree() == 2);
  CHECK(poly_is_irreducible(fq, mp));
  // no roots in F_5, checked directly
  for (u64 c = 0; c < 5; ++c) {
    Fq acc = 0;
    Fq xpow = 1;
    for (Fq coeff : mp.c) {
      acc = fq.add(acc, fq.mul(coeff, xpow));
      xpow = fq.mul(xpow, static_cast<Fq>(c));
    }
    CHECK(acc != 0);
  }

  CHECK(commutant_dimension(fq, sigma) == 2);
  CHECK(commutant_dimension(fq, sigma) == mp.degree());
}

TEST_CASE("commutant dimension") {
  Tower t = Tower::make(5, 1, 1);
  const auto& fq = t.fq();
  CHECK(commutant_dimension(fq, MatQ::identity(2)) == 4);

  MatQ diag = MatQ::zeros(2);
  diag(0, 0) = 1;
  diag(1, 1) = 2;
  CHECK(commutant_dimension(fq, diag) == 2);

  Tower t4 = Tower::make(3, 1, 2);
  CHECK(commutant_dimension(t4.fq(), MatQ::identity(4)) == 16);

  std::mt19937 rng(41);
  for (int i = 0; i < 50; ++i) {
    MatQ m = random_matrix(t4.fq(), 4, rng);
    PolyQ mp = minimal_polynomial(t4.fq(), m);
    int cd = commutant_dimension(t4.fq(), m);
    CHECK(cd >= mp.degree());
    if (mp.degree() == 4 && poly_is_irreducible(t4.fq(), mp)) CHECK(cd == 4);
  }
}

TEST_CASE("eigenspaces") {
  Tower t = Tower::make(5, 1, 1);
  const auto& fq = t.fq();
  CHECK(eigenspace(fq, MatQ::identity(2), 1) == whole_space(2));
  CHECK(eigenspace(fq, mat_neg(fq, MatQ::identity(2)), 1).dim() == 0);

  // sigma^2 = -I in Sp(2,5): both eigenspaces are lines
  MatGroup sp = enumerate_sp(t);
  MatQ minus_id = mat_neg(fq, MatQ::identity(2));
  Fq i4 = i4_scalar(fq);
  REQUIRE(i4 == 2);
  int found = 0;
  for (const auto& x : sp.elements) {
    if (mat_mul(fq, x, x) == minus_id) {
      CHECK(eigenspace(fq, x, i4).dim() == 1);
      CHECK(eigenspace(fq, x, fq.neg(i4)).dim() == 1);
      if (++found == 10) break;
    }
  }
  CHECK(found == 10);

  // exhaustive eigenvector oracle on a random matrix over F_3
  Tower t3 = Tower::make(3, 1, 2);
  std::mt19937 rng(17);
  MatQ m = random_matrix(t3.fq(), 4, rng);
  for (u64 c = 0; c < 3; ++c) {
    Subspace es = eigenspace(t3.fq(), m, static_cast<Fq>(c));
    u64 count = 0;
    for (const auto& v : subspace_vectors(t3.fq(), whole_space(4))) {
      VecQ img = vec_mat(t3.fq(), v, m);
      VecQ scaled(v.size());
      for (size_t i = 0; i < v.size(); ++i) scaled[i] = t3.fq().mul(static_cast<Fq>(c), v[i]);
      if (img == scaled) {
        CHECK(subspace_contains(t3.fq(), es, v));
        ++count;
      }
    }
    CHECK(count == checked_pow(3, static_cast<u64>(es.dim())));
  }
}

TEST_CASE("square root of -1 in F_q") {
  CHECK(i4_scalar(Tower::make(5, 1, 1).fq()) == 2);
  CHECK(i4_scalar(Tower::make(13, 1, 1).fq()) == 5);
  CHECK_THROWS_AS(i4_scalar(Tower::make(3, 1, 1).fq()), std::domain_error);
}

TEST_CASE("matrix inverse and order") {
  Tower t = Tower::make(5, 1, 1);
  const auto& fq = t.fq();
  std::mt19937 rng(2);
  int invertible = 0;
  for (int i = 0; i < 60; ++i) {
    MatQ m = random_matrix(fq, 2, rng);
    auto inv = mat_inverse(fq, m);
    if (!inv) continue;
    ++invertible;
    CHECK(mat_mul(fq, m, *inv) == MatQ::identity(2));
    CHECK(mat_mul(fq, *inv, m) == MatQ::identity(2));
    u64 ord = mat_order(fq, m);
    CHECK(mat_is_identity(mat_pow(fq, m, ord)));
  }
  CHECK(invertible > 10);
  CHECK_THROWS_AS(mat_order(fq, MatQ::zeros(2)), std::domain_error);
}

TEST_CASE("polynomial division, gcd and lcm") {
  Tower t = Tower::make(5, 1, 1);
  const auto& fq = t.fq();
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dist(0, 4);
  for (int i = 0; i < 50; ++i) {
    PolyQ x, y;
    x.c.resize(5);
    y.c.resize(3);
    for (auto& c : x.c) c = static_cast<Fq>(dist(rng));
    for (auto& c : y.c) c = static_cast<Fq>(dist(rng));
    x = poly_trim(std::move(x));
    y = poly_trim(std::move(y));
    if (y.c.empty()) continue;
    auto [q, r] = poly_divmod(fq, x, y);
    CHECK(poly_add(fq, poly_mul(fq, q, y), r) == x);
    CHECK((r.c.empty() || r.degree() < y.degree()));

    if (!x.c.empty()) {
      PolyQ g = poly_gcd(fq, x, y);
      CHECK(poly_divmod(fq, x, g).second.c.empty());
      CHECK(poly_divmod(fq, y, g).second.c.empty());
      PolyQ l = poly_lcm(fq, x, y);
      CHECK(poly_divmod(fq, l, x).second.c.empty());
      CHECK(poly_divmod(fq, l, y).second.c.empty());
    }
  }
}
