#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "symspread/grp.hpp"
#include "symspread/symplectic.hpp"

using namespace symspread;

namespace {

MatQ random_matrix(const FqTables& fq, int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> dist(0, static_cast<int>(fq.q()) - 1);
  MatQ m = MatQ::zeros(n);
  for (auto& e : m.e) e = static_cast<Fq>(dist(rng));
  return m;
}

// f evaluated through the tower, with no Gram matrix in the path.
Fq form_oracle(const Tower& t, std::span<const Fq> u, std::span<const Fq> v) {
  FFElem x = t.from_coords(u);
  FFElem y = t.from_coords(v);
  FFElem val = t.trace_to_base(t.mul(t.epsilon(), t.mul(x, t.frobenius(y, t.m()))));
  return t.scalar_from_elem(val);
}

}  // namespace

TEST_CASE("Gram matrix of the trace form") {
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}, {5, 1, 2}, {3, 2, 1}}) {
    CAPTURE(p);
    CAPTURE(a);
    CAPTURE(m);
    Tower t = Tower::make(p, a, m);
    const auto& fq = t.fq();
    GramForm form = gram_from_trace_form(t);
    const MatQ& g = form.gram;
    for (int i = 0; i < g.n; ++i) {
      CHECK(g(i, i) == 0);
      for (int j = 0; j < g.n; ++j) CHECK(g(i, j) == fq.neg(g(j, i)));
    }
    CHECK(mat_inverse(fq, g).has_value());

    // every entry agrees with direct evaluation through the field
    for (int i = 0; i < g.n; ++i) {
      for (int j = 0; j < g.n; ++j) {
        VecQ ei(static_cast<size_t>(g.n), 0), ej(static_cast<size_t>(g.n), 0);
        ei[static_cast<size_t>(i)] = 1;
        ej[static_cast<size_t>(j)] = 1;
        CHECK(g(i, j) == form_oracle(t, ei, ej));
      }
    }
  }
}

TEST_CASE("2x2 Gram matrix has the antidiagonal shape") {
  Tower t = Tower::make(3, 1, 1);
  GramForm form = gram_from_trace_form(t);
  CHECK(form.gram(0, 0) == 0);
  CHECK(form.gram(1, 1) == 0);
  CHECK(form.gram(0, 1) != 0);
  CHECK(form.gram(1, 0) == t.fq().neg(form.gram(0, 1)));
}

TEST_CASE("isometry predicate") {
  Tower t = Tower::make(5, 1, 1);
  const auto& fq = t.fq();
  GramForm form = gram_from_trace_form(t);

  CHECK(is_isometry(fq, MatQ::identity(2), form));
  CHECK(is_isometry(fq, mat_neg(fq, MatQ::identity(2)), form));
  CHECK(!is_isometry(fq, MatQ::scalar(2, 2), form));  // scales f by 4
}

TEST_CASE("adjoint") {
  Tower t = Tower::make(3, 1, 1);
  const auto& fq = t.fq();
  GramForm form = gram_from_trace_form(t);

  CHECK(adjoint(fq, MatQ::identity(2), form) == MatQ::identity(2));

  // the defining identity f(M* u, v) = f(u, M v), exhaustively
  std::mt19937 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    MatQ m = random_matrix(fq, 2, rng);
    MatQ ma = adjoint(fq, m, form);
    for (u32 ue = 0; ue < 9; ++ue) {
      VecQ u{static_cast<Fq>(ue % 3), static_cast<Fq>(ue / 3)};
      for (u32 ve = 0; ve < 9; ++ve) {
        VecQ v{static_cast<Fq>(ve % 3), static_cast<Fq>(ve / 3)};
        Fq lhs = form_eval(fq, form, vec_mat(fq, u, ma), v);
        Fq rhs = form_eval(fq, form, u, vec_mat(fq, v, m));
        CHECK(lhs == rhs);
      }
    }
    CHECK(adjoint(fq, ma, form) == m);  // involution
  }

  // on isometries the adjoint is the inverse
  MatQ pi = build_pi(t);
  MatQ rho = build_rho(t);
  for (const MatQ& sigma : {pi, rho, mat_mul(fq, pi, rho)}) {
    REQUIRE(is_isometry(fq, sigma, form));
    CHECK(adjoint(fq, sigma, form) == *mat_inverse(fq, sigma));
  }
}

TEST_CASE("total isotropy") {
  Tower t = Tower::make(5, 1, 2);
  const auto& fq = t.fq();
  GramForm form = gram_from_trace_form(t);

  CHECK(is_totally_isotropic(fq, zero_subspace(4), form));
  CHECK(!is_totally_isotropic(fq, whole_space(4), form));

  // one-dimensional subspaces are always totally isotropic
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> dist(0, 4);
  for (int trial = 0; trial < 20; ++trial) {
    VecQ v(4);
    for (auto& c : v) c = static_cast<Fq>(dist(rng));
    Subspace line = rref_subspace(fq, std::vector<VecQ>{v}, 4);
    CHECK(is_totally_isotropic(fq, line, form));
  }
}

TEST_CASE("symplectic group enumeration certifies the order formula") {
  CHECK(sp_order(3, 1) == 24);
  CHECK(sp_order(5, 1) == 120);
  CHECK(sp_order(7, 1) == 336);
  CHECK(sp_order(3, 2) == 51840);
  CHECK(sp_order(9, 1) == 720);

  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}}) {
    Tower t = Tower::make(p, a, m);
    const auto& fq = t.fq();
    GramForm form = gram_from_trace_form(t);
    MatGroup sp = enumerate_sp(t);
    CHECK(sp.order() == sp_order(t.q(), t.m()));
    for (const auto& x : sp.elements) CHECK(is_isometry(fq, x, form));
    for (const auto& g : sp.generators) CHECK(is_isometry(fq, g, form));
  }

  Tower big = Tower::make(5, 1, 2);
  CHECK_THROWS_AS(enumerate_sp(big), CapExceeded);
  try {
    enumerate_sp(big);
  } catch (const CapExceeded& e) {
    CHECK(e.required() == 9360000);
  }
}

TEST_CASE("the two-dimensional model over F_{q^m} induces the same isometry group") {
  // With m = 1 the reduction is trivial: the model form u1 v2 - u2 v1 on
  // F_q^2 has Gram J, and our trace-form Gram is a scalar multiple of J, so
  // the two isometry groups must coincide elementwise.
  for (auto [p, a, m] : {std::array<int, 3>{3, 1, 1}, {5, 1, 1}}) {
    CAPTURE(p);
    Tower t = Tower::make(p, a, m);
    const auto& fq = t.fq();

    MatQ j = MatQ::zeros(2);
    j(0, 1) = 1;
    j(1, 0) = fq.neg(1);
    GramForm model{j};

    std::vector<MatQ> gens;
    for (int i = 0; i < 2; ++i) {
      VecQ ei(2, 0);
      ei[static_cast<size_t>(i)] = 1;
      for (u64 c = 1; c < fq.q(); ++c) {
        gens.push_back(transvection(fq, model, ei, static_cast<Fq>(c)));
      }
    }
    MatGroup iso_model = closure(fq, gens, kDefaultGroupOrderCap);
    MatGroup iso_trace = enumerate_sp(t);
    CHECK(iso_model.elements == iso_trace.elements);
  }
}
