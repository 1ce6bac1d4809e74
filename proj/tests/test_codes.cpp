#include <doctest.h>

#include <functional>
#include <set>

#include "helpers.hpp"
#include "stbc/clifford.hpp"
#include "stbc/codes.hpp"

using namespace stbc;

namespace {

const cplx j = kJ;

// Real coordinates in code order: x[2i] = x_{i+1,I}, x[2i+1] = x_{i+1,Q}.
struct Coords {
  std::vector<double> v;
  double I(int i) const { return v[static_cast<std::size_t>(2 * (i - 1))]; }
  double Q(int i) const { return v[static_cast<std::size_t>(2 * (i - 1) + 1)]; }
};

using Display = std::function<CMatrix(const Coords&)>;

// Compares every weight with the coefficient of its coordinate in a hand-typed
// display. Cells listed in skip are excluded; returns mismatching cells.
std::set<std::pair<int, int>> mismatches(const LinearDispersionCode& code, const Display& shown,
                                         const std::set<std::pair<int, int>>& skip = {}) {
  std::set<std::pair<int, int>> bad;
  for (int r = 0; r < 2 * code.K(); ++r) {
    Coords e{std::vector<double>(static_cast<std::size_t>(2 * code.K()), 0.0)};
    e.v[static_cast<std::size_t>(r)] = 1.0;
    const CMatrix want = shown(e);
    const CMatrix& got = code.weight(r);
    REQUIRE(want.rows() == got.rows());
    for (int a = 0; a < got.rows(); ++a) {
      for (int b = 0; b < got.cols(); ++b) {
        if (skip.count({a, b})) continue;
        if (std::abs(want(a, b) - got(a, b)) > 1e-12) bad.insert({a, b});
      }
    }
  }
  return bad;
}

CMatrix m4(std::initializer_list<cplx> e) {
  CMatrix m(4, 4);
  auto it = e.begin();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) m(a, b) = *it++;
  return m;
}

LinearDispersionCode conjugated(const LinearDispersionCode& c, const CMatrix& u, const CMatrix& v) {
  std::vector<CMatrix> wi, wq;
  for (const CMatrix& m : c.weights_I()) wi.push_back(u * m * v);
  for (const CMatrix& m : c.weights_Q()) wq.push_back(u * m * v);
  return LinearDispersionCode(wi, wq);
}

}  // namespace

TEST_SUITE("codes") {

TEST_CASE("2-CUW matches the reference layout") {
  const Display shown = [](const Coords& x) {
    return testutil::mat2(x.I(1) - j * x.Q(2), x.I(2) + j * x.Q(1), -x.I(2) - j * x.Q(1), x.I(1) - j * x.Q(2));
  };
  CHECK(mismatches(cuw_ssd(1), shown).empty());
}

TEST_CASE("4-CUW matches the reference layout except four known cells") {
  const Display shown = [](const Coords& x) {
    return m4({x.I(1) - j * x.Q(4), x.I(2) + j * x.Q(3), x.I(4) + j * x.Q(1), -x.Q(3) + j * x.Q(2),
               -x.I(2) - j * x.I(3), x.I(1) - j * x.Q(4), -x.Q(3) - j * x.Q(2), -x.I(4) + j * x.Q(1),
               -x.I(4) - j * x.Q(1), x.Q(3) - j * x.Q(2), x.I(1) - j * x.Q(4), x.I(2) + j * x.I(3),
               x.I(3) + j * x.Q(2), x.I(4) - j * x.Q(1), -x.I(2) + j * x.I(3), x.I(1) + j * x.Q(4)});
  };
  const std::set<std::pair<int, int>> typos{{0, 1}, {1, 0}, {1, 1}, {3, 0}};
  CHECK(mismatches(cuw_ssd(2), shown, typos).empty());
  // The skipped cells really differ, so the skip list is not hiding anything else.
  CHECK(mismatches(cuw_ssd(2), shown) == typos);
}

TEST_CASE("1-MCUW matches the reference layout except two known cells") {
  const Display shown = [](const Coords& x) {
    return testutil::mat2(-x.Q(2) - j * x.I(1), x.Q(1) + j * x.I(2), x.Q(1) - j * x.I(2), x.Q(2) - j * x.I(1));
  };
  const std::set<std::pair<int, int>> typos{{0, 0}, {1, 0}};
  CHECK(mismatches(mcuw_ssd(1), shown, typos).empty());
  CHECK(mismatches(mcuw_ssd(1), shown) == typos);
}

TEST_CASE("2-MCUW matches the reference layout") {
  const Display shown = [](const Coords& x) {
    return m4({j * x.I(1) - x.Q(2), x.Q(1) + j * x.I(2), x.I(3) + j * x.I(4), x.Q(4) - j * x.Q(3),
               x.Q(1) + j * x.I(2), x.Q(2) - j * x.I(1), x.Q(4) - j * x.Q(3), -x.I(3) - j * x.I(4),
               -x.I(3) + j * x.I(4), x.Q(4) + j * x.Q(3), -x.Q(2) - j * x.I(1), -x.Q(1) + j * x.I(2),
               x.Q(4) + j * x.Q(3), x.I(3) - j * x.I(4), -x.Q(1) + j * x.I(2), x.Q(2) + j * x.I(1)});
  };
  CHECK(mismatches(mcuw_ssd(2), shown).empty());
}

TEST_CASE("4x4 CIOD matches the reference layout") {
  const Display shown = [](const Coords& x) {
    return m4({x.I(1) + j * x.Q(2), x.I(3) + j * x.Q(4), 0, 0,
               -x.I(3) + j * x.Q(4), x.I(1) - j * x.Q(2), 0, 0,
               0, 0, x.I(2) + j * x.Q(1), x.I(4) + j * x.Q(3),
               0, 0, -x.I(4) + j * x.Q(3), x.I(2) - j * x.Q(1)});
  };
  CHECK(mismatches(ciod(2), shown).empty());
}

TEST_CASE("8x8 CIOD matches the reference layout in both variable sets") {
  // Upper block in u, lower block in w; entries follow the reference 8x8 layout.
  auto layout = [](const std::array<cplx, 6>& u, const std::array<cplx, 6>& w) {
    auto blk = [](const std::array<cplx, 6>& s) {
      // s = {c1, c1', c3, c3', c5, c5'} giving c1 + j c1' etc.
      const cplx a = s[0] + j * s[1], ac = s[0] - j * s[1];
      const cplx b = s[2] + j * s[3], bm = -s[2] + j * s[3];
      const cplx c = s[4] + j * s[5], cm = -s[4] + j * s[5];
      CMatrix m = CMatrix::Zero(4, 4);
      m << a, b, c, 0,
           bm, ac, 0, -c,
           cm, 0, ac, b,
           0, -cm, bm, a;
      return m;
    };
    CMatrix m = CMatrix::Zero(8, 8);
    m.block(0, 0, 4, 4) = blk(u);
    m.block(4, 4, 4, 4) = blk(w);
    return m;
  };
  const Display p_form = [&](const Coords& p) {
    return layout({p.I(1), p.I(2), p.I(3), p.I(4), p.I(5), p.I(6)},
                  {p.Q(1), p.Q(2), p.Q(3), p.Q(4), p.Q(5), p.Q(6)});
  };
  const Display x_form = [&](const Coords& x) {
    return layout({x.I(1), x.Q(2), x.I(3), x.Q(4), x.I(5), x.Q(6)},
                  {x.I(2), x.Q(1), x.I(4), x.Q(3), x.I(6), x.Q(5)});
  };
  CHECK(mismatches(ciod(3, true), p_form).empty());
  CHECK(mismatches(ciod(3), x_form).empty());
}

TEST_CASE("CIOD weights are block diagonal with complementary supports") {
  for (int a = 2; a <= 4; ++a) {
    const LinearDispersionCode c = ciod(a);
    const int h = c.n() / 2;
    for (int i = 0; i < c.K(); ++i) {
      for (const CMatrix* m : {&c.I(i), &c.Q(i)}) {
        CHECK(m->block(0, h, h, h).isZero(0.0));
        CHECK(m->block(h, 0, h, h).isZero(0.0));
        // each weight lives in exactly one diagonal block
        CHECK((m->block(0, 0, h, h).isZero(0.0) != m->block(h, h, h, h).isZero(0.0)));
      }
      // I and Q coordinates of one symbol land in different blocks
      CHECK(c.I(i).block(0, 0, h, h).isZero(0.0) != c.Q(i).block(0, 0, h, h).isZero(0.0));
    }
  }
}

TEST_CASE("classification of the named codes") {
  CHECK(classify(alamouti()).class_name == CodeClass::COD);
  CHECK(classify(cuw_ssd(1)).class_name == CodeClass::UW_SSD);
  CHECK(classify(cuw_ssd(3)).class_name == CodeClass::UW_SSD);
  CHECK(classify(mcuw_ssd(2)).class_name == CodeClass::UW_SSD);
  CHECK(classify(tnu_transform(cuw_ssd(1), 1, 1)).class_name == CodeClass::NU_COD);
  CHECK(classify(tnu_transform(cuw_ssd(1), 1, 2)).class_name == CodeClass::PSSD);
  CHECK(classify(ciod(2)).class_name == CodeClass::NU_COD);
  CHECK(classify(ciod(3)).class_name == CodeClass::NU_COD);
  CHECK(classify(ygt_extend(alamouti()), 1e-12).satisfies_eq5);

  // A generic code fails the cross conditions and reports where.
  std::mt19937_64 rng(1);
  const LinearDispersionCode r({testutil::random_matrix(rng, 2), testutil::random_matrix(rng, 2)},
                               {testutil::random_matrix(rng, 2), testutil::random_matrix(rng, 2)});
  const CodeClassification cr = classify(r, 1e-9);
  CHECK(cr.class_name == CodeClass::NOT_SSD);
  CHECK_FALSE(cr.violations.empty());
  CHECK(ssd_residual(r) > 1e-3);
}

TEST_CASE("class_from_conditions table") {
  CHECK(class_from_conditions(true, true, true) == CodeClass::COD);
  CHECK(class_from_conditions(true, true, false) == CodeClass::UW_SSD);
  CHECK(class_from_conditions(false, true, false) == CodeClass::PSSD);
  CHECK(class_from_conditions(false, true, true) == CodeClass::NU_COD);
  for (bool e4 : {false, true})
    for (bool e6 : {false, true}) CHECK(class_from_conditions(e4, false, e6) == CodeClass::NOT_SSD);
  for (CodeClass c : {CodeClass::COD, CodeClass::UW_SSD, CodeClass::PSSD, CodeClass::NU_COD, CodeClass::NOT_SSD})
    CHECK(code_class_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(code_class_from_string("QOD"), precondition_error);
}

TEST_CASE("cuw_ssd shape, rate and sufficient relations") {
  for (int a = 1; a <= 4; ++a) {
    const LinearDispersionCode c = cuw_ssd(a);
    CHECK(c.K() == 2 * a);
    CHECK(c.n() == (1 << a));
    CHECK(static_cast<double>(c.K()) / c.n() == doctest::Approx(a / std::pow(2.0, a - 1)));
    CHECK(satisfies_cuw_conditions(c));
    CHECK(ssd_residual(c) == 0.0);
    const CodeClassification k = classify(c);
    CHECK(k.satisfies_eq4);
    CHECK(k.satisfies_eq5);
    CHECK_FALSE(k.satisfies_eq6);
  }
}

TEST_CASE("normalized MCUW codes satisfy the CUW relations") {
  for (int a = 1; a <= 3; ++a) {
    const LinearDispersionCode m = mcuw_ssd(a);
    CHECK(mcuw_condition_failures(m, mcuw_intermediate(a)).empty());
    CHECK_FALSE(satisfies_cuw_conditions(m));
    CHECK(satisfies_cuw_conditions(normalize(m)));
  }
}

TEST_CASE("relations listed for a broken code") {
  LinearDispersionCode c = cuw_ssd(2);
  std::vector<CMatrix> wq = c.weights_Q();
  wq[2] = -wq[2];
  const LinearDispersionCode broken(c.weights_I(), wq);
  CHECK_FALSE(cuw_condition_failures(broken).empty());
}

TEST_CASE("classification survives unitary conjugation and normalization") {
  std::mt19937_64 rng(17);
  const std::vector<LinearDispersionCode> base{cuw_ssd(1), cuw_ssd(2), mcuw_ssd(2), alamouti()};
  for (int t = 0; t < 50; ++t) {
    const LinearDispersionCode& c = base[static_cast<std::size_t>(t) % base.size()];
    const CMatrix u = testutil::random_unitary(rng, c.n()), v = testutil::random_unitary(rng, c.n());
    const LinearDispersionCode d = conjugated(c, u, v);
    const CodeClass want = classify(c).class_name;
    CHECK(classify(d, 1e-9).class_name == want);
    const LinearDispersionCode nd = normalize(d);
    CHECK(classify(nd, 1e-9).class_name == want);
    CHECK(approx_equal(nd.I(0), identity(static_cast<std::size_t>(c.n())), 1e-9));
  }
}

TEST_CASE("tnu transform: NU-COD iff alpha = +-beta") {
  const std::vector<double> grid{2, 1, 0.5, -0.5, -1, -2};
  for (int a = 1; a <= 2; ++a) {
    const LinearDispersionCode c = cuw_ssd(a);
    for (double al : grid) {
      for (double be : grid) {
        const LinearDispersionCode t = tnu_transform(c, al, be);
        const CodeClass want = std::abs(al) == std::abs(be) ? CodeClass::NU_COD : CodeClass::PSSD;
        CHECK(classify(t, 1e-12).class_name == want);
        // Same-index energy: T_I^H T_I + T_Q^H T_Q = 2(alpha^2 + beta^2) I.
        for (int i = 0; i < t.K(); ++i) {
          const CMatrix e = t.I(i).adjoint() * t.I(i) + t.Q(i).adjoint() * t.Q(i);
          CHECK(approx_equal(e, 2 * (al * al + be * be) * identity(static_cast<std::size_t>(t.n())), 1e-12));
        }
      }
    }
  }
  CHECK_THROWS_AS(tnu_transform(cuw_ssd(1), 0, 1), precondition_error);
  CHECK_THROWS_AS(tnu_transform(mcuw_ssd(1), 1, 2), precondition_error);
}

TEST_CASE("ygt extension of the Alamouti code") {
  const LinearDispersionCode y = ygt_extend(alamouti());
  CHECK(y.n() == 4);
  CHECK(y.K() == 4);
  const CMatrix b1 = y.Q(0);
  CMatrix want = CMatrix::Zero(4, 4);
  want.block(0, 2, 2, 2) = -identity(2);
  want.block(2, 0, 2, 2) = -identity(2);
  CHECK(approx_equal(b1, want));
  for (int u = 0; u < 2; ++u) {
    CHECK(approx_equal(y.I(u), kron(pauli::identity2(), alamouti().I(u))));
    CHECK(approx_equal(y.I(u + 2), kron(pauli::identity2(), alamouti().Q(u))));
  }
  for (int u = 0; u < 4; ++u) CHECK(approx_equal(y.Q(u), b1 * y.I(u)));
  CHECK(classify(y).class_name == CodeClass::UW_SSD);
  CHECK_THROWS_AS(ygt_extend(cuw_ssd(1)), precondition_error);
}

TEST_CASE("instantiate") {
  const std::vector<cplx> s{cplx(1, 2), cplx(-3, 0.5)};
  const CMatrix a = instantiate(alamouti(), s);
  CHECK(approx_equal(a, testutil::mat2(s[0], s[1], -std::conj(s[1]), std::conj(s[0])), 1e-15));
  CHECK_THROWS_AS(instantiate(alamouti(), {cplx(1, 0)}), precondition_error);
}

TEST_CASE("constructor and argument checks") {
  CHECK_THROWS_AS(LinearDispersionCode({}, {}), precondition_error);
  CHECK_THROWS_AS(LinearDispersionCode({identity(2)}, {}), precondition_error);
  CHECK_THROWS_AS(LinearDispersionCode({identity(2)}, {identity(3)}), precondition_error);
  CHECK_THROWS_AS(LinearDispersionCode({identity(2)}, {-2.0 * identity(2)}), precondition_error);
  CHECK_NOTHROW(LinearDispersionCode({identity(2)}, {kJ * identity(2)}));
  CHECK_THROWS_AS(cuw_ssd(0), precondition_error);
  CHECK_THROWS_AS(mcuw_ssd(0), precondition_error);
  CHECK_THROWS_AS(ciod(1), precondition_error);
  CHECK_THROWS_AS(reducible_uw_ssd(2, pauli::sigma1()), precondition_error);
  CHECK_THROWS_AS(normalize(LinearDispersionCode({2.0 * identity(2)}, {kJ * identity(2)})), precondition_error);
  CHECK(real_independent(identity(2), kJ * identity(2)));
  CHECK_FALSE(real_independent(identity(2), 3.0 * identity(2)));
}

}  // TEST_SUITE
