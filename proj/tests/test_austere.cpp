#include <gtest/gtest.h>

#include <cmath>

#include "austere4/austere/models.hpp"
#include "austere4/austere/subspace.hpp"
#include "austere4/families/families.hpp"
#include "austere4/geometry/frame.hpp"
#include "austere4/numerics/errors.hpp"
#include "austere4/numerics/random.hpp"
#include "support.hpp"

using namespace austere4;
using namespace austere4::austere;
using numerics::Rng;
using testing_support::diag;
using testing_support::vec;

namespace {

// Spectrum {a, -a, b, -b} in a random orthonormal basis.
SymMatrix symmetric_spectrum_matrix(Rng& rng) {
  const double a = numerics::gaussian(rng);
  const double b = numerics::gaussian(rng);
  const Eigen::MatrixXd r = numerics::random_rotation(4, rng);
  return diag({a, -a, b, -b}).conjugated(r);
}

SymSpan span_of(const geometry::SecondFundamentalForm& sff) {
  return SymSpan(sff.domain_dim(), sff.components);
}

}  // namespace

TEST(AustereMatrix, Examples) {
  EXPECT_TRUE(is_austere_matrix(diag({1, -1, 2, -2})));
  EXPECT_FALSE(is_austere_matrix(diag({1, 1, 1, -3})));
  EXPECT_TRUE(is_austere_matrix(qb_matrix(0, 1, 0, 0, 0)));
  EXPECT_TRUE(is_austere_matrix(SymMatrix::zero(4)));
  EXPECT_TRUE(eigen_symmetry_oracle(diag({0, 0, 0, 0})));
  EXPECT_FALSE(eigen_symmetry_oracle(diag({1, 2, -1, -3})));
  EXPECT_FALSE(is_austere_matrix(diag({1, 2, -1, -3})));
}

TEST(AustereMatrix, AgreesWithEigenOracle) {
  Rng rng(1);
  for (int k = 0; k < 1000; ++k) {
    const SymMatrix s = numerics::random_symmetric(4, rng);
    EXPECT_EQ(is_austere_matrix(s), eigen_symmetry_oracle(s));
    const SymMatrix t = symmetric_spectrum_matrix(rng);
    EXPECT_TRUE(is_austere_matrix(t));
    EXPECT_TRUE(eigen_symmetry_oracle(t));
  }
}

TEST(AustereMatrix, OtherSizes) {
  EXPECT_TRUE(is_austere_matrix(diag({3, -3})));
  EXPECT_TRUE(is_austere_matrix(diag({1, 0, -1})));
  EXPECT_FALSE(is_austere_matrix(diag({1, 1, -2})));
  EXPECT_TRUE(is_austere_matrix(diag({2, 1, 1, -1, -1, -2})));
  // Size 5 needs the fifth power trace: tr S = tr S^3 = 0 here but tr S^5 != 0.
  const double q = std::sqrt(11.0 / 3.0);
  EXPECT_FALSE(is_austere_matrix(diag({2, 2, -1, (-3 + q) / 2, (-3 - q) / 2})));
  Rng rng(2);
  for (int n : {2, 3, 5, 6}) {
    for (int k = 0; k < 100; ++k) {
      const SymMatrix s = numerics::random_symmetric(n, rng);
      EXPECT_EQ(is_austere_matrix(s), eigen_symmetry_oracle(s));
    }
  }
}

TEST(AustereMatrix, ConjugationAndScaleInvariant) {
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const SymMatrix s = k % 2 ? symmetric_spectrum_matrix(rng) : numerics::random_symmetric(4, rng);
    const Eigen::MatrixXd r = numerics::random_rotation(4, rng);
    EXPECT_EQ(is_austere_matrix(s), is_austere_matrix(s.conjugated(r)));
    EXPECT_EQ(is_austere_matrix(s), is_austere_matrix(1e-5 * s));
    EXPECT_EQ(is_austere_matrix(s), is_austere_matrix(1e5 * s));
  }
}

TEST(AustereSubspace, ModelsAreAustere) {
  EXPECT_TRUE(is_austere_subspace(qa_basis()));
  EXPECT_TRUE(is_austere_subspace(qb_basis()));
  EXPECT_TRUE(is_austere_subspace(qc_basis(QCParams(1, 1, -1))));
  EXPECT_TRUE(is_austere_subspace(SymSpan(4)));
}

TEST(AustereSubspace, BrokenModels) {
  std::vector<SymMatrix> b = qb_basis().basis();
  b.push_back(diag({1, 0, 0, 0}));
  EXPECT_FALSE(is_austere_subspace(SymSpan(4, b)));
  EXPECT_FALSE(is_austere_subspace(qc_basis_unchecked(Eigen::Vector3d(1, 1, -0.9))));
  EXPECT_THROW(is_austere_subspace(SymSpan(3, {diag({1, -1, 0})})), PreconditionError);
}

TEST(AustereSubspace, ValidLambdasAustereViolatedNot) {
  Rng rng(4);
  for (int k = 0; k < 50; ++k) {
    const double l1 = numerics::uniform(rng, -3, 3);
    const double l2 = numerics::uniform(rng, -3, 3);
    if (std::abs(1 + l1 * l2) < 0.05) continue;
    const QCParams p(l1, l2, lambda3_from(l1, l2));
    EXPECT_TRUE(is_austere_subspace(qc_basis(p)));
    for (double d : {0.05, -0.1}) {
      EXPECT_FALSE(is_austere_subspace(qc_basis_unchecked(p.lambdas() + Eigen::Vector3d(0, 0, d))));
    }
  }
}

TEST(AustereSubspace, ElementsOfAustereSpansAreAustere) {
  Rng rng(5);
  const std::vector<SymSpan> spans = {qa_basis(), qb_basis(), qc_basis(QCParams(2, 0.5, lambda3_from(2, 0.5)))};
  for (const SymSpan& span : spans) {
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXd c(static_cast<Eigen::Index>(span.basis().size()));
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = numerics::gaussian(rng);
      const SymMatrix s = span.element(c);
      EXPECT_TRUE(is_austere_matrix(s));
      EXPECT_TRUE(eigen_symmetry_oracle(s, 1e-8));
    }
  }
}

TEST(AustereSubspace, OddTraceDefectAgreesInDimensionFour) {
  Rng rng(6);
  EXPECT_LT(odd_trace_defect(qa_basis()), 1e-12);
  EXPECT_LT(odd_trace_defect(qb_basis()), 1e-12);
  for (int k = 0; k < 20; ++k) {
    const SymSpan span = testing_support::random_subspace(qb_basis(), 3, rng).conjugated(numerics::random_rotation(4, rng));
    EXPECT_LT(odd_trace_defect(span), 1e-12);
    const SymSpan noise(4, {numerics::random_symmetric(4, rng), numerics::random_symmetric(4, rng)});
    EXPECT_EQ(odd_trace_defect(noise) < 1e-9, is_austere_subspace(noise));
    EXPECT_GT(odd_trace_defect(noise), 1e-3);
  }
}

TEST(AustereSubspace, OddTraceDefectOnLargerShapeOperators) {
  Rng rng(7);
  // Spectra (a, -a, b, -b, 0) on R^5 for every element: a rotated block-diagonal span.
  std::vector<SymMatrix> basis;
  for (int k = 0; k < 3; ++k) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(5, 5);
    m.topLeftCorner(4, 4) = qb_basis().basis()[static_cast<std::size_t>(k)].matrix();
    basis.emplace_back(m);
  }
  const SymSpan span = SymSpan(5, basis).conjugated(numerics::random_rotation(5, rng));
  EXPECT_LT(odd_trace_defect(span), 1e-12);
  EXPECT_GT(odd_trace_defect(SymSpan(5, {SymMatrix::diagonal(vec({1, 1, -1, 0, 0}))})), 0.1);
}

TEST(Models, TypeAStructure) {
  const Eigen::Matrix4d j = qa_complex_structure();
  EXPECT_EQ(j * j, -Eigen::Matrix4d::Identity());
  EXPECT_EQ(j.transpose(), -j);
  EXPECT_EQ(j * Eigen::Vector4d::Unit(0), Eigen::Vector4d::Unit(1));
  const SymSpan qa = qa_basis();
  EXPECT_EQ(qa.span_dim(), 6);
  for (const SymMatrix& b : qa.basis()) {
    EXPECT_LT((b.matrix() * j + j * b.matrix()).norm(), 1e-14);
    // Conjugation by J negates each element.
    EXPECT_LT((b.conjugated(j).matrix() + b.matrix()).norm(), 1e-14);
  }
}

TEST(Models, TypeBPattern) {
  const Eigen::VectorXd ev1 = numerics::sym_eig(qb_matrix(1, 0, 0, 0, 0)).values;
  EXPECT_LT((ev1 - vec({-1, -1, 1, 1})).norm(), 1e-14);
  const Eigen::VectorXd ev2 = numerics::sym_eig(qb_matrix(0, 1, 0, 0, 0)).values;
  EXPECT_LT((ev2 - vec({-1, 0, 0, 1})).norm(), 1e-14);
  EXPECT_EQ(qb_matrix(2, 0, 0, 0, 0).matrix(), diag({2, 2, -2, -2}).matrix());
  const SymMatrix s = qb_matrix(0.5, 1, 2, 3, 4);
  EXPECT_EQ(s(0, 2), 1);
  EXPECT_EQ(s(0, 3), 2);
  EXPECT_EQ(s(1, 2), 3);
  EXPECT_EQ(s(1, 3), 4);
  EXPECT_EQ(s(0, 1), 0);
  EXPECT_EQ(s(2, 3), 0);
  EXPECT_EQ(qb_basis().span_dim(), 5);
}

TEST(Models, TypeCPattern) {
  const SymMatrix s = qc_matrix(1, 0, 0, QCParams(0, 0, 0));
  EXPECT_LT((numerics::sym_eig(s).values - vec({-1, 0, 0, 1})).norm(), 1e-14);
  const SymMatrix t = qc_pattern(1, 2, 3, Eigen::Vector3d(4, 5, 6));
  EXPECT_EQ(t(0, 1), 1);
  EXPECT_EQ(t(0, 2), 2);
  EXPECT_EQ(t(0, 3), 3);
  EXPECT_EQ(t(1, 2), 6 * 3);
  EXPECT_EQ(t(1, 3), 5 * 2);
  EXPECT_EQ(t(2, 3), 4 * 1);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(t(i, i), 0);
  EXPECT_THROW(qc_matrix(1, 0, 0, QCParams::unchecked(1, 1, 1)), PreconditionError);
}

TEST(Models, TypeCAustereOnlyOnRelation) {
  Rng rng(8);
  const QCParams p(1, 1, -1);
  for (int k = 0; k < 50; ++k) {
    const SymMatrix s = qc_matrix(numerics::gaussian(rng), numerics::gaussian(rng), numerics::gaussian(rng), p);
    EXPECT_TRUE(is_austere_matrix(s));
    EXPECT_TRUE(eigen_symmetry_oracle(s, 1e-8));
  }
  bool witness = false;
  for (int k = 0; k < 200 && !witness; ++k) {
    const SymMatrix s = qc_pattern(numerics::gaussian(rng), numerics::gaussian(rng),
                                   numerics::gaussian(rng), Eigen::Vector3d(1, 1, -0.9));
    witness = !eigen_symmetry_oracle(s, 1e-6);
  }
  EXPECT_TRUE(witness);
}

TEST(Models, QCParamsValidation) {
  EXPECT_NO_THROW(QCParams(1, 1, -1));
  EXPECT_THROW(QCParams(1, 1, 1), PreconditionError);
  EXPECT_FALSE(QCParams::unchecked(1, 1, 1).valid());
  EXPECT_NEAR(QCParams::unchecked(1, 1, 1).relation_residual(), 4.0, 1e-15);
  EXPECT_TRUE(QCParams(0, 0, 0).valid());
}

TEST(Models, Lambda3From) {
  EXPECT_EQ(lambda3_from(1, 1), -1);
  EXPECT_EQ(lambda3_from(0, 0), 0);
  EXPECT_THROW(lambda3_from(1, -1), PreconditionError);
  Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    const double a = numerics::uniform(rng, -4, 4);
    const double b = numerics::uniform(rng, -4, 4);
    if (std::abs(1 + a * b) < 0.1) continue;
    const double c = lambda3_from(a, b);
    EXPECT_NEAR(a * b * c + a + b + c, 0.0, 1e-12 * (1 + std::abs(a * b * c)));
  }
}

TEST(Simple, Examples) {
  families::HelicoidSpec spec;
  spec.m = 4;
  spec.s = 1;
  spec.lambdas = {1.0, 2.0};
  const auto h = families::generalized_helicoid(spec);
  const SymSpan ii = span_of(geometry::second_fundamental_form(h, vec({1.0, 0.7, 0.5, 1.2})));
  EXPECT_TRUE(is_simple(ii));
  EXPECT_FALSE(is_simple(qb_basis()));
  EXPECT_GT(fit_common_factor(qb_basis()).residual, 1e-2);
  EXPECT_TRUE(is_simple(SymSpan(4)));
}

TEST(Simple, FactorIsRecovered) {
  Rng rng(10);
  for (int k = 0; k < 10; ++k) {
    const Eigen::Vector4d u = numerics::random_unit_vector(4, rng);
    std::vector<SymMatrix> forms;
    for (int i = 0; i < 3; ++i) {
      const Eigen::Vector4d w = numerics::random_unit_vector(4, rng);
      forms.emplace_back(Eigen::MatrixXd(u * w.transpose() + w * u.transpose()));
    }
    const SimpleFit fit = fit_common_factor(SymSpan(4, forms), static_cast<std::uint64_t>(k));
    EXPECT_LT(fit.residual, 1e-8);
    EXPECT_NEAR(std::abs(fit.factor.dot(u)), 1.0, 1e-6);
  }
}

TEST(SymSpanType, DimensionAndConjugation) {
  Rng rng(11);
  const SymSpan qb = qb_basis();
  std::vector<SymMatrix> b = qb.basis();
  b.push_back(b[0] + 2.0 * b[1]);
  EXPECT_EQ(SymSpan(4, b).span_dim(), 5);
  const Eigen::MatrixXd r = numerics::random_rotation(4, rng);
  const SymSpan c = qb.conjugated(r);
  EXPECT_EQ(c.span_dim(), 5);
  EXPECT_EQ(qb.scaled(3.0).span_dim(), 5);
  const auto on = c.orthonormal_basis();
  ASSERT_EQ(on.size(), 5u);
  for (std::size_t i = 0; i < on.size(); ++i) {
    for (std::size_t j = 0; j < on.size(); ++j) {
      const double ip = (on[i].matrix().array() * on[j].matrix().array()).sum();
      EXPECT_NEAR(ip, i == j ? 1.0 : 0.0, 1e-12);
    }
  }
}
