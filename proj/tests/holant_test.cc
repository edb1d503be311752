#include <gtest/gtest.h>

#include "sharpcsp/expression.h"
#include "sharpcsp/gadget.h"
#include "sharpcsp/partition.h"
#include "support/oracles.h"

namespace sharpcsp {
namespace {

using testing::make_function;

FunctionSet sample_set(int q) {
  testing::Rng rng(100 + q);
  return FunctionSet(q, {testing::random_function(rng, q, 2, 3), testing::random_function(rng, q, 1, 3),
                         testing::random_function(rng, q, 3, 3)});
}

TEST(HolantValue, EqualitySelfLoop) {
  const Gadget g(2, {}, {{kEquality, {0, 0}}}, 1, {}, {});
  EXPECT_EQ(holant_value(g), Scalar(2));
}

TEST(HolantValue, TwoUnaryEqualitiesJoined) {
  const Gadget g(2, {}, {{kEquality, {0}}, {kEquality, {0}}}, 1, {}, {});
  EXPECT_EQ(holant_value(g), Scalar(2));
}

TEST(HolantValue, EmptyGridAndDanglingEdges) {
  EXPECT_EQ(holant_value(Gadget::unit(3)), Scalar(1));
  EXPECT_THROW(holant_value(Gadget::identity(2)), std::invalid_argument);
}

TEST(Gadget, ConstructorValidates) {
  // edge used three times
  EXPECT_THROW(Gadget(2, {}, {{kEquality, {0, 0, 0}}}, 1, {}, {}), std::invalid_argument);
  // dangling edge not listed
  EXPECT_THROW(Gadget(2, {}, {{kEquality, {0}}}, 1, {}, {}), std::invalid_argument);
  // arity mismatch
  EXPECT_THROW(Gadget(2, {ConstraintFunction::equality(2, 2)}, {{0, {0}}}, 1, {0}, {}),
               std::invalid_argument);
}

TEST(CspToGrid, IsolatedVariable) {
  const FunctionSet f(3, {make_function(3, 1, {1, 1, 1})});
  const Gadget g = csp_to_grid(f, Instance(1, {}));
  ASSERT_EQ(g.vertices().size(), 1u);
  EXPECT_TRUE(g.vertices()[0].incidence.empty());
  EXPECT_EQ(holant_value(g), Scalar(3));
}

TEST(CspToGrid, SingleBinaryConstraintIsPath) {
  const FunctionSet f(2, {make_function(2, 2, {1, 2, 3, 4})});
  const Gadget g = csp_to_grid(f, Instance(2, {{0, {0, 1}}}));
  ASSERT_EQ(g.vertices().size(), 3u);
  EXPECT_EQ(g.num_edges(), 2);
  int constraint_vertices = 0;
  for (const auto& v : g.vertices()) {
    EXPECT_EQ(v.incidence.size(), v.signature == kEquality ? 1u : 2u);
    constraint_vertices += v.signature != kEquality;
  }
  EXPECT_EQ(constraint_vertices, 1);
  EXPECT_EQ(holant_value(g), Scalar(10));
}

TEST(CspToGrid, WeightedRejected) {
  const FunctionSet f(2, {make_function(2, 1, {1, 1})}, std::vector<Scalar>{1, 2});
  EXPECT_THROW(csp_to_grid(f, Instance(1, {})), std::invalid_argument);
}

TEST(CspToGrid, HolantEqualsPartitionFunction) {
  testing::Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int q = testing::uniform(rng, 1, 3);
    const FunctionSet f = testing::random_set(rng, q, 2, 3);
    const Instance k = testing::random_instance(rng, f, testing::uniform(rng, 0, 3), 0);
    EXPECT_EQ(holant_value(csp_to_grid(f, k)), testing::brute_z(f, k));
  }
}

TEST(CspToGrid, SignatureMatrixIsPinnedTable) {
  testing::Rng rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const int q = testing::uniform(rng, 1, 3);
    const FunctionSet f = testing::random_set(rng, q, 2, 2);
    const int labels = testing::uniform(rng, 1, 3);
    const Instance k = testing::random_instance(rng, f, labels + testing::uniform(rng, 0, 1), labels);
    const auto table = ConstraintFunction::generate(q, labels, [&](std::span<const int> x) {
      const PinMap psi(x.begin(), x.end());
      return testing::brute_z(f, k, &psi);
    });
    for (int m = 0; m <= labels; ++m) {
      EXPECT_EQ(signature_matrix(csp_to_grid(f, k, m)), testing::naive_flatten(table, m));
    }
  }
}

TEST(GridToInstance, RoundTrip) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const FunctionSet f = testing::random_set(rng, 2, 2, 2);
    const int k = testing::uniform(rng, 0, 2);
    const Instance inst = testing::random_instance(rng, f, k + testing::uniform(rng, 0, 2), k);
    const Instance back = grid_to_instance(csp_to_grid(f, inst), f);
    for (int a = 0; a < 2; ++a) {
      PinMap psi(k, a);
      EXPECT_EQ(testing::brute_z(f, back, &psi), testing::brute_z(f, inst, &psi));
    }
  }
}

TEST(SignatureMatrix, Generators) {
  for (int q = 1; q <= 3; ++q) {
    EXPECT_EQ(signature_matrix(Gadget::identity(q)), Matrix::identity(q));
    for (int m = 0; m <= 2; ++m)
      for (int d = 0; d <= 2; ++d) {
        EXPECT_EQ(signature_matrix(Gadget::equality(q, m, d)), equality_matrix(q, m, d));
      }
    const auto f = sample_set(q)[2];
    EXPECT_EQ(signature_matrix(Gadget::function(f)), flatten(f, 3, 0));
  }
  EXPECT_EQ(signature_matrix(Gadget::equality(3, 0, 0)), Matrix(1, 1, {Scalar(3)}));
}

TEST(SignatureMatrix, MatchesBruteForce) {
  testing::Rng rng(37);
  for (int trial = 0; trial < 80; ++trial) {
    const int q = testing::uniform(rng, 1, 3);
    const Gadget g = testing::random_gadget(rng, sample_set(q), 4, 3);
    EXPECT_EQ(signature_matrix(g), testing::brute_signature(g)) << "trial " << trial;
  }
}

TEST(Compose, IdentityStackIsNeutral) {
  testing::Rng rng(41);
  const FunctionSet f = sample_set(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Gadget k = testing::random_gadget(rng, f, 4, 3);
    Gadget stack = Gadget::unit(2);
    for (int i = 0; i < k.num_outputs(); ++i) stack = tensor(stack, Gadget::identity(2));
    EXPECT_EQ(signature_matrix(compose(stack, k)), signature_matrix(k));
  }
}

TEST(Compose, EqualityPairContractsToIdentity) {
  const Gadget g = compose(Gadget::equality(2, 1, 2), Gadget::equality(2, 2, 1));
  ASSERT_EQ(g.vertices().size(), 1u);
  EXPECT_EQ(g.vertices()[0].incidence.size(), 2u);
  EXPECT_EQ(normalize(g), normalize(Gadget::identity(2)));
  EXPECT_EQ(signature_matrix(g), Matrix::identity(2));
}

TEST(Compose, ArityMismatchThrows) {
  EXPECT_THROW(compose(Gadget::identity(2), Gadget::equality(2, 2, 0)), std::invalid_argument);
}

TEST(Compose, Functoriality) {
  testing::Rng rng(43);
  for (int trial = 0; trial < 80; ++trial) {
    const int q = testing::uniform(rng, 1, 3);
    const FunctionSet f = sample_set(q);
    const Gadget a = testing::random_gadget(rng, f, 3, 3);
    Gadget b = testing::random_gadget(rng, f, 3, 3);
    while (b.num_outputs() != a.num_inputs()) b = testing::random_gadget(rng, f, 3, 3);
    const Matrix ta = testing::brute_signature(a), tb = testing::brute_signature(b);
    EXPECT_EQ(signature_matrix(compose(a, b)), testing::naive_product(ta, tb));
    EXPECT_EQ(signature_matrix(compose(a, b, false)), testing::naive_product(ta, tb));
    EXPECT_EQ(signature_matrix(tensor(a, b)), testing::naive_kronecker(ta, tb));
    EXPECT_EQ(signature_matrix(adjoint(a)), testing::naive_adjoint(ta));
  }
}

TEST(Tensor, IdentityPair) {
  EXPECT_EQ(signature_matrix(tensor(Gadget::identity(3), Gadget::identity(3))), Matrix::identity(9));
}

TEST(Adjoint, InvolutionAndConjugation) {
  testing::Rng rng(47);
  const FunctionSet f(2, {ConstraintFunction(2, 2, {Scalar::parse("1+i"), Scalar(2), Scalar::parse("-i"), Scalar(0)})});
  for (int trial = 0; trial < 20; ++trial) {
    const Gadget g = testing::random_gadget(rng, f, 4, 3);
    EXPECT_EQ(adjoint(adjoint(g)), g);
    EXPECT_EQ(signature_matrix(adjoint(g)), testing::naive_adjoint(signature_matrix(g)));
  }
}

TEST(Normalize, DropsWireEqualities) {
  // identity with an extra degree-2 equality spliced onto its wire
  const Gadget wire(2, {}, {{kEquality, {0, 1}}, {kEquality, {1, 2}}}, 3, {0}, {2});
  EXPECT_EQ(normalize(wire), normalize(Gadget::identity(2)));
}

TEST(PermutationGadget, Identity) {
  const Expression e = permutation_gadget({0, 1, 2});
  EXPECT_EQ(e.to_string(), Expression::identities(3).to_string());
  EXPECT_EQ(evaluate(e, 2, {}), Matrix::identity(8));
}

TEST(PermutationGadget, SingleSwap) {
  const Expression e = permutation_gadget({1, 0});
  EXPECT_EQ(e.kind(), Expression::Kind::kSwap);
  const Matrix s = evaluate(e, 3, {});
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) EXPECT_EQ(s(a * 3 + b, c * 3 + d), Scalar(a == d && b == c));
}

// Strand i on the output side joined to strand sigma(i) on the input side,
// strands counted top to bottom; the top input is the last one.
Matrix strand_oracle(int q, const std::vector<int>& sigma) {
  const int k = static_cast<int>(sigma.size());
  std::vector<GadgetVertex> v;
  std::vector<int> outputs(k), inputs(k);
  for (int i = 0; i < k; ++i) {
    v.push_back({kEquality, {i, k + sigma[i]}});
    outputs[i] = i;
    inputs[k - 1 - sigma[i]] = k + sigma[i];
  }
  return testing::brute_signature(Gadget(q, {}, v, 2 * k, outputs, inputs));
}

TEST(PermutationGadget, MatchesStrandPermutation) {
  std::vector<int> sigma{0, 1, 2, 3};
  do {
    const Expression e = permutation_gadget(sigma);
    EXPECT_EQ(evaluate(e, 2, {}), strand_oracle(2, sigma));
    EXPECT_EQ(strand_permutation_matrix(2, sigma), strand_oracle(2, sigma));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST(PermutationGadget, FourLayerDoubleTransposition) {
  // (1 3)(2 4) = (2 3)(1 2)(3 4)(2 3)
  const Permutation sigma{2, 3, 0, 1};
  EXPECT_EQ(transposition_layers(sigma), (std::vector<int>{1, 0, 2, 1}));
  const Expression e = permutation_gadget(sigma);
  const auto layers = e.factors();
  ASSERT_EQ(layers.size(), 4u);
  const auto layer = [](int p) {
    Expression out = Expression::swap();
    if (p > 0) out = Expression::tensor(Expression::identities(p), out);
    if (p + 2 < 4) out = Expression::tensor(out, Expression::identities(2 - p));
    return out.to_string();
  };
  EXPECT_EQ(layers[0].to_string(), layer(1));
  EXPECT_EQ(layers[1].to_string(), layer(0));
  EXPECT_EQ(layers[2].to_string(), layer(2));
  EXPECT_EQ(layers[3].to_string(), layer(1));
  EXPECT_EQ(evaluate(e, 2, {}), strand_oracle(2, sigma));
}

TEST(EqualityExpression, Examples) {
  const Expression one = equality_expression(1, 1);
  EXPECT_EQ(one.to_string(), Expression::compose(Expression::e12(), Expression::e21()).to_string());
  EXPECT_EQ(evaluate(one, 3, {}), Matrix::identity(3));
  const Expression zero = equality_expression(0, 0);
  EXPECT_EQ(zero.to_string(), Expression::compose(Expression::e01(), Expression::e10()).to_string());
  EXPECT_EQ(evaluate(zero, 3, {}), Matrix(1, 1, {Scalar(3)}));
  EXPECT_EQ(evaluate(equality_expression(2, 2), 2, {}),
            testing::naive_flatten(ConstraintFunction::equality(2, 4), 2));
  for (int m = 0; m <= 3; ++m)
    for (int d = 0; d <= 3; ++d) {
      const Expression e = equality_expression(m, d);
      EXPECT_EQ(e.outputs(), m);
      EXPECT_EQ(e.inputs(), d);
      if (m + d > 0) {
        EXPECT_EQ(evaluate(e, 2, {}), testing::naive_flatten(ConstraintFunction::equality(2, m + d), m));
      }
    }
}

TEST(Expression, ToGadgetAgreesWithEvaluate) {
  const FunctionSet f = sample_set(2);
  const Expression e = Expression::tensor(
      Expression::compose(Expression::e12(), Expression::function(0, 2)), Expression::e21());
  ASSERT_EQ(e.outputs(), 3);
  ASSERT_EQ(e.inputs(), 1);
  EXPECT_EQ(signature_matrix(to_gadget(e, 2, f.functions())), evaluate(e, 2, f.functions()));
  EXPECT_THROW(Expression::compose(Expression::e12(), Expression::e12()), std::invalid_argument);
}

TEST(Decompose, EqualityGadget) {
  for (int m = 0; m <= 2; ++m)
    for (int d = 0; d <= 2; ++d) {
      const Expression e = decompose(Gadget::equality(2, m, d));
      EXPECT_EQ(e.to_string(), equality_expression(m, d).to_string());
      EXPECT_EQ(evaluate(e, 2, {}), equality_matrix(2, m, d));
    }
}

TEST(Decompose, SingleBinaryConstraintOneOutput) {
  const FunctionSet f(2, {make_function(2, 2, {1, 2, 3, 4})});
  const Gadget g = csp_to_grid(f, Instance(2, {{0, {0, 1}}}, {0}));
  const Expression e = decompose(g);
  EXPECT_LE(e.factors().size(), 3u);
  EXPECT_EQ(evaluate(e, 2, f.functions()), testing::brute_signature(g));
}

TEST(Decompose, RandomGadgets) {
  testing::Rng rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const int q = testing::uniform(rng, 1, 2);
    const FunctionSet f = sample_set(q);
    const Gadget g = testing::random_gk_gadget(rng, f, 5, 3);
    EXPECT_EQ(evaluate(decompose(g), q, f.functions()), testing::brute_signature(g)) << "trial " << trial;
  }
}

TEST(Decompose, NonBipartiteInput) {
  // F joined directly to F, dangling on a constraint vertex
  const FunctionSet f = sample_set(2);
  const Gadget g(2, f.functions(), {{0, {0, 1}}, {0, {1, 2}}}, 3, {0}, {2});
  EXPECT_EQ(evaluate(decompose(g), 2, f.functions()), testing::brute_signature(g));
}

// Three equality vertices (E3, E3, E4), ternary F1 and binary F2, three
// outputs and two inputs.
Gadget staged_example(const FunctionSet& f) {
  // edges: 0 e1 out, 1 e2 out, 2 e2 out, 3 4 e3 in, 5 F1-e3, 6 F1-e1,
  // 7 F1-e2, 8 F2-e2, 9 F2-e1
  std::vector<GadgetVertex> v{
      {kEquality, {0, 9, 6}},     // e1
      {kEquality, {5, 3, 4}},     // e3
      {kEquality, {1, 2, 8, 7}},  // e2
      {0, {5, 6, 7}},             // F1
      {1, {8, 9}},                // F2
  };
  return Gadget(2, f.functions(), v, 10, {1, 0, 2}, {3, 4});
}

TEST(Decompose, StagedExampleShape) {
  testing::Rng rng(59);
  const FunctionSet f(2, {testing::random_function(rng, 2, 3, 5), testing::random_function(rng, 2, 2, 5)});
  const Gadget g = staged_example(f);
  const Expression e = decompose(g);
  EXPECT_EQ(evaluate(e, 2, f.functions()), testing::brute_signature(g));
  // Swap layers of one permutation stage are merged into a single stage.
  std::vector<Expression> stages;
  bool in_perm = false;
  for (const auto& f : e.factors()) {
    const bool square = f.outputs() == f.inputs() && f.kind() == Expression::Kind::kTensor &&
                        f.to_string().find('F') == std::string::npos;
    const bool single_swap = f.kind() == Expression::Kind::kSwap;
    if ((square || single_swap) && in_perm) continue;
    in_perm = square || single_swap;
    stages.push_back(f);
  }
  ASSERT_EQ(stages.size(), 6u) << e.to_string();
  const std::vector<std::pair<int, int>> shapes{{3, 3}, {3, 7}, {7, 7}, {7, 4}, {4, 4}, {4, 2}};
  for (std::size_t i = 0; i < stages.size(); ++i) {
    EXPECT_EQ(std::make_pair(stages[i].outputs(), stages[i].inputs()), shapes[i]) << i;
  }
  const auto& factors = stages;
  // K0 = E^{1,2} x E^{0,3} x E^{2,2}
  const Expression k0 = Expression::tensor(
      Expression::tensor(equality_expression(1, 2), equality_expression(0, 3)),
      equality_expression(2, 2));
  EXPECT_EQ(factors[1].to_string(), k0.to_string());
  EXPECT_EQ(factors[3].to_string(),
            Expression::tensor(Expression::function(0, 3), Expression::identities(4)).to_string());
  EXPECT_EQ(factors[5].to_string(),
            Expression::tensor(Expression::function(1, 2), Expression::identities(2)).to_string());
}

}  // namespace
}  // namespace sharpcsp
