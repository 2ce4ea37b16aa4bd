#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "rayleigh/io.hpp"
#include "support/corpus.hpp"

namespace {

using namespace rayleigh;

std::vector<long> histogram(int n, long draws, std::uint64_t seed, const std::function<Configuration(SeededRng&)>& draw) {
  std::vector<long> h(std::size_t{1} << n, 0);
  for (long t = 0; t < draws; ++t) {
    SeededRng rng(seed, static_cast<std::uint64_t>(t));
    ++h[static_cast<std::size_t>(draw(rng).mask())];
  }
  return h;
}

double gof_p(const std::vector<long>& h, const BooleanMeasure& m) { return chi_square_gof(h, m.masses()).p_value; }

TEST(Graph, Validation) {
  EXPECT_THROW(Graph(2, {{0, 0, 1}}), InvalidArgument);
  EXPECT_THROW(Graph(2, {{0, 1, 0.0}}), InvalidArgument);
  EXPECT_THROW(Graph(2, {{0, 2, 1}}), InvalidArgument);
  EXPECT_FALSE(Graph(4, {{0, 1, 1}, {2, 3, 1}}).is_connected());
  EXPECT_TRUE(Graph::complete(5).is_connected());
  EXPECT_EQ(Graph::complete(5).edge_count(), 10);
  EXPECT_EQ(Graph::star(4).edge_count(), 3);
}

TEST(Graph, TextFormat) {
  const auto g = parse_graph("# weighted triangle\n0 1 2\n1 2\n0 2 1.5\n");
  EXPECT_EQ(g.vertex_count(), 3);
  ASSERT_EQ(g.edge_count(), 3);
  EXPECT_DOUBLE_EQ(g.edge(0).weight, 2.0);
  EXPECT_DOUBLE_EQ(g.edge(1).weight, 1.0);
  EXPECT_EQ(parse_graph("vertices 5\n0 1\n").vertex_count(), 5);
  EXPECT_THROW(parse_graph("0 x\n"), ParseError);
}

TEST(SpanningTree, PathIsDeterministic) {
  const auto g = Graph::path(3);
  for (int t = 0; t < 20; ++t) {
    SeededRng rng(1, static_cast<std::uint64_t>(t));
    EXPECT_EQ(sample_spanning_tree(g, rng), (std::vector<int>{0, 1}));
  }
}

TEST(SpanningTree, DisconnectedIsAnError) {
  SeededRng rng(1);
  EXPECT_THROW(sample_spanning_tree(Graph(4, {{0, 1, 1}, {2, 3, 1}}), rng), InvalidArgument);
}

TEST(SpanningTree, EveryDrawIsATree) {
  for (const auto& [name, g] : rayleigh::testing::small_graphs()) {
    const SpanningTreeSampler sampler(g);
    for (int t = 0; t < 500; ++t) {
      SeededRng rng(77, static_cast<std::uint64_t>(t));
      const auto tree = sampler(rng);
      EXPECT_EQ(static_cast<int>(tree.size()), g.vertex_count() - 1) << name;
      EXPECT_TRUE(is_spanning_tree(g, tree)) << name;
    }
  }
}

TEST(SpanningTree, UniformOnTriangle) {
  const auto g = Graph::cycle(3);
  const auto h = histogram(3, 100000, 2, [&](SeededRng& r) { return edge_set_configuration(g, sample_spanning_tree(g, r)); });
  EXPECT_GT(gof_p(h, enumerate_spanning_trees(g)), 1e-3);
}

TEST(SpanningTree, WeightedTriangle) {
  const Graph g(3, {{0, 1, 2.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const auto exact = enumerate_spanning_trees(g);
  // the tree omitting the weight-2 edge has weight 1 of total 5
  EXPECT_NEAR(exact.mass(Configuration::from_string("011")), 0.2, 1e-15);
  EXPECT_NEAR(exact.mass(Configuration::from_string("110")), 0.4, 1e-15);
  const auto h = histogram(3, 100000, 3, [&](SeededRng& r) { return edge_set_configuration(g, sample_spanning_tree(g, r)); });
  EXPECT_GT(gof_p(h, exact), 1e-3);
}

TEST(SpanningTree, EnumerationCounts) {
  EXPECT_EQ(enumerate_spanning_trees(Graph::path(3)).support_size(), 1u);
  const auto tri = enumerate_spanning_trees(Graph::cycle(3));
  EXPECT_EQ(tri.support_size(), 3u);
  tri.for_each_atom([](BooleanMeasure::Mask, double p) { EXPECT_NEAR(p, 1.0 / 3, 1e-15); });
  const auto k4 = enumerate_spanning_trees(Graph::complete(4));
  EXPECT_EQ(k4.support_size(), 16u);
  k4.for_each_atom([](BooleanMeasure::Mask, double p) { EXPECT_NEAR(p, 1.0 / 16, 1e-15); });
  EXPECT_EQ(enumerate_spanning_trees(Graph::complete(5)).support_size(), 125u);
  EXPECT_THROW(enumerate_spanning_trees(Graph::complete(7)), CapExceeded);
}

TEST(SpanningTree, WilsonMatchesEnumerationOnK4) {
  const auto g = Graph::complete(4);
  const auto h = histogram(6, 100000, 4, [&](SeededRng& r) { return edge_set_configuration(g, sample_spanning_tree(g, r)); });
  EXPECT_GT(gof_p(h, enumerate_spanning_trees(g)), 1e-3);
}

TEST(SpanningTree, WeightedK4) {
  const Graph g(4, {{0, 1, 1.0}, {0, 2, 2.0}, {0, 3, 0.5}, {1, 2, 1.5}, {1, 3, 3.0}, {2, 3, 1.0}});
  const auto h = histogram(6, 100000, 5, [&](SeededRng& r) { return edge_set_configuration(g, sample_spanning_tree(g, r)); });
  EXPECT_GT(gof_p(h, enumerate_spanning_trees(g)), 1e-3);
}

TEST(ConditionedBernoulli, Examples) {
  const auto sym = histogram(2, 20000, 6, [](SeededRng& r) { return sample_conditioned_bernoulli(std::vector<double>{1, 1}, 1, r); });
  EXPECT_EQ(sym[0] + sym[3], 0);
  EXPECT_NEAR(static_cast<double>(sym[1]) / 20000, 0.5, 0.015);
  const auto law = conditioned_bernoulli_law(std::vector<double>{1, 2}, 1);
  EXPECT_NEAR(law.mass(Configuration::from_string("01")), 2.0 / 3, 1e-15);
  const auto h = histogram(2, 100000, 7, [](SeededRng& r) { return sample_conditioned_bernoulli(std::vector<double>{1, 2}, 1, r); });
  EXPECT_GT(gof_p(h, law), 1e-3);
  SeededRng rng(8);
  EXPECT_EQ(sample_conditioned_bernoulli(std::vector<double>{0.3, 2, 9}, 3, rng).to_string(), "111");
  EXPECT_EQ(sample_conditioned_bernoulli(std::vector<double>{0.3, 2, 9}, 0, rng).to_string(), "000");
}

TEST(ConditionedBernoulli, RangeErrors) {
  EXPECT_THROW(ConditionedBernoulliSampler(std::vector<double>{1, 2}, 3), InvalidArgument);
  EXPECT_THROW(ConditionedBernoulliSampler(std::vector<double>{1, 2}, -1), InvalidArgument);
  EXPECT_THROW(ConditionedBernoulliSampler(std::vector<double>{1, 0}, 1), InvalidArgument);
}

TEST(ConditionedBernoulli, AlwaysExactlyK) {
  SeededRng rng(9);
  const std::vector<double> lambda{0.5, 3, 1, 1, 7, 0.1, 2, 2};
  for (int k = 0; k <= 8; ++k) {
    const ConditionedBernoulliSampler s(lambda, k);
    for (int t = 0; t < 200; ++t) EXPECT_EQ(s(rng).count(), k);
  }
}

TEST(ConditionedBernoulli, MatchesConditionedProduct) {
  // lambda_j = p_j / (1 - p_j) makes the law equal to the product conditioned on N = k
  const std::vector<double> p{0.2, 0.5, 0.7, 0.35, 0.9, 0.15};
  std::vector<double> lambda;
  for (double q : p) lambda.push_back(q / (1 - q));
  const auto oracle = condition_on_rank(BooleanMeasure::product(p), 3);
  EXPECT_LT(total_variation(conditioned_bernoulli_law(lambda, 3), oracle), 1e-14);
  const auto expected = marginals(oracle);
  const ConditionedBernoulliSampler s(lambda, 3);
  const long draws = 40000;
  std::vector<long> hits(p.size(), 0);
  for (long t = 0; t < draws; ++t) {
    SeededRng rng(10, static_cast<std::uint64_t>(t));
    const auto x = s(rng);
    for (std::size_t j = 0; j < p.size(); ++j) hits[j] += x[static_cast<int>(j)];
  }
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double q = expected[j];
    const double se = std::sqrt(q * (1 - q) / draws);
    EXPECT_NEAR(static_cast<double>(hits[j]) / draws, q, 3 * se) << j;
  }
}

TEST(ConditionedBernoulli, LogSpaceForWideWeights) {
  const std::vector<double> lambda{1e-5, 1.0, 10.0, 1e4, 3.0};
  const ConditionedBernoulliSampler s(lambda, 2);
  EXPECT_TRUE(s.uses_log_space());
  EXPECT_FALSE(ConditionedBernoulliSampler(std::vector<double>{1, 2, 3}, 1).uses_log_space());
  const auto law = conditioned_bernoulli_law(lambda, 2);
  const auto h = histogram(5, 100000, 11, [&](SeededRng& r) { return s(r); });
  EXPECT_GT(gof_p(h, law), 1e-3);
  // huge weights would overflow a linear table
  std::vector<double> big(60, 1e300);
  big[0] = 1e-300;
  const ConditionedBernoulliSampler huge(big, 30);
  SeededRng rng(12);
  EXPECT_EQ(huge(rng).count(), 30);
}

TEST(Exclusion, ZeroRatesKeepInitial) {
  ExclusionSpec spec = ExclusionSpec::cycle(4, 0.0, Configuration::from_string("1010"), 5.0);
  SeededRng rng(13);
  EXPECT_EQ(simulate_exclusion(spec, rng).to_string(), "1010");
  spec.horizon = 0.0;
  EXPECT_EQ(simulate_exclusion(spec, rng).to_string(), "1010");
}

TEST(Exclusion, ConservesParticles) {
  const auto spec = ExclusionSpec::cycle(6, 1.3, Configuration::from_string("110100"), 2.0);
  for (int t = 0; t < 500; ++t) {
    SeededRng rng(14, static_cast<std::uint64_t>(t));
    EXPECT_EQ(simulate_exclusion(spec, rng).count(), 3);
  }
}

TEST(Exclusion, SpecValidation) {
  ExclusionSpec spec = ExclusionSpec::cycle(3, 1.0, Configuration::from_string("100"), 1.0);
  spec.swap_rates[0][1] = 2.0;
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec = ExclusionSpec::cycle(3, 1.0, Configuration::from_string("100"), -1.0);
  EXPECT_THROW(spec.validate(), InvalidArgument);
  spec = ExclusionSpec::cycle(3, 1.0, Configuration::from_string("10"), 1.0);
  EXPECT_THROW(spec.validate(), DimensionMismatch);
}

TEST(Exclusion, GeneratorRowsSumToZero) {
  ExclusionSpec spec = ExclusionSpec::cycle(4, 1.0, Configuration::from_string("1100"), 0.5);
  spec.birth_rates = {0.1, 0.2, 0.3, 0.4};
  spec.death_rates = {0.5, 0.0, 0.5, 0.0};
  const auto q = exclusion_generator(spec);
  for (Eigen::Index r = 0; r < q.rows(); ++r) EXPECT_NEAR(q.row(r).sum(), 0.0, 1e-14);
}

TEST(Exclusion, FourCycleMatchesMatrixExponential) {
  const auto spec = ExclusionSpec::cycle(4, 1.0, Configuration::from_string("1100"), 0.5);
  const auto exact = exclusion_exact_law(spec);
  const auto h = histogram(4, 100000, 15, [&](SeededRng& r) { return simulate_exclusion(spec, r); });
  EXPECT_LT(empirical_total_variation(h, exact.masses()), 0.01);
  EXPECT_GT(gof_p(h, exact), 1e-3);
}

TEST(Exclusion, BirthDeathMatchesMatrixExponential) {
  ExclusionSpec spec = ExclusionSpec::cycle(4, 0.8, Configuration::from_string("1000"), 0.9);
  spec.birth_rates = {0.3, 0.6, 0.0, 1.0};
  spec.death_rates = {0.4, 0.0, 0.7, 0.2};
  const auto exact = exclusion_exact_law(spec);
  const auto h = histogram(4, 100000, 16, [&](SeededRng& r) { return simulate_exclusion(spec, r); });
  EXPECT_GT(gof_p(h, exact), 1e-3);
}

TEST(Exclusion, ExactLawCap) {
  const auto spec = ExclusionSpec::cycle(11, 1.0, Configuration(11), 1.0);
  EXPECT_THROW(exclusion_exact_law(spec), CapExceeded);
}

TEST(Exclusion, JsonRoundTrip) {
  ExclusionSpec spec = ExclusionSpec::cycle(3, 1.0, Configuration::from_string("100"), 0.25);
  spec.birth_rates = {0.1, 0.2, 0.3};
  const auto back = exclusion_from_json(exclusion_to_json(spec));
  EXPECT_EQ(back.swap_rates, spec.swap_rates);
  EXPECT_EQ(back.birth_rates, spec.birth_rates);
  EXPECT_EQ(back.initial.to_string(), "100");
  EXPECT_DOUBLE_EQ(back.horizon, 0.25);
}

TEST(Dpp, ZeroAndIdentity) {
  const HermitianKernel zero(Eigen::MatrixXcd::Zero(3, 3));
  const HermitianKernel id(Eigen::MatrixXcd::Identity(3, 3));
  for (int t = 0; t < 50; ++t) {
    SeededRng rng(17, static_cast<std::uint64_t>(t));
    EXPECT_TRUE(sample_dpp_finite(zero, rng).empty());
    EXPECT_EQ(sample_dpp_finite(id, rng), (std::vector<int>{0, 1, 2}));
  }
}

TEST(Dpp, RankOneProjection) {
  Eigen::MatrixXcd k(2, 2);
  k << 0.5, 0.5, 0.5, 0.5;
  const HermitianKernel kernel(k);
  const auto pmf = dpp_exact_pmf(kernel);
  EXPECT_NEAR(pmf.mass(Configuration::from_string("10")), 0.5, 1e-15);
  EXPECT_NEAR(pmf.mass(Configuration::from_string("01")), 0.5, 1e-15);
  EXPECT_EQ(pmf.support_size(), 2u);
  const auto h = histogram(2, 100000, 18, [&](SeededRng& r) { return Configuration::from_indices(2, sample_dpp_finite(kernel, r)); });
  EXPECT_EQ(h[0] + h[3], 0);
  EXPECT_GT(gof_p(h, pmf), 1e-3);
}

TEST(Dpp, DiagonalKernelIsProduct) {
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(3, 3);
  k(0, 0) = 0.2;
  k(1, 1) = 0.5;
  k(2, 2) = 0.9;
  EXPECT_LT(total_variation(dpp_exact_pmf(HermitianKernel(k)), BooleanMeasure::product(std::vector<double>{0.2, 0.5, 0.9})), 1e-15);
  Eigen::MatrixXcd half = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
  dpp_exact_pmf(HermitianKernel(half)).for_each_atom([](BooleanMeasure::Mask, double p) { EXPECT_NEAR(p, 0.25, 1e-15); });
}

TEST(Dpp, KernelValidation) {
  Eigen::MatrixXcd k(2, 2);
  k << 0.5, std::complex<double>(0.1, 0.2), std::complex<double>(0.1, 0.2), 0.5;
  EXPECT_THROW(HermitianKernel{k}, InvalidArgument);
  Eigen::MatrixXcd big = 1.5 * Eigen::MatrixXcd::Identity(2, 2);
  try {
    HermitianKernel bad(big);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("1.5"), std::string::npos);
  }
  Eigen::MatrixXcd edge = (1.0 + 5e-10) * Eigen::MatrixXcd::Identity(2, 2);
  const HermitianKernel ok(edge);
  EXPECT_LE(ok.eigenvalues().maxCoeff(), 1.0);
  EXPECT_THROW(dpp_exact_pmf(HermitianKernel(Eigen::MatrixXcd::Zero(13, 13))), CapExceeded);
}

TEST(Dpp, RandomKernelMatchesExactPmf) {
  SeededRng rng(19);
  const auto kernel = HermitianKernel::random(4, rng);
  const auto pmf = dpp_exact_pmf(kernel);
  const auto h = histogram(4, 100000, 20, [&](SeededRng& r) { return Configuration::from_indices(4, sample_dpp_finite(kernel, r)); });
  EXPECT_GT(gof_p(h, pmf), 1e-3);
}

TEST(Dpp, ComplexKernelMatchesExactPmf) {
  SeededRng rng(21);
  const auto kernel = HermitianKernel::random(std::vector<double>{1.0, 1.0, 0.6, 0.1, 0.0}, rng);
  EXPECT_GT(kernel.matrix().imag().cwiseAbs().maxCoeff(), 1e-3);
  const auto pmf = dpp_exact_pmf(kernel);
  const auto h = histogram(5, 100000, 22, [&](SeededRng& r) { return Configuration::from_indices(5, sample_dpp_finite(kernel, r)); });
  EXPECT_GT(gof_p(h, pmf), 1e-3);
}

TEST(Dpp, RankLawIsPoissonBinomialOfSpectrum) {
  SeededRng rng(23);
  for (int n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 3; ++rep) {
      const auto kernel = HermitianKernel::random(n, rng);
      const auto ev = kernel.eigenvalues();
      const auto pb = poisson_binomial(std::vector<double>(ev.data(), ev.data() + ev.size()));
      const auto ranks = rank_distribution(dpp_exact_pmf(kernel));
      double tv = 0.0;
      for (std::size_t k = 0; k < ranks.size(); ++k) tv += std::abs(ranks[k] - pb[k]);
      EXPECT_LT(tv / 2, 1e-9) << n;
    }
  }
}

TEST(Dpp, CardinalityEqualsSuccessfulCoins) {
  SeededRng rng(24);
  const auto kernel = HermitianKernel::random(std::vector<double>{1.0, 1.0, 0.0, 0.0, 1.0}, rng);
  for (int t = 0; t < 200; ++t) {
    SeededRng r(25, static_cast<std::uint64_t>(t));
    EXPECT_EQ(sample_dpp_finite(kernel, r).size(), 3u);
  }
}

TEST(Dpp, RandomKernelsAreScpAndCylinder) {
  SeededRng rng(26);
  for (int n = 2; n <= 6; ++n) {
    const auto m = dpp_exact_pmf(HermitianKernel::random(n, rng));
    EXPECT_TRUE(check_scp(m).holds) << n;
    EXPECT_TRUE(check_negative_cylinder(m).holds) << n;
  }
}

TEST(Dpp, JsonRoundTrip) {
  SeededRng rng(27);
  const auto kernel = HermitianKernel::random(3, rng);
  const auto back = kernel_from_json(kernel_to_json(kernel));
  EXPECT_LT((back.matrix() - kernel.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Rng, StreamsAreReproducible) {
  SeededRng a(5, 9), b(5, 9);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  SeededRng d(5, 9), e(5, 10), f(6, 9);
  const auto x = d.next_u64();
  EXPECT_NE(x, e.next_u64());
  EXPECT_NE(x, f.next_u64());
}

// Regression constants: a change here changes every seeded output.
TEST(Rng, FixedSequence) {
  SeededRng a(1, 0);
  EXPECT_EQ(a.next_u64(), 2107538718839186310ULL);
  SeededRng b(2024, 7);
  EXPECT_DOUBLE_EQ(b.uniform(), 0.35382911368150061);
  EXPECT_DOUBLE_EQ(b.normal(), -0.43189247518320101);
}

}  // namespace
