#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "paradv/error.hpp"
#include "paradv/model.hpp"

using namespace paradv;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected paradv::Error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(model, rational_parsing) {
  EXPECT_EQ(Rational::parse("1/1"), Rational(1, 1));
  EXPECT_EQ(Rational::parse("2/4"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("3/2").str(), "3/2");
  EXPECT_THROW(Rational::parse("1"), Error);
  EXPECT_THROW(Rational::parse("0.5"), Error);
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse("a/b"), Error);
  EXPECT_TRUE(Rational(1, 3) < Rational(1, 2));
}

TEST(model, oracle_input_bits_and_hex) {
  const OracleInput x(2, 0b1010);
  EXPECT_EQ(x.size(), 4u);
  EXPECT_FALSE(x.bit(0));
  EXPECT_TRUE(x.bit(1));
  EXPECT_TRUE(x.bit(3));
  EXPECT_EQ(x.weight(), 2u);
  EXPECT_EQ(x.hex(), "a");
  EXPECT_EQ(OracleInput(3, 0x5).hex(), "05");
  EXPECT_EQ(OracleInput::from_hex(3, "05"), OracleInput(3, 5));
  EXPECT_THROW(x.bit(4), Error);
  EXPECT_THROW(OracleInput(2, 0x10), Error);
  EXPECT_EQ(OracleInput::canonical(3, 3).mask(), 0b111u);
  EXPECT_TRUE(OracleInput(2, 0b0010).below(OracleInput(2, 0b0110)));
  EXPECT_FALSE(OracleInput(2, 0b0001).below(OracleInput(2, 0b0110)));
}

TEST(model, counting_accepts_examples) {
  const CountingSpec spec(2, Rational(1, 1));
  EXPECT_EQ(spec.beta(), Rational(1, 3));
  EXPECT_TRUE(counting_accepts(spec, 1, 1));
  EXPECT_FALSE(counting_accepts(spec, 1, 2));
  EXPECT_TRUE(counting_accepts(spec, 2, 2));
  EXPECT_FALSE(counting_accepts(spec, 2, 3));
  EXPECT_FALSE(counting_accepts(spec, 2, 1));
  EXPECT_TRUE(counting_accepts(spec, 0, 0));
  EXPECT_FALSE(counting_accepts(spec, 0, 1));
  // Window around 3 is [2, 4].
  EXPECT_TRUE(counting_accepts(spec, 3, 2));
  EXPECT_TRUE(counting_accepts(spec, 3, 4));
}

TEST(model, true_count_always_accepted) {
  for (auto eps : {Rational(1, 1), Rational(1, 2), Rational(1, 3), Rational(2, 1), Rational(3, 4)}) {
    const CountingSpec spec(4, eps);
    for (std::uint64_t m = 0; m <= spec.N(); ++m) EXPECT_TRUE(counting_accepts(spec, m, m));
  }
}

TEST(model, values_disjoint_examples) {
  const CountingSpec spec(2, Rational(1, 1));
  const OracleInput one(2, 0b0001), two(2, 0b0011), other_two(2, 0b1100), three(2, 0b0111);
  EXPECT_FALSE(values_disjoint(spec, two, other_two));
  EXPECT_TRUE(values_disjoint(spec, one, two));
  // Windows {2} and {2, 3, 4} share 2.
  EXPECT_FALSE(values_disjoint(spec, two, three));
}

TEST(model, disjointness_is_symmetric) {
  for (auto eps : {Rational(1, 1), Rational(1, 2), Rational(2, 3)}) {
    const CountingSpec spec(3, eps);
    for (std::uint64_t a = 0; a <= 8; ++a)
      for (std::uint64_t b = 0; b <= 8; ++b) EXPECT_EQ(weights_disjoint(spec, a, b), weights_disjoint(spec, b, a));
  }
}

TEST(model, build_counting_instance_sizes) {
  const auto a = build_counting_instance(2, 1, Rational(1, 1));
  EXPECT_EQ(a.X.size(), 4u);
  EXPECT_EQ(a.Y.size(), 6u);
  EXPECT_EQ(a.upper_weight(), 2u);
  const auto b = build_counting_instance(3, 2, Rational(1, 1));
  EXPECT_EQ(b.X.size(), 28u);
  EXPECT_EQ(b.Y.size(), 70u);
  // Lexicographic with bit 0 least significant means increasing masks.
  for (std::size_t i = 1; i < b.X.size(); ++i) EXPECT_LT(b.X[i - 1].mask(), b.X[i].mask());
  EXPECT_EQ(a.Y.front().mask(), 0b0011u);
  EXPECT_EQ(a.Y.back().mask(), 0b1100u);
}

TEST(model, build_counting_instance_errors) {
  EXPECT_EQ(code_of([] { build_counting_instance(2, 1, Rational(1, 2)); }), ErrorCode::NonIntegerParameters);
  EXPECT_EQ(code_of([] { build_counting_instance(2, 3, Rational(1, 1)); }), ErrorCode::Overflow);
  // eps = 2, K = 2: beta = 1/2, windows [1, 3] and [3, 9] meet at 3.
  EXPECT_EQ(code_of([] { build_counting_instance(3, 2, Rational(2, 1)); }), ErrorCode::ValueOverlap);
  EXPECT_EQ(code_of([] { build_counting_instance(2, 0, Rational(1, 1)); }), ErrorCode::InvalidArgument);
}

TEST(model, built_instances_never_have_intersecting_pairs) {
  // Brute force over v in [0, N] for every accepted parameter set with n <= 4.
  for (unsigned n = 1; n <= 4; ++n) {
    const unsigned N = 1u << n;
    for (unsigned K = 1; K <= N; ++K) {
      for (unsigned den = 1; den <= 4; ++den) {
        for (unsigned num = 1; num <= 2 * N; ++num) {
          if (std::gcd(num, den) != 1) continue;
          const Rational eps(num, den);
          try {
            const auto inst = build_counting_instance(n, K, eps);
            for (std::uint64_t v = 0; v <= N; ++v) {
              EXPECT_FALSE(counting_accepts(inst.spec, K, v) && counting_accepts(inst.spec, inst.upper_weight(), v))
                  << "n=" << n << " K=" << K << " eps=" << eps.str() << " v=" << v;
            }
            EXPECT_EQ(oracle::pascal_binomial(N, K), inst.X.size());
            EXPECT_EQ(oracle::pascal_binomial(N, inst.upper_weight()), inst.Y.size());
          } catch (const Error&) {
          }
        }
      }
    }
  }
}

TEST(model, record_round_trip) {
  const auto inst = build_counting_instance(3, 2, Rational(1, 2));
  const std::string rec = to_record(inst);
  EXPECT_NE(rec.find("eps=1/2"), std::string::npos);
  const auto back = parse_record(rec);
  EXPECT_EQ(back.X, inst.X);
  EXPECT_EQ(back.Y, inst.Y);
  EXPECT_EQ(back.spec.epsilon, inst.spec.epsilon);
  EXPECT_THROW(parse_record("n=3\nK=2\neps=1/2\nX=03\nY=07\n"), Error);
}
