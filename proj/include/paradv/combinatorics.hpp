#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paradv/adversary.hpp"
#include "paradv/model.hpp"

namespace paradv {

using BigInt = boost::multiprecision::cpp_int;

/// C(a, b) exactly; 0 when b < 0 or b > a (including a < 0), C(a, 0) = 1.
BigInt binomial(std::int64_t a, std::int64_t b);

/// Bipartite relation R ⊆ X × Y as (row, col) pairs in row-major order.
struct RelationTable {
  std::vector<OracleInput> X;
  std::vector<OracleInput> Y;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

/// R = {(x, y) : x <= y componentwise}.
RelationTable enumerate_relation(const CountingInstance& inst);

/// R^t: pairs separated by at least one tuple position.
/// Throws Error(IndexOutOfRange) for a position >= N.
RelationTable filtered_relation(const RelationTable& r, const IndexTuple& t);

struct ExtremaReport {
  unsigned p = 1;
  BigInt h;
  BigInt h_prime;
  BigInt ell;
  BigInt ell_prime;
  std::size_t h_row = 0;        // X row attaining h
  std::size_t h_prime_col = 0;  // Y column attaining h'
  std::size_t ell_row = 0;
  IndexTuple ell_tuple;
  std::size_t ell_prime_col = 0;
  IndexTuple ell_prime_tuple;
};

/// h, h' are minimum row / column degrees of R; ell, ell' are maximum row /
/// column degrees over every R^t with at most p positions. Witnesses are the
/// lexicographically first subset and then the smallest row / column.
///
/// Throws Error(EmptyRowOrColumn) if some row or column of R is empty.
ExtremaReport extrema(const RelationTable& r, unsigned p);

/// sqrt(h h' / (ell ell')), products exact, one final conversion.
double theorem2_bound(const BigInt& h, const BigInt& h_prime, const BigInt& ell, const BigInt& ell_prime);

struct ClosedFormReport {
  BigInt h;                // C(N - K, eps K)
  BigInt h_prime;          // C((1 + eps) K, K)
  BigInt ell_single;       // C(N - K - 1, eps K - 1)
  BigInt ell_prime_upper;  // p C((1 + eps) K - 1, K)
};

/// Throws Error(NonIntegerParameters) / Error(Overflow) like the instance builder.
ClosedFormReport counting_closed_forms(std::uint64_t N, unsigned K, Rational epsilon, unsigned p);

/// (1/eps) sqrt(N / (p K))
double theorem3_bound(std::uint64_t N, unsigned K, Rational epsilon, unsigned p);

/// Enumerated ell exceeding the single-separating-index closed form.
struct EllDiscrepancy {
  BigInt enumerated;
  BigInt closed_form;
  OracleInput witness_row;
  IndexTuple witness_tuple;
};

std::optional<EllDiscrepancy> ell_discrepancy(const RelationTable& r, const ExtremaReport& e,
                                              const ClosedFormReport& cf);

}  // namespace paradv
