#include "paradv/combinatorics.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "paradv/error.hpp"
#include "paradv/kernels.hpp"

namespace paradv {

BigInt binomial(std::int64_t a, std::int64_t b) {
  if (b < 0 || a < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  // Each partial product C(a - b + i, i) is an integer, so the division is exact.
  BigInt c = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    c *= (a - b + i);
    c /= i;
  }
  return c;
}

RelationTable enumerate_relation(const CountingInstance& inst) {
  RelationTable r{inst.X, inst.Y, {}};
  for (std::size_t i = 0; i < inst.X.size(); ++i) {
    for (std::size_t j = 0; j < inst.Y.size(); ++j) {
      if (inst.X[i].below(inst.Y[j])) r.pairs.emplace_back(i, j);
    }
  }
  return r;
}

RelationTable filtered_relation(const RelationTable& r, const IndexTuple& t) {
  const std::uint64_t N = r.X.empty() ? 0 : r.X.front().size();
  for (unsigned i : t.indices) {
    if (i >= N) throw Error(ErrorCode::IndexOutOfRange, "tuple index " + std::to_string(i) + " >= N");
  }
  const std::uint64_t s = t.mask();
  RelationTable out{r.X, r.Y, {}};
  for (const auto& [i, j] : r.pairs) {
    if (((r.X[i].mask() ^ r.Y[j].mask()) & s) != 0) out.pairs.emplace_back(i, j);
  }
  return out;
}

ExtremaReport extrema(const RelationTable& r, unsigned p) {
  if (r.pairs.empty() || r.X.empty() || r.Y.empty())
    throw Error(ErrorCode::EmptyRowOrColumn, "relation is empty");
  std::vector<std::uint64_t> row_deg(r.X.size(), 0), col_deg(r.Y.size(), 0);
  std::vector<kernels::Edge> edges;
  edges.reserve(r.pairs.size());
  for (const auto& [i, j] : r.pairs) {
    ++row_deg[i];
    ++col_deg[j];
    edges.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), r.X[i].mask(), r.Y[j].mask()});
  }

  ExtremaReport e;
  e.p = p;
  const auto min_row = std::min_element(row_deg.begin(), row_deg.end());
  const auto min_col = std::min_element(col_deg.begin(), col_deg.end());
  if (*min_row == 0)
    throw Error(ErrorCode::EmptyRowOrColumn, "row " + r.X[min_row - row_deg.begin()].hex() + " has no pairs");
  if (*min_col == 0)
    throw Error(ErrorCode::EmptyRowOrColumn, "column " + r.Y[min_col - col_deg.begin()].hex() + " has no pairs");
  e.h = *min_row;
  e.h_row = static_cast<std::size_t>(min_row - row_deg.begin());
  e.h_prime = *min_col;
  e.h_prime_col = static_cast<std::size_t>(min_col - col_deg.begin());

  const auto subsets = index_subsets(r.X.front().size(), p);
  std::vector<std::uint64_t> masks;
  masks.reserve(subsets.size());
  for (const auto& s : subsets) masks.push_back(s.mask());
  const auto sweep = kernels::omp::filtered_degree_sweep(edges, r.X.size(), r.Y.size(), masks);

  std::uint64_t best_row = 0, best_col = 0;
  for (std::size_t s = 0; s < sweep.size(); ++s) {
    if (sweep[s].max_row > best_row) {
      best_row = sweep[s].max_row;
      e.ell_row = sweep[s].row;
      e.ell_tuple = subsets[s];
    }
    if (sweep[s].max_col > best_col) {
      best_col = sweep[s].max_col;
      e.ell_prime_col = sweep[s].col;
      e.ell_prime_tuple = subsets[s];
    }
  }
  e.ell = best_row;
  e.ell_prime = best_col;
  return e;
}

double theorem2_bound(const BigInt& h, const BigInt& h_prime, const BigInt& ell, const BigInt& ell_prime) {
  if (h < 1 || h_prime < 1 || ell < 1 || ell_prime < 1)
    throw Error(ErrorCode::InvalidArgument, "theorem2_bound arguments must be >= 1");
  const boost::multiprecision::cpp_rational q(h * h_prime, ell * ell_prime);
  return std::sqrt(q.convert_to<double>());
}

ClosedFormReport counting_closed_forms(std::uint64_t N, unsigned K, Rational epsilon, unsigned p) {
  if (K == 0 || p == 0) throw Error(ErrorCode::InvalidArgument, "K and p must be positive");
  if (epsilon.num() <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const auto a = static_cast<std::uint64_t>(epsilon.num());
  const auto b = static_cast<std::uint64_t>(epsilon.den());
  if ((a * K) % b != 0) throw Error(ErrorCode::NonIntegerParameters, "eps*K is not an integer");
  const auto gap = static_cast<std::int64_t>(a * K / b);
  const auto n = static_cast<std::int64_t>(N);
  const auto k = static_cast<std::int64_t>(K);
  if (k + gap > n) throw Error(ErrorCode::Overflow, "(1+eps)K exceeds N");
  ClosedFormReport r;
  r.h = binomial(n - k, gap);
  r.h_prime = binomial(k + gap, k);
  r.ell_single = binomial(n - k - 1, gap - 1);
  r.ell_prime_upper = BigInt(p) * binomial(k + gap - 1, k);
  return r;
}

double theorem3_bound(std::uint64_t N, unsigned K, Rational epsilon, unsigned p) {
  if (K == 0 || p == 0) throw Error(ErrorCode::InvalidArgument, "K and p must be positive");
  return (1.0 / epsilon.value()) * std::sqrt(static_cast<double>(N) / (static_cast<double>(p) * K));
}

std::optional<EllDiscrepancy> ell_discrepancy(const RelationTable& r, const ExtremaReport& e,
                                              const ClosedFormReport& cf) {
  if (e.ell <= cf.ell_single) return std::nullopt;
  return EllDiscrepancy{e.ell, cf.ell_single, r.X[e.ell_row], e.ell_tuple};
}

}  // namespace paradv
