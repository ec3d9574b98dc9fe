#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "paradv/model.hpp"
#include "paradv/numerics.hpp"

namespace paradv {

/// Symmetric nonnegative Γ over an ordered list of inputs.
struct AdversaryMatrix {
  std::vector<OracleInput> inputs;
  SymMatrix gamma;

  std::vector<std::uint64_t> masks() const;
};

/// Query positions (i_1, ..., i_p). Order and repeats are irrelevant to the
/// filter; only the set of distinct positions matters.
struct IndexTuple {
  std::vector<unsigned> indices;

  std::uint64_t mask() const;
  /// Sorted distinct positions.
  IndexTuple canonical() const;
  std::string str() const;

  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
  friend auto operator<=>(const IndexTuple&, const IndexTuple&) = default;
};

/// All subsets of [0, N) with 1..min(p, N) elements, as sorted tuples in
/// lexicographic order.
std::vector<IndexTuple> index_subsets(std::uint64_t N, unsigned p);

using DisjointnessPredicate = std::function<bool(const OracleInput&, const OracleInput&)>;

struct AdversaryViolation {
  std::size_t row;
  std::size_t col;
  double value;
  std::string reason;
};

/// First violating entry in row-major order, or nullopt when Γ is entrywise
/// nonnegative, zero on the diagonal and zero wherever the value sets of the
/// two inputs intersect.
std::optional<AdversaryViolation> validate_adversary(const DisjointnessPredicate& disjoint,
                                                     const AdversaryMatrix& a);

/// Γ^t: keep (x, y) only when some tuple position separates x and y.
/// Throws Error(IndexOutOfRange) for a position >= N.
AdversaryMatrix filter_matrix(const AdversaryMatrix& a, const IndexTuple& t);

/// 0/1 symmetrized incidence of the relation x <= y between X and Y; rows
/// and columns are X followed by Y.
AdversaryMatrix counting_adversary(const CountingInstance& inst);

struct SpectralBoundReport {
  double lambda_gamma = 0.0;
  IndexTuple worst_tuple;
  double max_filtered_lambda = 0.0;
  double ratio = 0.0;
};

/// λ(Γ) / max_t λ(Γ^t) over subsets of at most p positions. Ties in the
/// maximum go to the lexicographically smallest subset.
/// Throws Error(ZeroMatrix) when Γ = 0.
SpectralBoundReport theorem1_bound(const AdversaryMatrix& a, unsigned p);

}  // namespace paradv
