#include "paradv/adversary.hpp"

#include <algorithm>
#include <sstream>

#include "paradv/error.hpp"
#include "paradv/kernels.hpp"

namespace paradv {

namespace {

// Relative slack for treating two filtered norms as tied.
constexpr double kTieTolerance = 1e-12;

std::uint64_t input_size(const AdversaryMatrix& a) {
  if (a.inputs.empty()) throw Error(ErrorCode::InvalidArgument, "adversary matrix has no inputs");
  return a.inputs.front().size();
}

}  // namespace

std::vector<std::uint64_t> AdversaryMatrix::masks() const {
  std::vector<std::uint64_t> out;
  out.reserve(inputs.size());
  for (const auto& x : inputs) out.push_back(x.mask());
  return out;
}

std::uint64_t IndexTuple::mask() const {
  std::uint64_t m = 0;
  for (unsigned i : indices) {
    if (i >= 64) throw Error(ErrorCode::IndexOutOfRange, "index " + std::to_string(i));
    m |= std::uint64_t{1} << i;
  }
  return m;
}

IndexTuple IndexTuple::canonical() const {
  IndexTuple t{indices};
  std::sort(t.indices.begin(), t.indices.end());
  t.indices.erase(std::unique(t.indices.begin(), t.indices.end()), t.indices.end());
  return t;
}

std::string IndexTuple::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < indices.size(); ++k) os << (k ? "," : "") << indices[k];
  os << ")";
  return os.str();
}

std::vector<IndexTuple> index_subsets(std::uint64_t N, unsigned p) {
  if (p == 0) throw Error(ErrorCode::InvalidArgument, "p must be >= 1");
  const unsigned top = static_cast<unsigned>(std::min<std::uint64_t>(p, N));
  std::vector<IndexTuple> out;
  std::vector<unsigned> current;
  // Depth-first in lexicographic order: a prefix precedes its extensions.
  auto recurse = [&](auto&& self, unsigned start) -> void {
    for (unsigned i = start; i < N; ++i) {
      current.push_back(i);
      out.push_back(IndexTuple{current});
      if (current.size() < top) self(self, i + 1);
      current.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

std::optional<AdversaryViolation> validate_adversary(const DisjointnessPredicate& disjoint,
                                                     const AdversaryMatrix& a) {
  const std::uint64_t N = input_size(a);
  for (const auto& x : a.inputs) {
    if (x.size() != N) throw Error(ErrorCode::DimMismatch, "inputs of different length");
  }
  if (a.gamma.dim() != a.inputs.size()) throw Error(ErrorCode::DimMismatch, "gamma does not match inputs");
  const std::size_t n = a.gamma.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double g = a.gamma(i, j);
      if (g < 0.0) return AdversaryViolation{i, j, g, "negative entry"};
      if (i == j && g != 0.0) return AdversaryViolation{i, j, g, "nonzero diagonal"};
      if (g != 0.0 && !disjoint(a.inputs[i], a.inputs[j]))
        return AdversaryViolation{i, j, g, "nonzero entry between inputs with intersecting value sets"};
    }
  }
  return std::nullopt;
}

AdversaryMatrix filter_matrix(const AdversaryMatrix& a, const IndexTuple& t) {
  const std::uint64_t N = input_size(a);
  for (unsigned i : t.indices) {
    if (i >= N) throw Error(ErrorCode::IndexOutOfRange, "tuple index " + std::to_string(i) + " >= N");
  }
  const auto masks = a.masks();
  return AdversaryMatrix{a.inputs, kernels::filter_by_subset(a.gamma, masks, t.mask())};
}

AdversaryMatrix counting_adversary(const CountingInstance& inst) {
  std::vector<OracleInput> inputs = inst.X;
  inputs.insert(inputs.end(), inst.Y.begin(), inst.Y.end());
  SymMatrix gamma(inputs.size());
  const std::size_t nx = inst.X.size();
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < inst.Y.size(); ++j) {
      if (inst.X[i].below(inst.Y[j])) gamma.set(i, nx + j, 1.0);
    }
  }
  return AdversaryMatrix{std::move(inputs), std::move(gamma)};
}

SpectralBoundReport theorem1_bound(const AdversaryMatrix& a, unsigned p) {
  if (a.gamma.is_zero()) throw Error(ErrorCode::ZeroMatrix, "theorem1_bound on Γ = 0");
  const std::uint64_t N = input_size(a);
  const auto subsets = index_subsets(N, p);
  std::vector<std::uint64_t> subset_masks;
  subset_masks.reserve(subsets.size());
  for (const auto& s : subsets) subset_masks.push_back(s.mask());

  const auto masks = a.masks();
  const auto norms = kernels::omp::filtered_norms(a.gamma, masks, subset_masks);

  const double top = *std::max_element(norms.begin(), norms.end());
  std::size_t best = 0;
  while (norms[best] < top - kTieTolerance * std::max(1.0, top)) ++best;

  SpectralBoundReport r;
  r.lambda_gamma = spectral_norm(a.gamma);
  r.worst_tuple = subsets[best];
  r.max_filtered_lambda = top;
  if (!(top > 0.0)) throw Error(ErrorCode::ZeroMatrix, "every filtered matrix vanishes");
  r.ratio = r.lambda_gamma / r.max_filtered_lambda;
  return r;
}

}  // namespace paradv
