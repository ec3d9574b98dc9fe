#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "paradv/adversary.hpp"
#include "paradv/layout.hpp"
#include "paradv/model.hpp"
#include "paradv/numerics.hpp"

namespace paradv {

/// Unitarity check applied to explicit matrices in a schedule.
inline constexpr double kUnitaryTolerance = 1e-10;

struct QueryState {
  RegisterLayout layout;
  AmplitudeVector amplitudes;

  /// |0...0>
  static QueryState initial(const RegisterLayout& layout);

  /// Flat index of |i_1..i_p; b_1..b_p; w>.
  static std::size_t basis_index(const RegisterLayout& layout, const std::vector<std::uint64_t>& indices,
                                 const std::vector<unsigned>& bits, std::size_t work);
};

/// |i; b; w> -> |i; b xor (x_{i_1}, ..., x_{i_p}); w>.
/// Throws Error(DimMismatch) when x has the wrong length.
QueryState apply_parallel_oracle(const QueryState& s, const OracleInput& x);

namespace gates {

struct Dense {
  ComplexMatrix u;
};
/// Basis permutation |k> -> |image[k]>.
struct Permutation {
  std::vector<std::size_t> image;
};
/// Walsh-Hadamard on every index register.
struct IndexHadamard {};
/// 2|s><s| - I on every index register, |s> the uniform superposition.
struct IndexDiffusion {};
/// H X on every output bit: |0> -> |->, |1> -> |+>.
struct OutputMinus {};

}  // namespace gates

using Gate = std::variant<gates::Dense, gates::Permutation, gates::IndexHadamard, gates::IndexDiffusion,
                          gates::OutputMinus>;

std::string gate_name(const Gate& g);

/// Gates of one U_t, applied first to last.
using Step = std::vector<Gate>;

/// U_0, ..., U_T interleaved with T parallel oracle rounds.
struct Schedule {
  RegisterLayout layout;
  std::vector<Step> unitaries;
  std::string description;
  std::uint64_t seed = 0;

  std::size_t rounds() const noexcept { return unitaries.empty() ? 0 : unitaries.size() - 1; }
};

/// Throws Error(NonUnitary) or Error(DimMismatch) on an inconsistent schedule.
void validate_schedule(const Schedule& sch);

/// |psi^0>, ..., |psi^T> with |psi^t> = U_t O_x ... U_1 O_x U_0 |0>.
std::vector<QueryState> run_schedule(const Schedule& sch, const OracleInput& x);

/// Haar-style random unitary: Gram-Schmidt on a matrix of seeded complex
/// standard normals (std::mt19937_64, std::normal_distribution<double>).
ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng);

/// T + 1 independent random dense unitaries on the full register.
Schedule random_schedule(const RegisterLayout& layout, unsigned rounds, std::uint64_t seed);

/// p = 1, w = 1: U_0 = H on the index and |-> on the output bit, then
/// `iterations` rounds each followed by the diffusion.
Schedule grover_schedule(unsigned n, unsigned iterations);

/// p = 1, w = 2: U_0 sends |0> to |index; 0; 0>, one query, U_1 copies the
/// output bit into the workspace.
Schedule bit_probe_schedule(unsigned n, unsigned index);

struct ProgressTrace {
  AdversaryMatrix gamma;
  std::vector<double> delta;
  double lambda = 0.0;
  std::vector<double> W;
  std::vector<double> deltas;     // |W^t - W^{t+1}|
  double max_filtered_lambda = 0.0;
  IndexTuple worst_tuple;
  double step_bound = 0.0;        // 2 max_t λ(Γ^t)
  double max_imaginary = 0.0;     // largest |Im W^t| seen
  double observed_constant = 0.0; // max deltas / max_t λ(Γ^t)
  bool step_bound_ok = false;
};

/// W^t = sum_{x,y} Γ_xy δ_x δ_y <psi_x^t|psi_y^t> for every round.
ProgressTrace progress_trace(const AdversaryMatrix& gamma, const Schedule& sch);

/// Exact statevector success probability of Grover search.
double grover_success(unsigned n, const std::vector<unsigned>& marked, unsigned iterations);

/// Textbook phase-estimation counter on the Grover iterate of the canonical
/// weight-K input, read out as K̂(m) = N sin^2(π m / 2^t).
struct CountEstimate {
  std::uint64_t N = 0;
  unsigned K = 0;
  unsigned t_bits = 0;
  std::vector<double> distribution;  // over m in [0, 2^t)
  std::vector<double> estimates;     // K̂(m)
  std::vector<std::uint64_t> rounded;
  std::uint64_t queries = 0;
  double success_prob = 0.0;
  std::uint64_t khat_mode = 0;       // most likely rounded estimate
  double khat_mode_prob = 0.0;
};

/// Nearest integer, halves round up.
std::uint64_t round_half_up(double v);

CountEstimate phase_estimation_count(const CountingSpec& spec, unsigned K, unsigned t_bits);

struct ParallelCountResult {
  unsigned p = 1;
  std::uint64_t block_N = 0;
  unsigned block_K = 0;
  unsigned t_bits = 0;
  CountEstimate block;
  std::map<std::uint64_t, double> combined_distribution;  // exact, over the summed estimate
  double exact_success = 0.0;
  double exact_mean = 0.0;
  double exact_variance = 0.0;
  std::uint64_t depth = 0;
  std::uint64_t total_queries = 0;
  std::uint64_t seed = 0;
  unsigned trials = 0;
  double empirical_success = 0.0;
  double empirical_mean = 0.0;
  double empirical_variance = 0.0;
  double variance_stderr = 0.0;
};

/// p independent counters on blocks of N/p positions with K/p marked each;
/// combined estimate is the sum of the rounded block estimates.
/// Throws Error(IndivisibleParameters) unless p is a power of two dividing N
/// and p divides K.
ParallelCountResult parallel_disjoint_counters(const CountingSpec& spec, unsigned K, unsigned p, unsigned t_bits,
                                               std::uint64_t seed, unsigned trials = 10000);

/// Success-probability convention: bounded error 1/3.
inline constexpr double kDefaultErrorBudget = 1.0 / 3.0;

/// Largest overlap compatible with error budget δ: 2 sqrt(δ (1 - δ)).
double overlap_threshold(double error_budget);

struct PairOverlap {
  std::size_t row;
  std::size_t col;
  double magnitude;
  bool distinguishable;
};

struct OverlapReport {
  double error_budget = kDefaultErrorBudget;
  double threshold = 0.0;
  std::vector<PairOverlap> pairs;
  bool all_distinguishable = false;
  double w_final_ratio = 0.0;  // W^T / W^0
};

OverlapReport final_overlap_check(const AdversaryMatrix& gamma, const Schedule& sch,
                                  double error_budget = kDefaultErrorBudget);

}  // namespace paradv
