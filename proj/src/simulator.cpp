#include "paradv/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "paradv/error.hpp"
#include "paradv/kernels.hpp"

namespace paradv {

namespace {

void check_layout(const RegisterLayout& layout) {
  if (layout.p == 0 || layout.workspace == 0)
    throw Error(ErrorCode::InvalidArgument, "layout needs p >= 1 and workspace >= 1");
  if (layout.n > kMaxQubits) throw Error(ErrorCode::InvalidArgument, "n exceeds " + std::to_string(kMaxQubits));
}

// Calls fn(base) for the first element of every fiber along a digit with the
// given stride and radix.
template <typename Fn>
void for_each_fiber(std::size_t dim, std::size_t stride, std::size_t radix, Fn&& fn) {
  const std::size_t block = stride * radix;
  for (std::size_t outer = 0; outer < dim; outer += block)
    for (std::size_t inner = 0; inner < stride; ++inner) fn(outer + inner);
}

void apply_index_hadamard(const RegisterLayout& layout, std::vector<Complex>& v) {
  const std::size_t N = layout.N();
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  std::vector<Complex> fiber(N);
  for (unsigned r = 0; r < layout.p; ++r) {
    const std::size_t stride = layout.index_stride(r);
    for_each_fiber(v.size(), stride, N, [&](std::size_t base) {
      for (std::size_t a = 0; a < N; ++a) {
        Complex s = 0.0;
        for (std::size_t b = 0; b < N; ++b) {
          const bool odd = std::popcount(a & b) & 1U;
          s += odd ? -v[base + b * stride] : v[base + b * stride];
        }
        fiber[a] = s * scale;
      }
      for (std::size_t a = 0; a < N; ++a) v[base + a * stride] = fiber[a];
    });
  }
}

void apply_index_diffusion(const RegisterLayout& layout, std::vector<Complex>& v) {
  const std::size_t N = layout.N();
  for (unsigned r = 0; r < layout.p; ++r) {
    const std::size_t stride = layout.index_stride(r);
    for_each_fiber(v.size(), stride, N, [&](std::size_t base) {
      Complex sum = 0.0;
      for (std::size_t a = 0; a < N; ++a) sum += v[base + a * stride];
      const Complex twice_mean = 2.0 * sum / static_cast<double>(N);
      for (std::size_t a = 0; a < N; ++a) v[base + a * stride] = twice_mean - v[base + a * stride];
    });
  }
}

void apply_output_minus(const RegisterLayout& layout, std::vector<Complex>& v) {
  const double h = 1.0 / std::numbers::sqrt2;
  for (unsigned r = 0; r < layout.p; ++r) {
    const std::size_t stride = layout.bit_stride(r);
    for_each_fiber(v.size(), stride, 2, [&](std::size_t base) {
      const Complex a0 = v[base];
      const Complex a1 = v[base + stride];
      v[base] = h * (a1 + a0);
      v[base + stride] = h * (a1 - a0);
    });
  }
}

void apply_gate(const RegisterLayout& layout, const Gate& g, std::vector<Complex>& v) {
  if (const auto* d = std::get_if<gates::Dense>(&g)) {
    std::vector<Complex> out(v.size());
    kernels::omp::dense_apply(d->u, v, out);
    v.swap(out);
  } else if (const auto* perm = std::get_if<gates::Permutation>(&g)) {
    std::vector<Complex> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[perm->image[k]] = v[k];
    v.swap(out);
  } else if (std::holds_alternative<gates::IndexHadamard>(g)) {
    apply_index_hadamard(layout, v);
  } else if (std::holds_alternative<gates::IndexDiffusion>(g)) {
    apply_index_diffusion(layout, v);
  } else {
    apply_output_minus(layout, v);
  }
}

std::vector<Complex> take(AmplitudeVector&& a) {
  return std::vector<Complex>(a.entries().begin(), a.entries().end());
}

// All trajectories, one per input, simulated independently.
std::vector<std::vector<QueryState>> simulate_all(const std::vector<OracleInput>& inputs, const Schedule& sch) {
  validate_schedule(sch);
  std::vector<std::vector<QueryState>> out(inputs.size());
  const auto count = static_cast<std::int64_t>(inputs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) out[k] = run_schedule(sch, inputs[k]);
  return out;
}

}  // namespace

QueryState QueryState::initial(const RegisterLayout& layout) {
  check_layout(layout);
  return QueryState{layout, AmplitudeVector::basis(layout.dim(), 0)};
}

std::size_t QueryState::basis_index(const RegisterLayout& layout, const std::vector<std::uint64_t>& indices,
                                    const std::vector<unsigned>& bits, std::size_t work) {
  if (indices.size() != layout.p || bits.size() != layout.p)
    throw Error(ErrorCode::DimMismatch, "basis label needs p indices and p bits");
  std::size_t k = work;
  if (work >= layout.workspace) throw Error(ErrorCode::IndexOutOfRange, "workspace digit");
  for (unsigned r = 0; r < layout.p; ++r) {
    if (indices[r] >= layout.N() || bits[r] > 1) throw Error(ErrorCode::IndexOutOfRange, "basis digit");
    k += indices[r] * layout.index_stride(r) + bits[r] * layout.bit_stride(r);
  }
  return k;
}

QueryState apply_parallel_oracle(const QueryState& s, const OracleInput& x) {
  if (x.n() != s.layout.n)
    throw Error(ErrorCode::DimMismatch,
                "oracle input has n = " + std::to_string(x.n()) + ", state has n = " + std::to_string(s.layout.n));
  AmplitudeVector out(s.amplitudes.dim());
  kernels::omp::parallel_oracle(s.layout, x.mask(), s.amplitudes.entries(), out.entries());
  return QueryState{s.layout, std::move(out)};
}

std::string gate_name(const Gate& g) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, gates::Dense>) return "dense(" + std::to_string(v.u.dim()) + ")";
        else if constexpr (std::is_same_v<T, gates::Permutation>) return "permutation";
        else if constexpr (std::is_same_v<T, gates::IndexHadamard>) return "index_hadamard";
        else if constexpr (std::is_same_v<T, gates::IndexDiffusion>) return "index_diffusion";
        else return "output_minus";
      },
      g);
}

void validate_schedule(const Schedule& sch) {
  check_layout(sch.layout);
  if (sch.unitaries.empty()) throw Error(ErrorCode::InvalidArgument, "schedule needs at least U_0");
  const std::size_t dim = sch.layout.dim();
  for (std::size_t t = 0; t < sch.unitaries.size(); ++t) {
    for (const Gate& g : sch.unitaries[t]) {
      if (const auto* d = std::get_if<gates::Dense>(&g)) {
        if (d->u.dim() != dim)
          throw Error(ErrorCode::DimMismatch, "U_" + std::to_string(t) + " has dimension " +
                                                  std::to_string(d->u.dim()) + ", register has " + std::to_string(dim));
        const double defect = d->u.unitarity_defect();
        if (defect > kUnitaryTolerance)
          throw Error(ErrorCode::NonUnitary, "U_" + std::to_string(t) + " has |U'U - I| = " + std::to_string(defect));
      } else if (const auto* perm = std::get_if<gates::Permutation>(&g)) {
        if (perm->image.size() != dim) throw Error(ErrorCode::DimMismatch, "permutation size");
        std::vector<bool> seen(dim, false);
        for (std::size_t k : perm->image) {
          if (k >= dim || seen[k]) throw Error(ErrorCode::NonUnitary, "permutation is not a bijection");
          seen[k] = true;
        }
      }
    }
  }
}

std::vector<QueryState> run_schedule(const Schedule& sch, const OracleInput& x) {
  check_layout(sch.layout);
  if (sch.unitaries.empty()) throw Error(ErrorCode::InvalidArgument, "schedule needs at least U_0");
  if (x.n() != sch.layout.n) throw Error(ErrorCode::DimMismatch, "oracle input size does not match schedule");
  std::vector<QueryState> states;
  states.reserve(sch.unitaries.size());
  QueryState s = QueryState::initial(sch.layout);
  for (std::size_t t = 0; t < sch.unitaries.size(); ++t) {
    if (t > 0) s = apply_parallel_oracle(s, x);
    auto v = take(std::move(s.amplitudes));
    for (const Gate& g : sch.unitaries[t]) apply_gate(sch.layout, g, v);
    s = QueryState{sch.layout, AmplitudeVector(std::move(v))};
    if (std::abs(s.amplitudes.norm() - 1.0) > kUnitaryTolerance)
      throw Error(ErrorCode::NonUnitary, "norm drifted after U_" + std::to_string(t));
    states.push_back(s);
  }
  return states;
}

ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix u(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      u(i, j) = Complex(re, im);
    }
  // Modified Gram-Schmidt on columns, two passes for orthogonality at 1e-15.
  for (std::size_t c = 0; c < dim; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t prev = 0; prev < c; ++prev) {
        Complex proj = 0.0;
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(u(i, prev)) * u(i, c);
        for (std::size_t i = 0; i < dim; ++i) u(i, c) -= proj * u(i, prev);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < dim; ++i) norm += std::norm(u(i, c));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < dim; ++i) u(i, c) /= norm;
  }
  return u;
}

Schedule random_schedule(const RegisterLayout& layout, unsigned rounds, std::uint64_t seed) {
  check_layout(layout);
  std::mt19937_64 rng(seed);
  Schedule sch{layout, {}, "random dense unitaries, mt19937_64 seed " + std::to_string(seed), seed};
  for (unsigned t = 0; t <= rounds; ++t) sch.unitaries.push_back(Step{gates::Dense{random_unitary(layout.dim(), rng)}});
  return sch;
}

Schedule grover_schedule(unsigned n, unsigned iterations) {
  const RegisterLayout layout{n, 1, 1};
  Schedule sch{layout, {}, "grover, " + std::to_string(iterations) + " iterations", 0};
  sch.unitaries.push_back(Step{gates::IndexHadamard{}, gates::OutputMinus{}});
  for (unsigned t = 0; t < iterations; ++t) sch.unitaries.push_back(Step{gates::IndexDiffusion{}});
  return sch;
}

Schedule bit_probe_schedule(unsigned n, unsigned index) {
  const RegisterLayout layout{n, 1, 2};
  if (index >= layout.N()) throw Error(ErrorCode::IndexOutOfRange, "probe index");
  const std::size_t dim = layout.dim();
  std::vector<std::size_t> load(dim), copy(dim);
  for (std::size_t k = 0; k < dim; ++k) load[k] = copy[k] = k;
  const std::size_t target = QueryState::basis_index(layout, {index}, {0}, 0);
  std::swap(load[0], load[target]);
  for (std::size_t k = 0; k < dim; ++k) {
    if (layout.bit_digit(k, 0) == 1) copy[k] = k ^ 1U;  // workspace digit is the low bit
  }
  Schedule sch{layout, {}, "probe index " + std::to_string(index), 0};
  sch.unitaries.push_back(Step{gates::Permutation{load}});
  sch.unitaries.push_back(Step{gates::Permutation{copy}});
  return sch;
}

ProgressTrace progress_trace(const AdversaryMatrix& gamma, const Schedule& sch) {
  const auto pair = principal_eigenpair(gamma.gamma);
  const auto bound = theorem1_bound(gamma, sch.layout.p);
  const auto runs = simulate_all(gamma.inputs, sch);

  ProgressTrace tr{gamma, pair.delta, pair.lambda, {}, {}, bound.max_filtered_lambda, bound.worst_tuple,
                   2.0 * bound.max_filtered_lambda, 0.0, 0.0, false};
  const std::size_t n = gamma.inputs.size();
  const std::size_t T = sch.rounds();
  for (std::size_t t = 0; t <= T; ++t) {
    Complex w = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const double g = gamma.gamma(a, b);
        if (g == 0.0) continue;
        w += g * tr.delta[a] * tr.delta[b] * overlap(runs[a][t].amplitudes, runs[b][t].amplitudes);
      }
    }
    tr.max_imaginary = std::max(tr.max_imaginary, std::abs(w.imag()));
    if (std::abs(w.imag()) > 1e-10)
      throw Error(ErrorCode::InvalidArgument, "progress measure has imaginary part " + std::to_string(w.imag()));
    tr.W.push_back(w.real());
  }
  double worst = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    tr.deltas.push_back(std::abs(tr.W[t] - tr.W[t + 1]));
    worst = std::max(worst, tr.deltas.back());
  }
  tr.observed_constant = worst / tr.max_filtered_lambda;
  const bool steps_ok = std::all_of(tr.deltas.begin(), tr.deltas.end(),
                                    [&](double d) { return d <= tr.step_bound + kAssertTolerance; });
  const bool total_ok = tr.W.front() - tr.W.back() <= static_cast<double>(T) * tr.step_bound + kAssertTolerance;
  tr.step_bound_ok = steps_ok && total_ok;
  return tr;
}

double grover_success(unsigned n, const std::vector<unsigned>& marked, unsigned iterations) {
  const OracleInput probe(n, 0);
  if (marked.empty()) throw Error(ErrorCode::InvalidArgument, "marked set is empty");
  std::uint64_t mask = 0;
  for (unsigned i : marked) {
    if (i >= probe.size()) throw Error(ErrorCode::IndexOutOfRange, "marked index " + std::to_string(i));
    mask |= std::uint64_t{1} << i;
  }
  const OracleInput x(n, mask);
  const auto states = run_schedule(grover_schedule(n, iterations), x);
  const QueryState& last = states.back();
  double success = 0.0;
  for (std::size_t k = 0; k < last.layout.dim(); ++k) {
    if ((mask >> last.layout.index_digit(k, 0)) & 1U) success += std::norm(last.amplitudes[k]);
  }
  return success;
}

std::uint64_t round_half_up(double v) { return static_cast<std::uint64_t>(std::floor(v + 0.5)); }

CountEstimate phase_estimation_count(const CountingSpec& spec, unsigned K, unsigned t_bits) {
  const std::uint64_t N = spec.N();
  if (K > N) throw Error(ErrorCode::Overflow, "K exceeds N");
  if (t_bits == 0 || t_bits > 12) throw Error(ErrorCode::InvalidArgument, "t_bits must be in [1, 12]");
  const std::size_t M = std::size_t{1} << t_bits;

  // Precision register |j> holds G^j |s> after the controlled powers.
  std::vector<Complex> slices(M * N);
  std::vector<Complex> v(N, Complex(1.0 / std::sqrt(static_cast<double>(N)), 0.0));
  for (std::size_t j = 0; j < M; ++j) {
    std::copy(v.begin(), v.end(), slices.begin() + static_cast<std::ptrdiff_t>(j * N));
    // G = (2|s><s| - I) O_x, O_x a phase flip on the K lowest indices.
    for (unsigned i = 0; i < K; ++i) v[i] = -v[i];
    Complex sum = 0.0;
    for (const auto& a : v) sum += a;
    const Complex twice_mean = 2.0 * sum / static_cast<double>(N);
    for (auto& a : v) a = twice_mean - a;
  }

  // Inverse Fourier transform on the precision register.
  std::vector<Complex> twiddle(M);
  for (std::size_t r = 0; r < M; ++r)
    twiddle[r] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(M));
  CountEstimate est;
  est.N = N;
  est.K = K;
  est.t_bits = t_bits;
  est.queries = M - 1;
  est.distribution.assign(M, 0.0);
  std::vector<Complex> amp(N);
  for (std::size_t m = 0; m < M; ++m) {
    std::fill(amp.begin(), amp.end(), Complex(0.0));
    for (std::size_t j = 0; j < M; ++j) {
      const Complex w = twiddle[(j * m) % M];
      const Complex* slice = slices.data() + j * N;
      for (std::size_t i = 0; i < N; ++i) amp[i] += w * slice[i];
    }
    double p = 0.0;
    for (const auto& a : amp) p += std::norm(a);
    est.distribution[m] = p / static_cast<double>(M * M);
  }

  std::map<std::uint64_t, double> by_value;
  for (std::size_t m = 0; m < M; ++m) {
    const double s = std::sin(std::numbers::pi * static_cast<double>(m) / static_cast<double>(M));
    est.estimates.push_back(static_cast<double>(N) * s * s);
    est.rounded.push_back(round_half_up(est.estimates.back()));
    by_value[est.rounded.back()] += est.distribution[m];
    if (counting_accepts(spec, K, est.rounded.back())) est.success_prob += est.distribution[m];
  }
  for (const auto& [value, prob] : by_value) {
    if (prob > est.khat_mode_prob) {
      est.khat_mode = value;
      est.khat_mode_prob = prob;
    }
  }
  return est;
}

ParallelCountResult parallel_disjoint_counters(const CountingSpec& spec, unsigned K, unsigned p, unsigned t_bits,
                                               std::uint64_t seed, unsigned trials) {
  const std::uint64_t N = spec.N();
  if (p == 0 || !std::has_single_bit(p) || N % p != 0)
    throw Error(ErrorCode::IndivisibleParameters, "p = " + std::to_string(p) + " does not split N = " +
                                                      std::to_string(N) + " into equal power-of-two blocks");
  if (K % p != 0)
    throw Error(ErrorCode::IndivisibleParameters, "p = " + std::to_string(p) + " does not divide K = " + std::to_string(K));
  if (K > N) throw Error(ErrorCode::Overflow, "K exceeds N");
  if (trials == 0) throw Error(ErrorCode::InvalidArgument, "trials must be positive");

  ParallelCountResult r;
  r.p = p;
  r.block_N = N / p;
  r.block_K = K / p;
  r.t_bits = t_bits;
  const CountingSpec block_spec(spec.n - static_cast<unsigned>(std::countr_zero(p)), spec.epsilon);
  r.block = phase_estimation_count(block_spec, r.block_K, t_bits);
  r.depth = r.block.queries;
  r.total_queries = r.depth * p;
  r.seed = seed;
  r.trials = trials;

  // Exact distribution of the sum: p-fold convolution of the block law.
  std::map<std::uint64_t, double> block_law;
  for (std::size_t m = 0; m < r.block.distribution.size(); ++m) block_law[r.block.rounded[m]] += r.block.distribution[m];
  std::map<std::uint64_t, double> combined{{0, 1.0}};
  for (unsigned b = 0; b < p; ++b) {
    std::map<std::uint64_t, double> next;
    for (const auto& [s, ps] : combined)
      for (const auto& [v, pv] : block_law) next[s + v] += ps * pv;
    combined.swap(next);
  }
  r.combined_distribution = combined;
  for (const auto& [v, pv] : combined) {
    r.exact_mean += pv * static_cast<double>(v);
    if (counting_accepts(spec, K, v)) r.exact_success += pv;
  }
  for (const auto& [v, pv] : combined) {
    const double d = static_cast<double>(v) - r.exact_mean;
    r.exact_variance += pv * d * d;
  }

  // Seeded sampling of each block's measurement, inverse CDF on 53-bit uniforms.
  std::vector<double> cdf(r.block.distribution.size());
  double acc = 0.0;
  for (std::size_t m = 0; m < cdf.size(); ++m) cdf[m] = (acc += r.block.distribution[m]);
  std::mt19937_64 rng(seed);
  std::vector<double> samples(trials);
  std::size_t hits = 0;
  for (unsigned trial = 0; trial < trials; ++trial) {
    std::uint64_t total = 0;
    for (unsigned b = 0; b < p; ++b) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
      total += r.block.rounded[m];
    }
    samples[trial] = static_cast<double>(total);
    if (counting_accepts(spec, K, total)) ++hits;
  }
  r.empirical_success = static_cast<double>(hits) / trials;
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= trials;
  double m2 = 0.0, m4 = 0.0;
  for (double s : samples) {
    const double d = (s - mean) * (s - mean);
    m2 += d;
    m4 += d * d;
  }
  r.empirical_mean = mean;
  const double n = trials;
  r.empirical_variance = trials > 1 ? m2 / (n - 1.0) : 0.0;
  // Large-sample standard error of the sample variance.
  const double mu4 = m4 / n;
  const double s4 = r.empirical_variance * r.empirical_variance;
  r.variance_stderr = trials > 3 ? std::sqrt(std::max(0.0, (mu4 - s4 * (n - 3.0) / (n - 1.0)) / n)) : 0.0;
  return r;
}

double overlap_threshold(double error_budget) {
  if (!(error_budget >= 0.0 && error_budget <= 0.5))
    throw Error(ErrorCode::InvalidArgument, "error budget must lie in [0, 1/2]");
  return 2.0 * std::sqrt(error_budget * (1.0 - error_budget));
}

OverlapReport final_overlap_check(const AdversaryMatrix& gamma, const Schedule& sch, double error_budget) {
  OverlapReport rep;
  rep.error_budget = error_budget;
  rep.threshold = overlap_threshold(error_budget);
  const auto pair = principal_eigenpair(gamma.gamma);
  const auto runs = simulate_all(gamma.inputs, sch);
  const std::size_t n = gamma.inputs.size();
  const std::size_t T = sch.rounds();
  double w0 = 0.0, wT = 0.0;
  rep.all_distinguishable = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double g = gamma.gamma(a, b);
      if (g == 0.0) continue;
      const double weight = g * pair.delta[a] * pair.delta[b];
      w0 += weight * overlap(runs[a][0].amplitudes, runs[b][0].amplitudes).real();
      const Complex ov = overlap(runs[a][T].amplitudes, runs[b][T].amplitudes);
      wT += weight * ov.real();
      if (a < b) {
        const double mag = std::abs(ov);
        const bool ok = mag <= rep.threshold + kAssertTolerance;
        rep.pairs.push_back({a, b, mag, ok});
        rep.all_distinguishable = rep.all_distinguishable && ok;
      }
    }
  }
  rep.w_final_ratio = wT / w0;
  return rep;
}

}  // namespace paradv
