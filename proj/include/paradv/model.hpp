#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace paradv {

/// Exact positive rational, always stored reduced with a positive denominator.
class Rational {
 public:
  Rational(std::int64_t num, std::int64_t den);

  /// Accepts exactly "a/b" with decimal integers a, b; b > 0.
  static Rational parse(std::string_view text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

/// Largest supported oracle input size: N = 2^n must fit in a 64-bit mask.
inline constexpr unsigned kMaxQubits = 6;

/// Bit string x of length N = 2^n. Bit i is x_i; bit 0 is least significant.
class OracleInput {
 public:
  OracleInput(unsigned n, std::uint64_t bits);

  static OracleInput zeros(unsigned n) { return OracleInput(n, 0); }
  /// The K lowest indices set.
  static OracleInput canonical(unsigned n, unsigned weight);
  static OracleInput from_hex(unsigned n, std::string_view hex);

  unsigned n() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << n_; }
  std::uint64_t mask() const noexcept { return bits_; }
  bool bit(std::uint64_t i) const;
  unsigned weight() const noexcept;
  /// x <= y componentwise.
  bool below(const OracleInput& y) const noexcept { return (bits_ & ~y.bits_) == 0; }

  /// Fixed width ceil(N/4) lowercase hex digits, most significant first.
  std::string hex() const;

  friend bool operator==(const OracleInput&, const OracleInput&) = default;

 private:
  unsigned n_;
  std::uint64_t bits_;
};

/// Multi-valued approximate-counting target. F(m) is the set of integers v
/// with |v - m| <= beta * m, beta = eps / (2 + eps); F(0) = {0}.
struct CountingSpec {
  unsigned n;
  Rational epsilon;

  CountingSpec(unsigned n, Rational epsilon);

  std::uint64_t N() const noexcept { return std::uint64_t{1} << n; }
  Rational beta() const;
};

bool counting_accepts(const CountingSpec& spec, std::uint64_t m, std::uint64_t v);

/// True iff no v in [0, N] lies in both F(|x|) and F(|y|).
bool values_disjoint(const CountingSpec& spec, const OracleInput& x, const OracleInput& y);

/// Same check on Hamming weights directly.
bool weights_disjoint(const CountingSpec& spec, std::uint64_t wx, std::uint64_t wy);

struct CountingInstance {
  CountingSpec spec;
  unsigned K;
  std::vector<OracleInput> X;
  std::vector<OracleInput> Y;

  std::uint64_t N() const noexcept { return spec.N(); }
  /// epsilon * K
  std::uint64_t gap() const;
  /// (1 + epsilon) * K
  std::uint64_t upper_weight() const { return K + gap(); }
};

/// All weight-w inputs of length 2^n in increasing numeric order.
std::vector<OracleInput> inputs_of_weight(unsigned n, unsigned w);

/// X = weight K, Y = weight (1 + eps) K, with value-set disjointness verified.
///
/// Errors: NonIntegerParameters when eps*K is not an integer; Overflow when
/// (1 + eps) K > N; ValueOverlap when the two acceptance windows share an
/// integer; InvalidArgument for K = 0 or n out of range.
CountingInstance build_counting_instance(unsigned n, unsigned K, Rational epsilon);

/// Line-oriented text record: n, K, eps, then X and Y as hex bit strings.
std::string to_record(const CountingInstance& inst);
CountingInstance parse_record(std::string_view text);

}  // namespace paradv
