#include "paradv/model.hpp"

#include <bit>
#include <charconv>
#include <numeric>
#include <sstream>

#include "paradv/error.hpp"

namespace paradv {

namespace {

std::int64_t parse_int(std::string_view s, std::string_view what) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::InvalidArgument, "cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    throw Error(ErrorCode::InvalidArgument, "expected a rational literal a/b, got '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash), "numerator"), parse_int(text.substr(slash + 1), "denominator"));
}

std::string Rational::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

OracleInput::OracleInput(unsigned n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n > kMaxQubits)
    throw Error(ErrorCode::InvalidArgument, "n = " + std::to_string(n) + " exceeds " + std::to_string(kMaxQubits));
  if (size() < 64 && (bits >> size()) != 0)
    throw Error(ErrorCode::IndexOutOfRange, "bit string has bits beyond N");
}

OracleInput OracleInput::canonical(unsigned n, unsigned weight) {
  OracleInput probe(n, 0);
  if (weight > probe.size()) throw Error(ErrorCode::Overflow, "weight exceeds N");
  const std::uint64_t bits = weight == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << weight) - 1;
  return OracleInput(n, bits);
}

OracleInput OracleInput::from_hex(unsigned n, std::string_view hex) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
  if (hex.empty() || ec != std::errc() || ptr != hex.data() + hex.size())
    throw Error(ErrorCode::InvalidArgument, "bad hex bit string '" + std::string(hex) + "'");
  return OracleInput(n, v);
}

bool OracleInput::bit(std::uint64_t i) const {
  if (i >= size()) throw Error(ErrorCode::IndexOutOfRange, "bit index " + std::to_string(i));
  return (bits_ >> i) & 1U;
}

unsigned OracleInput::weight() const noexcept { return static_cast<unsigned>(std::popcount(bits_)); }

std::string OracleInput::hex() const {
  const std::size_t width = (size() + 3) / 4;
  std::string out(width, '0');
  std::uint64_t v = bits_;
  for (std::size_t k = width; k-- > 0;) {
    out[k] = "0123456789abcdef"[v & 0xF];
    v >>= 4;
  }
  return out;
}

CountingSpec::CountingSpec(unsigned n_, Rational eps) : n(n_), epsilon(eps) {
  if (n > kMaxQubits) throw Error(ErrorCode::InvalidArgument, "n exceeds " + std::to_string(kMaxQubits));
  if (epsilon.num() <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
}

Rational CountingSpec::beta() const {
  // eps / (2 + eps) with eps = a/b is a / (2b + a).
  return Rational(epsilon.num(), 2 * epsilon.den() + epsilon.num());
}

bool counting_accepts(const CountingSpec& spec, std::uint64_t m, std::uint64_t v) {
  if (m == 0) return v == 0;
  const Rational beta = spec.beta();
  const __int128 diff = v > m ? static_cast<__int128>(v - m) : static_cast<__int128>(m - v);
  return diff * beta.den() <= static_cast<__int128>(beta.num()) * m;
}

bool weights_disjoint(const CountingSpec& spec, std::uint64_t wx, std::uint64_t wy) {
  for (std::uint64_t v = 0; v <= spec.N(); ++v) {
    if (counting_accepts(spec, wx, v) && counting_accepts(spec, wy, v)) return false;
  }
  return true;
}

bool values_disjoint(const CountingSpec& spec, const OracleInput& x, const OracleInput& y) {
  return weights_disjoint(spec, x.weight(), y.weight());
}

std::uint64_t CountingInstance::gap() const {
  return static_cast<std::uint64_t>(spec.epsilon.num()) * K / static_cast<std::uint64_t>(spec.epsilon.den());
}

std::vector<OracleInput> inputs_of_weight(unsigned n, unsigned w) {
  const OracleInput probe(n, 0);
  const std::uint64_t N = probe.size();
  std::vector<OracleInput> out;
  if (w > N) return out;
  if (w == 0) return {OracleInput(n, 0)};
  // Gosper's hack: next larger integer with the same popcount.
  std::uint64_t v = (w == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
  const std::uint64_t limit = (N == 64) ? 0 : (std::uint64_t{1} << N);
  while (true) {
    out.emplace_back(n, v);
    if (w == N) break;
    const std::uint64_t c = v & (~v + 1);
    const std::uint64_t r = v + c;
    if (r == 0) break;
    v = (((r ^ v) >> 2) / c) | r;
    if (limit != 0 && v >= limit) break;
  }
  return out;
}

CountingInstance build_counting_instance(unsigned n, unsigned K, Rational epsilon) {
  CountingSpec spec(n, epsilon);
  if (K == 0) throw Error(ErrorCode::InvalidArgument, "K must be positive");
  const auto a = static_cast<std::uint64_t>(epsilon.num());
  const auto b = static_cast<std::uint64_t>(epsilon.den());
  if ((a * K) % b != 0)
    throw Error(ErrorCode::NonIntegerParameters,
                "eps*K = " + std::to_string(a * K) + "/" + std::to_string(b) + " is not an integer");
  const std::uint64_t gap = a * K / b;
  if (K + gap > spec.N())
    throw Error(ErrorCode::Overflow,
                "(1+eps)K = " + std::to_string(K + gap) + " exceeds N = " + std::to_string(spec.N()));
  if (!weights_disjoint(spec, K, K + gap))
    throw Error(ErrorCode::ValueOverlap, "acceptance windows of " + std::to_string(K) + " and " +
                                             std::to_string(K + gap) + " share an integer");

  CountingInstance inst{spec, K, inputs_of_weight(n, K), inputs_of_weight(n, static_cast<unsigned>(K + gap))};
  return inst;
}

std::string to_record(const CountingInstance& inst) {
  std::ostringstream os;
  os << "n=" << inst.spec.n << "\n";
  os << "K=" << inst.K << "\n";
  os << "eps=" << inst.spec.epsilon.str() << "\n";
  auto list = [&](const char* key, const std::vector<OracleInput>& v) {
    os << key << "=";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].hex();
    os << "\n";
  };
  list("X", inst.X);
  list("Y", inst.Y);
  return os.str();
}

CountingInstance parse_record(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::int64_t n = -1, K = -1;
  std::string eps, xs, ys;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "n") n = parse_int(val, "n");
    else if (key == "K") K = parse_int(val, "K");
    else if (key == "eps") eps = val;
    else if (key == "X") xs = val;
    else if (key == "Y") ys = val;
  }
  if (n < 0 || K < 0 || eps.empty()) throw Error(ErrorCode::InvalidArgument, "incomplete instance record");
  auto inst = build_counting_instance(static_cast<unsigned>(n), static_cast<unsigned>(K), Rational::parse(eps));
  auto check = [&](const std::string& listed, const std::vector<OracleInput>& expected, const char* name) {
    std::vector<OracleInput> got;
    std::istringstream ls(listed);
    std::string tok;
    while (std::getline(ls, tok, ',')) got.push_back(OracleInput::from_hex(inst.spec.n, tok));
    if (got != expected) throw Error(ErrorCode::InvalidArgument, std::string("record ") + name + " list does not match parameters");
  };
  check(xs, inst.X, "X");
  check(ys, inst.Y, "Y");
  return inst;
}

}  // namespace paradv
