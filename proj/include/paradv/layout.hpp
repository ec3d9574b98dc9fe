#pragma once

#include <cstddef>
#include <cstdint>

namespace paradv {

/// Basis of the p-parallel query register: (i_1..i_p; b_1..b_p; workspace)
/// in mixed radix, i_1 most significant and the workspace digit least.
struct RegisterLayout {
  unsigned n = 1;
  unsigned p = 1;
  std::size_t workspace = 1;

  std::uint64_t N() const noexcept { return std::uint64_t{1} << n; }
  std::size_t dim() const noexcept;

  /// Stride of index register r (0-based, r = 0 is i_1).
  std::size_t index_stride(unsigned r) const noexcept;
  /// Stride of output bit r.
  std::size_t bit_stride(unsigned r) const noexcept;

  std::uint64_t index_digit(std::size_t basis, unsigned r) const noexcept {
    return (basis / index_stride(r)) % N();
  }
  unsigned bit_digit(std::size_t basis, unsigned r) const noexcept {
    return static_cast<unsigned>((basis / bit_stride(r)) & 1U);
  }
  std::size_t workspace_digit(std::size_t basis) const noexcept { return basis % workspace; }

  friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;
};

}  // namespace paradv
