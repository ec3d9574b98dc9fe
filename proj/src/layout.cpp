#include "paradv/layout.hpp"

namespace paradv {

std::size_t RegisterLayout::dim() const noexcept {
  std::size_t d = workspace << p;
  for (unsigned r = 0; r < p; ++r) d *= N();
  return d;
}

std::size_t RegisterLayout::index_stride(unsigned r) const noexcept {
  std::size_t s = workspace << p;
  for (unsigned k = r + 1; k < p; ++k) s *= N();
  return s;
}

std::size_t RegisterLayout::bit_stride(unsigned r) const noexcept {
  return workspace << (p - 1 - r);
}

}  // namespace paradv
