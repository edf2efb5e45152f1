#include "plat/element_set.hpp"

#include "plat/error.hpp"

namespace plat {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidPermutation: return "InvalidPermutation";
    case Errc::NotPGroup: return "NotPGroup";
    case Errc::OrderCapExceeded: return "OrderCapExceeded";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::BadParams: return "BadParams";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::LatticeCapExceeded: return "LatticeCapExceeded";
    case Errc::BadLevel: return "BadLevel";
    case Errc::NotComparable: return "NotComparable";
    case Errc::BadParam: return "BadParam";
    case Errc::NotInClass: return "NotInClass";
    case Errc::ClassNotSubgroupClosed: return "ClassNotSubgroupClosed";
    case Errc::IsMaximal: return "IsMaximal";
    case Errc::BadBoundInput: return "BadBoundInput";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::IoError: return "IoError";
    case Errc::ParseError: return "ParseError";
    case Errc::UsageError: return "UsageError";
  }
  return "Unknown";
}

ElementSet ElementSet::full(std::size_t size) {
  ElementSet s(size);
  for (std::size_t i = 0; i < size; ++i) s.set(static_cast<Elem>(i));
  return s;
}

ElementSet ElementSet::singleton(std::size_t size, Elem x) {
  ElementSet s(size);
  s.set(x);
  return s;
}

std::vector<Elem> ElementSet::elements() const {
  std::vector<Elem> out;
  out.reserve(count());
  for_each([&](Elem x) { out.push_back(x); });
  return out;
}

std::string ElementSet::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  const std::size_t n_digits = (size_ + 3) / 4;
  std::string out(n_digits == 0 ? 1 : n_digits, '0');
  for (std::size_t d = 0; d < n_digits; ++d) {
    const std::size_t bit = d * 4;
    const unsigned nibble = static_cast<unsigned>((words_[bit >> 6] >> (bit & 63)) & 0xf);
    out[n_digits - 1 - d] = digits[nibble];
  }
  return out;
}

std::size_t ElementSet::hash() const noexcept {
  // FNV-1a over words.
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace plat
