#pragma once

#include <cstdint>
#include <vector>

namespace wittkit {

/// The field with q = ell^k <= 128 elements, as full addition and
/// multiplication tables. Elements are encoded as base-ell digit strings of
/// their coordinates in F_ell[X]/(g) for an irreducible g; the prime subfield
/// is {0, ..., ell-1}.
class FiniteField {
 public:
  explicit FiniteField(unsigned q);

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return ell_; }
  unsigned degree() const noexcept { return k_; }

  std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return add_[a * q_ + b]; }
  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[a * q_ + b]; }
  std::uint8_t neg(std::uint8_t a) const { return neg_[a]; }
  /// Image of an integer residue in the prime subfield.
  std::uint8_t from_residue(unsigned long r) const { return static_cast<std::uint8_t>(r % ell_); }

  /// True for prime powers q in [2, 128].
  static bool is_supported_order(unsigned q);

 private:
  unsigned q_ = 0;
  unsigned ell_ = 0;
  unsigned k_ = 0;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> neg_;
};

}  // namespace wittkit
