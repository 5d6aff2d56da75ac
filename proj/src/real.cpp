#include "opchain/real.hpp"

#include <cstdio>
#include <vector>

namespace opchain {
namespace detail {

mpfr_prec_t& tlsPrec() {
  thread_local mpfr_prec_t prec = PrecisionContext().bits();
  return prec;
}

}  // namespace detail

std::string Real::str(size_t digits10) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return mpfr_sgn(v_) > 0 ? "inf" : "-inf";
  size_t nd = digits10;
  if (nd == 0) {
    // enough digits to round-trip the binary value
    nd = static_cast<size_t>(mpfr_get_prec(v_) / 3.3219280948873623) + 3;
  }
  std::vector<char> buf(nd + 32);
  std::string fmt = "%." + std::to_string(nd - 1) + "Re";
  mpfr_snprintf(buf.data(), buf.size(), fmt.c_str(), v_);
  return std::string(buf.data());
}

}  // namespace opchain
