#include "eprlab/exact.hpp"

namespace eprlab {

bool is_dyadic(const Exact& value) {
  const auto den = value.denominator();
  return den > 0 && (den & (den - 1)) == 0;
}

std::string to_string(const Exact& value) {
  if (value.denominator() == 1) {
    return std::to_string(value.numerator());
  }
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

}  // namespace eprlab
