#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace eprlab {

/// Exact scalar used by the algebra and oracle modules. Every amplitude and
/// probability that appears there is a signed dyadic rational k/2^m.
using Exact = boost::rational<std::int64_t>;

/// True when the reduced denominator is a power of two.
bool is_dyadic(const Exact& value);

/// "1/2", "-1/4", "1", "0".
std::string to_string(const Exact& value);

inline double to_double(const Exact& value) { return boost::rational_cast<double>(value); }

}  // namespace eprlab
