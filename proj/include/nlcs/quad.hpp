#ifndef NLCS_QUAD_HPP
#define NLCS_QUAD_HPP

// 113-bit binary floating point for checks whose operands span many orders of
// magnitude (ordered exponential products of K+ and K-).

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>

namespace nlcs {

using quad = boost::multiprecision::float128;

} // namespace nlcs

#endif
