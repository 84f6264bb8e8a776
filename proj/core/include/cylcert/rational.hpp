#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace cylcert {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long long num, long long den = 1) { return Rat(Int(num), Int(den)); }

inline std::string to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace cylcert
