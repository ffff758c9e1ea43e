// Copyright 2026 The nfl-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NFLLAB_RATIONAL_HPP
#define NFLLAB_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nfllab {

// Exact arithmetic for every theorem check that asserts equality rather than
// closeness. Conversion from double is exact (a finite double is a dyadic
// rational).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace nfllab

#endif  // NFLLAB_RATIONAL_HPP
