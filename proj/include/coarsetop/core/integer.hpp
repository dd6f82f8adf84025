// Copyright 2026 The coarsetop Authors
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace coarsetop {

using Integer = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;

class OverflowError : public std::overflow_error {
public:
    OverflowError() : std::overflow_error("int64 overflow") {}
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer checked_add(Integer a, Integer b) {
    Integer r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline Integer checked_sub(Integer a, Integer b) {
    Integer r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError();
    return r;
}

inline Integer checked_mul(Integer a, Integer b) {
    Integer r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError();
    return r;
}

// Arithmetic shims so the Smith code can be templated over Integer and BigInt.
template <class T> struct Arith;

template <> struct Arith<Integer> {
    static Integer add(Integer a, Integer b) { return checked_add(a, b); }
    static Integer sub(Integer a, Integer b) { return checked_sub(a, b); }
    static Integer mul(Integer a, Integer b) { return checked_mul(a, b); }
    static Integer neg(Integer a) { return checked_sub(0, a); }
    static Integer abs(Integer a) { return a < 0 ? neg(a) : a; }
    // floor division
    static Integer fdiv(Integer a, Integer b) {
        if (a == INT64_MIN && b == -1) throw OverflowError();
        Integer q = a / b;
        if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
        return q;
    }
};

template <> struct Arith<BigInt> {
    static BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
    static BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
    static BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
    static BigInt neg(const BigInt& a) { return -a; }
    static BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
    static BigInt fdiv(const BigInt& a, const BigInt& b) {
        BigInt q = a / b;
        if ((q * b != a) && ((a < 0) != (b < 0))) --q;
        return q;
    }
};

inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += (m < 0 ? BigInt(-m) : m);
    return r;
}

inline std::string to_string(const BigInt& b) { return b.str(); }

} // namespace coarsetop
