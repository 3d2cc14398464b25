// Value algebra: overflow-checked arithmetic and the semiring abstraction
// that parameterizes array multiplication.

#pragma once

#include <cstdint>
#include <string>
#include <type_traits>

#include "hierarr/error.hpp"

namespace hierarr {

// Integral addition/multiplication that reports overflow instead of
// wrapping. Non-integral types fall through to the plain operators.
template <typename T>
inline T checked_add(T a, T b) {
    if constexpr (std::is_integral_v<T>) {
        T out;
        if (__builtin_add_overflow(a, b, &out)) {
            throw value_overflow_error("add overflow: " + std::to_string(a) +
                                       " + " + std::to_string(b));
        }
        return out;
    } else {
        return a + b;
    }
}

template <typename T>
inline T checked_mul(T a, T b) {
    if constexpr (std::is_integral_v<T>) {
        T out;
        if (__builtin_mul_overflow(a, b, &out)) {
            throw value_overflow_error("multiply overflow: " + std::to_string(a) +
                                       " * " + std::to_string(b));
        }
        return out;
    } else {
        return a * b;
    }
}

// Function-object forms, usable as default collision/combine operators.
template <typename T>
struct checked_plus {
    T operator()(T a, T b) const { return checked_add<T>(a, b); }
};

template <typename T>
struct checked_times {
    T operator()(T a, T b) const { return checked_mul<T>(a, b); }
};

// A pair of binary operations with identities: plus must be associative and
// commutative with identity `zero`; times must distribute over plus with
// identity `one`; zero annihilates under times. The shipped numeric instance
// satisfies these by construction; the laws are exercised by property tests.
template <typename T>
struct semiring {
    using binary_op = T (*)(T, T);

    binary_op plus;
    binary_op times;
    T zero;
    T one;
};

template <typename T>
inline semiring<T> numeric_semiring() {
    return semiring<T>{&checked_add<T>, &checked_mul<T>, T{0}, T{1}};
}

} // namespace hierarr
