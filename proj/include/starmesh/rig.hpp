#pragma once

// Commutative positive division rigs: the value types circuits carry as
// conductances. Four instances are provided: exact non-negative rationals,
// non-negative 64-bit floats, the two-element lattice, and the tropical
// rig (max, +) over the reals with -inf as zero.

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace starmesh {

/// Requirements on a rig instance. All operations are pure and values are
/// immutable; `parse` returns nullopt on malformed input, and `format` is
/// its exact inverse on every representable value.
template <typename R>
concept rig = requires(const typename R::value_type& a,
                       const typename R::value_type& b,
                       std::string_view s) {
    typename R::value_type;
    { R::name } -> std::convertible_to<std::string_view>;
    { R::zero() } -> std::same_as<typename R::value_type>;
    { R::one() } -> std::same_as<typename R::value_type>;
    { R::add(a, b) } -> std::same_as<typename R::value_type>;
    { R::mul(a, b) } -> std::same_as<typename R::value_type>;
    { R::inv(a) } -> std::same_as<typename R::value_type>;
    { R::eq(a, b) } -> std::convertible_to<bool>;
    { R::parse(s) } -> std::same_as<std::optional<typename R::value_type>>;
    { R::format(a) } -> std::convertible_to<std::string>;
};

template <typename R>
bool is_rig_zero(const typename R::value_type& a) {
    return R::eq(a, R::zero());
}

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator by the backend. Expression templates are disabled so the
/// type has plain value semantics.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    double v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace detail

/// Exact non-negative rationals under the usual (+, *). Values print as
/// "p/q", or "p" when the denominator is 1.
struct RationalRig {
    using value_type = Rational;
    static constexpr std::string_view name = "rational";

    static value_type zero() { return Rational(0); }
    static value_type one() { return Rational(1); }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }

    static value_type inv(const value_type& a) {
        if (a == 0) throw division_by_zero("rational: inverse of zero");
        return Rational(denominator(a), numerator(a));
    }

    static bool eq(const value_type& a, const value_type& b) { return a == b; }

    static std::optional<value_type> parse(std::string_view s) {
        auto slash = s.find('/');
        std::string_view num = s.substr(0, slash);
        if (!detail::all_digits(num)) return std::nullopt;
        BigInt p{std::string(num)};
        if (slash == std::string_view::npos) return Rational(p);
        std::string_view den = s.substr(slash + 1);
        if (!detail::all_digits(den)) return std::nullopt;
        BigInt q{std::string(den)};
        if (q == 0) return std::nullopt;
        return Rational(p, q);
    }

    static std::string format(const value_type& a) { return a.str(); }
};

/// Finite non-negative doubles. Equality is a documented surrogate for the
/// exact rig equality: relative tolerance 1e-9 with absolute floor 1e-12.
struct Float64Rig {
    using value_type = double;
    static constexpr std::string_view name = "float64";

    static constexpr double rel_tol = 1e-9;
    static constexpr double abs_tol = 1e-12;

    static value_type zero() { return 0.0; }
    static value_type one() { return 1.0; }
    static value_type add(value_type a, value_type b) { return a + b; }
    static value_type mul(value_type a, value_type b) { return a * b; }

    static value_type inv(value_type a) {
        if (eq(a, 0.0)) throw division_by_zero("float64: inverse of zero");
        return 1.0 / a;
    }

    static bool eq(value_type a, value_type b) {
        double diff = std::fabs(a - b);
        return diff <= std::max(abs_tol, rel_tol * std::max(std::fabs(a), std::fabs(b)));
    }

    static std::optional<value_type> parse(std::string_view s) {
        auto v = detail::parse_double(s);
        if (!v || *v < 0) return std::nullopt;
        if (*v == 0) return 0.0; // fold -0 into +0
        return v;
    }

    static std::string format(value_type a) { return detail::format_double(a); }
};

/// The two-element lattice: addition is join, multiplication is meet. The
/// only nonzero element is `one`, so it is its own inverse.
struct LatticeRig {
    using value_type = bool;
    static constexpr std::string_view name = "lattice";

    static value_type zero() { return false; }
    static value_type one() { return true; }
    static value_type add(value_type a, value_type b) { return a || b; }
    static value_type mul(value_type a, value_type b) { return a && b; }

    static value_type inv(value_type a) {
        if (!a) throw division_by_zero("lattice: inverse of zero");
        return true;
    }

    static bool eq(value_type a, value_type b) { return a == b; }

    static std::optional<value_type> parse(std::string_view s) {
        if (s == "1") return true;
        if (s == "0") return false;
        return std::nullopt;
    }

    static std::string format(value_type a) { return a ? "1" : "0"; }
};

/// The tropical rig (R union {-inf}, max, +): rig addition is max with
/// unit -inf, rig multiplication is real addition with unit 0. Every
/// finite value is invertible via negation.
struct TropicalRig {
    using value_type = double;
    static constexpr std::string_view name = "tropical";

    static value_type zero() { return -std::numeric_limits<double>::infinity(); }
    static value_type one() { return 0.0; }
    static value_type add(value_type a, value_type b) { return std::max(a, b); }
    static value_type mul(value_type a, value_type b) { return a + b; }

    static value_type inv(value_type a) {
        if (a == zero()) throw division_by_zero("tropical: inverse of -inf");
        return a == 0.0 ? 0.0 : -a;
    }

    static bool eq(value_type a, value_type b) { return a == b; }

    static std::optional<value_type> parse(std::string_view s) {
        if (s == "-inf") return zero();
        auto v = detail::parse_double(s);
        if (!v) return std::nullopt;
        if (*v == 0) return 0.0;
        return v;
    }

    static std::string format(value_type a) {
        if (a == zero()) return "-inf";
        return detail::format_double(a);
    }
};

static_assert(rig<RationalRig>);
static_assert(rig<Float64Rig>);
static_assert(rig<LatticeRig>);
static_assert(rig<TropicalRig>);

} // namespace starmesh
