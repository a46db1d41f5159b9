#pragma once

#include "cycode/common.hpp"

namespace cycode {

// Closed interval with exact rational endpoints. All operations are exact,
// so enclosures are rigorous without any rounding mode handling; coarsen()
// trades tightness for bounded denominator size.
struct RatInterval {
    Rat lo{0};
    Rat hi{0};

    static RatInterval point(const Rat& v) { return {v, v}; }

    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    Rat rad() const { return (hi - lo) / 2; }

    friend RatInterval operator+(const RatInterval& a, const RatInterval& b) {
        return {a.lo + b.lo, a.hi + b.hi};
    }
    friend RatInterval operator-(const RatInterval& a, const RatInterval& b) {
        return {a.lo - b.hi, a.hi - b.lo};
    }
    friend RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }
    friend RatInterval operator*(const RatInterval& a, const RatInterval& b);

    RatInterval square() const;
    RatInterval reciprocal() const;  // requires !contains_zero()

    // smallest interval with endpoints in 2^-bits * Z containing *this
    RatInterval coarsened(unsigned bits) const;

    // subset of the interior of o
    bool strictly_inside(const RatInterval& o) const { return o.lo < lo && hi < o.hi; }

    static RatInterval intersect(const RatInterval& a, const RatInterval& b);  // throws if empty
    static RatInterval hull(const RatInterval& a, const RatInterval& b);
};

struct ComplexInterval {
    RatInterval re;
    RatInterval im;

    static ComplexInterval point(const Rat& re, const Rat& im) {
        return {RatInterval::point(re), RatInterval::point(im)};
    }

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b);

    RatInterval abs2() const { return re.square() + im.square(); }
    Rat max_rad() const {
        Rat r = re.rad(), i = im.rad();
        return r > i ? r : i;
    }
    ComplexInterval coarsened(unsigned bits) const { return {re.coarsened(bits), im.coarsened(bits)}; }
    bool strictly_inside(const ComplexInterval& o) const {
        return re.strictly_inside(o.re) && im.strictly_inside(o.im);
    }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

}  // namespace cycode
