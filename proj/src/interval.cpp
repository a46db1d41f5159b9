#include "cycode/interval.hpp"

#include <algorithm>

namespace cycode {

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min(std::min(p1, p2), std::min(p3, p4)),
            std::max(std::max(p1, p2), std::max(p3, p4))};
}

RatInterval RatInterval::square() const {
    if (lo >= 0) return {lo * lo, hi * hi};
    if (hi <= 0) return {hi * hi, lo * lo};
    Rat l2 = lo * lo, h2 = hi * hi;
    return {Rat(0), std::max(l2, h2)};
}

RatInterval RatInterval::reciprocal() const {
    if (contains_zero()) throw MathError("reciprocal of an interval containing zero");
    return {Rat(1) / hi, Rat(1) / lo};
}

namespace {

Rat floor_to_bits(const Rat& x, unsigned bits) {
    Int scale = Int(1) << bits;
    Int n = numerator(x) * scale;
    Int d = denominator(x);
    Int q = n / d;
    if (n < 0 && q * d != n) q -= 1;  // floor for negatives
    return Rat(q, scale);
}

Rat ceil_to_bits(const Rat& x, unsigned bits) {
    Int scale = Int(1) << bits;
    Int n = numerator(x) * scale;
    Int d = denominator(x);
    Int q = n / d;
    if (n > 0 && q * d != n) q += 1;
    return Rat(q, scale);
}

}  // namespace

RatInterval RatInterval::coarsened(unsigned bits) const {
    return {floor_to_bits(lo, bits), ceil_to_bits(hi, bits)};
}

RatInterval RatInterval::intersect(const RatInterval& a, const RatInterval& b) {
    Rat l = std::max(a.lo, b.lo);
    Rat h = std::min(a.hi, b.hi);
    if (l > h) throw MathError("empty interval intersection");
    return {l, h};
}

RatInterval RatInterval::hull(const RatInterval& a, const RatInterval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
    RatInterval n = b.abs2();
    if (n.contains_zero()) throw MathError("division by a complex interval containing zero");
    RatInterval inv = n.reciprocal();
    ComplexInterval conj{b.re, -b.im};
    ComplexInterval prod = a * conj;
    return {prod.re * inv, prod.im * inv};
}

}  // namespace cycode
