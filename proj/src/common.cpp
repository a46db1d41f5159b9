#include "cycode/common.hpp"

#include <cctype>

namespace cycode {

Int rat_height(const Rat& q) {
    Int n = boost::multiprecision::abs(numerator(q));
    Int d = denominator(q);
    return n > d ? n : d;
}

std::string rat_to_string(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

Int int_from_string(std::string_view s) {
    if (s.empty()) throw ConfigError("empty integer literal");
    size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = (s[0] == '-');
        i = 1;
    }
    if (i == s.size()) throw ConfigError("bare sign is not an integer");
    Int v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw ConfigError("bad digit in integer literal: " + std::string(s));
        v = v * 10 + (s[i] - '0');
    }
    return neg ? Int(-v) : v;
}

}  // namespace

Rat rat_from_string(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(int_from_string(s));
    Int num = int_from_string(s.substr(0, slash));
    Int den = int_from_string(s.substr(slash + 1));
    if (den == 0) throw ConfigError("zero denominator in rational literal: " + std::string(s));
    return Rat(num, den);
}

Rat rat_from_decimal(std::string_view s) {
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return rat_from_string(s);
    std::string_view head = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (frac.find('/') != std::string_view::npos)
        throw ConfigError("mixed decimal/fraction literal: " + std::string(s));
    bool neg = !head.empty() && head[0] == '-';
    Int ip = head.empty() || head == "-" || head == "+" ? Int(0) : int_from_string(head);
    Int fp = frac.empty() ? Int(0) : int_from_string(frac);
    Int scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Int num = boost::multiprecision::abs(ip) * scale + fp;
    if (neg) num = -num;
    return Rat(num, scale);
}

bool rat_is_square(const Rat& q) {
    if (q < 0) return false;
    Int n = numerator(q), d = denominator(q);
    Int rn = boost::multiprecision::sqrt(n);
    Int rd = boost::multiprecision::sqrt(d);
    return rn * rn == n && rd * rd == d;
}

uint64_t fnv1a64(std::string_view data) {
    uint64_t h = 1469598103934665603ULL;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace cycode
