#include "coklab/numeric.hpp"

#include <cstdlib>

namespace coklab {

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

std::string rational_to_string(const Rational& q) {
    const Int& num = boost::multiprecision::numerator(q);
    const Int& den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::size_t max_enum_bound(std::size_t fallback) {
    if (const char* env = std::getenv("COKLAB_MAX_ENUM")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return fallback;
}

}  // namespace coklab
