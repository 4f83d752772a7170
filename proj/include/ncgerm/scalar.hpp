#ifndef NCGERM_SCALAR_HPP
#define NCGERM_SCALAR_HPP

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "ncgerm/error.hpp"

namespace ncgerm {

/// Exact rational number, always kept in canonical form.
using Scalar = mpq_class;

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace detail

/// Parses "p/q", "-p/q" or an integer "p".
inline Scalar parse_scalar(std::string_view text) {
    std::string_view t = text;
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.remove_prefix(1);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.remove_suffix(1);
    std::string_view body = t;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
        throw ParseError("malformed scalar '" + std::string(text) + "'");
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in scalar '" + std::string(text) + "'");
    Scalar q(n, d);
    q.canonicalize();
    return negative ? Scalar(-q) : q;
}

/// Always "p/q", with q = 1 for integers.
inline std::string format_scalar(const Scalar& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// Short human form: "3" for integers, "p/q" otherwise.
inline std::string pretty_scalar(const Scalar& x) { return x.get_str(); }

} // namespace ncgerm

#endif // NCGERM_SCALAR_HPP
