#include "treelike/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace treelike {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

Rat rat_from_string(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("empty rational literal");

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = (s.front() == '-');
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("sign without digits in rational literal");

    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash != std::string_view::npos && dot != std::string_view::npos)
        throw std::invalid_argument("rational literal mixes '/' and '.': " + std::string(text));

    Rat value;
    if (slash != std::string_view::npos) {
        std::string_view num = s.substr(0, slash);
        std::string_view den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw std::invalid_argument("malformed rational literal: " + std::string(text));
        mpz_class p(std::string(num), 10);
        mpz_class q(std::string(den), 10);
        if (q == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
        value = Rat(p, q);
        value.canonicalize();
    } else if (dot != std::string_view::npos) {
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        if (whole.empty() && frac.empty())
            throw std::invalid_argument("malformed decimal literal: " + std::string(text));
        if (!whole.empty() && !all_digits(whole))
            throw std::invalid_argument("malformed decimal literal: " + std::string(text));
        if (!frac.empty() && !all_digits(frac))
            throw std::invalid_argument("malformed decimal literal: " + std::string(text));
        mpz_class p(whole.empty() ? std::string("0") : std::string(whole), 10);
        mpz_class scale = 1;
        for (char c : frac) {
            p = p * 10 + (c - '0');
            scale *= 10;
        }
        value = Rat(p, scale);
        value.canonicalize();
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed integer literal: " + std::string(text));
        value = Rat(mpz_class(std::string(s), 10));
    }

    if (negative) value = -value;
    return value;
}

std::string rat_to_string(const Rat& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

}  // namespace treelike
