#include "annulus/io.hpp"

#include <charconv>
#include <json.hpp>

namespace annulus {

std::string to_string(const SurdScalar& x) {
    std::string out = to_string(x.rat_part()) + " + " + to_string(x.surd_part()) + "*s";
    out += " [pi^" + std::to_string(x.pi_power()) + "]";
    return out;
}

SurdScalar parse_surd(const std::string& text, const Rational& s_sq) {
    auto plus = text.find(" + ");
    auto star = text.find("*s");
    auto bracket = text.find(" [pi^");
    if (plus == std::string::npos || star == std::string::npos || bracket == std::string::npos)
        throw MathError("bad surd literal: " + text);
    Rational rat_part = parse_rational(text.substr(0, plus));
    Rational surd_part = parse_rational(text.substr(plus + 3, star - plus - 3));
    auto close = text.find(']', bracket);
    int pi_pow = std::stoi(text.substr(bracket + 5, close - bracket - 5));
    return SurdScalar::make(rat_part, surd_part, surd_part == 0 ? Rational(0) : s_sq, pi_pow);
}

std::vector<std::string> hpoly_to_strings(const HPoly& p) {
    std::vector<std::string> out;
    for (int k = 0; k <= p.degree(); ++k) out.push_back(to_string(p.coeff(k)));
    return out;
}

std::string hpoly_to_json(const HPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string& s : hpoly_to_strings(p)) arr.push_back(s);
    return arr.dump();
}

HPoly hpoly_from_json(const std::string& json_text, const Rational& s_sq) {
    nlohmann::json arr = nlohmann::json::parse(json_text);
    std::vector<SurdScalar> coeffs;
    for (const auto& item : arr) coeffs.push_back(parse_surd(item.get<std::string>(), s_sq));
    return HPoly(std::move(coeffs));
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace annulus
