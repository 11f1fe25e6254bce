#include "annulus/perturbation.hpp"

#include <cmath>
#include <json.hpp>

namespace annulus {

double Perturbation::eval(const std::map<MonomialIndex, Rational>& m, double x, double y) {
    double acc = 0.0;
    for (const auto& [idx, c] : m)
        acc += to_double(c) * std::pow(x, idx.i) * std::pow(y, idx.j);
    return acc;
}

std::string perturbation_to_json(const Perturbation& p) {
    nlohmann::json j;
    j["lambda"] = to_string(p.lambda);
    j["n"] = p.n;
    auto dump = [](const std::map<MonomialIndex, Rational>& m) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [idx, c] : m)
            arr.push_back(nlohmann::json::array({idx.i, idx.j, to_string(c)}));
        return arr;
    };
    j["a"] = dump(p.a);
    j["b"] = dump(p.b);
    return j.dump(2);
}

Perturbation perturbation_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Perturbation p;
    p.n = j.at("n").get<int>();
    p.lambda = parse_rational(j.at("lambda").get<std::string>());
    auto load = [&](const char* key, bool into_a) {
        if (!j.contains(key)) return;
        for (const auto& row : j.at(key)) {
            int i = row.at(0).get<int>();
            int jj = row.at(1).get<int>();
            Rational c = parse_rational(row.at(2).get<std::string>());
            if (into_a) p.set_a(i, jj, c);
            else p.set_b(i, jj, c);
        }
    };
    load("a", true);
    load("b", false);
    return p;
}

// dy/dt gains eps*(2y + 15/2 xy^2 - 20 x^2 y - 245/8 x^2 y^2 + 40 x y^3 + 25 y^4)
Perturbation example_system_31() {
    Perturbation p;
    p.n = 4;
    p.lambda = Rational(1, 2);
    p.set_b(0, 1, rat(2));
    p.set_b(1, 2, rat(15, 2));
    p.set_b(2, 1, rat(-20));
    p.set_b(2, 2, rat(-245, 8));
    p.set_b(1, 3, rat(40));
    p.set_b(0, 4, rat(25));
    return p;
}

} // namespace annulus
