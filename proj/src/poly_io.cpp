#include <sstream>

#include "fricke/tripoly.hpp"
#include "json.hpp"

namespace fricke {

namespace {

std::string coeff_str(const Rat& c) {
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat coeff_parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Rat r(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    r.canonicalize();
    return r;
}

nlohmann::ordered_json meta_json(const std::map<std::string, std::string>& meta) {
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta) m[k] = v;
    return m;
}

}  // namespace

std::string to_json(const TriPoly& p, const std::map<std::string, std::string>& meta) {
    nlohmann::ordered_json j;
    j["family"] = family_tag(p.family);
    j["ell"] = p.ell;
    j["weight"] = p.weight_w;
    j["vars"] = "E4E6D";
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [m, c] : p.monomials) {
        arr.push_back({{m.r, m.i4, m.i6, m.i12}, coeff_str(c)});
    }
    j["monomials"] = arr;
    if (!meta.empty()) j["meta"] = meta_json(meta);
    return j.dump(1);
}

std::string to_json(const ABPoly& p, const std::map<std::string, std::string>& meta) {
    nlohmann::ordered_json j;
    j["family"] = family_tag(p.family);
    j["ell"] = p.ell;
    j["weight"] = p.weight_w;
    j["vars"] = "AB";
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [m, c] : p.monomials) {
        arr.push_back({{m.r, m.iA, m.iB}, coeff_str(c)});
    }
    j["monomials"] = arr;
    if (!meta.empty()) j["meta"] = meta_json(meta);
    return j.dump(1);
}

bool json_vars_are_ab(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    return j.at("vars").get<std::string>() == "AB";
}

TriPoly tripoly_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.at("vars").get<std::string>() != "E4E6D")
        throw std::invalid_argument("tripoly_from_json: vars mismatch");
    TriPoly p;
    p.ell = j.at("ell").get<long>();
    p.weight_w = j.value("weight", 2);
    p.family = family_from_tag(j.at("family").get<std::string>()).value_or(Family::Phi);
    for (const auto& e : j.at("monomials")) {
        const auto& m = e.at(0);
        p.add_term({m.at(0).get<int>(), m.at(1).get<int>(), m.at(2).get<int>(), m.at(3).get<int>()},
                   coeff_parse(e.at(1).get<std::string>()));
    }
    return p;
}

ABPoly abpoly_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.at("vars").get<std::string>() != "AB")
        throw std::invalid_argument("abpoly_from_json: vars mismatch");
    ABPoly p;
    p.ell = j.at("ell").get<long>();
    p.weight_w = j.value("weight", 2);
    p.family = family_from_tag(j.at("family").get<std::string>()).value_or(Family::Phi);
    for (const auto& e : j.at("monomials")) {
        const auto& m = e.at(0);
        p.add_term({m.at(0).get<int>(), m.at(1).get<int>(), m.at(2).get<int>()},
                   coeff_parse(e.at(1).get<std::string>()));
    }
    return p;
}

namespace {

// inner polynomial for one X-degree, highest E4-power first (paper order)
template <class Map, class MonoPrinter>
std::string line_for_degree(const Map& monos, int r, MonoPrinter print_mono) {
    std::ostringstream os;
    bool first = true;
    for (auto it = monos.rbegin(); it != monos.rend(); ++it) {
        if (it->first.r != r) continue;
        const Rat& c = it->second;
        std::string cs = coeff_str(c >= 0 ? c : Rat(-c));
        std::string mono = print_mono(it->first);
        if (first) {
            os << (c < 0 ? "-" : "");
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (mono.empty()) {
            os << cs;
        } else if (cs == "1") {
            os << mono;
        } else {
            os << cs << "*" << mono;
        }
    }
    return os.str();
}

}  // namespace

std::string to_text(const TriPoly& p) {
    std::ostringstream os;
    os << family_tag(p.family) << "_" << p.ell << " vars=(X,E4,E6,Delta) weight=" << p.weight_w
       << "\n";
    auto printer = [](const Mono4& m) {
        std::ostringstream t;
        bool need_sep = false;
        auto put = [&](const char* v, int e) {
            if (!e) return;
            if (need_sep) t << "*";
            t << v;
            if (e > 1) t << "^" << e;
            need_sep = true;
        };
        put("E4", m.i4);
        put("E6", m.i6);
        put("Delta", m.i12);
        return t.str();
    };
    for (int r = p.degree_x(); r >= 0; --r) {
        auto line = line_for_degree(p.monomials, r, printer);
        if (line.empty()) continue;
        os << "X^" << r << ": " << line << "\n";
    }
    return os.str();
}

std::string to_text(const ABPoly& p) {
    std::ostringstream os;
    os << family_tag(p.family) << "_" << p.ell << " vars=(X,A,B) weight=" << p.weight_w << "\n";
    auto printer = [](const Mono3& m) {
        std::ostringstream t;
        bool need_sep = false;
        auto put = [&](const char* v, int e) {
            if (!e) return;
            if (need_sep) t << "*";
            t << v;
            if (e > 1) t << "^" << e;
            need_sep = true;
        };
        put("A", m.iA);
        put("B", m.iB);
        return t.str();
    };
    for (int r = p.degree_x(); r >= 0; --r) {
        auto line = line_for_degree(p.monomials, r, printer);
        if (line.empty()) continue;
        os << "X^" << r << ": " << line << "\n";
    }
    return os.str();
}

}  // namespace fricke
