#include "sfint/report.hpp"

#include <json.hpp>

namespace sfint {

using nlohmann::json;

std::string Report::to_json(int indent) const {
    json j;
    j["ode"] = {{"M", ode_m}, {"N", ode_n}};
    j["options"] = options;
    j["stages"] = json::array();
    for (auto& s : stages)
        j["stages"].push_back(
            {{"name", s.name}, {"status", s.status}, {"output", s.output}, {"millis", s.millis}});
    j["s_functions"] = s_functions;
    j["associated_odes"] = associated_odes;
    j["h_functions"] = h_functions;
    j["reduced_ode"] = reduced_ode;
    j["first_integral"] = first_integral;
    j["verification"] = {{"method", verification.method},
                         {"points", verification.points},
                         {"max_abs_residual", verification.max_abs_residual},
                         {"passed", verification.passed}};
    j["exit"] = exit_code;
    return j.dump(indent);
}

Report Report::from_json(const std::string& text) {
    json j = json::parse(text);
    Report r;
    r.ode_m = j.at("ode").at("M").get<std::string>();
    r.ode_n = j.at("ode").at("N").get<std::string>();
    r.options = j.at("options").get<std::map<std::string, std::string>>();
    for (auto& s : j.at("stages")) {
        StageRecord rec;
        rec.name = s.at("name").get<std::string>();
        rec.status = s.at("status").get<std::string>();
        rec.output = s.at("output").get<std::string>();
        rec.millis = s.at("millis").get<long long>();
        r.stages.push_back(std::move(rec));
    }
    r.s_functions = j.at("s_functions").get<std::map<std::string, std::string>>();
    r.associated_odes = j.at("associated_odes").get<std::vector<std::string>>();
    r.h_functions = j.at("h_functions").get<std::vector<std::string>>();
    r.reduced_ode = j.at("reduced_ode").get<std::string>();
    r.first_integral = j.at("first_integral").get<std::string>();
    auto& v = j.at("verification");
    r.verification.method = v.at("method").get<std::string>();
    r.verification.points = v.at("points").get<int>();
    r.verification.max_abs_residual = v.at("max_abs_residual").get<double>();
    r.verification.passed = v.at("passed").get<bool>();
    r.exit_code = j.at("exit").get<int>();
    return r;
}

Report Report::without_timing() const {
    Report r = *this;
    for (auto& s : r.stages) s.millis = 0;
    return r;
}

} // namespace sfint
