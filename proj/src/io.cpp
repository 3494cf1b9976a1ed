#include "qrg/io.hpp"

#include <cstdio>

#include <json.hpp>

namespace qrg {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& rows) {
    os << "model,observable,step,gamma,value,derivative\n";
    for (const auto& r : rows)
        os << to_string(r.model) << ',' << to_string(r.observable) << ',' << r.step << ','
           << format_g17(r.gamma) << ',' << format_g17(r.value) << ','
           << format_g17(r.derivative) << '\n';
}

namespace {

nlohmann::json meta_object() {
    return {{"tool_version", kToolVersion}, {"size_convention", kSizeConventionNote}};
}

}  // namespace

std::string sweep_json(const std::vector<SweepRecord>& rows) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : rows)
        recs.push_back({{"model", to_string(r.model)},
                        {"observable", to_string(r.observable)},
                        {"step", r.step},
                        {"gamma", r.gamma},
                        {"value", r.value},
                        {"derivative", r.derivative},
                        {"one_sided", r.one_sided}});
    nlohmann::json doc = {{"records", recs}, {"meta", meta_object()}};
    return doc.dump(2) + "\n";
}

void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows,
                       const std::vector<ScalingFit>& fits) {
    os << "n,N,gamma_m,max_abs_derivative\n";
    for (const auto& r : rows)
        os << r.n << ',' << format_g17(r.N) << ',' << format_g17(r.gamma_m) << ','
           << format_g17(r.max_abs_derivative) << '\n';
    for (const auto& f : fits)
        os << "# theta=" << format_g17(f.theta) << " c=" << format_g17(f.c)
           << " r2=" << format_g17(f.r_squared) << '\n';
}

std::string scaling_json(Model m, Observable o, const std::vector<ScalingRow>& rows,
                         const std::vector<ScalingFit>& fits,
                         const std::vector<std::string>& fit_names) {
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : rows)
        recs.push_back({{"n", r.n},
                        {"N", r.N},
                        {"gamma_m", r.gamma_m},
                        {"max_abs_derivative", r.max_abs_derivative}});
    nlohmann::json jfits = nlohmann::json::object();
    for (std::size_t i = 0; i < fits.size(); ++i)
        jfits[fit_names[i]] = {{"theta", fits[i].theta},
                               {"c", fits[i].c},
                               {"r2", fits[i].r_squared}};
    nlohmann::json doc = {{"model", to_string(m)},
                          {"observable", to_string(o)},
                          {"records", recs},
                          {"fits", jfits},
                          {"meta", meta_object()}};
    return doc.dump(2) + "\n";
}

}  // namespace qrg
