#ifndef CTRSLAB_REPORT_HPP
#define CTRSLAB_REPORT_HPP

#include <json.hpp>

#include "ctrslab/engine.hpp"
#include "ctrslab/oracle.hpp"

namespace ctrslab {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportFormatVersion = 1;

inline nlohmann::json to_json(const EngineCaps& caps) {
    return {{"max_steps", caps.max_steps},
            {"max_nodes", caps.max_nodes},
            {"max_level", caps.max_level},
            {"max_term_size", caps.max_term_size}};
}

inline nlohmann::json to_json(const DerivationRecord& rec) {
    return {{"from", to_string(rec.from)},
            {"pos", to_string(rec.pos)},
            {"rule", rec.rule},
            {"to", to_string(rec.to)}};
}

inline nlohmann::json to_json(const Witness& w) {
    nlohmann::json j{{"seed", to_string(w.seed)}, {"target", to_string(w.target)}};
    if (w.back) j["back"] = to_string(*w.back);
    if (!w.note.empty()) j["note"] = w.note;
    nlohmann::json edges = nlohmann::json::array();
    for (const DerivationRecord& rec : w.derivation) edges.push_back(to_json(rec));
    if (!edges.empty()) j["derivation"] = edges;
    return j;
}

inline nlohmann::json to_json(const ProbeReport& p) {
    nlohmann::json j{{"name", p.name},
                     {"verdict", verdict_name(p.verdict)},
                     {"caps", to_json(p.caps)}};
    if (!p.note.empty()) j["note"] = p.note;
    if (!p.witnesses.empty()) j["witness"] = to_json(p.witnesses.front());
    return j;
}

inline nlohmann::json report_json(const std::string& system, const std::string& method,
                                  const CheckReport& report) {
    nlohmann::json probes = nlohmann::json::array();
    for (const ProbeReport& p : report.probes) probes.push_back(to_json(p));
    return {{"system", system},
            {"method", method},
            {"probes", probes},
            {"versions", {{"ctrslab", kToolVersion}, {"format", kReportFormatVersion}}}};
}

inline nlohmann::json to_json(const CorpusReport& report) {
    nlohmann::json systems = nlohmann::json::array();
    for (const SystemProbes& sp : report.systems) {
        nlohmann::json probes = nlohmann::json::array();
        for (const ProbeReport& p : sp.probes) probes.push_back(to_json(p));
        systems.push_back({{"system", sp.system},
                           {"method", "corpus"},
                           {"iff_theorem", sp.iff_theorem},
                           {"probes", probes},
                           {"skipped", sp.skipped}});
    }
    return {{"systems", systems},
            {"aggregate", verdict_name(report.aggregate())},
            {"versions", {{"ctrslab", kToolVersion}, {"format", kReportFormatVersion}}}};
}

}  // namespace ctrslab

#endif  // CTRSLAB_REPORT_HPP
