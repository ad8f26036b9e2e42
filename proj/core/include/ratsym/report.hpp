#ifndef RATSYM_REPORT_HPP
#define RATSYM_REPORT_HPP

#include "ratsym/dynamics.hpp"
#include "ratsym/parse.hpp"

#include <json.hpp>

#include <string>

namespace ratsym {

using Json = nlohmann::ordered_json;

// Bit-exact serialization: tower generators by name, tower elements as
// monomial/rational pairs, Moebius maps as four coefficient arrays.
Json tower_to_json(const Tower& t);
Json element_to_json(const TowerElement& x, bool approx);
Json moebius_to_json(const MoebiusMap& m, bool approx);
Json point_to_json(const SpherePoint& p, bool approx);

Tower tower_from_json(const Json& j, const EngineOptions& opt = {});
TowerElement element_from_json(const Json& j, const Tower& t);
MoebiusMap moebius_from_json(const Json& j, const Tower& t);

Json group_to_json(const FiniteMoebiusGroup& g, bool approx);
Json certificates_to_json(const std::vector<SymmetryCertificate>& certs, bool approx);

struct ReportInputs {
    std::string command;
    std::string input;
    Tower tower;
    bool approx = false;
    long wall_ms = 0;
};

Json make_analyze_report(const ReportInputs& in, const RatFunc& a, const GroupReport& rep,
                         const EngineOptions& opt);
Json make_iterate_groups_report(const ReportInputs& in, const RatFunc& a,
                                const std::vector<IterateGroupReport>& levels);
Json make_limit_report(const ReportInputs& in, const std::string& which,
                       const LimitGroupResult& res);
Json make_s_set_report(const ReportInputs& in, const std::vector<SElement>& elems);
Json make_axis_report(const ReportInputs& in, const SpherePoint& z0, const SpherePoint& z1,
                      const Seq0Result& seq);

// Re-verifies every certificate of a previously emitted report.  Returns the
// number of failures (0 = fully verified).
int verify_report(const Json& report, const EngineOptions& opt = {});

} // namespace ratsym

#endif
