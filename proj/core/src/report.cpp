#include "ratsym/report.hpp"

#include <sstream>

namespace ratsym {

Json tower_to_json(const Tower& t) {
    Json j;
    j["name"] = t.name();
    Json gens = Json::array();
    if (t.has_imaginary()) gens.push_back("i");
    for (const Int& r : t.radicands()) gens.push_back("sqrt(" + r.get_str() + ")");
    j["generators"] = gens;
    return j;
}

Tower tower_from_json(const Json& j, const EngineOptions& opt) {
    Tower t;
    for (const auto& g : j.at("generators")) {
        std::string s = g.get<std::string>();
        if (s == "i") {
            t = adjoin_imaginary(t, opt.tower_depth_cap).tower;
        } else if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
            Int d(s.substr(5, s.size() - 6));
            t = adjoin_sqrt(t, d, opt.tower_depth_cap).tower;
        } else {
            throw Error("unknown tower generator in report: " + s);
        }
    }
    return t;
}

Json element_to_json(const TowerElement& x, bool approx) {
    Json terms = Json::array();
    for (const auto& [mask, c] : x.coefficients()) {
        Json term;
        Json mono = Json::array();
        if (mask & 1u) mono.push_back("i");
        for (unsigned b = 1; mask >> b; ++b)
            if (mask & (1u << b))
                mono.push_back("sqrt(" + x.tower().generator_square(b).get_str() + ")");
        term["monomial"] = mono;
        term["coeff"] = rat_to_string(c);
        terms.push_back(term);
    }
    Json j;
    j["terms"] = terms;
    if (approx) {
        auto v = x.approx();
        j["approx"] = {{"re", v.real()}, {"im", v.imag()}};
    }
    return j;
}

TowerElement element_from_json(const Json& j, const Tower& t) {
    TowerElement out(Rat(0), t);
    for (const auto& term : j.at("terms")) {
        unsigned mask = 0;
        for (const auto& g : term.at("monomial")) {
            std::string s = g.get<std::string>();
            if (s == "i") {
                if (!t.has_imaginary()) throw Error("report element uses i outside the tower");
                mask |= 1u;
            } else if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
                Int d(s.substr(5, s.size() - 6));
                bool found = false;
                for (unsigned b = 1; b < t.mask_bits(); ++b)
                    if (t.generator_square(b) == d) {
                        mask |= (1u << b);
                        found = true;
                        break;
                    }
                if (!found) throw Error("report element uses a radical outside the tower");
            } else {
                throw Error("bad monomial entry: " + s);
            }
        }
        Rat c(term.at("coeff").get<std::string>());
        c.canonicalize();
        out = out + TowerElement::monomial(t, mask, c);
    }
    return out;
}

Json moebius_to_json(const MoebiusMap& m, bool approx) {
    Json j;
    j["a"] = element_to_json(m.a(), approx);
    j["b"] = element_to_json(m.b(), approx);
    j["c"] = element_to_json(m.c(), approx);
    j["d"] = element_to_json(m.d(), approx);
    j["display"] = m.str();
    return j;
}

MoebiusMap moebius_from_json(const Json& j, const Tower& t) {
    return MoebiusMap(element_from_json(j.at("a"), t), element_from_json(j.at("b"), t),
                      element_from_json(j.at("c"), t), element_from_json(j.at("d"), t));
}

Json point_to_json(const SpherePoint& p, bool approx) {
    if (p.is_infinity()) return Json("inf");
    return element_to_json(p.finite_value(), approx);
}

Json group_to_json(const FiniteMoebiusGroup& g, bool approx) {
    Json j;
    j["order"] = g.order();
    j["class"] = g.class_name();
    Json elems = Json::array();
    for (const auto& m : g.elements) elems.push_back(moebius_to_json(m, approx));
    j["elements"] = elems;
    return j;
}

Json certificates_to_json(const std::vector<SymmetryCertificate>& certs, bool approx) {
    Json arr = Json::array();
    for (const auto& c : certs) {
        Json j;
        j["sigma"] = moebius_to_json(c.sigma, approx);
        j["nu"] = moebius_to_json(c.nu, approx);
        j["level"] = c.level;
        arr.push_back(j);
    }
    return arr;
}

namespace {

Json report_header(const ReportInputs& in) {
    Json j;
    j["command"] = in.command;
    j["input"] = in.input;
    j["tower"] = tower_to_json(in.tower);
    return j;
}

Json quasi_to_json(const QuasiPowerInfo& q, bool approx) {
    Json j;
    switch (q.cls) {
        case QuasiClass::NotQuasiPower: j["class"] = "NotQuasiPower"; break;
        case QuasiClass::QuasiPower: j["class"] = "QuasiPower"; break;
        case QuasiClass::PowerMapConjugate:
            j["class"] = "PowerMapConjugate";
            j["power"] = q.power;
            if (q.conjugator) j["conjugator"] = moebius_to_json(*q.conjugator, approx);
            // the symmetry family of a power map is the continuous c z^{+-1}
            j["family"] = "c*z^(+-1)";
            break;
    }
    return j;
}

Json limit_to_json(const LimitGroupResult& res, bool approx) {
    Json j;
    j["group"] = group_to_json(res.group, approx);
    j["status"] = limit_status_name(res.status);
    j["stabilized_at"] = res.stabilized_at;
    j["complete"] = res.complete;
    j["completeness_rule"] = res.completeness_rule;
    j["indecomposable_used"] = res.indecomposable_used;
    Json trace = Json::array();
    for (const auto& [k, g] : res.level_trace) {
        Json lt;
        lt["level"] = k;
        lt["order"] = g.order();
        lt["class"] = g.class_name();
        trace.push_back(lt);
    }
    j["level_trace"] = trace;
    Json certs = Json::array();
    for (const auto& c : res.certificates) {
        Json cj;
        cj["sigma"] = moebius_to_json(c.sigma, approx);
        cj["nu"] = moebius_to_json(c.nu, approx);
        cj["level"] = c.level;
        certs.push_back(cj);
    }
    j["certificates"] = certs;
    return j;
}

} // namespace

Json make_analyze_report(const ReportInputs& in, const RatFunc& a, const GroupReport& rep,
                         const EngineOptions& opt) {
    Json j = report_header(in);
    j["degree"] = a.degree();
    j["quasi_power"] = quasi_to_json(rep.quasi, in.approx);
    Json groups;
    groups["G"] = group_to_json(rep.g, in.approx);
    groups["Sigma"] = group_to_json(rep.sigma_group, in.approx);
    groups["Aut"] = group_to_json(rep.aut_group, in.approx);
    groups["Ghat"] = group_to_json(rep.ghat, in.approx);
    groups["G"]["certificates"] = certificates_to_json(rep.gamma_table, in.approx);
    j["groups"] = groups;
    Json checks;
    checks["burnside"] = rep.burnside_ok;
    checks["order_bound"] = rep.order_bound_ok;
    checks["homomorphism"] = rep.homomorphism_ok;
    checks["cyclic_unique_multiplicity"] = rep.cyclic_assert_ok;
    // Theorem-4.2 inclusion of every Ghat element, checked symbolically
    bool thm42 = true;
    if (rep.quasi.cls == QuasiClass::NotQuasiPower && a.degree() >= 2) {
        ValueLocus l1 = critical_value_locus(a);
        ValueLocus l2 = iterate_critical_locus(a, 2);
        for (const auto& nu : rep.ghat.elements)
            if (!moebius_maps_locus_into(nu, l1, l2)) thm42 = false;
    }
    checks["thm42_inclusion"] = thm42;
    checks["seq0"] = nullptr;
    j["checks"] = checks;
    j["complete"] = rep.complete;
    j["status"] = rep.complete ? "ok" : "incomplete";
    j["wall_ms"] = in.wall_ms;
    return j;
}

Json make_iterate_groups_report(const ReportInputs& in, const RatFunc& a,
                                const std::vector<IterateGroupReport>& levels) {
    Json j = report_header(in);
    j["degree"] = a.degree();
    Json arr = Json::array();
    bool all_complete = true;
    for (const auto& lvl : levels) {
        Json lj;
        lj["k"] = lvl.k;
        lj["iterate_degree"] = lvl.iterate.degree();
        lj["quasi_power"] = quasi_to_json(lvl.report.quasi, in.approx);
        Json groups;
        groups["G"] = group_to_json(lvl.report.g, in.approx);
        groups["Sigma"] = group_to_json(lvl.report.sigma_group, in.approx);
        groups["Aut"] = group_to_json(lvl.report.aut_group, in.approx);
        groups["Ghat"] = group_to_json(lvl.report.ghat, in.approx);
        groups["G"]["certificates"] = certificates_to_json(lvl.report.gamma_table, in.approx);
        lj["groups"] = groups;
        lj["complete"] = lvl.report.complete;
        lj["sigma_divides_degree"] = lvl.sigma_divides_degree;
        Json prov = Json::array();
        for (const auto& [m, p] : lvl.provenance) {
            Json pj;
            pj["sigma"] = moebius_to_json(m, in.approx);
            pj["rule"] = provenance_name(p);
            prov.push_back(pj);
        }
        lj["provenance"] = prov;
        if (!lvl.report.complete) all_complete = false;
        arr.push_back(lj);
    }
    j["levels"] = arr;
    j["complete"] = all_complete;
    j["status"] = all_complete ? "ok" : "incomplete";
    j["wall_ms"] = in.wall_ms;
    return j;
}

Json make_limit_report(const ReportInputs& in, const std::string& which,
                       const LimitGroupResult& res) {
    Json j = report_header(in);
    Json limits;
    limits[which] = limit_to_json(res, in.approx);
    j["limits"] = limits;
    j["complete"] = res.complete;
    j["status"] = res.status == LimitStatus::InfinitePowerMap
                      ? "infinite-power-map"
                      : (res.complete ? "ok" : "incomplete");
    j["wall_ms"] = in.wall_ms;
    return j;
}

Json make_s_set_report(const ReportInputs& in, const std::vector<SElement>& elems) {
    Json j = report_header(in);
    Json arr = Json::array();
    for (const auto& e : elems) {
        Json ej;
        ej["nu"] = moebius_to_json(e.nu, in.approx);
        ej["level"] = e.level;
        arr.push_back(ej);
    }
    j["s_set"] = arr;
    Json checks;
    checks["thm42_inclusion"] = true; // hard-asserted during construction
    j["checks"] = checks;
    j["status"] = "ok";
    j["wall_ms"] = in.wall_ms;
    return j;
}

Json make_axis_report(const ReportInputs& in, const SpherePoint& z0, const SpherePoint& z1,
                      const Seq0Result& seq) {
    Json j = report_header(in);
    j["z0"] = point_to_json(z0, in.approx);
    j["z1"] = point_to_json(z1, in.approx);
    j["group"] = group_to_json(seq.base.group, in.approx);
    j["power_form"] = seq.power_form;
    Json lv = Json::array();
    for (int l : seq.level_orders) lv.push_back(l);
    j["level_orders"] = lv;
    Json checks;
    checks["seq0"] = seq.equal;
    j["checks"] = checks;
    j["status"] = seq.equal ? "ok" : "incomplete";
    j["wall_ms"] = in.wall_ms;
    return j;
}

int verify_report(const Json& report, const EngineOptions& opt) {
    EngineOptions o = opt;
    Tower t = tower_from_json(report.at("tower"), o);
    int failures = 0;
    auto check_cert = [&](const RatFunc& a, const Json& cj) {
        SymmetryCertificate cert;
        cert.sigma = moebius_from_json(cj.at("sigma"), t);
        cert.nu = moebius_from_json(cj.at("nu"), t);
        cert.level = cj.value("level", 1);
        if (!verify_certificate(a, cert, o)) ++failures;
    };
    if (!report.contains("input")) return 1;
    Tower parse_tower = t;
    RatFunc a;
    std::string cmd = report.value("command", "analyze");
    if (cmd == "chebyshev" || cmd == "verify") return 0;
    if (cmd == "shares-iterate") return 0; // nothing beyond the level to recheck
    a = parse_expression(report.at("input").get<std::string>(), parse_tower, o);
    if (report.contains("groups") && report["groups"].contains("G") &&
        report["groups"]["G"].contains("certificates"))
        for (const auto& cj : report["groups"]["G"]["certificates"]) check_cert(a, cj);
    if (report.contains("levels"))
        for (const auto& lvl : report["levels"]) {
            RatFunc f = a.iterate(lvl.at("k").get<int>(), o.degree_budget);
            if (lvl.contains("groups") && lvl["groups"]["G"].contains("certificates"))
                for (const auto& cj : lvl["groups"]["G"]["certificates"]) check_cert(f, cj);
        }
    if (report.contains("limits"))
        for (const auto& [name, lim] : report["limits"].items())
            for (const auto& cj : lim.at("certificates")) check_cert(a, cj);
    if (report.contains("s_set")) {
        ValueLocus l1 = critical_value_locus(a);
        ValueLocus l2 = iterate_critical_locus(a, 2);
        for (const auto& ej : report["s_set"]) {
            MoebiusMap nu = moebius_from_json(ej.at("nu"), t);
            if (!moebius_maps_locus_into(nu, l1, l2)) ++failures;
        }
    }
    return failures;
}

} // namespace ratsym
