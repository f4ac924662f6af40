#include "aclab/io.hpp"

#include <fstream>

namespace aclab {

json rat_to_json(const Rat& q) { return rat_str(q); }

Rat rat_from_json(const json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw error("rat_from_json: expected \"num/den\" string");
}

json gram_to_json(const GramLattice& l) {
    json rows = json::array();
    for (std::size_t i = 0; i < l.rank; ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < l.rank; ++j) row.push_back(l.gram(i, j).get_si());
        rows.push_back(row);
    }
    return json{{"gram", rows}, {"labels", l.labels}};
}

json classvec_to_json(const ClassVec& v) {
    json a = json::array();
    for (const Int& c : v.coords) a.push_back(c.get_si());
    return a;
}

std::string minimal_kind_name(MinimalKind k) {
    switch (k) {
        case MinimalKind::P2_111: return "p2_111";
        case MinimalKind::P2_14: return "p2_14";
        case MinimalKind::P2_9: return "p2_9";
        case MinimalKind::FN_N0N0: return "fn_n0n0";
        case MinimalKind::FN_N_Np2_0: return "fn_n_np2_0";
        case MinimalKind::FN_N_Np4: return "fn_n_np4";
        case MinimalKind::F0orF2_Bisection8: return "f0f2_bisection8";
        case MinimalKind::F0orF2_TwoSections22: return "f0f2_two_sections22";
    }
    throw error("minimal_kind_name: unknown kind");
}

MinimalKind minimal_kind_from_name(const std::string& s) {
    if (s == "p2_111") return MinimalKind::P2_111;
    if (s == "p2_14") return MinimalKind::P2_14;
    if (s == "p2_9") return MinimalKind::P2_9;
    if (s == "fn_n0n0") return MinimalKind::FN_N0N0;
    if (s == "fn_n_np2_0") return MinimalKind::FN_N_Np2_0;
    if (s == "fn_n_np4") return MinimalKind::FN_N_Np4;
    if (s == "f0f2_bisection8") return MinimalKind::F0orF2_Bisection8;
    if (s == "f0f2_two_sections22") return MinimalKind::F0orF2_TwoSections22;
    throw error("minimal_kind_from_name: unknown kind '" + s + "'");
}

json pair_to_json(const AnticanonicalPair& p) {
    json minimal{{"kind", minimal_kind_name(p.minimal().kind)}};
    if (p.minimal().uses_n()) minimal["N"] = p.minimal().n;
    json log = json::array();
    for (const auto& rec : p.log()) {
        switch (rec.step.kind) {
            case BlowupStep::Kind::Interior:
                log.push_back(json{{"interior", {{"component", rec.step.component},
                                                 {"point", rat_str(rec.step.point)}}}});
                break;
            case BlowupStep::Kind::InteriorNear:
                log.push_back(json{{"interior_near", {{"parent", rec.step.parent}}}});
                break;
            case BlowupStep::Kind::Corner:
                log.push_back(json{{"corner", {{"edge", rec.step.edge}}}});
                break;
        }
    }
    return json{{"minimal", minimal}, {"orientation", p.orientation()}, {"log", log}};
}

AnticanonicalPair pair_from_json(const json& j) {
    if (!j.contains("minimal")) throw error("pair_from_json: missing \"minimal\"");
    MinimalModel m;
    m.kind = minimal_kind_from_name(j["minimal"].at("kind").get<std::string>());
    m.n = j["minimal"].value("N", 0L);
    bool orientation = j.value("orientation", true);
    std::vector<BlowupStep> steps;
    for (const auto& entry : j.value("log", json::array())) {
        if (entry.contains("interior")) {
            const auto& e = entry["interior"];
            steps.push_back(BlowupStep::interior(e.at("component").get<std::size_t>(),
                                                 rat_from_json(e.at("point"))));
        } else if (entry.contains("interior_near")) {
            steps.push_back(
                BlowupStep::interior_near(entry["interior_near"].at("parent").get<std::size_t>()));
        } else if (entry.contains("corner")) {
            steps.push_back(BlowupStep::corner(entry["corner"].at("edge").get<std::size_t>()));
        } else {
            throw error("pair_from_json: unknown log entry");
        }
    }
    return AnticanonicalPair::from_log(m, orientation, steps);
}

AnticanonicalPair load_pair(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("load_pair: cannot open '" + path + "'");
    json j;
    in >> j;
    return pair_from_json(j);
}

json divisor_to_json(const Deg0Divisor& d) {
    json a = json::array();
    for (const auto& t : d.terms)
        a.push_back(json{{"component", t.component}, {"q", rat_str(t.q)}, {"p", rat_str(t.p)}});
    return a;
}

Deg0Divisor divisor_from_json(const json& j) {
    Deg0Divisor d;
    for (const auto& t : j)
        d.terms.emplace_back(t.at("component").get<std::size_t>(), rat_from_json(t.at("q")),
                             rat_from_json(t.at("p")));
    return d;
}

json period_to_json(const PeriodHom& ph) {
    json basis = json::array();
    for (const auto& b : ph.basis) basis.push_back(classvec_to_json(b));
    json values = json::array();
    for (const auto& v : ph.values) values.push_back(rat_str(v));
    return json{{"basis", basis}, {"values", values}};
}

}  // namespace aclab
