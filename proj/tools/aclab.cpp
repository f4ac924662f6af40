// aclab: exact-arithmetic calculator for anticanonical pairs.
//
// Subcommands: pair info/blowup/blowdown/toric-reduce, cone exc,
// roots find/nodal, period eval, torelli match, equiv check, e8 table,
// example ghk. Exit codes: 0 success, 1 negative verdict, 2 input error,
// 3 bound insufficient.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "aclab/e8.hpp"
#include "aclab/equivalence.hpp"
#include "aclab/io.hpp"

using namespace aclab;

namespace {

constexpr long kDefaultBound = 12;

const char* definiteness_name(Definiteness d) {
    switch (d) {
        case Definiteness::NegativeDefinite: return "negative_definite";
        case Definiteness::StrictlyNegativeSemidefinite: return "strictly_negative_semidefinite";
        case Definiteness::IndefiniteOrOther: return "indefinite_or_other";
    }
    return "?";
}

IMat cycle_gram(const AnticanonicalPair& p) {
    IMat g(p.r(), p.r());
    for (std::size_t i = 1; i <= p.r(); ++i)
        for (std::size_t j = 1; j <= p.r(); ++j)
            g(i - 1, j - 1) = inner(p.cycle_class(i), p.cycle_class(j));
    return g;
}

ClassVec parse_class(const AnticanonicalPair& p, const std::string& spec) {
    std::vector<Int> coords;
    std::string cur;
    for (char c : spec + ",") {
        if (c == ',') {
            if (!cur.empty()) coords.emplace_back(cur);
            cur.clear();
        } else if (!isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (coords.size() != p.ambient()->rank)
        throw error("class has " + std::to_string(coords.size()) +
                    " coordinates, ambient rank is " + std::to_string(p.ambient()->rank));
    return ClassVec(std::move(coords), p.ambient());
}

std::string seq_str(const std::vector<Int>& seq) {
    std::string s = "(";
    for (std::size_t i = 0; i < seq.size(); ++i) s += (i ? "," : "") + seq[i].get_str();
    return s + ")";
}

int cmd_pair_info(const std::string& file, long bound, bool as_json) {
    AnticanonicalPair p = load_pair(file);
    auto lam = p.lambda_lattice();
    auto kg = K_group(p);
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= p.r(); ++i) names.push_back("d" + std::to_string(i));
    auto def = definiteness(*make_lattice(cycle_gram(p), names));
    if (as_json) {
        json out{{"r", p.r()},
                 {"sequence", json::array()},
                 {"charge", p.charge()},
                 {"dsquare", p.dsquare().get_si()},
                 {"toric", p.is_toric()},
                 {"definiteness", definiteness_name(def)},
                 {"lambda_rank", lam.lattice->rank},
                 {"kernel_rank_s", p.kernel_rank_s()},
                 {"K", {{"gm_rank", kg.free_rank}, {"torsion", json::array()}}},
                 {"ambient", gram_to_json(*p.ambient())},
                 {"bound", bound}};
        for (const Int& d : p.sequence().entries) out["sequence"].push_back(d.get_si());
        for (const Int& t : kg.torsion) out["K"]["torsion"].push_back(t.get_si());
        json lb = json::array();
        for (const auto& b : lam.basis) lb.push_back(classvec_to_json(b));
        out["lambda_basis"] = lb;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "r               " << p.r() << "\n"
                  << "sequence        " << seq_str(p.sequence().entries) << "\n"
                  << "D^2             " << p.dsquare().get_str() << "\n"
                  << "charge Q        " << p.charge() << "\n"
                  << "toric           " << (p.is_toric() ? "yes" : "no") << "\n"
                  << "definiteness    " << definiteness_name(def) << "\n"
                  << "rank Lambda     " << lam.lattice->rank << "\n"
                  << "s (aut dim)     " << p.kernel_rank_s() << "\n"
                  << "K(Y,D)          ";
        if (kg.trivial()) {
            std::cout << "1";
        } else {
            bool first = true;
            if (kg.free_rank > 0) {
                std::cout << "G_m^" << kg.free_rank;
                first = false;
            }
            for (const Int& t : kg.torsion) {
                std::cout << (first ? "" : " x ") << "Z/" << t.get_str();
                first = false;
            }
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_e8_table(bool as_json) {
    auto table = ade_embedding_table();
    if (as_json) {
        json rows = json::array();
        for (const auto& rep : table)
            rows.push_back(json{{"r", rep.r},
                                {"embedding", rep.primitive ? "primitive" : "imprimitive"},
                                {"complement", rep.complement.to_string()},
                                {"torsion", rep.torsion.to_string()},
                                {"complement_roots", rep.complement_root_count},
                                {"roots_span_complement", rep.roots_span_complement}});
        std::cout << rows.dump(2) << "\n";
    } else {
        std::cout << "r  embedding    A_{r-1}^perp  torsion  #roots  span\n";
        for (const auto& rep : table) {
            char line[128];
            std::snprintf(line, sizeof line, "%zu  %-11s  %-12s  %-7s  %6zu  %s", rep.r,
                          rep.primitive ? "primitive" : "imprimitive",
                          rep.complement.to_string().c_str(), rep.torsion.to_string().c_str(),
                          rep.complement_root_count, rep.roots_span_complement ? "yes" : "no");
            std::cout << line << "\n";
        }
    }
    return 0;
}

AnticanonicalPair build_ghk() {
    auto p = AnticanonicalPair::make({MinimalKind::P2_9, 0});
    p = p.corner_blowup(1);
    for (std::size_t k = 2; k <= 7; ++k) p = p.corner_blowup(k);
    p = p.interior_blowup(8, CyclePoint(8, Rat(2)));
    p = p.interior_blowup(1, CyclePoint(1, Rat(5)));
    p = p.interior_blowup(1, CyclePoint(1, Rat(7)));
    return p;
}

int cmd_example_ghk(bool as_json) {
    AnticanonicalPair p = build_ghk();
    auto lam = p.lambda_lattice();
    ClassVec g1({3, -1, -1, -1, -1, -1, -1, -1, -1, -1, 0}, p.ambient());
    ClassVec g2({3, -1, -1, -1, -1, -1, -1, -1, -1, 0, -1}, p.ambient());
    ClassVec g3({8, -3, -3, -3, -3, -3, -3, -3, -3, 0, 0}, p.ambient());
    auto split = hyperbolic_splitting(lam.lattice, 8);
    if (!split) {
        std::cerr << "hyperbolic splitting not found within the bound\n";
        return 3;
    }
    bool family_ok = true;
    json family = json::array();
    for (long k = 0; k <= 5; ++k) {
        ClassVec cls = g1.scaled(Int(4 * k * k - 1)) + g2 + g3.scaled(Int(k));
        bool in_lambda = coordinates_in(lam.basis, cls).has_value();
        family_ok = family_ok && in_lambda && square(cls) == -2;
        family.push_back(json{{"k", k}, {"square", square(cls).get_si()}, {"in_lambda", in_lambda}});
    }
    if (as_json) {
        json out{{"sequence", json::array()},
                 {"charge", p.charge()},
                 {"lambda_rank", lam.lattice->rank},
                 {"gamma_products",
                  {{"g1.g1", square(g1).get_si()},
                   {"g2.g2", square(g2).get_si()},
                   {"g1.g2", inner(g1, g2).get_si()},
                   {"g1.g3", inner(g1, g3).get_si()},
                   {"g2.g3", inner(g2, g3).get_si()},
                   {"g3.g3", square(g3).get_si()}}},
                 {"splitting",
                  {{"e", classvec_to_json(split->e)},
                   {"f", classvec_to_json(split->f)},
                   {"complement_gram", gram_to_json(*split->complement.lattice)["gram"]}}},
                 {"minus_two_family", family}};
        for (const Int& d : p.sequence().entries) out["sequence"].push_back(d.get_si());
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "ten-point pair: sequence " << seq_str(p.sequence().entries)
                  << ", Q = " << p.charge() << "\n"
                  << "rank Lambda = " << lam.lattice->rank << "\n"
                  << "gamma products: g1^2 = " << square(g1).get_str()
                  << ", g2^2 = " << square(g2).get_str()
                  << ", g1.g2 = " << inner(g1, g2).get_str()
                  << ", g3^2 = " << square(g3).get_str() << " (g1.g3 = g2.g3 = 0)\n"
                  << "Lambda = U + (" << split->complement.lattice->gram(0, 0).get_str() << ")\n"
                  << "(4k^2-1) g1 + g2 + k g3 has square -2 and lies in Lambda for k = 0..5: "
                  << (family_ok ? "verified" : "FAILED") << "\n";
    }
    if (square(g1) != 0 || square(g2) != 0 || inner(g1, g2) != 1 || square(g3) != -8 ||
        inner(g1, g3) != 0 || inner(g2, g3) != 0 || lam.lattice->rank != 3 ||
        split->complement.lattice->gram(0, 0) != -8 || !family_ok)
        return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic calculator for anticanonical pairs"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    std::string pair_file, pair2_file, class_spec, point_spec, mode;
    long bound = kDefaultBound;
    std::size_t index = 0;

    auto* pair = app.add_subcommand("pair", "pair-level invariants and blowups");
    pair->require_subcommand(1);
    auto* pinfo = pair->add_subcommand("info", "charge, sequence, definiteness, Lambda, K");
    pinfo->add_option("--pair", pair_file, "pair description file")->required();
    pinfo->add_option("--bound", bound, "certification bound");

    auto* pblow = pair->add_subcommand("blowup", "apply one blowup and print the new pair");
    pblow->add_option("--pair", pair_file)->required();
    pblow->add_option("--kind", mode, "interior | interior-near | corner")->required();
    pblow->add_option("--index", index, "component / parent step / edge")->required();
    pblow->add_option("--point", point_spec, "interior point as num/den");

    auto* pdown = pair->add_subcommand("blowdown", "undo the final log entry");
    pdown->add_option("--pair", pair_file)->required();

    auto* ptoric = pair->add_subcommand("toric-reduce", "corner zig-zag to (0,0,0,0)");
    ptoric->add_option("--pair", pair_file)->required();

    auto* cone = app.add_subcommand("cone", "exceptional classes and cone tests");
    cone->require_subcommand(1);
    auto* cexc = cone->add_subcommand("exc", "enumerate effective exceptional classes");
    cexc->add_option("--pair", pair_file)->required();
    cexc->add_option("--bound", bound);

    auto* roots = app.add_subcommand("roots", "Looijenga roots");
    roots->require_subcommand(1);
    auto* rfind = roots->add_subcommand("find", "root test for a given class");
    rfind->add_option("--pair", pair_file)->required();
    rfind->add_option("--class", class_spec, "comma-separated ambient coordinates")->required();
    rfind->add_option("--bound", bound);
    auto* rnodal = roots->add_subcommand("nodal", "roots with trivial period");
    rnodal->add_option("--pair", pair_file)->required();
    rnodal->add_option("--bound", bound);

    auto* period = app.add_subcommand("period", "period homomorphisms");
    period->require_subcommand(1);
    auto* peval = period->add_subcommand("eval", "period on a Lambda basis");
    peval->add_option("--pair", pair_file)->required();
    peval->add_option("--class", class_spec, "optional class to evaluate");

    auto* torelli = app.add_subcommand("torelli", "Torelli matching");
    torelli->require_subcommand(1);
    auto* tmatch = torelli->add_subcommand("match", "match two pairs through an isometry");
    tmatch->add_option("--pair", pair_file)->required();
    tmatch->add_option("--pair2", pair2_file)->required();
    tmatch->add_option("--bound", bound);

    auto* equiv = app.add_subcommand("equiv", "deformation equivalence");
    equiv->require_subcommand(1);
    auto* echeck = equiv->add_subcommand("check", "search for an admissible isometry");
    echeck->add_option("--pair", pair_file)->required();
    echeck->add_option("--pair2", pair2_file)->required();
    echeck->add_option("--bound", bound);

    auto* e8cmd = app.add_subcommand("e8", "E8 root subsystem classification");
    e8cmd->require_subcommand(1);
    e8cmd->add_subcommand("table", "the A_{r-1} embedding table");

    auto* example = app.add_subcommand("example", "built-in worked examples");
    example->require_subcommand(1);
    example->add_subcommand("ghk", "the ten-point U + (-8) pipeline");

    CLI11_PARSE(app, argc, argv);

    try {
        if (pinfo->parsed()) return cmd_pair_info(pair_file, bound, as_json);
        if (pblow->parsed()) {
            AnticanonicalPair p = load_pair(pair_file);
            if (mode == "interior") {
                if (point_spec.empty()) throw error("interior blowup needs --point");
                p = p.interior_blowup(index, CyclePoint(index, parse_rat(point_spec)));
            } else if (mode == "interior-near") {
                p = p.interior_blowup_near(index);
            } else if (mode == "corner") {
                p = p.corner_blowup(index);
            } else {
                throw error("unknown blowup kind '" + mode + "'");
            }
            std::cout << pair_to_json(p).dump(2) << "\n";
            return 0;
        }
        if (pdown->parsed()) {
            AnticanonicalPair p = load_pair(pair_file);
            if (p.log().empty()) throw error("pair is already minimal");
            ClassVec e = p.step_class(p.log().size());
            if (p.log().back().step.kind == BlowupStep::Kind::Corner)
                e = p.cycle_class(p.component_index_of(p.log().back().component_id));
            std::cout << pair_to_json(p.blow_down(e)).dump(2) << "\n";
            return 0;
        }
        if (ptoric->parsed()) {
            AnticanonicalPair p = load_pair(pair_file);
            auto moves = toric_reduction(p.sequence().entries);
            json out = json::array();
            for (const auto& mv : moves)
                out.push_back(json{{mv.blowup ? "blowup_edge" : "blowdown_component", mv.index}});
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cexc->parsed()) {
            AnticanonicalPair p = load_pair(pair_file);
            auto ctx = EffectivenessContext::build(p, bound);
            for (const auto& a : enumerate_exceptional(p, ctx, bound))
                std::cout << json{{"class", classvec_to_json(a.cls)},
                                  {"certificate", {{"bound", bound}}}}
                                 .dump()
                          << "\n";
            return 0;
        }
        if (rfind->parsed()) {
            AnticanonicalPair p = load_pair(pair_file);
            auto ctx = EffectivenessContext::build(p, bound);
            ClassVec beta = parse_class(p, class_spec);
            auto rc = is_root(p, ctx, beta, bound);
            auto refl = reflection_root_test(p, ctx, beta, bound);
            json out{{"root_witness_found", rc.has_value()},
                     {"reflection_preserves_cone", refl.preserved},
                     {"certificate", {{"bound", bound}}}};
            if (rc && rc->witness)
                out["witness"] = {{"e1", classvec_to_json(rc->witness->first.cls)},
                                  {"e2", classvec_to_json(rc->witness->second.cls)}};
            if (refl.violated) out["violated_class"] = classvec_to_json(*refl.violated);
            std::cout << out.dump(2) << "\n";
            if (!refl.preserved) return 1;  // certified non-root
            return rc.has_value() ? 0 : 3;  // found, or bound-insufficient
        }
        if (rnodal->parsed()) {
            AnticanonicalPair p = load_pair(pair_file);
            auto rep = hodge_group_report(p, bound);
            for (const auto& rc : rep.nodal_generators)
                std::cout << json{{"class", classvec_to_json(rc.cls)},
                                  {"certificate", {{"bound", bound}}}}
                                 .dump()
                          << "\n";
            return 0;
        }
        if (peval->parsed()) {
            AnticanonicalPair p = load_pair(pair_file);
            PeriodHom ph = period_of(p);
            json out = period_to_json(ph);
            if (!class_spec.empty()) {
                ClassVec alpha = parse_class(p, class_spec);
                out["value"] = rat_str(ph.evaluate(alpha));
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (tmatch->parsed()) {
            AnticanonicalPair p1 = load_pair(pair_file);
            AnticanonicalPair p2 = load_pair(pair2_file);
            auto gamma = deformation_equivalent(p1, p2, bound);
            if (!gamma) {
                std::cout << json{{"status", "no_match"},
                                  {"reason", "no admissible isometry found within bound"},
                                  {"certificate", {{"bound", bound}}}}
                                 .dump(2)
                          << "\n";
                return 1;
            }
            MatchVerdict v = torelli_match(p1, p2, *gamma, bound);
            json out{{"status", v.status == MatchVerdict::Status::Matched ? "matched"
                                : v.status == MatchVerdict::Status::MatchedAfterWeyl
                                    ? "matched_after_weyl"
                                    : "no_match"},
                     {"reason", v.reason},
                     {"certificate", {{"bound", bound}}}};
            if (v.matched()) {
                json word = json::array();
                for (const auto& w : v.weyl_word) word.push_back(classvec_to_json(w));
                out["weyl_word"] = word;
                json corr = json::array();
                for (const auto& [q, qh] : v.correspondence)
                    corr.push_back(json{{"q", rat_str(q)}, {"q_transported", rat_str(qh)}});
                out["correspondence"] = corr;
                if (v.k_witness) {
                    json scales = json::array();
                    for (const Rat& s : v.k_witness->scales) scales.push_back(rat_str(s));
                    out["k_witness"] = scales;
                }
            } else if (v.violating) {
                out["violating_class"] = classvec_to_json(*v.violating);
            }
            std::cout << out.dump(2) << "\n";
            return v.matched() ? 0 : 1;
        }
        if (echeck->parsed()) {
            AnticanonicalPair p1 = load_pair(pair_file);
            AnticanonicalPair p2 = load_pair(pair2_file);
            auto gamma = deformation_equivalent(p1, p2, bound);
            json out{{"equivalent", gamma.has_value()}, {"certificate", {{"bound", bound}}}};
            if (gamma) {
                json rows = json::array();
                for (std::size_t i = 0; i < gamma->matrix.rows(); ++i) {
                    json row = json::array();
                    for (std::size_t j = 0; j < gamma->matrix.cols(); ++j)
                        row.push_back(gamma->matrix(i, j).get_si());
                    rows.push_back(row);
                }
                out["isometry"] = rows;
            }
            std::cout << out.dump(2) << "\n";
            return gamma ? 0 : 1;
        }
        if (e8cmd->got_subcommand("table")) return cmd_e8_table(as_json);
        if (example->got_subcommand("ghk")) return cmd_example_ghk(as_json);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const invariant_error& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
