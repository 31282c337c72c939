#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrv/maps.hpp"
#include "mrv/rings.hpp"
#include "mrv/verify.hpp"

namespace mrv {

using Json = nlohmann::ordered_json;

inline std::string status_str(CheckStatus s)
{
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Report: return "report";
    }
    return "?";
}

inline Json bidegree_json(const Bidegree& d)
{
    Json a = Json::array();
    a.push_back(d.p);
    if (d.bigraded()) a.push_back(d.q);
    return a;
}

inline Json report_json(const CheckReport& rep)
{
    Json j;
    j["check"] = rep.name;
    j["box"] = Json{{"p_max", rep.box.p_max}, {"q_max", rep.box.q_max}, {"m_max", rep.box.m_max}};
    j["status"] = status_str(rep.status);
    Json findings = Json::array();
    for (const Finding& f : rep.findings) {
        Json jf;
        jf["bidegree"] = bidegree_json(f.deg);
        jf["expected"] = f.expected;
        jf["computed"] = f.computed;
        jf["witness"] = f.witness;
        findings.push_back(std::move(jf));
    }
    j["findings"] = std::move(findings);
    return j;
}

inline std::string render_reports_json(const std::vector<CheckReport>& reps)
{
    Json arr = Json::array();
    for (const CheckReport& r : reps) arr.push_back(report_json(r));
    return arr.dump(2) + "\n";
}

inline std::string render_reports_text(const std::vector<CheckReport>& reps)
{
    std::ostringstream os;
    for (const CheckReport& r : reps) {
        os << "[" << status_str(r.status) << "] " << r.name;
        if (!r.findings.empty()) os << " (" << r.findings.size() << " findings)";
        os << "\n";
        for (const Finding& f : r.findings) {
            os << "    at " << f.deg.str() << ": expected " << f.expected << "; computed "
               << f.computed;
            if (!f.witness.empty()) {
                os << "; witness ";
                for (size_t i = 0; i < f.witness.size(); ++i)
                    os << (i ? ", " : "") << f.witness[i];
            }
            os << "\n";
        }
    }
    return os.str();
}

inline std::string render_reports_md(const std::vector<CheckReport>& reps)
{
    std::ostringstream os;
    os << "# Verification report\n\n";
    os << "| check | status | findings |\n|---|---|---|\n";
    for (const CheckReport& r : reps)
        os << "| " << r.name << " | " << status_str(r.status) << " | " << r.findings.size()
           << " |\n";
    for (const CheckReport& r : reps) {
        if (r.findings.empty()) continue;
        os << "\n## " << r.name << "\n\n";
        os << "| bidegree | expected | computed | witness |\n|---|---|---|---|\n";
        for (const Finding& f : r.findings) {
            os << "| " << f.deg.str() << " | " << f.expected << " | " << f.computed << " | ";
            for (size_t i = 0; i < f.witness.size(); ++i) os << (i ? ", " : "") << f.witness[i];
            os << " |\n";
        }
    }
    return os.str();
}

inline std::string csv_escape(const std::string& s)
{
    bool need = s.find_first_of(",\"\n") != std::string::npos;
    if (!need) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string render_reports_csv(const std::vector<CheckReport>& reps)
{
    std::ostringstream os;
    os << "check,status,bidegree,expected,computed,witness\n";
    for (const CheckReport& r : reps) {
        if (r.findings.empty()) {
            os << r.name << "," << status_str(r.status) << ",,,,\n";
            continue;
        }
        for (const Finding& f : r.findings) {
            std::string wit;
            for (size_t i = 0; i < f.witness.size(); ++i) wit += (i ? "; " : "") + f.witness[i];
            os << r.name << "," << status_str(r.status) << "," << csv_escape(f.deg.str()) << ","
               << csv_escape(f.expected) << "," << csv_escape(f.computed) << ","
               << csv_escape(wit) << "\n";
        }
    }
    return os.str();
}

inline std::string render_reports(const std::vector<CheckReport>& reps, const std::string& format)
{
    if (format == "json") return render_reports_json(reps);
    if (format == "md") return render_reports_md(reps);
    if (format == "csv") return render_reports_csv(reps);
    if (format == "text") return render_reports_text(reps);
    throw usage_error("unknown format '" + format + "'");
}

// ---------------------------------------------------------------------------
// Poincare tables

inline std::string render_table_csv(const PoincareTable& t)
{
    std::ostringstream os;
    if (t.q_max < 0) {
        os << "p,group\n";
        for (int p = 0; p <= t.p_max; ++p)
            os << p << "," << csv_escape(render_group(t.cells[size_t(p)][0])) << "\n";
    } else {
        os << "p,q,group\n";
        for (int p = 0; p <= t.p_max; ++p)
            for (int q = 0; q <= t.q_max; ++q)
                os << p << "," << q << ","
                   << csv_escape(render_group(t.cells[size_t(p)][size_t(q)])) << "\n";
    }
    return os.str();
}

inline std::string render_table_md(const PoincareTable& t)
{
    std::ostringstream os;
    if (t.q_max < 0) {
        os << "| p | group |\n|---|---|\n";
        for (int p = 0; p <= t.p_max; ++p)
            os << "| " << p << " | " << render_group(t.cells[size_t(p)][0]) << " |\n";
    } else {
        os << "| p \\\\ q |";
        for (int q = 0; q <= t.q_max; ++q) os << " " << q << " |";
        os << "\n|---|";
        for (int q = 0; q <= t.q_max; ++q) os << "---|";
        os << "\n";
        for (int p = 0; p <= t.p_max; ++p) {
            os << "| " << p << " |";
            for (int q = 0; q <= t.q_max; ++q)
                os << " " << render_group(t.cells[size_t(p)][size_t(q)]) << " |";
            os << "\n";
        }
    }
    return os.str();
}

inline std::string render_table_json(const PoincareTable& t)
{
    Json j;
    j["ring"] = t.ring;
    j["p_max"] = t.p_max;
    if (t.q_max >= 0) j["q_max"] = t.q_max;
    Json cells = Json::array();
    for (int p = 0; p <= t.p_max; ++p) {
        const int qhi = t.q_max < 0 ? 0 : t.q_max;
        for (int q = 0; q <= qhi; ++q) {
            const AbelianGroup& g = t.cells[size_t(p)][size_t(q)];
            Json c;
            c["bidegree"] = t.q_max < 0 ? Json::array({p}) : Json::array({p, q});
            c["group"] = render_group(g);
            c["rank"] = g.rank;
            Json tors = Json::array();
            for (const Int& d : g.torsion) tors.push_back(d.str());
            c["torsion"] = std::move(tors);
            cells.push_back(std::move(c));
        }
    }
    j["cells"] = std::move(cells);
    return j.dump(2) + "\n";
}

inline std::string render_table_text(const PoincareTable& t)
{
    std::ostringstream os;
    if (t.q_max < 0) {
        for (int p = 0; p <= t.p_max; ++p)
            os << p << ": " << render_group(t.cells[size_t(p)][0]) << "\n";
    } else {
        for (int p = 0; p <= t.p_max; ++p) {
            os << p << ":";
            for (int q = 0; q <= t.q_max; ++q)
                os << " [" << q << "] " << render_group(t.cells[size_t(p)][size_t(q)]);
            os << "\n";
        }
    }
    return os.str();
}

inline std::string render_table(const PoincareTable& t, const std::string& format)
{
    if (format == "csv") return render_table_csv(t);
    if (format == "md") return render_table_md(t);
    if (format == "json") return render_table_json(t);
    if (format == "text") return render_table_text(t);
    throw usage_error("unknown format '" + format + "'");
}

// ---------------------------------------------------------------------------
// Ring and map catalog export / import

inline Json ring_json(const RingPresentation& r)
{
    Json j;
    j["name"] = r.name;
    j["coefficients"] = r.coeff == Coeff::Z ? "Z" : "Z2";
    j["grading"] = r.bigraded() ? "bigraded" : "single";
    if (r.laurent_model) j["laurent_model"] = true;
    Json gens = Json::array();
    for (const GeneratorSpec& g : r.gens) {
        Json jg;
        jg["name"] = g.name;
        if (!g.display.empty()) jg["display"] = g.display;
        jg["degree"] = r.bigraded() ? Json::array({g.p, g.q}) : Json::array({g.p});
        if (g.family) jg["family"] = true;
        gens.push_back(std::move(jg));
    }
    j["generators"] = std::move(gens);
    Json rels = Json::array();
    for (const RelationTemplate& t : r.rels) {
        Json jt;
        jt["label"] = t.label;
        if (t.nparams > 0) jt["params"] = t.nparams;
        if (t.constraint) {
            jt["constraint"] =
                Json{{"equal_sums", Json::array({t.constraint->lhs, t.constraint->rhs})}};
        }
        Json terms = Json::array();
        for (const RelTerm& term : t.terms) {
            Json jterm;
            jterm["coeff"] = int64_t(term.coeff);
            Json factors = Json::array();
            for (const RelFactor& f : term.factors) {
                Json jf;
                jf["gen"] = r.gens[size_t(f.gen)].name;
                if (!f.param.vars.empty() || f.param.offset != 0)
                    jf["param"] = Json{{"vars", f.param.vars}, {"offset", f.param.offset}};
                factors.push_back(std::move(jf));
            }
            jterm["factors"] = std::move(factors);
            terms.push_back(std::move(jterm));
        }
        jt["terms"] = std::move(terms);
        rels.push_back(std::move(jt));
    }
    j["relations"] = std::move(rels);
    return j;
}

inline Json catalog_json(const Catalog& cat)
{
    Json j;
    Json rings = Json::array();
    for (const RingPresentation& r : cat.rings) rings.push_back(ring_json(r));
    j["rings"] = std::move(rings);
    Json maps = Json::array();
    for (const MapInfo& m : map_catalog()) {
        Json jm;
        jm["name"] = m.name;
        jm["kind"] = m.kind;
        jm["source"] = m.source;
        jm["target"] = m.target;
        if (m.forgets_weight)
            jm["degree_shift"] = "forgets-weight";
        else
            jm["degree_shift"] = Json::array({m.shift_p, m.shift_q});
        Json images = Json::array();
        for (const auto& [g, img] : m.images)
            images.push_back(Json{{"generator", g}, {"image", img}});
        jm["images"] = std::move(images);
        maps.push_back(std::move(jm));
    }
    j["maps"] = std::move(maps);
    return j;
}

inline RingPresentation ring_from_json(const Json& j)
{
    RingPresentation r;
    r.name = j.at("name").get<std::string>();
    const std::string coeff = j.at("coefficients").get<std::string>();
    if (coeff == "Z")
        r.coeff = Coeff::Z;
    else if (coeff == "Z2")
        r.coeff = Coeff::Z2;
    else
        throw usage_error("ring '" + r.name + "': unknown coefficient ring " + coeff);
    const std::string grading = j.at("grading").get<std::string>();
    if (grading == "bigraded")
        r.grading = Grading::Bigraded;
    else if (grading == "single")
        r.grading = Grading::Single;
    else
        throw usage_error("ring '" + r.name + "': unknown grading " + grading);
    r.laurent_model = j.value("laurent_model", false);
    for (const Json& jg : j.at("generators")) {
        GeneratorSpec g;
        g.name = jg.at("name").get<std::string>();
        g.display = jg.value("display", std::string());
        const auto deg = jg.at("degree");
        g.p = deg.at(0).get<int>();
        g.q = deg.size() > 1 ? deg.at(1).get<int>() : 0;
        g.family = jg.value("family", false);
        r.gens.push_back(std::move(g));
    }
    for (const Json& jt : j.at("relations")) {
        RelationTemplate t;
        t.label = jt.at("label").get<std::string>();
        t.nparams = jt.value("params", 0);
        if (jt.contains("constraint")) {
            EqualSums es;
            const auto& sums = jt.at("constraint").at("equal_sums");
            es.lhs = sums.at(0).get<std::vector<int>>();
            es.rhs = sums.at(1).get<std::vector<int>>();
            t.constraint = std::move(es);
        }
        for (const Json& jterm : jt.at("terms")) {
            RelTerm term;
            term.coeff = Int(jterm.at("coeff").get<int64_t>());
            for (const Json& jf : jterm.at("factors")) {
                RelFactor f;
                f.gen = r.gen_index(jf.at("gen").get<std::string>());
                if (jf.contains("param")) {
                    f.param.vars = jf.at("param").at("vars").get<std::vector<int>>();
                    f.param.offset = jf.at("param").value("offset", 0);
                }
                term.factors.push_back(std::move(f));
            }
            t.terms.push_back(std::move(term));
        }
        r.rels.push_back(std::move(t));
    }
    return r;
}

// Replace catalog entries by the rings named in an override document
// ({"rings": [...]}, same schema as the export).
inline void apply_ring_overrides(Catalog& cat, const Json& doc)
{
    for (const Json& jr : doc.at("rings")) {
        RingPresentation r = ring_from_json(jr);
        bool replaced = false;
        for (auto& existing : cat.rings)
            if (existing.name == r.name) {
                existing = std::move(r);
                replaced = true;
                break;
            }
        if (!replaced) cat.rings.push_back(std::move(r));
    }
}

inline Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write " + path);
    out << content;
}

}  // namespace mrv
