#include "vlat/report.hpp"

namespace vlat {

Json rat_to_json(const Rat& x) { return rat_str(x); }

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return rat_parse(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long>());
    throw InvalidInput("expected a rational as string or integer");
}

Json qmat_to_json(const QMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

QMat qmat_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InvalidInput("expected a matrix as array of rows");
    int r = static_cast<int>(j.size());
    int c = static_cast<int>(j[0].size());
    QMat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(j[i].size()) != c) throw InvalidInput("ragged matrix");
        for (int k = 0; k < c; ++k) m.at(i, k) = rat_from_json(j[i][k]);
    }
    return m;
}

Json quadspace_to_json(const QuadSpace& q) {
    return Json{{"p", q.p}, {"gram", qmat_to_json(q.gram)}};
}

QuadSpace quadspace_from_json(const Json& j) {
    if (!j.contains("p") || !j.contains("gram")) throw InvalidInput("space needs p and gram");
    return QuadSpace(j["p"].get<long>(), qmat_from_json(j["gram"]));
}

Json lattice_to_json(const Lattice& L) { return Json{{"basis", qmat_to_json(L.basis())}}; }

Json fqelt_to_json(const FqElt& x) {
    Json coeffs = Json::array();
    for (long c : x.coeffs()) coeffs.push_back(c);
    return Json{{"p", x.field()->p}, {"k", x.field()->k}, {"coeffs", coeffs}};
}

Json subspace_to_json(const FqSubspace& L) {
    Json rows = Json::array();
    for (int i = 0; i < L.rows.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < L.rows.cols(); ++j) row.push_back(fqelt_to_json(L.rows.at(i, j)));
        rows.push_back(row);
    }
    return Json{{"k", L.level()}, {"rows", rows}};
}

Json clifford_to_json(const CliffordElt& a) {
    Json terms = Json::array();
    for (auto& [mask, c] : a.terms()) {
        Json mono = Json::array();
        for (int i = 0; i < a.gen_count(); ++i)
            if (mask & (1u << i)) mono.push_back(i + 1);
        terms.push_back(Json{{"monomial", mono}, {"coeff", rat_to_json(c)}});
    }
    return terms;
}

Json classification_to_json(const Classification& cls) {
    Json sr = Json::array();
    for (auto& f : cls.sr)
        sr.push_back(Json{{"factor", fp_poly_str(f.factor)}, {"multiplicity", f.multiplicity}});
    Json nsr = Json::array();
    for (auto& c : cls.nsr)
        nsr.push_back(Json{{"pair", Json::array({fp_poly_str(c.rep), fp_poly_str(c.partner)})},
                           {"multiplicity", c.multiplicity}});
    return Json{{"sr_factors", sr}, {"nsr_classes", nsr}};
}

Json cross_check_to_json(const CrossCheck& cc) {
    return Json{{"k_star", cc.k_star},
                {"counts", cc.counts},
                {"stable", cc.stable},
                {"formula", cc.formula},
                {"criterion_empty", cc.criterion_empty},
                {"cyclic", cc.cyclic},
                {"verdict", cc.verdict}};
}

Json ggp_report_to_json(const GGPReport& rep) {
    Json j;
    j["rsm"] = rep.rsm;
    j["P_g"] = rep.P ? Json(fp_poly_str(*rep.P)) : Json(nullptr);
    Json cls = classification_to_json(rep.cls);
    j["sr_factors"] = cls["sr_factors"];
    j["nsr_classes"] = cls["nsr_classes"];
    j["Q_g"] = rep.Q ? Json(fp_poly_str(*rep.Q)) : Json(nullptr);
    j["point_count"] = rep.count ? Json(*rep.count) : Json(nullptr);
    j["intersection_number"] = rep.multiplicity ? Json(*rep.multiplicity) : Json(nullptr);
    j["brute_force_count"] =
        rep.oracle && !rep.oracle->counts.empty() ? Json(rep.oracle->counts[0]) : Json(nullptr);
    if (rep.oracle) j["oracle"] = cross_check_to_json(*rep.oracle);
    j["local_factor_note"] =
        "the factor (m+1)/2 in the intersection number is carried as a formula; "
        "only the point count is checked against enumeration";
    return j;
}

std::string determinism_hash(const Json& payload) {
    std::string dump = payload.dump();
    unsigned long long h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", h);
    return std::string(buf);
}

Json make_report(const std::string& command, Json inputs, Json outputs) {
    Json rep;
    rep["schema_version"] = "1";
    rep["command"] = command;
    rep["inputs"] = std::move(inputs);
    rep["outputs"] = std::move(outputs);
    rep["determinism_hash"] = determinism_hash(rep["outputs"]);
    return rep;
}

}  // namespace vlat
