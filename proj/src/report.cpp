#include "qplab/report.hpp"

#include <algorithm>

namespace qp {

Json to_json(const CycScalar& x) { return x.str(); }

Json to_json(const CheckReport& r) {
    Json j;
    j["id"] = r.id;
    j["pass"] = r.pass;
    j["coefficients"] = r.coefficients;
    j["nonzero"] = r.nonzero;
    j["probes"] = r.probes;
    j["depth"] = r.depth;
    if (!r.failure.empty()) j["failure"] = r.failure;
    Json info = Json::object();
    for (const auto& [k, v] : r.info) info[k] = v;
    j["info"] = info;
    return j;
}

Json to_json(const RelationFit& f) {
    Json j;
    j["id"] = f.id;
    Json c = Json::array();
    for (const auto& k : f.constants) c.push_back(k.str());
    j["constants"] = c;
    j["fit_probe"] = f.fit_probe;
    j["fit_index"] = f.fit_index;
    j["identically_zero"] = f.identically_zero;
    long bad = std::count_if(f.residuals.begin(), f.residuals.end(), [](const auto& r) { return !r.second; });
    j["residuals"] = static_cast<long>(f.residuals.size());
    j["nonzero_residuals"] = bad;
    j["valid"] = f.valid();
    return j;
}

Json to_json(const MembershipReport& m) {
    Json j;
    j["target"] = m.target;
    j["family"] = m.family;
    j["degree"] = m.degree;
    j["member"] = m.member;
    j["family_size"] = m.family_size;
    j["family_rank"] = m.family_rank;
    j["component_dimension"] = m.component_dimension;
    j["family_spans_component"] = m.family_spans_component;
    if (m.strict_member) j["strict_member"] = *m.strict_member;
    Json c = Json::object();
    for (const auto& [k, v] : m.coordinates) c[k] = v.str();
    j["coordinates"] = c;
    return j;
}

Json to_json(const RankAudit& a) {
    Json j;
    j["n"] = a.degree;
    j["count"] = a.restricted_count;
    j["product_coeff"] = a.product_coeff.get_str();
    j["restricted_rank"] = a.restricted_rank;
    j["unrestricted_rank"] = a.unrestricted_rank;
    j["unrestricted_family"] = a.unrestricted_family;
    j["ambient_dimension"] = a.ambient_dimension;
    j["verdict"] = a.pass() ? "pass" : "fail";
    return j;
}

Json to_json(const QPMonomial& m) {
    Json j;
    j["monomial"] = m.str();
    j["degree"] = m.degree();
    j["color_type"] = {m.color_type().first, m.color_type().second};
    j["charge"] = m.charge();
    return j;
}

Json to_json(const TensorVector& v) {
    std::vector<std::pair<TensorKey, CycScalar>> terms(v.begin(), v.end());
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Json out = Json::array();
    for (const auto& [k, c] : terms) out.push_back({{"state", TensorState::from_key(k).str()}, {"coef", c.str()}});
    return out;
}

Json lattice_tables(const TwistedLattice& lat) {
    Json j;
    j["gram"] = lat.gram();
    j["nu"] = lat.nu_matrix();
    j["c_alpha"] = lat.c_alpha().str();
    if (lat.perturbation().active()) j["perturbation"] = lat.perturbation().describe();
    std::vector<RootVector> roots = all_roots();
    Json rs = Json::array();
    for (auto r : roots) rs.push_back(r.str());
    j["roots"] = rs;
    Json pairs = Json::array();
    for (auto x : roots) {
        for (auto y : roots) {
            Json e;
            e["x"] = x.str();
            e["y"] = y.str();
            std::vector<int> pn;
            for (int p = 0; p < 6; ++p) pn.push_back(lat.pairing(p, x, y));
            e["pairing_nu_p"] = pn;
            e["epsilon"] = lat.epsilon(x, y).str();
            Json pc = Json::array();
            CycPoly pp = lat.p_pair(x, y);
            for (const auto& c : pp.coeffs()) pc.push_back(c.str());
            e["p_pair"] = pc;
            pairs.push_back(e);
        }
    }
    j["pairs"] = pairs;
    Json w = Json::array();
    for (auto x : roots)
        w.push_back({{"x", x.str()}, {"mode_1", lat.mode_weight(x, 1).str()}, {"mode_5", lat.mode_weight(x, 5).str()}});
    j["mode_weights"] = w;
    return j;
}

std::vector<SeriesRow> series_table(int order, int basis_order) {
    QSeries prod = product_side(order);
    SumSide sum = sum_side(order);
    std::vector<SeriesRow> rows;
    for (int n = 0; n <= order; ++n) {
        SeriesRow r;
        r.n = n;
        r.product_side = prod[n];
        r.sum_side = sum.total[n];
        r.congruence_count = capparelli_congruence_count(n);
        r.difference_count = capparelli_difference_count(n);
        if (n <= basis_order) r.basis_count = static_cast<long>(enumerate_basis_monomials(n).size());
        rows.push_back(r);
    }
    return rows;
}

std::string csv_line(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") == std::string::npos) {
            out += f;
            continue;
        }
        out += '"';
        for (char c : f) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
    }
    return out;
}

}  // namespace qp
