#include "qmod/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qmod {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FileParseError(std::string("JSON parse error: ") + e.what());
    }
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int sign_from_json(const json& j, const std::string& where) {
    if (!j.is_number_integer())
        throw FileParseError(where + ": sign must be an integer +1 or -1");
    int v = j.get<int>();
    if (v != 1 && v != -1) throw FileParseError(where + ": sign must be +1 or -1");
    return v;
}

} // namespace

QuiverFile parse_quiver_file(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw FileParseError("quiver file: top level must be an object");
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw FileParseError("quiver file: missing 'vertices' array");
    std::vector<std::string> vs;
    for (const auto& v : j["vertices"]) {
        if (!v.is_string()) throw FileParseError("quiver file: vertex ids must be strings");
        vs.push_back(v.get<std::string>());
    }
    std::vector<std::array<std::string, 3>> arrs;
    if (j.contains("arrows")) {
        if (!j["arrows"].is_array()) throw FileParseError("quiver file: 'arrows' must be an array");
        for (const auto& a : j["arrows"]) {
            if (!a.is_object() || !a.contains("name") || !a.contains("tail") || !a.contains("head"))
                throw FileParseError("quiver file: each arrow needs name/tail/head");
            arrs.push_back({a["name"].get<std::string>(), a["tail"].get<std::string>(),
                            a["head"].get<std::string>()});
        }
    }
    QuiverFile qf;
    try {
        qf.quiver = Quiver::make(vs, arrs);
    } catch (const StructuralError& e) {
        throw FileParseError(e.what());
    }

    if (j.contains("symmetric")) {
        const json& s = j["symmetric"];
        SymmetricStructure st;
        st.vertex_involution.assign(qf.quiver.vertex_count(), -1);
        st.arrow_involution.assign(qf.quiver.arrow_count(), -1);
        st.vertex_signs.assign(qf.quiver.vertex_count(), 1);
        st.arrow_signs.assign(qf.quiver.arrow_count(), 1);
        if (!s.contains("vertex_involution") || !s.contains("arrow_involution"))
            throw FileParseError("symmetric block: need vertex_involution and arrow_involution");
        for (const auto& [k, v] : s["vertex_involution"].items()) {
            int i = qf.quiver.vertex_index(k);
            int si = qf.quiver.vertex_index(v.get<std::string>());
            if (i < 0 || si < 0)
                throw FileParseError("vertex_involution references unknown vertex '" + k + "' or '" +
                                     v.get<std::string>() + "'");
            st.vertex_involution[i] = si;
        }
        for (const auto& [k, v] : s["arrow_involution"].items()) {
            int i = qf.quiver.arrow_index(k);
            int si = qf.quiver.arrow_index(v.get<std::string>());
            if (i < 0 || si < 0)
                throw FileParseError("arrow_involution references unknown arrow '" + k + "' or '" +
                                     v.get<std::string>() + "'");
            st.arrow_involution[i] = si;
        }
        for (int i = 0; i < qf.quiver.vertex_count(); ++i)
            if (st.vertex_involution[i] < 0)
                throw FileParseError("vertex_involution misses vertex '" + qf.quiver.vertices[i] + "'");
        for (int a = 0; a < qf.quiver.arrow_count(); ++a)
            if (st.arrow_involution[a] < 0)
                throw FileParseError("arrow_involution misses arrow '" + qf.quiver.arrows[a].name + "'");
        if (s.contains("vertex_signs"))
            for (const auto& [k, v] : s["vertex_signs"].items()) {
                int i = qf.quiver.vertex_index(k);
                if (i < 0) throw FileParseError("vertex_signs references unknown vertex '" + k + "'");
                st.vertex_signs[i] = sign_from_json(v, "vertex_signs[" + k + "]");
            }
        if (s.contains("arrow_signs"))
            for (const auto& [k, v] : s["arrow_signs"].items()) {
                int a = qf.quiver.arrow_index(k);
                if (a < 0) throw FileParseError("arrow_signs references unknown arrow '" + k + "'");
                st.arrow_signs[a] = sign_from_json(v, "arrow_signs[" + k + "]");
            }
        auto violations = validate_supermixed(qf.quiver, st);
        if (!violations.empty()) {
            std::string msg = "supermixed structure invalid:";
            for (const auto& v : violations) msg += "\n  - " + v;
            throw FileParseError(msg);
        }
        qf.symmetric = std::move(st);
    }

    if (j.contains("defaults")) {
        const json& d = j["defaults"];
        if (d.contains("dim")) {
            std::vector<long long> e;
            for (const auto& x : d["dim"]) e.push_back(x.get<long long>());
            if (static_cast<int>(e.size()) != qf.quiver.vertex_count())
                throw FileParseError("defaults.dim length does not match vertex count");
            qf.default_dim = DimensionVector(std::move(e));
        }
        if (d.contains("theta")) {
            std::vector<long long> w;
            for (const auto& x : d["theta"]) w.push_back(x.get<long long>());
            if (static_cast<int>(w.size()) != qf.quiver.vertex_count())
                throw FileParseError("defaults.theta length does not match vertex count");
            qf.default_theta = StabilityParam(std::move(w));
        }
    }
    return qf;
}

QuiverFile load_quiver_file(const std::string& path) { return parse_quiver_file(slurp(path)); }

FFRep parse_ff_rep(const Quiver& q, const std::string& text, int expected_field) {
    json j = parse_json(text);
    if (!j.contains("field") || !j["field"].is_number_integer())
        throw FileParseError("rep file: integer 'field' required for a finite-field rep");
    int fq = j["field"].get<int>();
    if (expected_field && fq != expected_field)
        throw FileParseError("rep file: field " + std::to_string(fq) +
                             " does not match --field " + std::to_string(expected_field));
    if (!j.contains("matrices") || !j["matrices"].is_object())
        throw FileParseError("rep file: 'matrices' object required");

    // infer the dimension vector from matrix shapes
    std::vector<long long> dims(q.vertex_count(), -1);
    auto note_dim = [&](int v, long long n, const std::string& arrow) {
        if (dims[v] == -1) dims[v] = n;
        else if (dims[v] != n)
            throw FileParseError("rep file: inconsistent dimension at vertex '" + q.vertices[v] +
                                 "' via arrow '" + arrow + "'");
    };
    std::vector<std::vector<std::vector<long long>>> raw(q.arrow_count());
    for (const auto& [name, m] : j["matrices"].items()) {
        int a = q.arrow_index(name);
        if (a < 0) throw FileParseError("rep file: unknown arrow '" + name + "'");
        if (!m.is_array()) throw FileParseError("rep file: matrix for '" + name + "' must be an array");
        std::vector<std::vector<long long>> rows;
        for (const auto& r : m) {
            std::vector<long long> row;
            for (const auto& x : r) row.push_back(x.get<long long>());
            rows.push_back(std::move(row));
        }
        for (size_t i = 1; i < rows.size(); ++i)
            if (rows[i].size() != rows[0].size())
                throw FileParseError("rep file: ragged matrix for '" + name + "'");
        note_dim(q.arrows[a].head, static_cast<long long>(rows.size()), name);
        if (!rows.empty()) note_dim(q.arrows[a].tail, static_cast<long long>(rows[0].size()), name);
        raw[a] = std::move(rows);
    }
    for (int a = 0; a < q.arrow_count(); ++a)
        if (raw[a].empty() && dims[q.arrows[a].head] != 0)
            if (!j["matrices"].contains(q.arrows[a].name))
                throw FileParseError("rep file: missing matrix for arrow '" + q.arrows[a].name + "'");
    for (long long& d : dims)
        if (d == -1) d = 0;

    FFRep r;
    r.q = fq;
    r.dim = DimensionVector(dims);
    for (int a = 0; a < q.arrow_count(); ++a) {
        FFMatrix m(static_cast<int>(dims[q.arrows[a].head]),
                   static_cast<int>(dims[q.arrows[a].tail]), fq);
        for (size_t i = 0; i < raw[a].size(); ++i)
            for (size_t jx = 0; jx < raw[a][i].size(); ++jx) {
                long long v = raw[a][i][jx] % fq;
                if (v < 0) v += fq;
                m.set(static_cast<int>(i), static_cast<int>(jx), static_cast<uint8_t>(v));
            }
        r.mats.push_back(std::move(m));
    }
    return r;
}

CRep parse_complex_rep(const Quiver& q, const std::string& text) {
    json j = parse_json(text);
    if (!j.contains("field") || !(j["field"].is_string() && j["field"].get<std::string>() == "C"))
        throw FileParseError("rep file: 'field' must be \"C\" for a complex rep");
    if (!j.contains("matrices") || !j["matrices"].is_object())
        throw FileParseError("rep file: 'matrices' object required");
    auto entry = [](const json& x) -> std::complex<double> {
        if (x.is_array()) {
            if (x.size() != 2) throw FileParseError("rep file: complex entry must be [re, im]");
            return {x[0].get<double>(), x[1].get<double>()};
        }
        return {x.get<double>(), 0.0};
    };
    std::vector<long long> dims(q.vertex_count(), -1);
    std::vector<Eigen::MatrixXcd> mats(q.arrow_count());
    std::vector<char> have(q.arrow_count(), 0);
    for (const auto& [name, m] : j["matrices"].items()) {
        int a = q.arrow_index(name);
        if (a < 0) throw FileParseError("rep file: unknown arrow '" + name + "'");
        size_t rows = m.size();
        size_t cols = rows ? m[0].size() : 0;
        Eigen::MatrixXcd mat(rows, cols);
        for (size_t i = 0; i < rows; ++i) {
            if (m[i].size() != cols) throw FileParseError("rep file: ragged matrix for '" + name + "'");
            for (size_t jx = 0; jx < cols; ++jx) mat(i, jx) = entry(m[i][jx]);
        }
        auto note = [&](int v, long long n) {
            if (dims[v] == -1) dims[v] = n;
            else if (dims[v] != n)
                throw FileParseError("rep file: inconsistent dimension at vertex '" +
                                     q.vertices[v] + "'");
        };
        note(q.arrows[a].head, static_cast<long long>(rows));
        note(q.arrows[a].tail, static_cast<long long>(cols));
        mats[a] = std::move(mat);
        have[a] = 1;
    }
    for (long long& d : dims)
        if (d == -1) d = 0;
    CRep r;
    r.dim = DimensionVector(dims);
    for (int a = 0; a < q.arrow_count(); ++a)
        r.mats.push_back(have[a] ? mats[a]
                                 : Eigen::MatrixXcd::Zero(dims[q.arrows[a].head],
                                                          dims[q.arrows[a].tail]));
    return r;
}

FFRep load_ff_rep(const Quiver& q, const std::string& path, int expected_field) {
    return parse_ff_rep(q, slurp(path), expected_field);
}

CRep load_complex_rep(const Quiver& q, const std::string& path) {
    return parse_complex_rep(q, slurp(path));
}

OutputMode parse_output_mode(const std::string& s) {
    if (s == "text") return OutputMode::Text;
    if (s == "json") return OutputMode::Json;
    throw FileParseError("unknown output mode '" + s + "' (expected text or json)");
}

std::string rational_to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

json series_to_json(const TruncatedSeries& s) {
    json out = json::array();
    for (int k = 0; k <= s.trunc(); ++k)
        if (s.coeff(k) != 0) out.push_back(json::array({k, rational_to_string(s.coeff(k))}));
    return out;
}

TruncatedSeries series_from_json(const json& j, int trunc_degree) {
    TruncatedSeries s(trunc_degree);
    for (const auto& pair : j) {
        int e = pair[0].get<int>();
        if (e <= trunc_degree) s.set_coeff(e, rational_from_string(pair[1].get<std::string>()));
    }
    return s;
}

std::string series_to_text(const TruncatedSeries& s) {
    std::string out;
    for (int k = 0; k <= s.trunc(); ++k) {
        if (s.coeff(k) == 0) continue;
        if (!out.empty()) out += " + ";
        std::string c = rational_to_string(s.coeff(k));
        if (k == 0) out += c;
        else if (c == "1") out += "t^" + std::to_string(k);
        else out += c + "*t^" + std::to_string(k);
    }
    if (out.empty()) out = "0";
    out += " + O(t^" + std::to_string(s.trunc() + 1) + ")";
    return out;
}

std::string dimvec_to_text(const DimensionVector& d) {
    std::string s = "(";
    for (int i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s + ")";
}

json dimvec_to_json(const DimensionVector& d) {
    json a = json::array();
    for (long long x : d.entries) a.push_back(x);
    return a;
}

DimensionVector dimvec_from_json(const json& j) {
    std::vector<long long> e;
    for (const auto& x : j) e.push_back(x.get<long long>());
    return DimensionVector(std::move(e));
}

std::string hn_type_to_text(const HNType& t) {
    std::string s;
    for (size_t i = 0; i < t.pieces.size(); ++i) {
        if (i) s += " > ";
        s += dimvec_to_text(t.pieces[i]);
    }
    return s;
}

json hn_type_to_json(const HNType& t) {
    json a = json::array();
    for (const auto& p : t.pieces) a.push_back(dimvec_to_json(p));
    return a;
}

HNType hn_type_from_json(const json& j) {
    HNType t;
    for (const auto& p : j) t.pieces.push_back(dimvec_from_json(p));
    return t;
}

json census_to_json(const CensusReport& r) {
    json types = json::array();
    for (const auto& [t, c] : r.empirical) {
        json row;
        row["type"] = hn_type_to_json(t);
        row["empirical"] = c;
        row["predicted"] = r.predicted.at(t);
        types.push_back(row);
    }
    json out;
    out["field"] = r.field;
    out["dim"] = dimvec_to_json(r.dim);
    out["theta"] = r.theta.weights;
    out["types"] = types;
    out["total"] = r.total;
    out["match"] = r.match;
    return out;
}

CensusReport census_from_json(const json& j) {
    CensusReport r;
    r.field = j["field"].get<int>();
    r.dim = dimvec_from_json(j["dim"]);
    r.theta = StabilityParam(j["theta"].get<std::vector<long long>>());
    for (const auto& row : j["types"]) {
        HNType t = hn_type_from_json(row["type"]);
        r.empirical[t] = row["empirical"].get<long long>();
        r.predicted[t] = row["predicted"].get<long long>();
    }
    r.total = j["total"].get<long long>();
    r.match = j["match"].get<bool>();
    return r;
}

std::string census_to_text(const CensusReport& r) {
    std::ostringstream ss;
    ss << "census over F_" << r.field << ", dim " << dimvec_to_text(r.dim) << ", theta (";
    for (int i = 0; i < r.theta.size(); ++i) ss << (i ? "," : "") << r.theta[i];
    ss << ")\n";
    for (const auto& [t, c] : r.empirical)
        ss << "  " << hn_type_to_text(t) << ": empirical " << c << ", predicted "
           << r.predicted.at(t) << "\n";
    ss << "  total " << r.total << "\n";
    ss << "  match " << (r.match ? "true" : "false");
    return ss.str();
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

json flow_to_json(const FlowResult& r) {
    json out;
    out["converged"] = r.converged;
    out["iterations"] = r.iterations;
    out["final_energy"] = format_double(r.energy_trace.back());
    out["residual"] = format_double(r.residual);
    double ln = 0;
    for (const auto& m : r.limit.mats) ln += m.squaredNorm();
    out["limit_norm"] = format_double(std::sqrt(ln));
    json spec = json::array();
    for (const auto& ev : r.beta_spectrum) {
        json v = json::array();
        for (double x : ev) v.push_back(format_double(x));
        spec.push_back(v);
    }
    out["beta_spectrum"] = spec;
    return out;
}

std::string flow_to_text(const FlowResult& r) {
    std::ostringstream ss;
    ss << (r.converged ? "converged" : "NOT converged") << " after " << r.iterations
       << " iterations\n";
    ss << "  final energy " << format_double(r.energy_trace.back()) << "\n";
    double ln = 0;
    for (const auto& m : r.limit.mats) ln += m.squaredNorm();
    ss << "  limit norm " << format_double(std::sqrt(ln)) << "\n";
    ss << "  residual " << format_double(r.residual) << "\n";
    ss << "  beta spectrum:";
    for (size_t i = 0; i < r.beta_spectrum.size(); ++i) {
        ss << " [";
        for (size_t k = 0; k < r.beta_spectrum[i].size(); ++k)
            ss << (k ? ", " : "") << format_double(r.beta_spectrum[i][k]);
        ss << "]";
    }
    return ss.str();
}

json group_to_json(const GroupSpec& g) {
    json a = json::array();
    for (const auto& f : g.factors) {
        std::string kind = f.kind == GroupFactor::Kind::GL ? "GL"
                           : f.kind == GroupFactor::Kind::O ? "O"
                                                            : "Sp";
        a.push_back(json::array({kind, f.rank}));
    }
    return a;
}

json strata_to_json(const std::vector<StratumRecord>& recs) {
    json a = json::array();
    for (const auto& r : recs) {
        json row;
        row["type"] = hn_type_to_json(r.hn_type);
        row["codim"] = r.codim;
        row["levi"] = group_to_json(r.levi);
        a.push_back(row);
    }
    return a;
}

std::string strata_to_text(const std::vector<StratumRecord>& recs) {
    std::ostringstream ss;
    for (const auto& r : recs)
        ss << hn_type_to_text(r.hn_type) << "  codim " << r.codim << "  levi "
           << group_to_string(r.levi) << "\n";
    std::string s = ss.str();
    if (!s.empty()) s.pop_back();
    return s;
}

json example_strata_to_json(const std::vector<ExampleStratum>& recs) {
    json a = json::array();
    for (const auto& r : recs) {
        json row;
        row["family"] = r.family;
        row["n1"] = r.n1;
        row["n2"] = r.n2;
        row["codim"] = r.codim;
        row["levi"] = group_to_json(r.levi);
        a.push_back(row);
    }
    return a;
}

std::string example_strata_to_text(const std::vector<ExampleStratum>& recs) {
    std::ostringstream ss;
    for (const auto& r : recs)
        ss << "Z" << r.family << "(n1=" << r.n1 << ", n2=" << r.n2 << ")  codim " << r.codim
           << "  levi " << group_to_string(r.levi) << " (x rank-1 torus)\n";
    std::string s = ss.str();
    if (!s.empty()) s.pop_back();
    return s;
}

std::vector<long long> parse_int_list(const std::string& csv) {
    std::vector<long long> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (cur.empty()) throw FileParseError("empty entry in integer list '" + csv + "'");
            out.push_back(std::stoll(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (cur.empty()) throw FileParseError("empty entry in integer list '" + csv + "'");
    out.push_back(std::stoll(cur));
    return out;
}

} // namespace qmod
