#include "qmod/cli.hpp"

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmod/io.hpp"

namespace qmod {

namespace {

struct CommonArgs {
    std::string quiver_path;
    std::string dim_csv;
    std::string theta_csv;
    std::string format = "text";
    int truncate = -1;
    int field = 0;
    double budget = 1e6;
    double tol = 1e-9;
    long long max_iters = 20000;
    std::string input_path;
};

DimensionVector resolve_dim(const QuiverFile& qf, const std::string& csv) {
    if (!csv.empty()) {
        auto v = parse_int_list(csv);
        if (static_cast<int>(v.size()) != qf.quiver.vertex_count())
            throw StructuralError("--dim has " + std::to_string(v.size()) +
                                  " entries but the quiver has " +
                                  std::to_string(qf.quiver.vertex_count()) + " vertices");
        for (long long x : v)
            if (x < 0) throw DomainError("--dim entries must be nonnegative");
        return DimensionVector(v);
    }
    if (qf.default_dim) return *qf.default_dim;
    throw StructuralError("no --dim given and the quiver file has no default");
}

StabilityParam resolve_theta(const QuiverFile& qf, const std::string& csv) {
    if (!csv.empty()) {
        auto v = parse_int_list(csv);
        if (static_cast<int>(v.size()) != qf.quiver.vertex_count())
            throw StructuralError("--theta has " + std::to_string(v.size()) +
                                  " entries but the quiver has " +
                                  std::to_string(qf.quiver.vertex_count()) + " vertices");
        return StabilityParam(v);
    }
    if (qf.default_theta) return *qf.default_theta;
    throw StructuralError("no --theta given and the quiver file has no default");
}

void require_truncate(int t) {
    if (t < 0)
        throw StructuralError("--truncate is required for series commands");
}

void emit(std::ostream& out, OutputMode mode, const nlohmann::json& j, const std::string& text) {
    if (mode == OutputMode::Json)
        out << j.dump() << "\n";
    else
        out << text << "\n";
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quiver moduli toolkit: stability, HN strata, Poincare series, "
                 "finite-field census, moment-map flow"};
    app.require_subcommand(1);

    CommonArgs c;
    auto add_common = [&](CLI::App* sub, bool needs_quiver = true) {
        if (needs_quiver) sub->add_option("-q,--quiver", c.quiver_path, "quiver file")->required();
        sub->add_option("--dim", c.dim_csv, "dimension vector, comma separated in file order");
        sub->add_option("--theta", c.theta_csv, "stability weights, comma separated");
        sub->add_option("--format", c.format, "output format: text|json");
    };

    auto* poincare = app.add_subcommand("poincare", "equivariant Poincare series of the "
                                                    "semistable locus");
    add_common(poincare);
    poincare->add_option("--truncate", c.truncate, "truncation degree (even)")->required();

    auto* moduli = app.add_subcommand("moduli", "Poincare series of the moduli space "
                                                "(stable = semistable)");
    add_common(moduli);
    moduli->add_option("--truncate", c.truncate, "truncation degree (even)")->required();

    auto* strata_cmd = app.add_subcommand("strata", "HN types, codimensions and Levi groups");
    add_common(strata_cmd);

    auto* hn_cmd = app.add_subcommand("hn", "HN type of a finite-field representation");
    add_common(hn_cmd);
    hn_cmd->add_option("--field", c.field, "field order (2, 3 or 5)");
    hn_cmd->add_option("--input", c.input_path, "representation file")->required();

    auto* jh_cmd = app.add_subcommand("jh", "JH graded pieces of a semistable representation");
    add_common(jh_cmd);
    jh_cmd->add_option("--field", c.field, "field order (2, 3 or 5)");
    jh_cmd->add_option("--input", c.input_path, "representation file")->required();

    auto* census = app.add_subcommand("census", "finite-field strata census vs model");
    add_common(census);
    census->add_option("--field", c.field, "field order (2, 3 or 5)")->required();
    census->add_option("--budget", c.budget, "enumeration budget (default 1e6)");

    auto* flow_cmd = app.add_subcommand("flow", "moment-map gradient flow of a complex rep");
    add_common(flow_cmd);
    flow_cmd->add_option("--input", c.input_path, "representation file")->required();
    flow_cmd->add_option("--tol", c.tol, "gradient norm tolerance");
    flow_cmd->add_option("--max-iters", c.max_iters, "iteration cap");

    std::string base_kind = "zero";
    bool list_strata = false;
    auto* sm = app.add_subcommand("supermixed-series",
                                  "series of the rank-(1,1,n) orthogonal example family");
    sm->add_option("--dim", c.dim_csv, "loop-vertex dimension n")->required();
    sm->add_option("--theta", c.theta_csv, "theta1,theta2")->required();
    sm->add_option("--truncate", c.truncate, "truncation degree (even)");
    sm->add_option("--base", base_kind, "stratum base-case provider: zero|bg");
    sm->add_flag("--list-strata", list_strata, "print the stratum records instead");
    sm->add_option("--format", c.format, "output format: text|json");

    auto* validate = app.add_subcommand("validate", "parse and validate a quiver file");
    validate->add_option("-q,--quiver", c.quiver_path, "quiver file")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        err << app.help();
        return 2;
    }

    OutputMode mode = parse_output_mode(c.format);

    if (validate->parsed()) {
        QuiverFile qf = load_quiver_file(c.quiver_path);
        out << "ok: " << qf.quiver.vertex_count() << " vertices, " << qf.quiver.arrow_count()
            << " arrows" << (qf.symmetric ? ", supermixed structure valid" : "") << "\n";
        return 0;
    }

    if (poincare->parsed() || moduli->parsed()) {
        require_truncate(c.truncate);
        QuiverFile qf = load_quiver_file(c.quiver_path);
        DimensionVector d = resolve_dim(qf, c.dim_csv);
        StabilityParam theta = resolve_theta(qf, c.theta_csv);
        TruncatedSeries s = poincare->parsed()
                                ? equivariant_ss_series(qf.quiver, d, theta, c.truncate)
                                : moduli_series(qf.quiver, d, theta, c.truncate);
        emit(out, mode, series_to_json(s), series_to_text(s));
        return 0;
    }

    if (strata_cmd->parsed()) {
        QuiverFile qf = load_quiver_file(c.quiver_path);
        DimensionVector d = resolve_dim(qf, c.dim_csv);
        StabilityParam theta = resolve_theta(qf, c.theta_csv);
        auto recs = strata(qf.quiver, d, theta);
        emit(out, mode, strata_to_json(recs), strata_to_text(recs));
        return 0;
    }

    if (hn_cmd->parsed() || jh_cmd->parsed()) {
        QuiverFile qf = load_quiver_file(c.quiver_path);
        StabilityParam theta = resolve_theta(qf, c.theta_csv);
        FFRep r = load_ff_rep(qf.quiver, c.input_path, c.field);
        if (hn_cmd->parsed()) {
            HNWitness w = hn_type_ff(qf.quiver, r, theta);
            emit(out, mode, hn_type_to_json(w.type), hn_type_to_text(w.type));
        } else {
            auto pieces = jh_graded_ff(qf.quiver, r, theta);
            if (mode == OutputMode::Json) {
                nlohmann::json a = nlohmann::json::array();
                for (const auto& [dv, piece] : pieces) a.push_back(dimvec_to_json(dv));
                out << a.dump() << "\n";
            } else {
                std::string s;
                for (size_t i = 0; i < pieces.size(); ++i)
                    s += (i ? " + " : "") + dimvec_to_text(pieces[i].first);
                out << s << "\n";
            }
        }
        return 0;
    }

    if (census->parsed()) {
        QuiverFile qf = load_quiver_file(c.quiver_path);
        DimensionVector d = resolve_dim(qf, c.dim_csv);
        StabilityParam theta = resolve_theta(qf, c.theta_csv);
        CensusReport rep = strata_census(qf.quiver, d, theta, c.field, c.budget);
        emit(out, mode, census_to_json(rep), census_to_text(rep));
        return 0;
    }

    if (flow_cmd->parsed()) {
        QuiverFile qf = load_quiver_file(c.quiver_path);
        StabilityParam theta = resolve_theta(qf, c.theta_csv);
        CRep r = load_complex_rep(qf.quiver, c.input_path);
        if (!c.dim_csv.empty()) {
            DimensionVector d = resolve_dim(qf, c.dim_csv);
            if (!(d == r.dim))
                throw StructuralError("--dim disagrees with the matrix shapes in " +
                                      c.input_path);
        }
        FlowOptions opts;
        opts.tol = c.tol;
        opts.max_iters = c.max_iters;
        FlowResult res = flow_to_critical(qf.quiver, r, theta, opts);
        nlohmann::json j = flow_to_json(res);
        std::string text = flow_to_text(res);
        ClassifyOptions copts;
        copts.residual_tol = std::max(c.tol * 10, 1e-6);
        try {
            HNType t = classify_critical(res, copts);
            j["hn_guess"] = hn_type_to_json(t);
            text += "\n  hn guess: " + hn_type_to_text(t);
        } catch (const DomainError&) {
            j["hn_guess"] = nullptr;
        }
        emit(out, mode, j, text);
        return 0;
    }

    if (sm->parsed()) {
        auto theta = parse_int_list(c.theta_csv);
        if (theta.size() != 2)
            throw StructuralError("supermixed-series: --theta must be theta1,theta2");
        auto dims = parse_int_list(c.dim_csv);
        if (dims.size() != 1 || dims[0] < 1)
            throw StructuralError("supermixed-series: --dim must be a single n >= 1");
        long long n = dims[0];
        if (list_strata) {
            auto recs = example_strata(n, theta[0], theta[1]);
            emit(out, mode, example_strata_to_json(recs), example_strata_to_text(recs));
            return 0;
        }
        require_truncate(c.truncate);
        BaseCaseProvider base;
        if (base_kind == "zero") {
            base = [&](long long) { return TruncatedSeries(c.truncate); };
        } else if (base_kind == "bg") {
            base = [&](long long n1) {
                GroupSpec g{{{GroupFactor::Kind::GL, 1},
                             {GroupFactor::Kind::GL, n1},
                             {GroupFactor::Kind::O, n - 2 * n1}}};
                return classifying_series(g, c.truncate);
            };
        } else {
            throw StructuralError("supermixed-series: --base must be zero or bg");
        }
        TruncatedSeries s = example_series(n, theta[0], theta[1], c.truncate, base);
        emit(out, mode, series_to_json(s), series_to_text(s));
        return 0;
    }

    err << "unknown command\n" << app.help();
    return 2;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const BudgetError& e) {
        err << "refused: " << e.what() << "\n";
        return 3;
    } catch (const ConsistencyError& e) {
        err << "internal consistency failure: " << e.what() << "\n";
        return 4;
    } catch (const FileParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qmod
