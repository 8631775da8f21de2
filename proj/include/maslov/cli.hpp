#pragma once

// JSON formats and report construction behind the `maslov` command-line tool.
//
// Matrices are row-major arrays of rows. Frames are 2n×n matrices. A path spec
// is either inline samples {"n", "samples", "params"?, "closed"} or a
// generator {"kind", "n", "winding", "resolution", "seed"?}. Unit complex
// results are integer exponents (of i, or of e^{iπ/4} where noted).

#include "json.hpp"
#include "maslov/maslov.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace maslov::cli {

using json = nlohmann::json;

enum ExitCode : int { kOk = 0, kInternal = 1, kInputError = 2, kPreconditionError = 3, kPropertyFailure = 4 };

struct Options {
    Tolerances tol;
    std::uint64_t seed = 0;
};

/// Thrown when a report is complete but a checked property did not hold.
class PropertyFailure : public Error {
public:
    explicit PropertyFailure(json report) : Error("property check failed"), report_(std::move(report)) {}
    const json& report() const { return report_; }

private:
    json report_;
};

inline std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string digest(const json& inputs) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << fnv1a(inputs.dump());
    return os.str();
}

/// Inline JSON when the text starts like JSON, otherwise a file name.
inline json load_json(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    std::string text;
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        if (!in) throw InvalidInput("cannot open '" + arg + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
}

inline Mat matrix_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) throw InvalidInput(std::string(what) + ": expected a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const bool flat_row = !j.front().is_array();
    const auto cols = flat_row ? Eigen::Index{1} : static_cast<Eigen::Index>(j.front().size());
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (flat_row) {
            if (!row.is_number()) throw InvalidInput(std::string(what) + ": entries must be numbers");
            m(i, 0) = row.get<double>();
            continue;
        }
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw InvalidInput(std::string(what) + ": rows must have equal length");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            const json& v = row[static_cast<std::size_t>(c)];
            if (!v.is_number()) throw InvalidInput(std::string(what) + ": entries must be numbers");
            m(i, c) = v.get<double>();
        }
    }
    return m;
}

inline json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline LagrangianFrame frame_from_json(const json& j, const Options& opt, const char* what = "frame") {
    return LagrangianFrame(matrix_from_json(j, what), opt.tol);
}

template <class T>
T field(const json& j, const char* key, const char* what) {
    if (!j.contains(key)) throw InvalidInput(std::string(what) + ": missing field '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidInput(std::string(what) + ": field '" + key + "' has the wrong type");
    }
}

inline LagrangianPath path_from_json(const json& spec, const Options& opt) {
    if (!spec.is_object()) throw InvalidInput("path spec must be an object");
    if (spec.contains("samples")) {
        const auto n = field<int>(spec, "n", "path");
        const json& raw = spec.at("samples");
        if (!raw.is_array() || raw.size() < 2) throw InvalidInput("path: need at least two samples");
        std::vector<LagrangianFrame> samples;
        for (const json& s : raw) {
            samples.push_back(frame_from_json(s, opt, "path sample"));
            if (samples.back().n() != n) throw InvalidInput("path: sample does not match n");
        }
        std::vector<double> params;
        if (spec.contains("params")) {
            params = field<std::vector<double>>(spec, "params", "path");
        } else {
            for (std::size_t i = 0; i < samples.size(); ++i) {
                params.push_back(static_cast<double>(i) / static_cast<double>(samples.size() - 1));
            }
        }
        const bool closed = spec.value("closed", false);
        return LagrangianPath(std::move(samples), std::move(params), closed, {}, opt.tol);
    }

    const auto kind = field<std::string>(spec, "kind", "path");
    if (kind == "chart_path") {
        const LagrangianFrame from = frame_from_json(spec.at("from"), opt, "from");
        const LagrangianFrame to = frame_from_json(spec.at("to"), opt, "to");
        const LagrangianFrame avoid = spec.contains("avoid") ? frame_from_json(spec.at("avoid"), opt, "avoid")
                                                             : detail::complement_for(from, {from, to});
        return chart_path(from, to, avoid);
    }
    const auto n = field<int>(spec, "n", "path");
    const int winding = spec.value("winding", 0);
    const int resolution = spec.value("resolution", 64);
    if (n < 1) throw InvalidInput("path: n must be >= 1");
    if (resolution < 16) throw InvalidInput("path: resolution must be >= 16");
    const std::uint64_t seed = spec.value("seed", opt.seed);
    random::Rng rng(seed);
    const SamplingOptions sampling{static_cast<std::size_t>(resolution)};
    if (kind == "generator") return sample_path(random::generator_loop(n, winding).evaluator(), true, sampling);
    if (kind == "unitary_loop") return sample_path(random::unitary_loop(n, winding, rng).evaluator(), true, sampling);
    if (kind == "random") return sample_path(random::random_loop(n, winding, rng).evaluator(), true, sampling);
    throw InvalidInput("path: unknown kind '" + kind + "'");
}

struct ChartFile {
    PhaseChart chart;
    TestFunction psi;
};

inline ChartFile chart_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("chart must be an object");
    const auto n = field<int>(j, "n", "chart");
    const auto big_n = field<int>(j, "N", "chart");
    const Mat xx = matrix_from_json(j.at("hess_xx"), "hess_xx");
    const Mat xt = matrix_from_json(j.at("hess_xtheta"), "hess_xtheta");
    const Mat tt = matrix_from_json(j.at("hess_thetatheta"), "hess_thetatheta");
    const Mat psi = j.contains("psi_xx") ? matrix_from_json(j.at("psi_xx"), "psi_xx") : Mat::Zero(n, n);
    if (xx.rows() != n || tt.rows() != big_n || psi.rows() != n || psi.cols() != n) {
        throw InvalidInput("chart: block sizes do not match n and N");
    }
    return ChartFile{PhaseChart(xx, xt, tt), TestFunction{psi}};
}

inline json base_report(const std::string& command, const json& inputs, const Options& opt) {
    return json{{"command", command},
                {"version", kVersion},
                {"seed", opt.seed},
                {"inputs", inputs},
                {"inputs_digest", digest(inputs)}};
}

inline json cmd_winding(const json& path_spec, const Options& opt) {
    json report = base_report("winding", json{{"path", path_spec}}, opt);
    const LagrangianPath path = path_from_json(path_spec, opt);
    const WindingResult w = winding_details(path);
    report["result"] = json{{"index", w.index}};
    report["diagnostics"] = json{{"max_phase_step", w.max_step}, {"residual", w.residual}, {"samples", path.size()}};
    return report;
}

inline json cmd_crossings(const json& path_spec, const json& alpha_spec, const json& beta_spec, const Options& opt) {
    json report = base_report("crossings", json{{"path", path_spec}, {"alpha", alpha_spec}, {"beta", beta_spec}}, opt);
    const LagrangianPath path = path_from_json(path_spec, opt);
    const LagrangianFrame alpha = frame_from_json(alpha_spec, opt, "alpha");
    std::optional<LagrangianFrame> beta;
    if (!(beta_spec.is_null() || (beta_spec.is_string() && beta_spec.get<std::string>() == "auto"))) {
        beta = frame_from_json(beta_spec, opt, "beta");
    }
    const CrossingReport cr = crossing_details(path, alpha, beta, opt.tol);
    json events = json::array();
    for (const CrossingEvent& e : cr.events) {
        events.push_back(json{{"t_star", e.t_star}, {"dim", e.crossing_dim}, {"jump", e.jump}});
    }
    report["result"] = json{{"index", cr.index}, {"events", events}};
    report["diagnostics"] = json{{"samples", path.size()}, {"beta", beta ? "given" : "auto"}};
    return report;
}

inline json cmd_hormander(const json& a, const json& ap, const json& b, const json& bp, const std::string& method,
                          const Options& opt) {
    json report = base_report("hormander",
                              json{{"alpha", a}, {"alpha_p", ap}, {"beta", b}, {"beta_p", bp}, {"method", method}}, opt);
    const LagrangianFrame fa = frame_from_json(a, opt, "alpha");
    const LagrangianFrame fap = frame_from_json(ap, opt, "alpha_p");
    const LagrangianFrame fb = frame_from_json(b, opt, "beta");
    const LagrangianFrame fbp = frame_from_json(bp, opt, "beta_p");
    if (method == "signature") {
        report["result"] = json{{"signature", hormander_index(fa, fap, fb, fbp, HormanderMethod::Signature, opt.tol)}};
    } else if (method == "path") {
        report["result"] = json{{"path", hormander_index(fa, fap, fb, fbp, HormanderMethod::Path, opt.tol)}};
    } else if (method == "both") {
        const int s = hormander_index(fa, fap, fb, fbp, HormanderMethod::Signature, opt.tol);
        const int p = hormander_index(fa, fap, fb, fbp, HormanderMethod::Path, opt.tol);
        report["result"] = json{{"signature", s}, {"path", p}, {"equal", s == p}};
        if (s != p) throw PropertyFailure(report);
    } else {
        throw InvalidInput("hormander: method must be signature, path or both");
    }
    return report;
}

inline json cmd_relative(const json& lambda, const json& lambda0, const json& sigma, const Options& opt) {
    json report = base_report("relative", json{{"lambda", lambda}, {"lambda0", lambda0}, {"sigma", sigma}}, opt);
    const int mu = relative_index(path_from_json(lambda, opt), path_from_json(lambda0, opt),
                                  path_from_json(sigma, opt), opt.tol);
    report["result"] = json{{"index", mu}};
    return report;
}

inline json cmd_reduce(const json& lambda, const json& delta, const Options& opt) {
    json report = base_report("reduce", json{{"lambda", lambda}, {"delta", delta}}, opt);
    const LagrangianFrame l = frame_from_json(lambda, opt, "lambda");
    const IsotropicSubspace d(matrix_from_json(delta, "delta"), opt.tol);
    const LagrangianFrame r = reduce(l, d, opt.tol);
    report["result"] = json{{"n", r.n()}, {"frame", matrix_to_json(r.columns())}};
    Mat both(l.columns().rows(), l.n() + d.dim());
    both << l.columns(), d.columns();
    const auto cap = l.n() + d.dim() - linalg::numerical_rank(both, opt.tol.rank);
    report["diagnostics"] = json{{"lambda_cap_delta_dim", cap}};
    return report;
}

inline json cmd_holonomy(long long mu, const Options& opt) {
    json report = base_report("holonomy", json{{"mu", mu}}, opt);
    report["result"] = json{{"mu", mu}, {"exponent_of_i", holonomy_value(mu).exponent_of_i()}};
    return report;
}

inline json cmd_charts(const json& chart_a, const json* chart_b, const Options& opt) {
    json inputs{{"chart", chart_a}};
    if (chart_b) inputs["chart_b"] = *chart_b;
    json report = base_report("charts", inputs, opt);
    const ChartFile a = chart_from_json(chart_a);
    const QPsi q = q_psi(a.chart, a.psi, opt.tol);
    json result{{"q_psi", matrix_to_json(q.form.matrix())},
                {"nondegenerate", q.nondegenerate},
                {"q_psi_signature", q.form.signature()}};
    bool ok = true;
    if (q.nondegenerate) {
        const SignatureRelation r = check_signature_relation(a.chart, a.psi, opt.tol);
        result["signature_relation"] = json{{"lhs", r.lhs},
                                            {"crossing_term", r.crossing_term},
                                            {"fiber_term", r.fiber_term},
                                            {"rhs", r.rhs},
                                            {"equal", r.equal}};
        ok = r.equal;
    }
    if (chart_b) {
        const ChartFile b = chart_from_json(*chart_b);
        const Transition t = transition_factor(a.chart, b.chart, a.psi, opt.tol);
        json tj{{"signature_difference", t.signature_difference},
                {"exponent_of_e_ipi4", t.factor.eighths()},
                {"even", t.factor.in_z4()}};
        if (t.factor.in_z4()) tj["exponent_of_i"] = t.factor.exponent_of_i();
        result["transition"] = tj;
    }
    report["result"] = result;
    if (!ok) throw PropertyFailure(report);
    return report;
}

inline json cmd_verify(const std::string& suite, int trials, const Options& opt) {
    json report = base_report("verify", json{{"suite", suite}, {"trials", trials}}, opt);
    const verify::SuiteResult r = verify::run_suite(suite, trials, opt.seed);
    report["result"] = json{{"suite", r.suite},     {"trials", r.trials},
                            {"passed", r.passed},   {"failed", r.failed},
                            {"raised", r.raised},   {"first_counterexample", r.first_counterexample}};
    if (!r.ok()) throw PropertyFailure(report);
    return report;
}

inline int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const PropertyFailure*>(&e)) return kPropertyFailure;
    if (dynamic_cast<const InvalidInput*>(&e)) return kInputError;
    if (dynamic_cast<const PreconditionError*>(&e)) return kPreconditionError;
    return kInternal;
}

inline std::string error_kind(const std::exception& e) {
    switch (exit_code_for(e)) {
        case kPropertyFailure: return "property_failure";
        case kInputError: return "input";
        case kPreconditionError: return "precondition";
        default: return "internal";
    }
}

/// Report for a command that raised: the partial report when there is one.
inline json error_report(const std::string& command, const std::exception& e, const Options& opt) {
    if (const auto* pf = dynamic_cast<const PropertyFailure*>(&e)) {
        json r = pf->report();
        r["status"] = "failed";
        return r;
    }
    json r = base_report(command, json::object(), opt);
    r["status"] = "error";
    r["error"] = json{{"kind", error_kind(e)}, {"message", e.what()}};
    return r;
}

/// MASLOV_SEED, or 0 when unset or unparsable.
inline std::uint64_t default_seed() {
    const char* env = std::getenv("MASLOV_SEED");
    if (!env) return 0;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        return 0;
    }
}

}  // namespace maslov::cli
