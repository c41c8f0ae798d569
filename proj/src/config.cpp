#include "brodyforge/config.hpp"

#include "brodyforge/error.hpp"

#include <cmath>
#include <fstream>

namespace brodyforge {

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(ErrorKind::validation, where + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known) fail(ErrorKind::validation, "unknown key \"" + it.key() + "\" in " + where);
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail(ErrorKind::validation, where + " is missing required key \"" + std::string(key) + "\"");
    return *it;
}

double num(const json& v, const std::string& where) {
    if (!v.is_number()) fail(ErrorKind::validation, where + " must be a number");
    return v.get<double>();
}

long long integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) fail(ErrorKind::validation, where + " must be an integer");
    return v.get<long long>();
}

std::string str(const json& v, const std::string& where) {
    if (!v.is_string()) fail(ErrorKind::validation, where + " must be a string");
    return v.get<std::string>();
}

cplx parse_complex(const json& v, const std::string& where) {
    check_keys(v, where, {"re", "im"});
    return {num(require(v, "re", where), where + ".re"), num(require(v, "im", where), where + ".im")};
}

InnerCurve parse_inner(const json& v, const std::string& where) {
    std::string kind;
    long long n = 0;
    if (v.is_string()) {
        kind = v.get<std::string>();
    } else {
        check_keys(v, where, {"kind", "n"});
        kind = str(require(v, "kind", where), where + ".kind");
        if (v.contains("n")) n = integer(v["n"], where + ".n");
    }
    if (kind == "exp_to_cstar") return InnerCurve::exp_to_cstar();
    if (kind == "identity_to_c") return InnerCurve::identity_to_c();
    if (kind == "diagonal_to_cn") {
        if (n == 0)
            fail(ErrorKind::validation, where + ": diagonal_to_cn needs its ambient dimension n");
        if (n < 2 || n > 64) fail(ErrorKind::validation, where + ".n must be in 2..64");
        return InnerCurve::diagonal_to_cn(static_cast<int>(n));
    }
    fail(ErrorKind::validation, where + ": unknown inner curve \"" + kind +
                                    "\" (expected exp_to_cstar, identity_to_c or diagonal_to_cn)");
}

GridSpec parse_grid(const json& v, const std::string& where) {
    check_keys(v, where, {"radius", "steps"});
    GridSpec g;
    if (v.contains("radius")) g.radius = num(v["radius"], where + ".radius");
    if (v.contains("steps")) {
        long long s = integer(v["steps"], where + ".steps");
        if (s < 2 || s > 4096) fail(ErrorKind::validation, where + ".steps must be in 2..4096");
        g.steps = static_cast<int>(s);
    }
    return g;
}

RescalingParams parse_rescaling(const json& v, const std::string& where) {
    check_keys(v, where, {"A", "B", "delta", "j_list", "grid"});
    RescalingParams p;
    if (v.contains("A")) p.A = parse_complex(v["A"], where + ".A");
    if (v.contains("B")) p.B = parse_complex(v["B"], where + ".B");
    if (v.contains("delta")) p.delta = num(v["delta"], where + ".delta");
    if (v.contains("j_list")) {
        if (!v["j_list"].is_array()) fail(ErrorKind::validation, where + ".j_list must be an array");
        p.j_list.clear();
        for (size_t i = 0; i < v["j_list"].size(); ++i) {
            long long j = integer(v["j_list"][i], where + ".j_list[" + std::to_string(i) + "]");
            if (j < 1 || j > 1'000'000)
                fail(ErrorKind::validation, where + ".j_list entries must be in 1..1000000");
            p.j_list.push_back(static_cast<int>(j));
        }
    }
    if (v.contains("grid")) p.grid = parse_grid(v["grid"], where + ".grid");
    return p;
}

} // namespace

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open config file " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) fail(ErrorKind::io, "cannot read config file " + path.string());
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::validation, path.string() + " is not valid JSON: " + e.what());
    }
}

NodeSystem parse_nodes(const json& j) {
    const std::string where = "nodes";
    if (!j.is_object()) fail(ErrorKind::validation, where + " must be a JSON object");
    std::string kind = str(require(j, "kind", where), where + ".kind");
    if (kind == "geometric") {
        check_keys(j, where, {"kind", "r", "rho", "j_max"});
        double r = num(require(j, "r", where), where + ".r");
        double rho = num(require(j, "rho", where), where + ".rho");
        long long j_max = integer(require(j, "j_max", where), where + ".j_max");
        if (j_max < 1 || j_max > 512) fail(ErrorKind::validation, where + ".j_max must be in 1..512");
        return NodeSystem::geometric(r, rho, static_cast<int>(j_max));
    }
    if (kind == "explicit") {
        check_keys(j, where, {"kind", "nodes"});
        const json& arr = require(j, "nodes", where);
        if (!arr.is_array()) fail(ErrorKind::validation, where + ".nodes must be an array");
        std::vector<cplx> pts;
        pts.reserve(arr.size());
        for (size_t i = 0; i < arr.size(); ++i)
            pts.push_back(parse_complex(arr[i], where + ".nodes[" + std::to_string(i) + "]"));
        return NodeSystem::explicit_list(std::move(pts));
    }
    fail(ErrorKind::validation, where + ".kind must be \"geometric\" or \"explicit\"");
}

MetricSpec parse_metric(const json& j) {
    const std::string where = "metric";
    if (!j.is_object()) fail(ErrorKind::validation, where + " must be a JSON object");
    std::string kind = str(require(j, "kind", where), where + ".kind");
    if (kind == "euclidean") {
        check_keys(j, where, {"kind", "n"});
        long long n = j.contains("n") ? integer(j["n"], where + ".n") : 2;
        if (n < 1 || n > 64) fail(ErrorKind::validation, where + ".n must be in 1..64");
        return MetricSpec::euclidean(static_cast<int>(n));
    }
    if (kind == "fs_p2") {
        check_keys(j, where, {"kind"});
        return MetricSpec::fs_p2();
    }
    fail(ErrorKind::validation, where + ".kind must be \"euclidean\" or \"fs_p2\"");
}

ScenarioConfig parse_scenario(const json& j) {
    const std::string where = "config";
    check_keys(j, where,
               {"variant", "inner", "metric", "nodes", "p_targets", "rescaling", "witness_c_list"});
    ScenarioConfig cfg;

    std::string variant = str(require(j, "variant", where), where + ".variant");
    if (variant == "punctured") cfg.variant = CurveSpec::Variant::punctured;
    else if (variant == "plane") cfg.variant = CurveSpec::Variant::plane;
    else fail(ErrorKind::validation, where + ".variant must be \"punctured\" or \"plane\"");

    cfg.inner = parse_inner(require(j, "inner", where), where + ".inner");
    cfg.metric = parse_metric(require(j, "metric", where));
    cfg.nodes = parse_nodes(require(j, "nodes", where));

    if (j.contains("p_targets")) {
        const json& arr = j["p_targets"];
        if (!arr.is_array()) fail(ErrorKind::validation, where + ".p_targets must be an array");
        for (size_t i = 0; i < arr.size(); ++i)
            cfg.p_targets.push_back(parse_complex(arr[i], where + ".p_targets[" + std::to_string(i) + "]"));
    }
    if (j.contains("rescaling")) cfg.rescaling = parse_rescaling(j["rescaling"], where + ".rescaling");
    if (j.contains("witness_c_list")) {
        const json& arr = j["witness_c_list"];
        if (!arr.is_array()) fail(ErrorKind::validation, where + ".witness_c_list must be an array");
        for (size_t i = 0; i < arr.size(); ++i)
            cfg.witness_c_list.push_back(
                num(arr[i], where + ".witness_c_list[" + std::to_string(i) + "]"));
    }
    if (cfg.witness_c_list.empty())
        cfg.witness_c_list = cfg.variant == CurveSpec::Variant::punctured
                                 ? std::vector<double>{5, 10, 20}
                                 : std::vector<double>{5, 10, 15};
    return cfg;
}

SequenceConfig parse_sequence_config(const json& j) {
    check_keys(j, "config", {"sequence", "N"});
    json seq = j.contains("sequence") ? j["sequence"] : json("harmonic");
    long long N = j.contains("N") ? integer(j["N"], "config.N") : 10000;
    return make_sequence(seq, N);
}

SequenceConfig make_sequence(const json& sequence, long long N) {
    if (N < 1 || N > 10'000'000) fail(ErrorKind::validation, "N must be in 1..10000000");
    SequenceConfig out;
    out.c.reserve(static_cast<size_t>(N));

    std::string kind;
    double p = 0, ratio = 0, amp = 1;
    if (sequence.is_string()) {
        std::string name = sequence.get<std::string>();
        if (name == "harmonic") { kind = "power"; p = 1; }
        else if (name == "inverse_square") { kind = "power"; p = 2; }
        else if (name == "geometric") { kind = "geometric"; ratio = 0.5; }
        else
            fail(ErrorKind::validation, "unknown sequence \"" + name +
                                            "\" (expected harmonic, inverse_square or geometric)");
        out.label = name;
    } else {
        check_keys(sequence, "sequence", {"kind", "p", "ratio", "amp"});
        kind = str(require(sequence, "kind", "sequence"), "sequence.kind");
        if (sequence.contains("amp")) amp = num(sequence["amp"], "sequence.amp");
        if (!(amp > 0) || !std::isfinite(amp))
            fail(ErrorKind::validation, "sequence.amp must be positive and finite");
        if (kind == "power") {
            p = num(require(sequence, "p", "sequence"), "sequence.p");
            if (!std::isfinite(p)) fail(ErrorKind::validation, "sequence.p must be finite");
            out.label = "power p=" + fmt_double(p);
        } else if (kind == "geometric") {
            ratio = num(require(sequence, "ratio", "sequence"), "sequence.ratio");
            if (!(ratio > 0) || !std::isfinite(ratio))
                fail(ErrorKind::validation, "sequence.ratio must be positive and finite");
            out.label = "geometric ratio=" + fmt_double(ratio);
        } else {
            fail(ErrorKind::validation, "sequence.kind must be \"power\" or \"geometric\"");
        }
        if (amp != 1) out.label += " amp=" + fmt_double(amp);
    }

    for (long long n = 1; n <= N; ++n) {
        double c = kind == "power" ? amp / std::pow(static_cast<double>(n), p)
                                   : amp * std::pow(ratio, static_cast<double>(n));
        out.c.push_back(c);
    }
    return out;
}

json complex_to_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const NodeSystem& nodes) {
    if (nodes.kind == NodeSystem::Kind::geometric)
        return json{{"kind", "geometric"}, {"r", nodes.r}, {"rho", nodes.rho}, {"j_max", nodes.count()}};
    json arr = json::array();
    for (const cplx& a : nodes.alphas) arr.push_back(complex_to_json(a));
    return json{{"kind", "explicit"}, {"nodes", std::move(arr)}};
}

json to_json(const MetricSpec& metric) {
    if (metric.kind == MetricSpec::Kind::euclidean) return json{{"kind", "euclidean"}, {"n", metric.n}};
    return json{{"kind", "fs_p2"}};
}

json to_json(const InnerCurve& inner) {
    switch (inner.kind) {
    case InnerCurve::Kind::exp_to_cstar: return json{{"kind", "exp_to_cstar"}};
    case InnerCurve::Kind::identity_to_c: return json{{"kind", "identity_to_c"}};
    default: return json{{"kind", "diagonal_to_cn"}, {"n", inner.n}};
    }
}

json to_json(const HermiteInterpolant& interp) {
    json a = json::array(), b = json::array();
    for (const LogComplex& c : interp.coeff_a)
        a.push_back(json{{"log_mag", c.log_mag}, {"phase", c.phase}});
    for (const LogComplex& c : interp.coeff_b)
        b.push_back(json{{"log_mag", c.log_mag}, {"phase", c.phase}});
    return json{{"nodes", to_json(interp.nodes)}, {"coeff_a", std::move(a)}, {"coeff_b", std::move(b)}};
}

json to_json(const CurveSpec& spec) {
    json j;
    j["variant"] = spec.variant == CurveSpec::Variant::punctured ? "punctured" : "plane";
    j["inner"] = to_json(spec.inner);
    j["metric"] = to_json(spec.metric);
    j["nodes"] = to_json(spec.nodes);
    json pt = json::array();
    for (const cplx& p : spec.p_targets) pt.push_back(complex_to_json(p));
    j["p_targets"] = std::move(pt);
    j["k_sched"] = spec.k_sched;
    j["E1"] = spec.e1;
    j["E2"] = spec.e2;
    json q = json::array();
    for (const cplx& v : spec.q) q.push_back(complex_to_json(v));
    j["q"] = std::move(q);
    j["interpolant"] = to_json(spec.interp);
    return j;
}

} // namespace brodyforge
