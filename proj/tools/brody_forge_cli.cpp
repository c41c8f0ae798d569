#include <brody_forge.h>

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

int fail_usage(const std::string& message) {
    std::fprintf(stderr, "{\"error\":{\"kind\":\"invalid_argument\",\"message\":\"%s\"}}\n",
                 json_escape(message).c_str());
    return 1;
}

int exit_code(bf_status rc) {
    switch (rc) {
    case BF_OK: return 0;
    case BF_ERR_VALIDATION:
    case BF_ERR_INVALID_ARGUMENT: return 1;
    case BF_ERR_IO: return 3;
    default: return 2; // tolerance, overflow, internal
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"brody-forge: Weierstrass-product interpolation, derivative blow-up tables and "
                 "Zalcman-style rescaling diagnostics"};
    app.require_subcommand(1);

    std::string config, out_dir, format = "csv", seq;
    long long N = 10000;
    bool n_given = false;
    std::vector<std::string> tol_args;

    struct SubDesc {
        const char* name;
        const char* help;
        bool config_required;
    };
    const SubDesc subs[] = {
        {"validate", "check a node system's admissibility and report violations", true},
        {"lemma1", "classify sum/product convergence of a positive sequence", false},
        {"interpolate", "build the Hermite interpolant and report node residuals", true},
        {"curve", "assemble the curve F and emit its blow-up table", true},
        {"rescale", "run the rescaled-family limit and contradiction diagnostics", true},
        {"full", "validate + interpolate + curve + rescale, failing at the first broken gate", true},
    };
    for (const SubDesc& d : subs) {
        CLI::App* sub = app.add_subcommand(d.name, d.help);
        CLI::Option* cfg = sub->add_option("--config", config, "JSON scenario/sequence config");
        if (d.config_required) cfg->required();
        sub->add_option("--out", out_dir, "output directory for report files")->required();
        sub->add_option("--format", format, "table format: csv (default) or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tol", tol_args, "tolerance override key=value (repeatable)");
        if (std::string(d.name) == "lemma1") {
            sub->add_option("--seq", seq, "named sequence: harmonic, inverse_square or geometric");
            sub->add_option("--N", N, "number of terms")->capture_default_str();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail_usage(e.what());
    }

    const std::string command = app.get_subcommands().front()->get_name();
    n_given = command == "lemma1" && app.get_subcommands().front()->count("--N") > 0;

    std::vector<std::string> tol_keys;
    std::vector<double> tol_values;
    for (const std::string& kv : tol_args) {
        size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) return fail_usage("--tol expects key=value, got " + kv);
        char* end = nullptr;
        double v = std::strtod(kv.c_str() + eq + 1, &end);
        if (!end || *end != '\0') return fail_usage("--tol value is not a number in " + kv);
        tol_keys.push_back(kv.substr(0, eq));
        tol_values.push_back(v);
    }
    std::vector<const char*> key_ptrs;
    key_ptrs.reserve(tol_keys.size());
    for (const std::string& k : tol_keys) key_ptrs.push_back(k.c_str());

    char* summary = nullptr;
    bf_status rc;
    if (command == "lemma1" && config.empty()) {
        std::string cfg = "{";
        if (!seq.empty()) cfg += "\"sequence\":\"" + json_escape(seq) + "\"";
        if (n_given) cfg += std::string(seq.empty() ? "" : ",") + "\"N\":" + std::to_string(N);
        cfg += "}";
        rc = bf_run_command_json(command.c_str(), cfg.c_str(), out_dir.c_str(), format.c_str(),
                                 key_ptrs.data(), tol_values.data(),
                                 static_cast<int>(key_ptrs.size()), &summary);
    } else {
        if (command == "lemma1" && !seq.empty())
            return fail_usage("pass either --config or --seq, not both");
        rc = bf_run_command_file(command.c_str(), config.c_str(), out_dir.c_str(), format.c_str(),
                                 key_ptrs.data(), tol_values.data(),
                                 static_cast<int>(key_ptrs.size()), &summary);
    }

    if (rc == BF_OK) {
        if (summary) {
            std::printf("%s\n", summary);
            bf_string_free(summary);
        }
        return 0;
    }
    std::fprintf(stderr, "%s\n", bf_last_error_json());
    return exit_code(rc);
}
