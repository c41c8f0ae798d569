#include "brodyforge/nodes.hpp"

#include "brodyforge/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace brodyforge {

NodeSystem NodeSystem::geometric(double r, double rho, int j_max) {
    NodeSystem out;
    out.kind = Kind::geometric;
    out.r = r;
    out.rho = rho;
    if (j_max > 0) {
        out.alphas.reserve(static_cast<std::size_t>(j_max));
        double a = r;
        for (int j = 1; j <= j_max; ++j) {
            out.alphas.emplace_back(a, 0.0);
            a *= rho;
        }
    }
    if (rho > 1.0 && r != 0.0 && j_max > 0) {
        // sum_{j > J} 1/(|r| rho^{j-1}) = 1/(|r| rho^{J-1} (rho - 1))
        out.tail_bound = 1.0 / (std::abs(out.alphas.back().real()) * (rho - 1.0));
    } else {
        out.tail_bound = std::numeric_limits<double>::infinity();
    }
    return out;
}

NodeSystem NodeSystem::explicit_list(std::vector<cplx> nodes) {
    NodeSystem out;
    out.kind = Kind::explicit_list;
    out.alphas = std::move(nodes);
    out.tail_bound = 0.0;
    return out;
}

NodeValidation validate_nodes(const NodeSystem& nodes, double tail_bound_max) {
    NodeValidation report;
    auto flag = [&](std::string code, std::string message) {
        report.ok = false;
        report.violations.push_back({std::move(code), std::move(message)});
    };

    if (nodes.alphas.empty()) flag("empty", "node system has no nodes (J_max >= 1 required)");

    for (std::size_t i = 0; i < nodes.alphas.size(); ++i) {
        const cplx& a = nodes.alphas[i];
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            flag("non_finite_node", "node " + std::to_string(i + 1) + " is not finite");
            continue;
        }
        if (a == cplx(0.0, 0.0))
            flag("zero_node", "node " + std::to_string(i + 1) + " is zero");
        for (std::size_t k = i + 1; k < nodes.alphas.size(); ++k) {
            if (a == nodes.alphas[k]) {
                std::ostringstream os;
                os << "nodes " << (i + 1) << " and " << (k + 1) << " coincide at ("
                   << a.real() << ", " << a.imag() << ")";
                flag("duplicate_node", os.str());
            }
        }
    }

    if (nodes.kind == NodeSystem::Kind::geometric) {
        if (!(nodes.rho > 1.0))
            flag("reciprocal_sum_divergent",
                 "geometric ratio rho must exceed 1 for sum 1/|alpha_j| to converge");
        else if (!(nodes.tail_bound <= tail_bound_max)) {
            std::ostringstream os;
            os << "truncation tail bound " << nodes.tail_bound << " exceeds the allowed "
               << tail_bound_max << "; the node sequence grows too slowly";
            flag("tail_bound_too_large", os.str());
        }
    }

    return report;
}

void require_valid_nodes(const NodeSystem& nodes, double tail_bound_max) {
    NodeValidation v = validate_nodes(nodes, tail_bound_max);
    if (v.ok) return;
    std::string msg = "invalid node system:";
    std::string detail = "[";
    for (std::size_t i = 0; i < v.violations.size(); ++i) {
        msg += " " + v.violations[i].message + ";";
        if (i) detail += ",";
        detail += "\"" + v.violations[i].code + "\"";
    }
    detail += "]";
    fail(ErrorKind::validation, msg, detail);
}

} // namespace brodyforge
