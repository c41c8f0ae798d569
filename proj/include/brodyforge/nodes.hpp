#pragma once

#include "brodyforge/numeric.hpp"

#include <string>
#include <vector>

namespace brodyforge {

// The zero/interpolation nodes alpha_j, all pairwise distinct and nonzero,
// with sum 1/|alpha_j| finite. Geometric systems keep their generator so the
// truncation tail has a closed form; explicit lists are finite and tail-free.
struct NodeSystem {
    enum class Kind { geometric, explicit_list };

    Kind kind = Kind::explicit_list;
    double r = 0.0, rho = 0.0; // generator parameters (geometric only)
    std::vector<cplx> alphas;  // materialized nodes, 0-based storage
    double tail_bound = 0.0;   // upper bound on sum_{j > J_max} 1/|alpha_j|

    static NodeSystem geometric(double r, double rho, int j_max);
    static NodeSystem explicit_list(std::vector<cplx> nodes);

    int count() const { return static_cast<int>(alphas.size()); }
    // 1-based accessor matching the j index used everywhere in reports.
    const cplx& alpha(int j) const { return alphas[static_cast<std::size_t>(j - 1)]; }
};

struct Violation {
    std::string code;    // stable identifier, e.g. "duplicate_node"
    std::string message; // human-readable description
};

struct NodeValidation {
    bool ok = true;
    std::vector<Violation> violations;
};

// Reports every violated admissibility condition; never throws.
// tail_bound_max rejects geometric generators whose truncation tail is too
// large to be meaningful (slowly growing node sequences).
NodeValidation validate_nodes(const NodeSystem& nodes, double tail_bound_max = 0.5);

// Throws Error(validation) with the violation list if validation fails.
void require_valid_nodes(const NodeSystem& nodes, double tail_bound_max = 0.5);

} // namespace brodyforge
