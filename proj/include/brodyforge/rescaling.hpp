#pragma once

#include "brodyforge/curves.hpp"

#include <vector>

namespace brodyforge {

struct GridSpec {
    double radius = 2.0;
    int steps = 41; // lattice per axis; points outside the disk are dropped
};

// The instantiated convergent scenario of the rescaling test: the family
// f_n(z) = F(nz) on the unit disk, centers a_j = A/j, radii
// rho_j = |B|/j + delta/j^2, so the rescaled maps xi -> F(j (a_j + rho_j xi))
// converge to G(xi) = F(A + B xi) on compacts.
struct RescalingRun {
    CurveSpec curve;
    cplx A, B;
    double delta = 0.0;
    std::vector<int> j_list;
    GridSpec grid;
    std::vector<cplx> xi; // materialized grid, row-major, deterministic order

    cplx a_j(int j) const { return A / static_cast<double>(j); }
    double rho_j(int j) const {
        double dj = static_cast<double>(j);
        return std::abs(B) / dj + delta / (dj * dj);
    }
};

// Validates B != 0, rho_j > 0, and that every center+grid point stays inside
// the unit disk for every j in j_list.
RescalingRun make_rescaling_run(CurveSpec curve, cplx A, cplx B, double delta,
                                std::vector<int> j_list, GridSpec grid = {});

// f_n(z) = F(nz); |z| < 1 required.
std::vector<cplx> family_member(const CurveSpec& curve, int n, cplx z);

struct CompactnessReport {
    bool pass = false;
    std::vector<cplx> f0;  // the shared value F(0)
    double norm = 0.0;     // |F(0)|, radius of a compact ball containing it
};

// f_n(0) = F(0) for every n: bitwise identical across n_list.
CompactnessReport check_not_compactly_divergent(const CurveSpec& curve,
                                                const std::vector<int>& n_list);

// xi -> F(j (a_j + rho_j xi)).
std::vector<cplx> rescaled_map(const RescalingRun& run, int j, cplx xi);

// The proof-mimicking log-derivative of the first coordinate (punctured
// variant only): analytic value j rho_j, finite-difference measurement
// (e^{w(xi+h)} - e^{w(xi-h)})/(2h e^{w(xi)}).
cplx logderiv_first_analytic(const RescalingRun& run, int j);
cplx logderiv_first_fd(const RescalingRun& run, int j, cplx xi, double step = 1e-5);

struct ConvergenceRow {
    int j = 0;
    double dev_first_coord = 0;       // sup over grid vs exp(A+B xi) / (A+B xi)
    double dev_full_map = 0;          // sup over grid, Euclidean norm vs F(A+B xi)
    double jrho_measured = 0;         // j * rho_j from the run parameters
    double min_modulus_first_coord = 0;
    cplx center_image;                // e^{j a_j} (punctured) or j a_j (plane)
    double logderiv_fd_rel_err = 0;   // punctured only: FD vs analytic, worst sample
    double logderiv_fd_imag_max = 0;  // punctured only: |Im| of the FD quotient
};

std::vector<ConvergenceRow> limit_identification(const RescalingRun& run);

struct WitnessRow {
    double c = 0;
    int j = 0;                    // smallest j with |B| lower_bound_j >= c; 0 if none
    double bound_scaled = 0;      // |B| lower_bound_j at the witness
    double length_scaled = 0;     // |B| length_E at the witness
};

struct ChainRuleRow {
    int j = 0;
    double g_side = 0;   // |B v|_E at the transported point, v = tangent of F
    double f_side = 0;   // |B| x blow-up row length
    double rel_err = 0;
};

struct WitnessReport {
    std::vector<WitnessRow> witnesses;
    std::vector<ChainRuleRow> chain; // per-j identity |G'|_E = |B| |F'|_E
};

// For the identified limit G = F(A + B xi): the tangent at xi_j = (q_j - A)/B
// has length |B| |F'(q_j)|_E; reports, per candidate bound c, the first j
// whose scaled lower bound reaches c.
WitnessReport contradiction_witness(const RescalingRun& run, const std::vector<double>& c_list,
                                    const std::vector<BlowupRow>& blowup, double chain_tol = 1e-9);

} // namespace brodyforge
