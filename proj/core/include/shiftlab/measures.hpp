#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shiftlab/core_types.hpp"

namespace shiftlab {

enum class Provenance { Brolin1D, Product, GraphPushforward, GreenMinimizer, InverseTree };

const char* to_string(Provenance p);

/// Weighted point samples standing in for a measure. 1-D clouds hold points of size 1.
struct MeasureCloud {
    std::vector<Point> points;
    std::vector<double> weights;
    Provenance provenance = Provenance::Brolin1D;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    [[nodiscard]] int dim() const noexcept { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
    void set_uniform_weights();
};

/// One backward branch chain: chain[0] is a start far outside K_p and chain[j + 1] is a uniformly
/// chosen preimage of chain[j], so p(chain[j + 1]) = chain[j].
std::vector<Complex> brolin_chain(const Polynomial& p, int length, std::uint64_t stream_seed);

/// `count` samples of the equilibrium measure of p, each the end of an independent chain of length burn_in.
MeasureCloud sample_mu_p(const Polynomial& p, std::size_t count, int burn_in, std::uint64_t seed);

/// Seed of the chain for coordinate r of sample i; shared by every sampler that must stay matched.
std::uint64_t product_stream_seed(std::uint64_t seed, std::size_t sample, int coordinate);

/// Independent nu-fold products of equilibrium samples.
MeasureCloud sample_mu_p_nu(const Polynomial& p, int nu, std::size_t count, std::uint64_t seed, int burn_in = 100);

/// graph_phi applied pointwise.
MeasureCloud pushforward_graph(const MeasureCloud& cloud, const Polynomial& p, int k, int nu);

/// Pseudo-orbit of one residue class of the scalar recurrence at a = 0: value(q) for q in [-past, future]
/// with p(value(q)) = value(q + 1). Expanding classes sit on J_p, contracting ones on an attracting cycle.
struct ResidueChain {
    std::vector<Complex> values;  // values[past + q]
    int past = 0;
    bool expanding = true;
    [[nodiscard]] Complex at(int q) const { return values[static_cast<std::size_t>(past + q)]; }
    [[nodiscard]] int future() const { return static_cast<int>(values.size()) - past - 1; }
};

struct ShadowResult {
    Point point;
    double residual = 0.0;  // max defect of the recurrence over the solved window
    int sweeps = 0;
    std::vector<Complex> sequence;  // u_j for j = first, first + 1, ...
    int first = 0;
    int orbit_min = 0, orbit_max = 0;  // states x^(n) = (u_n, ..., u_{n+k-1}) form an orbit for n in [min, max]

    /// x^(n); S_a(state(n)) = state(n + 1) up to roundoff inside [orbit_min, orbit_max].
    [[nodiscard]] Point state(int n, int k) const;
};

/// Solves the recurrence u_{j+nu} = p(u_j) + a u_{j+nu-k} on a finite window around j = 0, starting from
/// the a = 0 pseudo-orbit u_{q nu + r} = chains[r].at(q). Expanding classes are solved backward with the
/// preimage branch nearest the current value, contracting ones forward. Returns (u_0, ..., u_{k-1}).
ShadowResult shadow_point(const ShiftSpec& s, const std::vector<ResidueChain>& chains, int max_sweeps = 60);

/// Expanding chain from brolin_chain: the sample sits at position burn_in, `past` further preimages follow.
ResidueChain expanding_chain(const Polynomial& p, int burn_in, int past, std::uint64_t stream_seed);
/// Chain constant along a periodic orbit `cycle` (p(cycle[i]) = cycle[i + 1 mod len]), phase `start`.
ResidueChain cycle_chain(const std::vector<Complex>& cycle, int start, int past, int future);

struct SuppConfig {
    std::size_t count = 2000;
    int burn_in = 100;    // sample position in each chain; also the pushforward burn-in
    int future = 60;      // solved future window in p-steps, needs burn_in - future >= 40
    int past = 12;
    double eps = 0.05;    // Green filter threshold
    int level = 20;       // Green truncation
    std::uint64_t seed = 1;
};

/// Sample of supp mu_a: shadowed a = 0 equilibrium chains, kept when max(G+, G-) < eps.
/// Uses the same chain seeds as sample_mu_p_nu(p, nu, count, seed, burn_in), so the two clouds are matched.
MeasureCloud approximate_supp_mu_a(const ShiftSpec& s, const SuppConfig& cfg);

struct LyapunovEstimate {
    double value = 0.0;
    int n = 0;
    std::size_t samples = 0;
    double stderr_ = 0.0;
    std::size_t dropped = 0;
};

enum class LyapunovForm { Log, Raw };

/// (1/n) average of log ||D(S_a^eta)^n|| over the cloud; operator 2-norm from 20 power iterations.
LyapunovEstimate lyapunov(const ShiftSpec& s, const MeasureCloud& cloud, int n, LyapunovForm form = LyapunovForm::Log);
/// Product map p x ... x p: ||D p_nu^n(w)|| = max_i |(p^n)'(w_i)|.
LyapunovEstimate lyapunov_product(const Polynomial& p, const MeasureCloud& cloud, int n,
                                  LyapunovForm form = LyapunovForm::Log);

/// Operator 2-norm by power iteration on M^H M from a fixed start vector.
double operator_norm(const ComplexMatrix& M, int iterations = 20);

/// Symmetric Hausdorff distance (Euclidean in C^k), brute-force nearest neighbours.
double hausdorff(const MeasureCloud& x, const MeasureCloud& y);
/// sup over x of the distance to the nearest point of y.
double directed_hausdorff(const MeasureCloud& x, const MeasureCloud& y);

/// Fixed compact set away from the graph: points of the polydisc of radius `radius` with
/// residue c(z) in [c_min, c_max], deterministic in `seed`.
std::vector<Point> off_graph_test_set(const ShiftSpec& s, std::size_t count, double radius, double c_min,
                                      double c_max, std::uint64_t seed = 99);

struct SweepConfig {
    SuppConfig supp;
    int green_level = 40;
    int lyapunov_n = 20;
    std::size_t test_points = 64;
};

struct SweepRow {
    double a = 0.0;
    double hausdorff = 0.0;
    double sup_Ha_minus_F = 0.0;
    double lyapunov = 0.0;
    double lyapunov_stderr = 0.0;
    std::size_t samples = 0;
    int n = 0;
    double sup_consistent_minus_F = 0.0;  // G^- + log|a|/(d-1) against F, not part of the CSV
};

std::vector<SweepRow> degeneration_sweep(const Polynomial& p, int k, int nu, const std::vector<double>& a_list,
                                         const SweepConfig& cfg);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace shiftlab
