#pragma once

#include <string>
#include <vector>

#include "shiftlab/core_types.hpp"
#include "shiftlab/measures.hpp"
#include "shiftlab/plane_cover.hpp"

namespace shiftlab {

using PartitionLabel = std::vector<Symbol>;

std::string label_string(const PartitionLabel& label);
/// Symbols of the last nu coordinates of z in the cover.
PartitionLabel label_of(const ShiftSpec& s, const PlaneCover& cover, const Point& z);

struct SplitFactor {
    int tail = 1;           // 1-based slot i, coordinate z_{k-nu+i}
    Complex eigenvalue;     // (p^{k-nu})'(z_{k-nu+i})
    ComplexVector vector;   // closed-form eigenvector of D(S_0^eta)(z)
};

/// Eigensplitting of D(S_0^eta)(z): E_0 spanned by the first k - nu coordinate vectors (eigenvalue 0)
/// and one eigenvector per tail coordinate.
struct Splitting {
    Point z;
    int k = 0, nu = 0;
    std::vector<ComplexVector> e0;
    std::vector<SplitFactor> factors;
};

/// With k = m nu + r, the entries of the i-th eigenvector are derivatives of iterates of p at z_{k-nu+i}:
/// for nu - r < i <= nu, entry i - nu + r + j nu is (p^{k-nu-m+j})'; for 1 <= i <= nu - r,
/// entry j nu + i + r is (p^{k-nu-m+1+j})'. Entries past k are dropped. Requires a = 0.
Splitting eigen_split(const ShiftSpec& s, const Point& z);

/// max over factors of ||D(S_0^eta)(z) v - lambda v||, same point z on both sides.
double eigen_residual(const ShiftSpec& s, const Splitting& sp);

/// Coordinates adapted to a labelled point. Each tail slot carries one basis vector: the eigenvector
/// scaled to tail entry 1 on collar slots (symbol 0), the coordinate vector on basin slots (symbol c).
/// For v with tail entries t_i and head part v_h,
///   ||v||_s = head_weight |v_h - sum_{0 slots} t_i head(u_i)| + sum_{c slots} w_i |t_i|,
///   ||v||_u = sum_{0 slots} |t_i|,
/// with w_i = 1 / dist(z_{k-nu+i}, boundary of its U_c component).
struct AdaptedFrame {
    int k = 0, nu = 0;
    PartitionLabel label;
    std::vector<ComplexVector> basis;  // per tail slot
    std::vector<double> weight;        // per tail slot, 1 on collar slots
    double head_weight = 0.1;

    [[nodiscard]] double stable_norm(const ComplexVector& v) const;
    [[nodiscard]] double unstable_norm(const ComplexVector& v) const;
    [[nodiscard]] double norm(const ComplexVector& v) const { return stable_norm(v) + unstable_norm(v); }
    /// C^u(rho) = {||v||_s < rho ||v||_u}.
    [[nodiscard]] bool in_unstable_cone(const ComplexVector& v, double rho) const;
    /// C^s(rho) = {||v||_u < rho ||v||_s}.
    [[nodiscard]] bool in_stable_cone(const ComplexVector& v, double rho) const;
};

/// Throws ValidationError when a tail coordinate of z lies outside the cover box.
AdaptedFrame adapted_frame(const ShiftSpec& s, const PlaneCover& cover, const Point& z, double head_weight = 0.1);

double adapted_norm(const ShiftSpec& s, const PlaneCover& cover, const Point& z, const ComplexVector& v,
                    double head_weight = 0.1);

struct ConeConfig {
    double rho1 = 0.5;
    int N = 2;
    double lambda_target = 1.2;
    double head_weight = 0.1;
    int phases = 16;
    // Raise N up to max_N, then halve rho, until the pass fraction is reached and every remaining
    // cone failure sits on a collar boundary cell.
    bool search = true;
    int max_N = 8;
    double required_pass = 0.99;
};

struct ConeFailure {
    Point z;
    std::string label;
    std::string kind;      // "boundary", "unstable", "stable"
    bool at_collar_boundary = false;
};

struct ConeCheckReport {
    std::size_t samples = 0;
    double pass_u = 0.0;
    double pass_s = 0.0;
    double pass_both = 0.0;
    double min_expansion = 0.0;     // per eta-block, over passing samples
    double max_contraction = 0.0;   // per eta-block, over passing samples
    double rho1 = 0.0;
    int N = 0;
    double a = 0.0;
    double lambda_target = 0.0;
    std::size_t boundary_failures = 0;
    std::size_t cone_failures = 0;
    std::size_t cone_failures_at_collar_boundary = 0;
    std::vector<ConeFailure> failure_examples;  // at most 20
    std::vector<std::string> search_log;
};

/// Cone invariance and expansion along orbit segments. Unstable cones are pushed forward by
/// D S_a^{N eta}; stable cones are pulled back by D S_a^{-N eta}, where they must land in the stable cone
/// and expand by lambda^N. At a = 0 the stable test measures forward contraction of E^s vectors.
/// Each orbit must cover [-N eta, N eta] around state 0 for the largest N tried.
ConeCheckReport certify_cones(const ShiftSpec& s, const PlaneCover& cover, const std::vector<ShadowResult>& orbits,
                              const ConeConfig& cfg);

/// One pass at fixed constants, no search.
ConeCheckReport certify_cones_fixed(const ShiftSpec& s, const PlaneCover& cover,
                                    const std::vector<ShadowResult>& orbits, double rho1, int N, const ConeConfig& cfg);

}  // namespace shiftlab
