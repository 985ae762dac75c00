#include "shiftlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "shiftlab/dynamics.hpp"
#include "shiftlab/parallel.hpp"
#include "shiftlab/potential.hpp"
#include "shiftlab/rng.hpp"
#include "shiftlab/roots.hpp"

namespace shiftlab {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Brolin1D: return "brolin_1d";
        case Provenance::Product: return "product";
        case Provenance::GraphPushforward: return "graph_pushforward";
        case Provenance::GreenMinimizer: return "green_minimizer";
        case Provenance::InverseTree: return "inverse_tree";
    }
    return "?";
}

void MeasureCloud::set_uniform_weights() {
    weights.assign(points.size(), points.empty() ? 0.0 : 1.0 / static_cast<double>(points.size()));
}

std::vector<Complex> brolin_chain(const Polynomial& p, int length, std::uint64_t stream_seed) {
    if (p.degree() < 2) throw ValidationError("degree too small: sampler needs d >= 2");
    Rng rng(stream_seed);
    std::vector<Complex> chain;
    chain.reserve(static_cast<std::size_t>(length) + 1);
    chain.push_back(rng.on_circle(2.0 * green_escape_radius(p)));
    for (int j = 0; j < length; ++j) {
        const auto pre = preimages(p, chain.back());
        chain.push_back(pre[rng.index(pre.size())]);
    }
    return chain;
}

MeasureCloud sample_mu_p(const Polynomial& p, std::size_t count, int burn_in, std::uint64_t seed) {
    MeasureCloud cloud;
    cloud.provenance = Provenance::Brolin1D;
    cloud.points.assign(count, Point(1));
    parallel_for(count, [&](std::size_t i) {
        cloud.points[i][0] = brolin_chain(p, burn_in, derive_seed(seed, i)).back();
    });
    cloud.set_uniform_weights();
    return cloud;
}

std::uint64_t product_stream_seed(std::uint64_t seed, std::size_t sample, int coordinate) {
    return derive_seed(derive_seed(seed, sample), static_cast<std::uint64_t>(coordinate));
}

MeasureCloud sample_mu_p_nu(const Polynomial& p, int nu, std::size_t count, std::uint64_t seed, int burn_in) {
    if (nu < 1) throw ValidationError("nu must be positive");
    MeasureCloud cloud;
    cloud.provenance = Provenance::Product;
    cloud.points.assign(count, Point(static_cast<std::size_t>(nu)));
    parallel_for(count, [&](std::size_t i) {
        for (int r = 0; r < nu; ++r)
            cloud.points[i][static_cast<std::size_t>(r)] = brolin_chain(p, burn_in, product_stream_seed(seed, i, r)).back();
    });
    cloud.set_uniform_weights();
    return cloud;
}

MeasureCloud pushforward_graph(const MeasureCloud& cloud, const Polynomial& p, int k, int nu) {
    if (cloud.dim() != nu && !cloud.points.empty()) throw ValidationError("pushforward needs a nu-dimensional cloud");
    MeasureCloud out;
    out.provenance = Provenance::GraphPushforward;
    out.points.reserve(cloud.size());
    for (const auto& w : cloud.points) out.points.push_back(graph_phi(p, k, nu, {w.begin(), w.end()}));
    out.weights = cloud.weights;
    return out;
}

ResidueChain expanding_chain(const Polynomial& p, int burn_in, int past, std::uint64_t stream_seed) {
    const auto chain = brolin_chain(p, burn_in + past, stream_seed);
    ResidueChain rc;
    rc.past = past;
    rc.expanding = true;
    rc.values.resize(static_cast<std::size_t>(past + burn_in + 1));
    // value(q) = chain[burn_in - q]: q > 0 moves forward under p, q < 0 takes further preimages.
    for (int q = -past; q <= burn_in; ++q) rc.values[static_cast<std::size_t>(past + q)] = chain[static_cast<std::size_t>(burn_in - q)];
    return rc;
}

ResidueChain cycle_chain(const std::vector<Complex>& cycle, int start, int past, int future) {
    const int len = static_cast<int>(cycle.size());
    ResidueChain rc;
    rc.past = past;
    rc.expanding = false;
    for (int q = -past; q <= future; ++q) rc.values.push_back(cycle[static_cast<std::size_t>(((start + q) % len + len) % len)]);
    return rc;
}

ShadowResult shadow_point(const ShiftSpec& s, const std::vector<ResidueChain>& chains, int max_sweeps) {
    const int k = s.k, nu = s.nu;
    if (static_cast<int>(chains.size()) != nu) throw ValidationError("shadow_point needs one chain per residue class");
    int P = std::numeric_limits<int>::max(), F = std::numeric_limits<int>::max();
    for (const auto& c : chains) {
        P = std::min(P, c.past);
        F = std::min(F, c.future());
    }
    const int jlo = -P * nu, jhi = F * nu + nu - 1;
    if (jlo + k - nu > -1 || jhi - nu < k - 1) throw ValidationError("shadowing window too short for k");
    std::vector<Complex> u(static_cast<std::size_t>(jhi - jlo + 1));
    auto at = [&](int j) -> Complex& { return u[static_cast<std::size_t>(j - jlo)]; };
    for (int j = jlo; j <= jhi; ++j) {
        const int r = ((j % nu) + nu) % nu;
        at(j) = chains[static_cast<std::size_t>(r)].at((j - r) / nu);
    }
    auto expanding = [&](int j) { return chains[static_cast<std::size_t>(((j % nu) + nu) % nu)].expanding; };
    // The relation u_{j+nu} = p(u_j) + a u_{j+nu-k} is imposed for j in [lo, hi].
    const int lo = jlo + k - nu, hi = jhi - nu;

    ShadowResult res;
    for (res.sweeps = 1; res.sweeps <= max_sweeps; ++res.sweeps) {
        double change = 0.0;
        for (int j = hi; j >= lo; --j) {
            if (!expanding(j)) continue;
            const Complex target = at(j + nu) - s.a * at(j + nu - k);
            const Complex next = nearest_preimage(s.p, target, at(j));
            change = std::max(change, std::abs(next - at(j)));
            at(j) = next;
        }
        for (int j = lo; j <= hi; ++j) {
            if (expanding(j)) continue;
            const Complex next = s.p.eval(at(j)) + s.a * at(j + nu - k);
            change = std::max(change, std::abs(next - at(j + nu)));
            at(j + nu) = next;
        }
        if (change <= 1e-15) break;
    }
    res.sweeps = std::min(res.sweeps, max_sweeps);
    for (int j = lo; j <= hi; ++j)
        res.residual = std::max(res.residual, std::abs(at(j + nu) - s.p.eval(at(j)) - s.a * at(j + nu - k)));
    res.sequence = std::move(u);
    res.first = jlo;
    res.orbit_min = jlo;
    res.orbit_max = jhi - k + 1;
    res.point = res.state(0, k);
    return res;
}

Point ShadowResult::state(int n, int k) const {
    if (n < first || n + k - 1 >= first + static_cast<int>(sequence.size()))
        throw ValidationError("shadow state outside the solved window");
    Point x(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) x[static_cast<std::size_t>(i)] = sequence[static_cast<std::size_t>(n + i - first)];
    return x;
}

MeasureCloud approximate_supp_mu_a(const ShiftSpec& s, const SuppConfig& cfg) {
    validate_shift(s);
    if (std::abs(s.a) < kMinInvertibleA) throw ValidationError("non-invertible: supp mu_a needs a != 0");
    if (cfg.burn_in - cfg.future < 40) throw ValidationError("burn_in must exceed the future window by 40");
    std::vector<Point> pts(cfg.count);
    std::vector<char> keep(cfg.count, 0);
    parallel_for(cfg.count, [&](std::size_t i) {
        std::vector<ResidueChain> chains;
        for (int r = 0; r < s.nu; ++r) {
            ResidueChain c = expanding_chain(s.p, cfg.burn_in, cfg.past, product_stream_seed(cfg.seed, i, r));
            c.values.resize(static_cast<std::size_t>(c.past + cfg.future + 1));
            chains.push_back(std::move(c));
        }
        const ShadowResult sh = shadow_point(s, chains);
        if (!sh.point.all_finite()) return;
        const double g = std::max(green_plus(s, sh.point, cfg.level).value, green_minus(s, sh.point, cfg.level).value);
        if (g < cfg.eps) {
            pts[i] = sh.point;
            keep[i] = 1;
        }
    });
    MeasureCloud cloud;
    cloud.provenance = Provenance::GreenMinimizer;
    for (std::size_t i = 0; i < cfg.count; ++i)
        if (keep[i]) cloud.points.push_back(std::move(pts[i]));
    if (cloud.points.empty()) throw NumericalError("supp mu_a approximation is empty: eps or truncation too small");
    cloud.set_uniform_weights();
    return cloud;
}

double operator_norm(const ComplexMatrix& M, int iterations) {
    Rng rng(12345);
    ComplexVector v(M.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex{rng.uniform(0.5, 1.0), rng.uniform(-0.5, 0.5)};
    v.normalize();
    for (int it = 0; it < iterations; ++it) {
        ComplexVector w = M.adjoint() * (M * v);
        const double n = w.norm();
        if (n == 0.0) return 0.0;
        v = w / n;
    }
    return (M * v).norm();
}

namespace {

LyapunovEstimate summarize(const std::vector<double>& vals, const std::vector<char>& ok, int n) {
    LyapunovEstimate est;
    est.n = n;
    std::vector<double> good;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (ok[i]) good.push_back(vals[i]);
    est.samples = good.size();
    est.dropped = vals.size() - good.size();
    if (vals.empty() || 2 * est.dropped > vals.size())
        throw NumericalError("lyapunov: more than half of the samples escaped");
    const double mean = std::accumulate(good.begin(), good.end(), 0.0) / static_cast<double>(good.size());
    double var = 0.0;
    for (double x : good) var += (x - mean) * (x - mean);
    var = good.size() > 1 ? var / static_cast<double>(good.size() - 1) : 0.0;
    est.value = mean;
    est.stderr_ = std::sqrt(var / static_cast<double>(good.size()));
    return est;
}

double apply_form(double norm, int n, LyapunovForm form) {
    return form == LyapunovForm::Log ? std::log(norm) / n : norm / n;
}

}  // namespace

LyapunovEstimate lyapunov(const ShiftSpec& s, const MeasureCloud& cloud, int n, LyapunovForm form) {
    if (cloud.points.empty()) throw ValidationError("lyapunov needs a nonempty cloud");
    if (n < 1) throw ValidationError("lyapunov needs n >= 1");
    std::vector<double> vals(cloud.size(), 0.0);
    std::vector<char> ok(cloud.size(), 0);
    parallel_for(cloud.size(), [&](std::size_t i) {
        try {
            const double norm = operator_norm(jacobian(s, cloud.points[i], s.eta() * n));
            if (std::isfinite(norm) && norm > 0.0) {
                vals[i] = apply_form(norm, n, form);
                ok[i] = 1;
            }
        } catch (const EscapeError&) {
        }
    });
    return summarize(vals, ok, n);
}

LyapunovEstimate lyapunov_product(const Polynomial& p, const MeasureCloud& cloud, int n, LyapunovForm form) {
    if (cloud.points.empty()) throw ValidationError("lyapunov needs a nonempty cloud");
    std::vector<double> vals(cloud.size(), 0.0);
    std::vector<char> ok(cloud.size(), 0);
    parallel_for(cloud.size(), [&](std::size_t i) {
        double norm = 0.0;
        for (const auto& w : cloud.points[i]) norm = std::max(norm, std::abs(p.iterate_deriv(w, n)));
        if (std::isfinite(norm) && norm > 0.0) {
            vals[i] = apply_form(norm, n, form);
            ok[i] = 1;
        }
    });
    return summarize(vals, ok, n);
}

double directed_hausdorff(const MeasureCloud& x, const MeasureCloud& y) {
    if (x.points.empty() || y.points.empty()) throw ValidationError("hausdorff needs nonempty clouds");
    std::vector<double> nearest(x.size(), 0.0);
    parallel_for(x.size(), [&](std::size_t i) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : y.points) best = std::min(best, euclidean_distance(x.points[i], q));
        nearest[i] = best;
    });
    return *std::max_element(nearest.begin(), nearest.end());
}

double hausdorff(const MeasureCloud& x, const MeasureCloud& y) {
    return std::max(directed_hausdorff(x, y), directed_hausdorff(y, x));
}

std::vector<Point> off_graph_test_set(const ShiftSpec& s, std::size_t count, double radius, double c_min, double c_max,
                                      std::uint64_t seed) {
    std::vector<Point> out;
    Rng rng(seed);
    for (int tries = 0; out.size() < count && tries < 1000000; ++tries) {
        Point z(static_cast<std::size_t>(s.k));
        for (auto& c : z) c = rng.in_disc(radius);
        const double c = graph_residual(s, z);
        if (c >= c_min && c <= c_max) out.push_back(std::move(z));
    }
    return out;
}

std::vector<SweepRow> degeneration_sweep(const Polynomial& p, int k, int nu, const std::vector<double>& a_list,
                                         const SweepConfig& cfg) {
    for (std::size_t i = 0; i < a_list.size(); ++i) {
        if (!(a_list[i] > 0.0 && a_list[i] < 1.0)) throw ValidationError("sweep values of a must lie in (0, 1)");
        if (i > 0 && !(a_list[i] < a_list[i - 1])) throw ValidationError("sweep values of a must be decreasing");
    }
    const ShiftSpec s0{k, nu, 0.0, p};
    validate_shift(s0);
    const MeasureCloud push =
        pushforward_graph(sample_mu_p_nu(p, nu, cfg.supp.count, cfg.supp.seed, cfg.supp.burn_in), p, k, nu);
    const auto test_set = off_graph_test_set(s0, cfg.test_points, 1.2, 0.5, 1.5);

    std::vector<SweepRow> rows;
    for (double a : a_list) {
        const ShiftSpec s{k, nu, a, p};
        SweepRow row;
        row.a = a;
        const MeasureCloud supp = approximate_supp_mu_a(s, cfg.supp);
        row.hausdorff = hausdorff(supp, push);
        for (const auto& z : test_set) {
            const double F = F_limit(s, z).value;
            const double g = green_minus(s, z, cfg.green_level).value;
            row.sup_Ha_minus_F = std::max(row.sup_Ha_minus_F, std::abs(g + std::log(a) / s.d() - F));
            row.sup_consistent_minus_F = std::max(row.sup_consistent_minus_F, std::abs(g + std::log(a) / (s.d() - 1) - F));
        }
        const LyapunovEstimate ly = lyapunov(s, supp, cfg.lyapunov_n);
        row.lyapunov = ly.value;
        row.lyapunov_stderr = ly.stderr_;
        row.samples = supp.size();
        row.n = cfg.lyapunov_n;
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv_header() { return "a,hausdorff,sup_Ha_minus_F,lyapunov,lyapunov_stderr,samples,n"; }

std::string sweep_csv_row(const SweepRow& r) {
    std::ostringstream o;
    o << std::setprecision(10) << r.a << ',' << r.hausdorff << ',' << r.sup_Ha_minus_F << ',' << r.lyapunov << ','
      << r.lyapunov_stderr << ',' << r.samples << ',' << r.n;
    return o.str();
}

}  // namespace shiftlab
