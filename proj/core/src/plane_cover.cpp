#include "shiftlab/plane_cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "shiftlab/rng.hpp"

namespace shiftlab {

char symbol_char(Symbol s) {
    switch (s) {
        case Symbol::Zero: return '0';
        case Symbol::C: return 'c';
        case Symbol::Inf: return 'i';
    }
    return '?';
}

bool PlaneCover::cell_of(Complex z, int& ix, int& iy) const {
    if (!in_box(z)) return false;
    ix = std::min(nx_ - 1, static_cast<int>((z.real() - box_.xmin) / h_));
    iy = std::min(ny_ - 1, static_cast<int>((z.imag() - box_.ymin) / h_));
    return true;
}

bool PlaneCover::in_box(Complex z) const {
    return z.real() >= box_.xmin && z.real() <= box_.xmax && z.imag() >= box_.ymin && z.imag() <= box_.ymax;
}

Symbol PlaneCover::symbol_at(Complex z) const {
    int ix, iy;
    if (!cell_of(z, ix, iy)) return Symbol::Inf;
    return symbols_[index(ix, iy)];
}

int PlaneCover::component_at(Complex z) const {
    int ix, iy;
    if (!cell_of(z, ix, iy)) return -1;
    return component_[index(ix, iy)];
}

double PlaneCover::boundary_distance(Complex z) const {
    int ix, iy;
    if (!cell_of(z, ix, iy)) return 0.0;
    return distance_[index(ix, iy)];
}

bool PlaneCover::near_boundary(Complex z) const {
    int ix, iy;
    if (!cell_of(z, ix, iy)) return true;
    const Symbol s = symbols_[index(ix, iy)];
    for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
            const int x = ix + dx, y = iy + dy;
            if (x < 0 || y < 0 || x >= nx_ || y >= ny_) return true;
            if (symbols_[index(x, y)] != s) return true;
        }
    return false;
}

Complex PlaneCover::center(int ix, int iy) const {
    return {box_.xmin + (ix + 0.5) * h_, box_.ymin + (iy + 0.5) * h_};
}

std::size_t PlaneCover::count(Symbol s) const {
    return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), s));
}

namespace {

// 1-D lower envelope of parabolas.
void dt_1d(const double* f, double* d, int n, std::vector<int>& v, std::vector<double>& z) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    int k = 0;
    v[0] = 0;
    z[0] = -inf;
    z[1] = inf;
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            s = ((f[q] + q * q) - (f[v[static_cast<std::size_t>(k)]] + v[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)])) /
                (2.0 * q - 2.0 * v[static_cast<std::size_t>(k)]);
            if (s <= z[static_cast<std::size_t>(k)] && k > 0) --k;
            else break;
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k) + 1] = inf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
        const int vk = v[static_cast<std::size_t>(k)];
        d[q] = (q - vk) * (q - vk) + f[vk];
    }
}

}  // namespace

std::vector<double> distance_transform_2d(const std::vector<double>& f, int nx, int ny) {
    std::vector<double> out(f);
    const int n = std::max(nx, ny);
    std::vector<int> v(static_cast<std::size_t>(n));
    std::vector<double> z(static_cast<std::size_t>(n) + 1), col(static_cast<std::size_t>(n)), res(static_cast<std::size_t>(n));
    for (int x = 0; x < nx; ++x) {
        for (int y = 0; y < ny; ++y) col[static_cast<std::size_t>(y)] = out[static_cast<std::size_t>(y) * nx + x];
        dt_1d(col.data(), res.data(), ny, v, z);
        for (int y = 0; y < ny; ++y) out[static_cast<std::size_t>(y) * nx + x] = res[static_cast<std::size_t>(y)];
    }
    for (int y = 0; y < ny; ++y) {
        double* row = out.data() + static_cast<std::size_t>(y) * nx;
        std::copy(row, row + nx, col.begin());
        dt_1d(col.data(), row, nx, v, z);
    }
    return out;
}

void label_components(PlaneCover& c) {
    // Flood fill of non-collar cells, 4-connected. Components touching the box edge form U_inf.
    const std::size_t cells = c.symbols_.size();
    c.component_.assign(cells, -1);
    c.uc_components_ = c.uinf_components_ = 0;
    std::vector<int> comp(cells, -1);
    int ncomp = 0;
    std::vector<char> touches_edge;
    for (int y0 = 0; y0 < c.ny_; ++y0)
        for (int x0 = 0; x0 < c.nx_; ++x0) {
            const std::size_t i0 = c.index(x0, y0);
            if (c.symbols_[i0] == Symbol::Zero || comp[i0] >= 0) continue;
            bool edge = false;
            std::queue<std::pair<int, int>> q;
            q.emplace(x0, y0);
            comp[i0] = ncomp;
            while (!q.empty()) {
                const auto [x, y] = q.front();
                q.pop();
                if (x == 0 || y == 0 || x == c.nx_ - 1 || y == c.ny_ - 1) edge = true;
                const int nbr[4][2] = {{x + 1, y}, {x - 1, y}, {x, y + 1}, {x, y - 1}};
                for (const auto& nb : nbr) {
                    if (nb[0] < 0 || nb[1] < 0 || nb[0] >= c.nx_ || nb[1] >= c.ny_) continue;
                    const std::size_t j = c.index(nb[0], nb[1]);
                    if (c.symbols_[j] == Symbol::Zero || comp[j] >= 0) continue;
                    comp[j] = ncomp;
                    q.emplace(nb[0], nb[1]);
                }
            }
            touches_edge.push_back(edge ? 1 : 0);
            ++ncomp;
        }
    std::vector<int> uc_id(static_cast<std::size_t>(ncomp), -1);
    for (int k = 0; k < ncomp; ++k) {
        if (touches_edge[static_cast<std::size_t>(k)]) ++c.uinf_components_;
        else uc_id[static_cast<std::size_t>(k)] = c.uc_components_++;
    }
    for (std::size_t i = 0; i < cells; ++i) {
        if (comp[i] < 0) continue;
        const int id = uc_id[static_cast<std::size_t>(comp[i])];
        c.symbols_[i] = id >= 0 ? Symbol::C : Symbol::Inf;
        c.component_[i] = id;
    }

    // Distance of U_c cells to the nearest non-U_c cell.
    std::vector<double> f(cells);
    for (std::size_t i = 0; i < cells; ++i) f[i] = c.symbols_[i] == Symbol::C ? 1e20 : 0.0;
    const auto d2 = distance_transform_2d(f, c.nx_, c.ny_);
    c.distance_.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) c.distance_[i] = static_cast<float>(std::sqrt(d2[i]) * c.h_);
}

static double uc_image_fraction(const Polynomial& p, const PlaneCover& c) {
    std::size_t uc = 0, stays = 0;
    for (int y = 0; y < c.ny(); ++y)
        for (int x = 0; x < c.nx(); ++x) {
            if (c.symbol(x, y) != Symbol::C) continue;
            ++uc;
            if (c.symbol_at(p.eval(c.center(x, y))) == Symbol::C) ++stays;
        }
    return uc ? static_cast<double>(stays) / static_cast<double>(uc) : 1.0;
}

PlaneCover build_plane_cover(const Polynomial& p, const MeasureCloud& julia_cloud, double eps, const Box& box,
                             int resolution, bool close_invariance) {
    if (!(eps > 0.0)) throw ValidationError("collar width eps must be positive");
    if (!(box.xmax > box.xmin && box.ymax > box.ymin) || resolution < 4) throw ValidationError("degenerate box");
    PlaneCover c;
    c.box_ = box;
    c.eps_ = eps;
    c.h_ = (box.xmax - box.xmin) / resolution;
    c.nx_ = resolution;
    c.ny_ = std::max(1, static_cast<int>(std::ceil((box.ymax - box.ymin) / c.h_ - 1e-9)));
    c.box_.ymax = box.ymin + c.ny_ * c.h_;
    const std::size_t cells = static_cast<std::size_t>(c.nx_) * static_cast<std::size_t>(c.ny_);
    constexpr Symbol unset = Symbol::C;
    c.symbols_.assign(cells, unset);

    // Stamp a disc of radius eps around each cloud point, testing cell centres.
    const int reach = static_cast<int>(std::ceil(eps / c.h_)) + 1;
    for (const auto& pt : julia_cloud.points) {
        const Complex w = pt[0];
        const int cx = static_cast<int>(std::floor((w.real() - c.box_.xmin) / c.h_));
        const int cy = static_cast<int>(std::floor((w.imag() - c.box_.ymin) / c.h_));
        for (int y = std::max(0, cy - reach); y <= std::min(c.ny_ - 1, cy + reach); ++y)
            for (int x = std::max(0, cx - reach); x <= std::min(c.nx_ - 1, cx + reach); ++x)
                if (std::abs(c.center(x, y) - w) <= eps) c.symbols_[c.index(x, y)] = Symbol::Zero;
    }

    label_components(c);
    c.uc_invariance_raw_ = c.uc_invariance_ = uc_image_fraction(p, c);
    if (close_invariance) {
        // Grow the collar by U_c cells whose image leaves U_c until p(U_c) lands in U_c.
        for (int round = 0; round < 256; ++round) {
            std::vector<std::size_t> leaving;
            for (int y = 0; y < c.ny_; ++y)
                for (int x = 0; x < c.nx_; ++x)
                    if (c.symbols_[c.index(x, y)] == Symbol::C && c.symbol_at(p.eval(c.center(x, y))) != Symbol::C)
                        leaving.push_back(c.index(x, y));
            if (leaving.empty()) break;
            for (std::size_t i : leaving) c.symbols_[i] = Symbol::Zero;
            c.closure_cells_ += leaving.size();
        }
        label_components(c);
        c.uc_invariance_ = uc_image_fraction(p, c);
    }
    return c;
}

std::vector<Complex> sample_cells(const PlaneCover& cover, Symbol s, std::size_t count, std::uint64_t seed) {
    std::vector<std::pair<int, int>> all, edge;
    for (int y = 0; y < cover.ny(); ++y)
        for (int x = 0; x < cover.nx(); ++x) {
            if (cover.symbol(x, y) != s) continue;
            all.emplace_back(x, y);
            bool touches = false;
            for (int dy = -1; dy <= 1 && !touches; ++dy)
                for (int dx = -1; dx <= 1 && !touches; ++dx) {
                    const int u = x + dx, v = y + dy;
                    touches = u >= 0 && v >= 0 && u < cover.nx() && v < cover.ny() && cover.symbol(u, v) == Symbol::Zero;
                }
            if (touches) edge.emplace_back(x, y);
        }
    std::vector<Complex> out;
    if (all.empty()) return out;
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& pool = (i % 2 == 1 && !edge.empty()) ? edge : all;
        const auto [x, y] = pool[rng.index(pool.size())];
        out.push_back(cover.center(x, y));
    }
    return out;
}

}  // namespace shiftlab
