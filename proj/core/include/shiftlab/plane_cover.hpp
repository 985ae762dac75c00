#pragma once

#include <cstdint>
#include <vector>

#include "shiftlab/core_types.hpp"
#include "shiftlab/measures.hpp"

namespace shiftlab {

/// Cell class of the one-variable cover: the Julia collar U (symbol 0), bounded complementary
/// components U_c, and the unbounded component U_inf.
enum class Symbol : std::uint8_t { Zero = 0, C = 1, Inf = 2 };

char symbol_char(Symbol s);

struct Box {
    double xmin = -2.0, xmax = 2.0, ymin = -2.0, ymax = 2.0;
};

class PlaneCover {
public:
    PlaneCover() = default;

    [[nodiscard]] Symbol symbol_at(Complex z) const;
    /// Component id of the U_c cell containing z, -1 otherwise.
    [[nodiscard]] int component_at(Complex z) const;
    /// Distance from z's U_c cell centre to the nearest non-U_c cell, 0 outside U_c.
    [[nodiscard]] double boundary_distance(Complex z) const;
    /// True when some 8-neighbour of z's cell carries a different symbol.
    [[nodiscard]] bool near_boundary(Complex z) const;
    [[nodiscard]] bool in_box(Complex z) const;

    [[nodiscard]] int nx() const noexcept { return nx_; }
    [[nodiscard]] int ny() const noexcept { return ny_; }
    [[nodiscard]] double cell() const noexcept { return h_; }
    [[nodiscard]] double eps() const noexcept { return eps_; }
    [[nodiscard]] const Box& box() const noexcept { return box_; }
    [[nodiscard]] int uc_components() const noexcept { return uc_components_; }
    [[nodiscard]] int uinf_components() const noexcept { return uinf_components_; }
    /// Fraction of U_c cells whose centre maps into U_c under p.
    [[nodiscard]] double uc_invariance() const noexcept { return uc_invariance_; }
    /// The same fraction for the plain eps-collar, before the invariance closure.
    [[nodiscard]] double uc_invariance_raw() const noexcept { return uc_invariance_raw_; }
    /// Cells moved from U_c into the collar by the closure.
    [[nodiscard]] std::size_t closure_cells() const noexcept { return closure_cells_; }
    [[nodiscard]] Symbol symbol(int ix, int iy) const { return symbols_[index(ix, iy)]; }
    [[nodiscard]] Complex center(int ix, int iy) const;
    [[nodiscard]] std::size_t count(Symbol s) const;

private:
    friend PlaneCover build_plane_cover(const Polynomial&, const MeasureCloud&, double, const Box&, int, bool);
    friend void label_components(PlaneCover&);
    [[nodiscard]] std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) + static_cast<std::size_t>(ix);
    }
    [[nodiscard]] bool cell_of(Complex z, int& ix, int& iy) const;

    Box box_;
    int nx_ = 0, ny_ = 0;
    double h_ = 0.0, eps_ = 0.0;
    std::vector<Symbol> symbols_;
    std::vector<int> component_;
    std::vector<float> distance_;
    int uc_components_ = 0;
    int uinf_components_ = 0;
    double uc_invariance_ = 0.0;
    double uc_invariance_raw_ = 0.0;
    std::size_t closure_cells_ = 0;
};

/// Collar = cells whose centre lies within eps of the cloud; the rest is split by 4-connected flood fill
/// from the box boundary into U_inf and the bounded components U_c. Cells have side
/// (xmax - xmin) / resolution. Where |p'| < 1 near J_p the plain eps-collar is not mapped into itself,
/// so with `close_invariance` U_c cells whose centre image leaves U_c join the collar until none do.
/// Throws ValidationError if eps is not positive or the box is degenerate.
PlaneCover build_plane_cover(const Polynomial& p, const MeasureCloud& julia_cloud, double eps, const Box& box,
                             int resolution, bool close_invariance = true);

/// Cell centres carrying symbol `s`: half drawn uniformly among those cells, half among the ones with
/// a collar cell in their 8-neighbourhood. Empty when no cell carries the symbol.
std::vector<Complex> sample_cells(const PlaneCover& cover, Symbol s, std::size_t count, std::uint64_t seed = 1);

/// Flood fill and boundary distances from the current collar.
void label_components(PlaneCover& c);

/// Squared Euclidean distance transform (Felzenszwalb-Huttenlocher) of a grid: input 0 at feature cells,
/// a large value elsewhere; distances in cell units.
std::vector<double> distance_transform_2d(const std::vector<double>& f, int nx, int ny);

}  // namespace shiftlab
