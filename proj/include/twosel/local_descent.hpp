#pragma once

// Local Kummer images alpha_v(chi) inside H^1(Q_v, E[2]) = (Q_v^x/(Q_v^x)^2)^2
// and the norm index h_v(chi).
//
// A point (x, y) on the local twist with roots r e_i maps to
// (class(x - r e1), class(x - r e2)); the twist shares the ambient
// coordinates of E through (e_i, 0) <-> (r e_i, 0).

#include "twosel/curve.hpp"
#include "twosel/gf2.hpp"
#include "twosel/padic.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace twosel {

struct SamplingBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TwistIdentification {
    canonical,        // (e_i, 0) <-> (d e_i, 0)
    scaled_by_twist,  // both coordinates additionally multiplied by class(d); known to be wrong
};

struct SamplingOptions {
    std::size_t budget = 100'000;
    TwistIdentification identification = TwistIdentification::canonical;
};

struct LocalImage {
    Place place = Place::infinity();
    std::vector<LocalCocycle> basis;

    std::size_t dim() const { return basis.size(); }
    gf2::Rows vectors() const;
    bool contains(const LocalCocycle& c) const;
};

/// Dimension of alpha_v(d_v): dim E^{d_v}(Q_v)[2] + [v = 2] - [v = inf].
int expected_local_dim(const FullTwoTorsionModel& model, const LocalSquareClass& d_v);

/// Images of (e1, 0) and (e2, 0) on the model with roots r e_i.
std::array<LocalCocycle, 2> torsion_images(const std::array<Integer, 3>& roots, const Place& v);

/// alpha_v(d_v), cached per (model, class, identification).
LocalImage kummer_image(const FullTwoTorsionModel& model, const LocalSquareClass& d_v, const SamplingOptions& opts = {});

LocalImage intersect(const LocalImage& a, const LocalImage& b);

/// dim alpha_v(1) - dim(alpha_v(1) cap alpha_v(d_v)).
int h_v(const FullTwoTorsionModel& model, const LocalSquareClass& d_v, const SamplingOptions& opts = {});

/// Every pair of basis vectors pairs to zero.
bool is_isotropic(const LocalImage& image);

void clear_local_image_cache();
std::size_t local_image_cache_size();

}  // namespace twosel
