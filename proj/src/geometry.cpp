#include "perfhom/geometry.hpp"

#include <sstream>

namespace perfhom {

void PerforationSpec::validate() const {
    if (shape == HoleShape::disk) {
        if (!(radius > 0.0) || radius >= 0.5)
            throw GeometryError("hole_radius must lie in (0, 1/2), got " +
                                std::to_string(radius));
        // hole must stay strictly inside Y
        const double margin = 0.5 - (std::max(std::abs(center.x), std::abs(center.y)) + radius);
        if (margin <= 0.0)
            throw GeometryError("disk hole is not strictly inside the unit cell");
    } else {
        if (radius != 0.0)
            throw GeometryError("hole_radius must be 0 for shape 'none'");
    }
}

std::string PerforationSpec::cache_key() const {
    std::ostringstream os;
    os.precision(17);
    if (shape == HoleShape::none) {
        os << "none";
    } else {
        os << "disk:r=" << radius << ":c=" << center.x << "," << center.y;
    }
    return os.str();
}

MacroDomain build_macro_domain(int n, const PerforationSpec& perforation) {
    if (n < 2) throw GeometryError("n must be >= 2, got " + std::to_string(n));
    perforation.validate();
    return MacroDomain{n, perforation};
}

CutoffRamp cutoff_psi(const LayerGeometry& layer, double inner_band, double outer_band) {
    (void)layer;
    if (!(inner_band > 0.0) || !(inner_band < outer_band))
        throw GeometryError("cutoff bands must satisfy 0 < a < b");
    return CutoffRamp{inner_band, outer_band};
}

DistanceWeight distance_weight(const LayerGeometry& layer, double beta) {
    return DistanceWeight{layer, beta};
}

}  // namespace perfhom
