#include <cstdio>
#include "perfhom/mesh.hpp"
using namespace perfhom;
int main() {
    PerforationSpec spec{HoleShape::disk, 0.25, {0, 0}};
    MacroDomain dom = build_macro_domain(4, spec);
    TriMesh rest = mesh_macro(dom, dom.epsilon() / 8, false);
    rest.build_locator();
    int bad = 0;
    for (int t = 0; t < rest.num_tris(); ++t) {
        const int f = rest.locate(rest.centroid(t));
        if (f < 0 && bad < 5) {
            const Vec2 c = rest.centroid(t);
            std::printf("tri %d centroid (%.6f, %.6f) not found, area=%.3e\n", t, c.x, c.y, rest.tri_area(t));
        }
        if (f < 0) ++bad;
    }
    std::printf("centroid misses: %d / %d\n", bad, rest.num_tris());
    return 0;
}
