#include "perfhom/quadrature.hpp"

#include <cmath>

namespace perfhom {

const TriRule& TriRule::degree1() {
    static const TriRule r{{{1.0 / 3, 1.0 / 3, 1.0 / 3}}, {1.0}};
    return r;
}

const TriRule& TriRule::degree2() {
    static const TriRule r{{{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}},
                           {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    return r;
}

const TriRule& TriRule::degree4() {
    // Dunavant 6-point rule, degree 4
    static const TriRule r = [] {
        TriRule q;
        const double a1 = 0.445948490915965, b1 = 0.108103018168070;
        const double a2 = 0.091576213509771, b2 = 0.816847572980459;
        const double w1 = 0.223381589678011, w2 = 0.109951743655322;
        q.bary = {{a1, a1, b1}, {a1, b1, a1}, {b1, a1, a1},
                  {a2, a2, b2}, {a2, b2, a2}, {b2, a2, a2}};
        q.w = {w1, w1, w1, w2, w2, w2};
        return q;
    }();
    return r;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    // Newton iteration on Legendre polynomials
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[i] = t;
        x[n - 1 - i] = -t;
        const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        x[i] = mid - half * x[i];
        w[i] *= half;
    }
}

}  // namespace perfhom
