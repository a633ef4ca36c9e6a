#include "liesym/ode.hpp"

#include <algorithm>
#include <cmath>

namespace liesym {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

OdeSolution integrate_adaptive(const OdeRhs& rhs, std::vector<double> y0,
                               double t0, double t1, double rtol, double atol) {
    const size_t n = y0.size();
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);

    OdeSolution out;
    std::vector<double> y = y0, k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n),
                        ytmp(n), ynew(n);
    double t = t0;
    rhs(t, y, k1);
    out.t.push_back(t);
    out.y.push_back(y);
    out.f.push_back(k1);
    if (span == 0.0) return out;

    double h = std::min(span, std::max(span / 100.0, 1e-6));
    long steps = 0;
    const long max_steps = 2000000;

    while (dir * (t1 - t) > 0) {
        if (++steps > max_steps) throw OdeError("step count exceeded");
        if (dir * (t + dir * h - t1) > 0) h = std::abs(t1 - t);
        if (h < 1e-14 * (1 + std::abs(t)))
            throw OdeError("step size collapse at t=" + std::to_string(t));
        const double hs = dir * h;

        auto stage = [&](const std::vector<double>& coefs,
                         const std::vector<const std::vector<double>*>& ks,
                         double cfrac, std::vector<double>& kout) {
            for (size_t i = 0; i < n; ++i) {
                double acc = 0;
                for (size_t m = 0; m < coefs.size(); ++m)
                    acc += coefs[m] * (*ks[m])[i];
                ytmp[i] = y[i] + hs * acc;
            }
            rhs(t + cfrac * hs, ytmp, kout);
        };
        stage({a21}, {&k1}, c2, k2);
        stage({a31, a32}, {&k1, &k2}, c3, k3);
        stage({a41, a42, a43}, {&k1, &k2, &k3}, c4, k4);
        stage({a51, a52, a53, a54}, {&k1, &k2, &k3, &k4}, c5, k5);
        stage({a61, a62, a63, a64, a65}, {&k1, &k2, &k3, &k4, &k5}, 1.0, k6);
        for (size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + hs * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                   b5 * k5[i] + b6 * k6[i]);
        rhs(t + hs, ynew, k7);

        double err = 0;
        for (size_t i = 0; i < n; ++i) {
            double ei = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                              e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err += (ei / sc) * (ei / sc);
        }
        err = std::sqrt(err / n);

        if (err <= 1.0 || !std::isfinite(err)) {
            if (!std::isfinite(err)) throw OdeError("non-finite state (blow-up)");
            t += hs;
            y = ynew;
            k1 = k7;  // FSAL
            out.t.push_back(t);
            out.y.push_back(y);
            out.f.push_back(k1);
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
    }
    return out;
}

DenseSolution::DenseSolution(OdeSolution sol, int order)
    : sol_(std::move(sol)), order_(order) {
    if (sol_.t.size() < 1) throw OdeError("empty solution");
    asc_ = sol_.t.size() < 2 || sol_.t.back() >= sol_.t.front();
}

double DenseSolution::node_value(int node, int deriv) const {
    if (deriv < order_) return sol_.y[node][deriv];
    if (deriv == order_) return sol_.f[node][order_ - 1];
    throw OdeError("derivative order not carried by the state");
}

double DenseSolution::eval(double t, int deriv) const {
    const auto& ts = sol_.t;
    if (ts.size() == 1) return node_value(0, deriv);
    double lo = std::min(ts.front(), ts.back());
    double hi = std::max(ts.front(), ts.back());
    if (t < lo - 1e-12 * (1 + std::abs(lo)) ||
        t > hi + 1e-12 * (1 + std::abs(hi)))
        throw OdeError("evaluation outside the integrated range");
    // locate segment
    int i = 0;
    if (asc_) {
        i = int(std::upper_bound(ts.begin(), ts.end(), t) - ts.begin()) - 1;
    } else {
        i = int(std::upper_bound(ts.begin(), ts.end(), t,
                                 [](double a, double b) { return a > b; }) -
                ts.begin()) -
            1;
    }
    i = std::clamp(i, 0, int(ts.size()) - 2);
    const double h = ts[i + 1] - ts[i];
    const double s = (t - ts[i]) / h;

    if (deriv + 2 <= order_) {
        // quintic Hermite from (u, u', u'') at both ends
        double p0 = node_value(i, deriv), m0 = node_value(i, deriv + 1),
               q0 = node_value(i, deriv + 2);
        double p1 = node_value(i + 1, deriv), m1 = node_value(i + 1, deriv + 1),
               q1 = node_value(i + 1, deriv + 2);
        double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
        double H0 = 1 - 10 * s3 + 15 * s4 - 6 * s5;
        double H1 = s - 6 * s3 + 8 * s4 - 3 * s5;
        double H2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
        double H3 = 10 * s3 - 15 * s4 + 6 * s5;
        double H4 = -4 * s3 + 7 * s4 - 3 * s5;
        double H5 = 0.5 * s3 - s4 + 0.5 * s5;
        return p0 * H0 + h * m0 * H1 + h * h * q0 * H2 + p1 * H3 +
               h * m1 * H4 + h * h * q1 * H5;
    }
    if (deriv + 1 <= order_) {
        // cubic Hermite from (u, u')
        double p0 = node_value(i, deriv), m0 = node_value(i, deriv + 1);
        double p1 = node_value(i + 1, deriv), m1 = node_value(i + 1, deriv + 1);
        double s2 = s * s, s3 = s2 * s;
        return p0 * (2 * s3 - 3 * s2 + 1) + h * m0 * (s3 - 2 * s2 + s) +
               p1 * (-2 * s3 + 3 * s2) + h * m1 * (s3 - s2);
    }
    // linear fallback on the highest carried derivative
    return node_value(i, deriv) * (1 - s) + node_value(i + 1, deriv) * s;
}

}  // namespace liesym
