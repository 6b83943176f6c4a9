#include "heun/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace heun {

namespace {

using State = std::array<double, 2>;

State rhs(const HeunParams& p, double z, const State& y) {
    double coeff1 = p.gamma / z + p.delta / (z - 1.0) + p.epsilon / (z - p.a);
    double coeff0 = (p.alpha * p.beta * z - p.q) / (z * (z - 1.0) * (z - p.a));
    return {y[1], -coeff1 * y[1] - coeff0 * y[0]};
}

void check_interval(const HeunParams& p, double z0, double z1) {
    double lo = std::min(z0, z1), hi = std::max(z0, z1);
    for (double s : {0.0, 1.0, p.a}) {
        if (s >= lo - 1e-8 && s <= hi + 1e-8)
            throw DomainError("integrate_ode: interval too close to a singular point");
    }
}

// Dormand-Prince 5(4), FSAL
constexpr double C[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double A[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double E[7] = {35.0 / 384 - 5179.0 / 57600,
                         0.0,
                         500.0 / 1113 - 7571.0 / 16695,
                         125.0 / 192 - 393.0 / 640,
                         -2187.0 / 6784 + 92097.0 / 339200,
                         11.0 / 84 - 187.0 / 2100,
                         -1.0 / 40};

struct Stepper {
    const HeunParams& p;
    double tol;
    State y;
    double z;
    double h;
    State k[7];
    long steps = 0;

    Stepper(const HeunParams& pp, double z0, const State& y0, double h0, double t)
        : p(pp), tol(t), y(y0), z(z0), h(h0) {
        k[0] = rhs(p, z, y);
    }

    void advance_to(double zt) {
        double dir = (zt > z) ? 1.0 : -1.0;
        if (h * dir <= 0.0) h = -h;
        double hmin = 1e-14 * (std::fabs(zt - z) + std::fabs(z)) + 1e-300;
        while (dir * (zt - z) > 4e-16 * std::max(1.0, std::fabs(zt))) {
            if (dir * (z + h - zt) > 0.0) h = zt - z;
            if (std::fabs(h) < hmin)
                throw StepFailure("integrate_ode: step size underflow");

            for (int s = 1; s < 7; ++s) {
                State ys;
                for (int i = 0; i < 2; ++i) {
                    double acc = 0.0;
                    for (int j = 0; j < s; ++j) acc += A[s][j] * k[j][i];
                    ys[i] = y[i] + h * acc;
                }
                k[s] = rhs(p, z + C[s] * h, ys);
            }
            // stage 7 state is the 5th-order solution (A[6] row = b)
            State yn;
            for (int i = 0; i < 2; ++i) {
                double acc = 0.0;
                for (int j = 0; j < 6; ++j) acc += A[6][j] * k[j][i];
                yn[i] = y[i] + h * acc;
            }

            double errnorm = 0.0;
            for (int i = 0; i < 2; ++i) {
                double err = 0.0;
                for (int j = 0; j < 7; ++j) err += E[j] * k[j][i];
                err *= h;
                double scale = tol + tol * std::max(std::fabs(y[i]), std::fabs(yn[i]));
                double r = err / scale;
                errnorm += r * r;
            }
            errnorm = std::sqrt(errnorm / 2.0);

            if (errnorm <= 1.0) {
                z += h;
                y = yn;
                k[0] = k[6];
                ++steps;
                if (steps > 20000000)
                    throw StepFailure("integrate_ode: step budget exhausted");
            }
            double fac = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        }
    }
};

} // namespace

OdeResult integrate_ode(const HeunParams& p, double z0, double u0, double u0p,
                        double z1, double tol) {
    check_interval(p, z0, z1);
    if (z0 == z1) return {u0, u0p, 0};
    Stepper st(p, z0, {u0, u0p}, 1e-3 * (z1 - z0), tol);
    st.advance_to(z1);
    return {st.y[0], st.y[1], st.steps};
}

double integrate_to_one(const HeunParams& p, double z0, double u0, double u0p,
                        double tol) {
    if (p.delta >= 1.0)
        throw DomainError("integrate_to_one: requires delta < 1");
    check_interval(p, z0, 1.0 - 1e-5);

    const int j0 = 4, j1 = 15;
    std::vector<double> vals;
    Stepper st(p, z0, {u0, u0p}, 1e-3 * (1.0 - z0), tol);
    for (int j = j0; j <= j1; ++j) {
        st.advance_to(1.0 - std::pow(2.0, -j));
        vals.push_back(st.y[0]);
    }

    // u(1-h) = u(1) + O(h^{1-delta}) + O(h); merged exponent ladder
    std::vector<double> exps;
    for (int i = 0; i < 8; ++i) {
        exps.push_back(1.0 - p.delta + i);
        exps.push_back(1.0 + i);
    }
    std::sort(exps.begin(), exps.end());

    std::vector<double> t = vals;
    std::size_t level = 0;
    while (t.size() > 1 && level < exps.size()) {
        double w = std::pow(2.0, -exps[level]);
        for (std::size_t i = 0; i + 1 < t.size(); ++i)
            t[i] = (t[i + 1] - w * t[i]) / (1.0 - w);
        t.pop_back();
        ++level;
    }
    return t[0];
}

} // namespace heun
