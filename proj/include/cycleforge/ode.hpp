#pragma once

#include "cycleforge/errors.hpp"

#include <array>
#include <cmath>
#include <algorithm>
#include <complex>
#include <cstddef>
#include <functional>

namespace cycleforge::ode {

template <class S>
struct scalar_traits {
    using real = S;
    static real magnitude(const S& v) { return std::fabs(v); }
};
template <class R>
struct scalar_traits<std::complex<R>> {
    using real = R;
    static real magnitude(const std::complex<R>& v) { return std::abs(v); }
};

template <class R>
struct OdeOptions {
    R rtol = R(1e-13L);
    R atol = R(1e-16L);
    R h_init = R(1e-4L);
    R h_max = R(0.25L);
    long max_steps = 4'000'000;
};

/// Embedded Dormand-Prince 5(4) step on a fixed-size state.  One call
/// evaluates the right-hand side seven times (no FSAL reuse; the drivers
/// here re-step freely during event refinement, where reuse would not hold
/// anyway).  err receives the weighted RMS error estimate of the 4th-order
/// comparison solution.
template <std::size_t N, class S, class R, class F>
void dopri5_step(F&& f, R t, const std::array<S, N>& y, R h, std::array<S, N>& out, R& err,
                 R atol, R rtol) {
    using T = scalar_traits<S>;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    std::array<S, N> k1 = f(t, y), ytmp;
    const auto axpy = [&](std::initializer_list<std::pair<double, const std::array<S, N>*>> terms) {
        for (std::size_t i = 0; i < N; ++i) {
            S acc = y[i];
            for (const auto& [w, k] : terms) acc += S(R(w) * h) * (*k)[i];
            ytmp[i] = acc;
        }
    };

    axpy({{a21, &k1}});
    std::array<S, N> k2 = f(t + R(c2) * h, ytmp);
    axpy({{a31, &k1}, {a32, &k2}});
    std::array<S, N> k3 = f(t + R(c3) * h, ytmp);
    axpy({{a41, &k1}, {a42, &k2}, {a43, &k3}});
    std::array<S, N> k4 = f(t + R(c4) * h, ytmp);
    axpy({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    std::array<S, N> k5 = f(t + R(c5) * h, ytmp);
    axpy({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    std::array<S, N> k6 = f(t + h, ytmp);

    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + S(R(b1) * h) * k1[i] + S(R(b3) * h) * k3[i] + S(R(b4) * h) * k4[i] +
                 S(R(b5) * h) * k5[i] + S(R(b6) * h) * k6[i];
    std::array<S, N> k7 = f(t + h, out);

    R sum{};
    for (std::size_t i = 0; i < N; ++i) {
        const S ei = S(R(e1) * h) * k1[i] + S(R(e3) * h) * k3[i] + S(R(e4) * h) * k4[i] +
                     S(R(e5) * h) * k5[i] + S(R(e6) * h) * k6[i] + S(R(e7) * h) * k7[i];
        const R sc = atol + rtol * std::max(T::magnitude(y[i]), T::magnitude(out[i]));
        const R q = T::magnitude(ei) / sc;
        sum += q * q;
    }
    err = std::sqrt(sum / R(N));
}

/// Adaptive driver.  Exposes the last accepted step (t_prev, y_prev) ->
/// (t, y) so callers can bracket events, and can re-take a partial step of
/// any size from the step start: the partial step is a single fixed
/// Dormand-Prince step, so it is smooth in the step size and at least as
/// accurate as the accepted step it subdivides.
template <std::size_t N, class S, class R, class F>
class AdaptiveDopri5 {
public:
    using State = std::array<S, N>;

    AdaptiveDopri5(F f, OdeOptions<R> opt) : f_(std::move(f)), opt_(opt) {}

    void start(R t0, const State& y0, R direction) {
        t_ = tp_ = t0;
        y_ = yp_ = y0;
        dir_ = direction >= R(0) ? R(1) : R(-1);
        h_ = opt_.h_init;
        steps_ = 0;
    }

    /// Take one accepted step.  Throws StepFailure when the tolerance is
    /// unreachable or the step budget is exhausted.
    void advance() {
        R h = std::min(h_, opt_.h_max);
        for (int attempt = 0; attempt < 64; ++attempt) {
            if (++steps_ > opt_.max_steps) throw StepFailure("integration step budget exhausted");
            State out;
            R err{};
            dopri5_step<N, S, R>(f_, t_, y_, dir_ * h, out, err, opt_.atol, opt_.rtol);
            if (std::isfinite((double)err) && err <= R(1)) {
                tp_ = t_;
                yp_ = y_;
                t_ += dir_ * h;
                y_ = out;
                const R grow = err <= R(1e-30L) ? R(5) : R(0.9) * std::pow(err, R(-0.2L));
                h_ = h * std::clamp(grow, R(0.2), R(5));
                return;
            }
            const R shrink = (!std::isfinite((double)err))
                                 ? R(0.1)
                                 : std::max(R(0.1), R(0.9) * std::pow(err, R(-0.2L)));
            h *= std::min(shrink, R(0.9));
            if (h < R(1e-30L)) throw StepFailure("step size underflow: tolerance unreachable");
        }
        throw StepFailure("step repeatedly rejected: tolerance unreachable");
    }

    /// State at t_prev + s*(t - t_prev), s in (0, 1], via one fixed partial
    /// step from the stored step start.
    State substate(R s) const {
        if (s >= R(1)) return y_;
        State out;
        R err{};
        dopri5_step<N, S, R>(f_, tp_, yp_, (t_ - tp_) * s, out, err, opt_.atol, opt_.rtol);
        return out;
    }

    R t() const { return t_; }
    R t_prev() const { return tp_; }
    const State& y() const { return y_; }
    const State& y_prev() const { return yp_; }
    R direction() const { return dir_; }

private:
    F f_;
    OdeOptions<R> opt_;
    R t_{}, tp_{}, h_{}, dir_{1};
    State y_{}, yp_{};
    long steps_ = 0;
};

/// Locate a root of g(state) inside the last accepted step of the driver by
/// bisection on the partial-step parameter.  Assumes g changes sign across
/// the step.  Returns the fraction s* and the refined state.
template <std::size_t N, class S, class R, class F, class G>
std::pair<R, std::array<S, N>> bisect_event(const AdaptiveDopri5<N, S, R, F>& drv, G&& g,
                                            int iterations = 80) {
    R lo = R(0), hi = R(1);
    auto ylo = drv.y_prev();
    R glo = g(ylo);
    auto yhi = drv.y();
    for (int i = 0; i < iterations && hi - lo > R(1e-25L); ++i) {
        const R mid = (lo + hi) / R(2);
        auto ym = drv.substate(mid);
        const R gm = g(ym);
        if ((glo <= R(0)) == (gm <= R(0))) {
            lo = mid;
            glo = gm;
            ylo = ym;
        } else {
            hi = mid;
            yhi = ym;
        }
    }
    return {hi, yhi};
}

} // namespace cycleforge::ode
