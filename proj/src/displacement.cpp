#include "cycleforge/displacement.hpp"

#include "cycleforge/threads.hpp"

#include <map>
#include <mutex>

namespace cycleforge::lyapunov {

namespace detail {

const QuasiTrigPoly<Rational>& cos_sin_power(int k, int l) {
    using QTP = QuasiTrigPoly<Rational>;
    static std::map<std::pair<int, int>, QTP> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    const auto key = std::make_pair(k, l);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    QTP p = QTP::constant(Rational(1));
    const QTP c = QTP::term(0, 1, TrigKind::cos, Rational(1));
    const QTP s = QTP::term(0, 1, TrigKind::sin, Rational(1));
    for (int i = 0; i < k; ++i) p = p * c;
    for (int j = 0; j < l; ++j) p = p * s;
    return cache.emplace(key, std::move(p)).first->second;
}

} // namespace detail

std::vector<ParamJet> half_return_series(const HalfSystem<ParamJet>& h, int order,
                                         HalfDirection direction) {
    const RadialSeries<ParamJet> R = polar_expansion(h, order);
    const RadialSeries<ParamJet> r = solve_radial_coefficients(R, order);
    const Abscissa endpoint = half_return_endpoint(direction);
    std::vector<ParamJet> out;
    out.reserve(static_cast<std::size_t>(order) - 1);
    for (int i = 2; i <= order; ++i)
        out.push_back(r[static_cast<std::size_t>(i)].eval_at(endpoint));
    return out;
}

DisplacementSeries displacement_series(const PiecewiseSystem<ParamJet>& s, int order) {
    if (order < 2) return DisplacementSeries{};

    auto upper_job = [&] {
        return half_return_series(s.upper, order, HalfDirection::forward_0_to_pi);
    };
    std::vector<ParamJet> up, lo;
    if (util::thread_budget() > 1) {
        auto fut = std::async(std::launch::async, upper_job);
        lo = half_return_series(s.lower, order, HalfDirection::backward_0_to_minus_pi);
        up = fut.get();
    } else {
        up = upper_job();
        lo = half_return_series(s.lower, order, HalfDirection::backward_0_to_minus_pi);
    }

    std::vector<ParamJet> coef;
    coef.reserve(up.size());
    for (std::size_t i = 0; i < up.size(); ++i) coef.push_back(up[i] - lo[i]);
    return DisplacementSeries(std::move(coef));
}

namespace {

PlanarPoly<ParamJet> with_side_params(const PlanarPoly<Rational>& base, const ParamSet& ps,
                                      char role, Side side) {
    PlanarPoly<ParamJet> p = lift_to_jets(base);
    for (std::size_t id = 0; id < ps.size(); ++id) {
        const auto& d = ps[id];
        if (d.role == role && d.side == side)
            p.add_term(d.kx, d.ky, ParamJet::variable(static_cast<std::uint32_t>(id)));
    }
    return p;
}

} // namespace

PiecewiseSystem<ParamJet> attach_perturbation(const HalfSystem<Rational>& upper,
                                              const HalfSystem<Rational>& lower, int degree) {
    ParamSet ps = ParamSet::perturbation(degree);
    HalfSystem<ParamJet> up(with_side_params(upper.dx(), ps, 'a', Side::upper),
                            with_side_params(upper.dy(), ps, 'b', Side::upper), Side::upper);
    HalfSystem<ParamJet> lo(with_side_params(lower.dx(), ps, 'a', Side::lower),
                            with_side_params(lower.dy(), ps, 'b', Side::lower), Side::lower);
    return PiecewiseSystem<ParamJet>{std::move(up), std::move(lo), std::move(ps)};
}

PiecewiseSystem<ParamJet> lift_piecewise(const HalfSystem<Rational>& upper,
                                         const HalfSystem<Rational>& lower) {
    HalfSystem<ParamJet> up(lift_to_jets(upper.dx()), lift_to_jets(upper.dy()), Side::upper);
    HalfSystem<ParamJet> lo(lift_to_jets(lower.dx()), lift_to_jets(lower.dy()), Side::lower);
    return PiecewiseSystem<ParamJet>{std::move(up), std::move(lo), ParamSet{}};
}

} // namespace cycleforge::lyapunov
