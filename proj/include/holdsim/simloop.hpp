#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "holdsim/biquad.hpp"
#include "holdsim/control.hpp"
#include "holdsim/plant.hpp"
#include "holdsim/sensing.hpp"

namespace holdsim {

/// Thrown when the closed loop leaves the linearization's validity region.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& scheme, long tick)
        : std::runtime_error("closed loop diverged (|theta| > 1 rad) for scheme " + scheme +
                             " at tick " + std::to_string(tick)),
          scheme_(scheme), tick_(tick) {}

    const std::string& scheme() const { return scheme_; }
    long tick() const { return tick_; }

private:
    std::string scheme_;
    long tick_;
};

struct SimConfig {
    PendulumParams params;
    Trajectory trajectory;
    SensingScheme scheme;
    EncoderModel encoder;
    QuantizerMode quantizer = QuantizerMode::RoundNearest;
    GainVec gains;
    double duration = 10.0;      // s
    double steady_start = 2.0;   // s
    int substeps = 10;           // plant integration substeps per sample period
    bool ideal_feedback = false; // feed back the true state (baseline runs)
    bool init_from_trajectory = true;
    State initial_state;         // used when init_from_trajectory is false

    void validate() const {
        if (!params.valid()) throw std::invalid_argument("SimConfig: invalid plant parameters");
        if (!encoder.valid()) throw std::invalid_argument("SimConfig: invalid encoder model");
        if (trajectory.amplitude <= 0.0 || trajectory.omega <= 0.0)
            throw std::invalid_argument("SimConfig: invalid trajectory");
        if (substeps < 1) throw std::invalid_argument("SimConfig: substeps must be >= 1");
        if (steady_start < 0.0 || duration <= steady_start)
            throw std::invalid_argument("SimConfig: need duration > steady_start >= 0");
        if (duration - steady_start < 4.0 * trajectory.period())
            throw std::invalid_argument(
                "SimConfig: steady window must cover at least 4 trajectory periods");
    }
};

/// Uniformly sampled closed-loop traces, one record per sample period.
struct SimResult {
    double sample_period = 1e-3;
    std::vector<double> t;
    std::vector<double> theta_d;
    std::vector<double> theta_true;
    std::vector<double> theta_hat;
    std::vector<double> va;

    std::size_t size() const { return t.size(); }

    /// theta_d - theta_true
    std::vector<double> true_error() const {
        std::vector<double> e(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) e[i] = theta_d[i] - theta_true[i];
        return e;
    }

    /// theta_d - theta_hat: the tracking error as the sensing chain reports it
    /// (the only error observable on the physical rig).
    std::vector<double> measured_error() const {
        std::vector<double> e(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) e[i] = theta_d[i] - theta_hat[i];
        return e;
    }
};

/// Open-loop sensing comparison trace on the fine evaluation grid.
struct OpenLoopResult {
    double dt = 1e-4;  // fine grid spacing
    std::vector<double> t;
    std::vector<double> input;
    std::vector<double> reconstructed;

    std::vector<double> error() const {
        std::vector<double> e(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) e[i] = reconstructed[i] - input[i];
        return e;
    }
};

/// Sample the reference sinusoid at the encoder rate, quantize, apply the
/// hold scheme, and evaluate the reconstruction on a grid of eval_oversample
/// points per sample period. Filtered schemes are smoothed zero-phase on the
/// fine grid (the offline sensing-output comparison).
inline OpenLoopResult run_open_loop_sensing(const SensingScheme& scheme,
                                            const EncoderModel& encoder,
                                            const Trajectory& trajectory, double duration,
                                            int eval_oversample,
                                            QuantizerMode quantizer = QuantizerMode::RoundNearest) {
    if (eval_oversample < 4)
        throw std::invalid_argument("run_open_loop_sensing: eval_oversample must be >= 4");
    if (duration < 10.0 * trajectory.period())
        throw std::invalid_argument("run_open_loop_sensing: duration must cover >= 10 periods");
    const double T = encoder.sample_period;
    const auto ticks = static_cast<long>(std::llround(duration / T));
    const double fine_dt = T / eval_oversample;

    OpenLoopResult r;
    r.dt = fine_dt;
    const std::size_t n_fine = static_cast<std::size_t>(ticks) * eval_oversample;
    r.t.reserve(n_fine);
    r.input.reserve(n_fine);
    r.reconstructed.reserve(n_fine);

    SensorChannel channel(scheme, encoder, quantizer);
    for (long k = 0; k < ticks; ++k) {
        const double tk = static_cast<double>(k) * T;
        channel.sample(traj_eval(trajectory, tk).theta_d);
        for (int j = 0; j < eval_oversample; ++j) {
            const double tau = j * fine_dt;
            r.t.push_back(tk + tau);
            r.input.push_back(traj_eval(trajectory, tk + tau).theta_d);
            r.reconstructed.push_back(channel.value(tau));
        }
    }
    if (scheme.filtered) {
        const Biquad lp = make_lowpass2(scheme.filter_cutoff_hz, 1.0 / fine_dt);
        r.reconstructed = zero_phase_filter(lp, r.reconstructed);
    }
    return r;
}

/// Closed-loop tracking run. The sensing chain updates once per sample
/// period; the control law (feed-forward plus full-state error feedback on
/// the reconstructed angle and its one-period backward-difference velocity)
/// is evaluated at every integration substep, emulating the continuous
/// controller of the block diagram. The in-loop filter runs at the substep
/// rate. Deterministic for a given config.
inline SimResult run_closed_loop(const SimConfig& cfg) {
    cfg.validate();
    const LtiModel model = build_model(cfg.params);
    if (!is_hurwitz(model, cfg.gains))
        throw std::invalid_argument("run_closed_loop: feedback gains are not stabilizing");

    const double T = cfg.encoder.sample_period;
    const int sub = cfg.substeps;
    const double dts = T / sub;
    const auto ticks = static_cast<long>(std::llround(cfg.duration / T));

    SensorChannel channel(cfg.scheme, cfg.encoder, cfg.quantizer);
    Biquad lp;
    if (cfg.scheme.filtered) lp = make_lowpass2(cfg.scheme.filter_cutoff_hz, 1.0 / dts);

    // delay line holding the reconstruction one sample period back, substep-resolved
    std::vector<double> delay;
    std::size_t dpos = 0;

    State x;
    if (cfg.init_from_trajectory) {
        const auto d0 = traj_eval(cfg.trajectory, 0.0);
        x = {d0.theta_d, d0.theta_d_dot};
    } else {
        x = cfg.initial_state;
    }

    SimResult res;
    res.sample_period = T;
    res.t.reserve(ticks + 1);
    res.theta_d.reserve(ticks + 1);
    res.theta_true.reserve(ticks + 1);
    res.theta_hat.reserve(ticks + 1);
    res.va.reserve(ticks + 1);

    for (long k = 0; k <= ticks; ++k) {
        const double tk = static_cast<double>(k) * T;
        channel.sample(x.theta);
        for (int j = 0; j < sub; ++j) {
            const double t = tk + j * dts;
            double th = cfg.ideal_feedback ? x.theta : channel.value(j * dts);
            if (cfg.scheme.filtered) th = lp.step(th);
            if (delay.empty()) delay.assign(static_cast<std::size_t>(sub), th);
            const double th_prev = delay[dpos];
            const double vel =
                cfg.ideal_feedback ? x.theta_dot : estimate_velocity(th, th_prev, T);
            delay[dpos] = th;
            dpos = (dpos + 1) % delay.size();

            const auto d = traj_eval(cfg.trajectory, t);
            const double vd = feedforward_voltage(cfg.params, d);
            const double u =
                feedback_control(cfg.gains, {d.theta_d - th, d.theta_d_dot - vel});
            const double va = vd - u;

            if (j == 0) {
                res.t.push_back(tk);
                res.theta_d.push_back(d.theta_d);
                res.theta_true.push_back(x.theta);
                res.theta_hat.push_back(th);
                res.va.push_back(va);
            }
            x = rk4_step(model, x, va, dts);
            if (std::abs(x.theta) > 1.0)
                throw DivergenceError(scheme_name(cfg.scheme), k);
        }
    }
    return res;
}

}  // namespace holdsim
