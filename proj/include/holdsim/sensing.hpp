#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holdsim {

enum class QuantizerMode { RoundNearest, Truncate };

/// Snap an angle onto the encoder grid.
inline double quantize(double theta, double delta, QuantizerMode mode = QuantizerMode::RoundNearest) {
    if (delta < 0.0) throw std::invalid_argument("quantize: delta must be >= 0");
    if (delta == 0.0) return theta;
    if (mode == QuantizerMode::RoundNearest) return delta * std::round(theta / delta);
    return delta * std::floor(theta / delta);
}

/// Encoder resolution and sampling period. Defaults: 4000 pulses/rev
/// (0.09 deg) sampled at 1 kHz.
struct EncoderModel {
    double resolution_delta = 2.0 * std::numbers::pi / 4000.0;  // rad
    double sample_period = 1e-3;                                // s

    bool valid() const { return resolution_delta >= 0.0 && sample_period > 0.0; }
};

enum class HoldType { Zoh, Foh };

/// One of the four sensing variants compared in the study.
struct SensingScheme {
    HoldType hold = HoldType::Zoh;
    bool filtered = false;
    double filter_cutoff_hz = 140.0;
};

inline const char* scheme_name(const SensingScheme& s) {
    if (s.hold == HoldType::Zoh) return s.filtered ? "ZOH+Filter" : "ZOH";
    return s.filtered ? "FOH+Filter" : "FOH";
}

/// Per-sample sensing pipeline state: quantize the angle once per period and
/// expose the hold reconstruction over the current period.
///
/// The FOH estimates the analog signal between two quantized values: the
/// slope of the most recent step of the quantized staircase (level change,
/// which may span several sample periods) extends the current quantized
/// value through the period: theta_hat(kT + tau) = q[k] + s * tau.
class SensorChannel {
public:
    SensorChannel(const SensingScheme& scheme, const EncoderModel& encoder,
                  QuantizerMode mode = QuantizerMode::RoundNearest)
        : scheme_(scheme), encoder_(encoder), mode_(mode) {
        if (!encoder.valid()) throw std::invalid_argument("SensorChannel: invalid encoder model");
    }

    /// Advance one sample period (call once per period, in time order).
    /// Returns the quantized sample.
    double sample(double theta_true) {
        const double q = quantize(theta_true, encoder_.resolution_delta, mode_);
        if (!initialized_) {
            initialized_ = true;
            last_level_ = q;
            ticks_since_change_ = 0;
            slope_ = 0.0;
        } else {
            ++ticks_since_change_;
            if (q != last_level_) {
                slope_ = (q - last_level_) /
                         (static_cast<double>(ticks_since_change_) * encoder_.sample_period);
                last_level_ = q;
                ticks_since_change_ = 0;
            }
        }
        curr_ = q;
        return q;
    }

    /// Hold reconstruction at offset tau in [0, T) within the current period.
    double value(double tau) const {
        if (!initialized_) throw std::logic_error("SensorChannel::value before first sample");
        if (scheme_.hold == HoldType::Zoh) return curr_;
        return curr_ + slope_ * tau;
    }

    /// Staircase-step slope currently used for extrapolation, rad/s.
    double slope() const { return slope_; }

    const SensingScheme& scheme() const { return scheme_; }
    const EncoderModel& encoder() const { return encoder_; }
    bool initialized() const { return initialized_; }

private:
    SensingScheme scheme_;
    EncoderModel encoder_;
    QuantizerMode mode_;
    bool initialized_ = false;
    double curr_ = 0.0;
    double last_level_ = 0.0;
    long ticks_since_change_ = 0;
    double slope_ = 0.0;
};

}  // namespace holdsim
