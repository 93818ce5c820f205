#pragma once

// Achievable-rate model for the superposed downlink. Each of the K user
// pairs shares one bandwidth slice; within a pair the strong user cancels
// the weak message while the weak user treats the strong message as
// interference. Electrical "power" throughout is the squared LED drive
// current (A^2), and the SNR coefficient absorbs every conversion constant:
//
//   psi = nu^2 rho^2 h^2 K / (B_v N_v)
//
// so the rate expressions reduce to logs of dimensionless ratios.

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conoma {

struct PhyConstants {
  double vlc_bandwidth = 20e6;    // B_v, Hz
  double vlc_noise_psd = 1e-21;   // N_v, A^2/Hz
  double responsivity = 0.53;     // rho, A/W
  double conversion_factor = 10;  // nu, W/A
  double fill_factor = 0.75;
  double thermal_voltage = 0.025;  // V
  double dark_current = 1e-10;     // A
  double bias_high = 0.6;          // I_H, A
  double bias_low = 0.4;           // I_L, A
  int pair_count = 3;              // K

  double dc_bias() const { return 0.5 * (bias_high + bias_low); }

  void validate() const {
    if (!(vlc_bandwidth > 0 && vlc_noise_psd > 0 && responsivity > 0 && conversion_factor > 0 &&
          fill_factor > 0 && thermal_voltage > 0 && dark_current > 0 && bias_high > 0 && bias_low > 0))
      throw std::invalid_argument("physical constants must be positive");
    if (!(bias_high > bias_low)) throw std::invalid_argument("bias_high must exceed bias_low");
    if (pair_count < 1) throw std::invalid_argument("pair count must be >= 1");
  }
};

/// Electrical power budget ((I_H - I_L)/2)^2 available at the AP once the
/// DC bias is centered between the LED's linear-region limits.
inline double max_drive_power(double bias_high, double bias_low) {
  if (!(bias_high >= bias_low)) throw std::invalid_argument("bias_high must be >= bias_low");
  const double a = 0.5 * (bias_high - bias_low);
  return a * a;
}

inline double max_drive_power(const PhyConstants& c) { return max_drive_power(c.bias_high, c.bias_low); }

/// Power a strong user harvests from the received DC light component,
/// available in full for RF relaying (equal charge/discharge periods; the
/// half-duplex penalty sits in the RF rate's 1/2 pre-log factor).
inline double harvested_power(double h, const PhyConstants& c) {
  if (h <= 0.0) return 0.0;
  const double b = c.dc_bias();
  const double photo = c.responsivity * h * c.conversion_factor * b;
  return c.fill_factor * c.responsivity * c.conversion_factor * c.thermal_voltage * h * b *
         std::log1p(photo / c.dark_current);
}

/// SNR coefficient of a user with optical gain h.
inline double snr_coefficient(double h, const PhyConstants& c) {
  const double conv = c.conversion_factor * c.responsivity * h;
  return conv * conv * static_cast<double>(c.pair_count) / (c.vlc_bandwidth * c.vlc_noise_psd);
}

/// Strong user's own rate under successive interference cancellation.
inline double rate_strong(double p_s, double psi_s, double bv, int k) {
  return bv / (2.0 * k) * std::log2(1.0 + psi_s * p_s);
}

/// Rate at which the strong user decodes the weak user's message (the weak
/// message arrives on top of the strong user's own, still-undecoded signal).
inline double rate_weak_at_strong(double p_w, double p_s, double psi_s, double bv, int k) {
  return bv / (2.0 * k) * std::log2(1.0 + psi_s * p_w / (1.0 + psi_s * p_s));
}

/// Weak user's rate over the direct optical link, with the strong message
/// as interference.
inline double rate_weak_direct(double p_w, double p_s, double psi_w, double bv, int k) {
  return bv / (2.0 * k) * std::log2(1.0 + psi_w * p_w / (1.0 + psi_w * p_s));
}

/// Rate over the RF hop when `active_relays` pairs share the RF band
/// equally. The 1/2 accounts for the charge/transmit duty cycle.
inline double rate_rf(double gain, double relay_power, double bf, double noise_psd, int active_relays) {
  if (active_relays < 1) throw std::invalid_argument("RF rate requires at least one active relay");
  const double share = bf / static_cast<double>(active_relays);
  return share / 2.0 * std::log2(1.0 + gain * relay_power / (share * noise_psd));
}

/// End-to-end relayed rate: the decode-and-forward bottleneck.
inline double rate_relayed(double rf_rate, double decode_rate) { return std::min(rf_rate, decode_rate); }

}  // namespace conoma
