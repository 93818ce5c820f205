#pragma once

// Geometry and channel models for the downlink: the Lambertian line-of-sight
// optical channel with a field-of-view cutoff, and a two-slope indoor RF
// path-loss model between user terminals.
//
// Conventions fixed here: the LED points straight down, photodetectors face
// straight up, so the radiance and incidence angles coincide. Blocked users
// (and users whose incidence angle exceeds the FoV semi-angle) have a zero
// optical channel.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conoma/common.hpp"
#include "conoma/rng.hpp"

namespace conoma {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

struct VlcParams {
  Vec3 ap_position{0.0, 0.0, 3.0};
  double photodetector_area = 1e-4;       // m^2
  double half_intensity_angle_deg = 60.0;
  double optical_filter_gain = 1.0;
  double refractive_index = 1.5;
  double fov_semiangle_deg = 50.0;
  double user_height = 0.85;              // m
  double led_height = 3.0;                // m

  void validate() const {
    if (!(photodetector_area > 0.0)) throw std::invalid_argument("photodetector area must be positive");
    if (!(half_intensity_angle_deg > 0.0 && half_intensity_angle_deg < 90.0))
      throw std::invalid_argument("half-intensity angle must lie in (0, 90) degrees");
    if (!(fov_semiangle_deg > 0.0 && fov_semiangle_deg <= 90.0))
      throw std::invalid_argument("FoV semi-angle must lie in (0, 90] degrees");
    if (!(refractive_index >= 1.0)) throw std::invalid_argument("refractive index must be >= 1");
    if (!(led_height > user_height)) throw std::invalid_argument("LED must sit above the user plane");
  }
};

struct RfParams {
  double carrier_hz = 2.4e9;
  double breakpoint_m = 5.0;
  double shadow_sigma_before_db = 3.0;
  double shadow_sigma_after_db = 5.0;
  double bandwidth_hz = 16e6;
  double noise_psd_w_per_hz = dbm_per_hz_to_w_per_hz(-174.0);
  double multipath_gain = 1.0;  // |H|^2; a unit LoS tap by default

  void validate() const {
    if (!(breakpoint_m > 0.0)) throw std::invalid_argument("breakpoint distance must be positive");
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("RF bandwidth must be positive");
    if (!(carrier_hz > 0.0)) throw std::invalid_argument("carrier frequency must be positive");
    if (shadow_sigma_before_db < 0.0 || shadow_sigma_after_db < 0.0)
      throw std::invalid_argument("shadowing sigmas must be non-negative");
  }
};

/// Lambertian order m = -1 / log2(cos(half-intensity angle)).
inline double lambertian_order(double half_angle_deg) {
  if (!(half_angle_deg > 0.0 && half_angle_deg < 90.0))
    throw std::domain_error("half-intensity angle out of (0, 90) degrees");
  return -1.0 / std::log2(std::cos(deg2rad(half_angle_deg)));
}

/// Optical concentrator gain: n^2 / sin^2(FoV) inside the field of view, 0 outside.
inline double concentrator_gain(double theta_deg, double fov_deg, double refractive_index) {
  if (theta_deg < 0.0) throw std::domain_error("incidence angle must be non-negative");
  if (!(fov_deg > 0.0)) throw std::domain_error("FoV semi-angle must be positive");
  if (theta_deg > fov_deg) return 0.0;
  const double s = std::sin(deg2rad(fov_deg));
  return refractive_index * refractive_index / (s * s);
}

/// Line-of-sight optical channel gain for one user. Zero when blocked or
/// outside the FoV.
inline double vlc_channel_gain(const Vec3& user_pos, const VlcParams& p, bool blocked) {
  const double dz = p.ap_position.z - user_pos.z;
  if (!(dz > 0.0)) throw std::domain_error("user must sit below the AP plane");
  if (blocked) return 0.0;
  const double d = distance(p.ap_position, user_pos);
  if (d == 0.0) throw std::domain_error("zero AP-user distance");
  // Downward LED, upward detector: radiance angle equals incidence angle.
  const double cos_theta = dz / d;
  const double theta_deg = rad2deg(std::acos(std::min(1.0, cos_theta)));
  const double f = concentrator_gain(theta_deg, p.fov_semiangle_deg, p.refractive_index);
  if (f == 0.0) return 0.0;
  const double m = lambertian_order(p.half_intensity_angle_deg);
  const double area_term = (m + 1.0) * p.photodetector_area / (2.0 * kPi * d * d);
  return area_term * std::pow(cos_theta, m) * p.optical_filter_gain * cos_theta * f;
}

/// Two-slope indoor path loss in dB: free space up to the breakpoint,
/// 35 dB/decade beyond it. Continuous across the breakpoint.
inline double rf_path_loss_db(double d, const RfParams& p) {
  const double d_eff = std::min(d, p.breakpoint_m);
  double loss = 20.0 * std::log10(4.0 * kPi * d_eff * p.carrier_hz / kSpeedOfLight);
  if (d > p.breakpoint_m) loss += 35.0 * std::log10(d / p.breakpoint_m);
  return loss;
}

/// RF power gain between two terminals: |H|^2 * 10^(-L(d)/10), with optional
/// log-normal shadowing drawn from `rng`. Coincident positions are clamped
/// to 0.1 m.
inline double rf_channel_gain(const Vec3& a, const Vec3& b, const RfParams& p, Rng& rng,
                              bool shadowing = false) {
  double d = distance(a, b);
  if (d < 0.1) {
    std::clog << "conoma: RF distance " << d << " m clamped to 0.1 m\n";
    d = 0.1;
  }
  double loss = rf_path_loss_db(d, p);
  if (shadowing) {
    const double sigma = d <= p.breakpoint_m ? p.shadow_sigma_before_db : p.shadow_sigma_after_db;
    loss += sigma * rng.next_normal();
  }
  return p.multipath_gain * std::pow(10.0, -loss / 10.0);
}

struct UserSample {
  Vec3 position;
  bool blocked = false;
  bool virtual_user = false;
};

struct Scenario {
  VlcParams vlc;
  RfParams rf;
  double cell_radius = 2.5;
  double blockage_rate = 0.1;
  std::uint64_t rng_seed = 0;
  bool shadowing = false;
  std::vector<UserSample> users;  // always even; a virtual user pads odd counts
};

struct ChannelState {
  std::vector<double> h;  // per-user optical gain
  Matrix rf_gain;         // per ordered user pair; symmetric by construction
};

struct ScenarioConfig {
  VlcParams vlc;
  RfParams rf;
  double cell_radius = 2.5;
  double blockage_rate = 0.1;
  int user_count = 6;
  bool shadowing = false;

  void validate() const {
    vlc.validate();
    rf.validate();
    if (!(cell_radius > 0.0)) throw std::invalid_argument("cell radius must be positive");
    if (!(blockage_rate >= 0.0 && blockage_rate <= 1.0))
      throw std::invalid_argument("blockage rate must lie in [0, 1]");
    if (user_count < 1) throw std::invalid_argument("at least one user required");
  }
};

// Draws one network realization: user positions uniform over the disc,
// independent blockage flags, and all channel gains. Odd user counts get a
// virtual user with zero optical channel and zero RF gain, so downstream
// code always sees an even population.
inline std::pair<Scenario, ChannelState> sample_scenario(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(seed);

  Scenario scn;
  scn.vlc = cfg.vlc;
  scn.rf = cfg.rf;
  scn.cell_radius = cfg.cell_radius;
  scn.blockage_rate = cfg.blockage_rate;
  scn.rng_seed = seed;
  scn.shadowing = cfg.shadowing;

  const Vec3 center{cfg.vlc.ap_position.x, cfg.vlc.ap_position.y, cfg.vlc.user_height};
  for (int i = 0; i < cfg.user_count; ++i) {
    const double r = cfg.cell_radius * std::sqrt(rng.next_double());
    const double phi = 2.0 * kPi * rng.next_double();
    const bool blocked = rng.next_double() < cfg.blockage_rate;
    scn.users.push_back({{center.x + r * std::cos(phi), center.y + r * std::sin(phi), center.z}, blocked, false});
  }
  if (cfg.user_count % 2 != 0) scn.users.push_back({center, true, true});

  const std::size_t n = scn.users.size();
  ChannelState ch;
  ch.h.resize(n);
  ch.rf_gain = Matrix(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    ch.h[i] = scn.users[i].virtual_user
                  ? 0.0
                  : vlc_channel_gain(scn.users[i].position, scn.vlc, scn.users[i].blocked);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (scn.users[i].virtual_user || scn.users[j].virtual_user) continue;
      const double g = rf_channel_gain(scn.users[i].position, scn.users[j].position, scn.rf, rng, cfg.shadowing);
      ch.rf_gain(i, j) = g;
      ch.rf_gain(j, i) = g;
    }
  }
  return {std::move(scn), std::move(ch)};
}

}  // namespace conoma
