#pragma once

#include <cstdint>

#include "edge_assign/model.hpp"
#include "edge_assign/scenario.hpp"

namespace edge_assign::testing {

// Hand-built scenarios for the example cases.
class Builder {
 public:
  Builder() {
    sc_.radio.gain_model = GainModel::log10_km;
    sc_.radio.noise_w = 1e-13;
  }

  Builder& device(Point p, double workload_mi, double input_bits, double deadline_s) {
    MobileDevice md;
    md.id = sc_.devices.size();
    md.position = p;
    md.f_local_mips = 2000.0;
    md.tx_power_w = 0.5;
    md.energy_per_mi = 1e-3;
    md.alpha = 1.0;
    md.beta = 1.0;
    md.budget = 1e6;
    md.app = "health";
    md.task = {workload_mi, input_bits, deadline_s};
    sc_.devices.push_back(md);
    return *this;
  }

  Builder& server(Point p, double f_max_mips, int capacity, double unit_price,
                  double bandwidth_hz = 20e6) {
    MecServer s;
    s.id = sc_.servers.size();
    s.position = p;
    s.f_max_mips = f_max_mips;
    s.capacity = capacity;
    s.unit_price = unit_price;
    s.bandwidth_hz = bandwidth_hz;
    sc_.servers.push_back(s);
    return *this;
  }

  MobileDevice& last_device() { return sc_.devices.back(); }
  MecServer& last_server() { return sc_.servers.back(); }
  Scenario& get() { return sc_; }
  Scenario build() const { return sc_; }

 private:
  Scenario sc_;
};

// Contested instance where immediate acceptance leaves a blocking pair:
// device 0 can only use server 0; devices 1 and 2 both prefer the cheaper
// server 1, which takes device 2 (closer). Device 1 then finds server 0
// already full with device 0, which it outranks there.
inline Scenario contested_instance() {
  Builder b;
  b.server({0, 0}, 50000.0, 1, 0.0008);
  b.server({100, 0}, 20000.0, 1, 0.0002);
  b.device({40, 0}, 30000.0, 1.6e6, 1.0);
  b.device({10, 0}, 6000.0, 1.6e6, 1.0);
  b.device({90, 0}, 6000.0, 1.6e6, 1.0);
  return b.build();
}

// Randomized desk-sized instances: N in 1..6, M in 1..3, tight seats and
// compute, every weight positive.
inline Config enumerable_config(std::uint64_t k) {
  Config c;
  c.num_devices = 1 + k % 6;
  c.num_servers = 1 + (k / 6) % 3;
  c.region_width_m = 800.0;
  c.region_height_m = 800.0;
  c.app_mix = {{builtin_profile("health"), 0.5}, {builtin_profile("augmented_reality"), 0.5}};
  c.f_local_mips = {2000.0, 8000.0};
  c.alpha = {0.5, 2.0};
  c.beta = {0.5, 2.0};
  c.budget = {2.0, 12.0};
  c.f_max_mips = {6000.0, 20000.0};
  c.capacity = {1, 3};
  c.unit_price = {0.0002, 0.0008};
  c.gain_model = GainModel::log10_km;
  c.seed = 1000 + k;
  return c;
}

// Broader random family: N up to 100, M up to 5, every built-in app, both
// bandwidth modes.
inline Config random_config(std::uint64_t k) {
  Config c;
  c.num_devices = 1 + (k * 37) % 100;
  c.num_servers = 1 + k % 5;
  c.f_max_mips = {10000.0, 80000.0};
  c.capacity = {1, 20};
  c.unit_price = {0.0001, 0.002};
  c.budget = {1.0, 50.0};
  c.alpha = {0.1, 3.0};
  c.beta = {0.1, 3.0};
  c.gain_model = k % 7 == 0 ? GainModel::log2_m : GainModel::log10_km;
  c.bandwidth_mode = k % 2 == 0 ? BandwidthMode::fixed : BandwidthMode::equal_split;
  c.seed = 50000 + k;
  return c;
}

}  // namespace edge_assign::testing
