#pragma once

#include "loopbench/config_kv.hpp"
#include "loopbench/sim/create2.hpp"
#include "loopbench/sim/dxl.hpp"
#include "loopbench/sim/ur5.hpp"

namespace loopbench::sim {

// Every simulator constant, config-overridable and recorded into run logs so
// a run is reproducible from its header alone.
struct DeviceParams {
  Ur5Params ur5;
  DxlParams dxl;
  Create2Params create2;

  KvFile to_kv() const;
  void apply_kv(const KvFile& kv);  // overrides only the keys present

  static DeviceParams from_kv(const KvFile& kv) {
    DeviceParams d;
    d.apply_kv(kv);
    return d;
  }
};

}  // namespace loopbench::sim
