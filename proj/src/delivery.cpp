#include "delivery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace edgecache {

namespace {

// residual below which a transfer counts as finished (absorbs the float dust
// left by shares like 1/3)
constexpr double kRemainingEps = 1e-12;

}  // namespace

DeliveryOutcome simulate(const RequestTrace& trace, const CachePlan& plan,
                         const LinkBudget& links, const Catalog& catalog, int horizon) {
  if (horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");
  const int n_stations = plan.n_stations;
  const int n_contents = plan.n_contents;
  if (catalog.n_contents() != n_contents) throw std::invalid_argument("simulate: catalog/plan size mismatch");
  if (static_cast<int>(links.backhaul_mbps.size()) != n_stations ||
      static_cast<int>(links.wireless_mbps.size()) != n_stations)
    throw std::invalid_argument("simulate: link budget size mismatch");
  for (int m = 0; m < n_stations; ++m)
    if (!(links.backhaul_mbps[m] > 0.0) || !(links.wireless_mbps[m] > 0.0))
      throw std::invalid_argument("simulate: link capacities must be > 0");

  DeliveryOutcome out;
  out.records.reserve(trace.requests.size());
  if (trace.requests.empty()) {
    out.metrics.degenerate = true;
    return out;
  }

  struct Active {
    int id;
    double remaining;
    bool uses_backhaul;
  };
  std::vector<std::vector<Active>> active(n_stations);

  for (const Request& req : trace.requests) {
    if (req.station < 0 || req.station >= n_stations || req.content < 0 || req.content >= n_contents)
      throw std::invalid_argument("simulate: request index out of range");
    if (req.slot < 0 || req.slot >= horizon) throw std::invalid_argument("simulate: arrival outside horizon");
    DeliveryRecord rec;
    rec.content = req.content;
    rec.station = req.station;
    rec.user = req.user;
    rec.arrival_slot = req.slot;
    out.records.push_back(std::move(rec));
  }

  size_t next_arrival = 0;
  for (int slot = 0; slot < horizon; ++slot) {
    while (next_arrival < trace.requests.size() && trace.requests[next_arrival].slot == slot) {
      const Request& req = trace.requests[next_arrival];
      active[req.station].push_back({static_cast<int>(next_arrival), catalog.size_mbit[req.content],
                                     !plan.cached(req.station, req.content)});
      ++next_arrival;
    }
    if (next_arrival < trace.requests.size() && trace.requests[next_arrival].slot < slot)
      throw std::invalid_argument("simulate: trace not sorted by slot");

    for (int m = 0; m < n_stations; ++m) {
      auto& station_active = active[m];
      if (station_active.empty()) continue;
      int n_backhaul = 0;
      for (const Active& a : station_active) n_backhaul += a.uses_backhaul ? 1 : 0;
      const double wireless_share = links.wireless_mbps[m] / station_active.size();
      const double backhaul_share = n_backhaul > 0 ? links.backhaul_mbps[m] / n_backhaul : 0.0;

      for (Active& a : station_active) {
        double rate = wireless_share;
        if (a.uses_backhaul) rate = std::min(rate, backhaul_share);
        const double delivered = std::min(rate, a.remaining);
        DeliveryRecord& rec = out.records[a.id];
        rec.wireless_rate.push_back(delivered);
        rec.backhaul_rate.push_back(a.uses_backhaul ? delivered : 0.0);
        if (a.uses_backhaul) rec.backhaul_mbit += delivered;
        a.remaining -= delivered;
        if (a.remaining <= kRemainingEps) {
          a.remaining = 0.0;
          rec.completion_slot = slot + 1;
        }
      }
      station_active.erase(std::remove_if(station_active.begin(), station_active.end(),
                                          [](const Active& a) { return a.remaining == 0.0; }),
                           station_active.end());
    }
  }

  double satisfied_sum = 0.0;
  double load_sum = 0.0;
  for (DeliveryRecord& rec : out.records) {
    const double size = catalog.size_mbit[rec.content];
    const double bitrate = catalog.bitrate_mbps[rec.content];
    if (rec.completion_slot >= 0) {
      const double duration = rec.completion_slot - rec.arrival_slot;
      rec.satisfied = size / duration >= bitrate - 1e-12 * std::max(1.0, bitrate);
    }
    satisfied_sum += rec.satisfied ? 1.0 : 0.0;
    load_sum += rec.backhaul_mbit / size;
  }
  out.metrics.n_requests = out.records.size();
  out.metrics.satisfaction_ratio = satisfied_sum / out.records.size();
  out.metrics.backhaul_load = load_sum / out.records.size();
  return out;
}

OffloadingGain offloading_gain(const Metrics& a, const Metrics& b) {
  return {b.backhaul_load - a.backhaul_load, a.satisfaction_ratio - b.satisfaction_ratio};
}

void write_delivery_csv(const std::vector<DeliveryRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_delivery_csv: cannot open " + path);
  out << "request_id,content,station,arrival,completion,satisfied,backhaul_mbit\n";
  char value[64];
  for (size_t i = 0; i < records.size(); ++i) {
    const DeliveryRecord& r = records[i];
    std::snprintf(value, sizeof(value), "%.9g", r.backhaul_mbit);
    out << i << ',' << r.content << ',' << r.station << ',' << r.arrival_slot << ','
        << r.completion_slot << ',' << (r.satisfied ? 1 : 0) << ',' << value << '\n';
  }
  if (!out) throw std::runtime_error("write_delivery_csv: write failed for " + path);
}

}  // namespace edgecache
