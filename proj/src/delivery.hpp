// Slot-based content delivery: equal-share processor sharing on each
// station's wireless link, with uncached requests additionally capped by an
// equal share of the station's backhaul, relayed cut-through.
#pragma once

#include <string>
#include <vector>

#include "demand.hpp"
#include "policies.hpp"

namespace edgecache {

struct LinkBudget {
  std::vector<double> backhaul_mbps;  // per station
  std::vector<double> wireless_mbps;  // per station
};

struct DeliveryRecord {
  int content = 0;
  int station = 0;
  int user = 0;
  int arrival_slot = 0;
  int completion_slot = -1;  // -1 while unfinished at the horizon
  bool satisfied = false;
  double backhaul_mbit = 0.0;
  std::vector<double> backhaul_rate;  // per slot from arrival, Mbit/s
  std::vector<double> wireless_rate;  // per slot from arrival, Mbit/s
};

struct Metrics {
  double satisfaction_ratio = 0.0;
  double backhaul_load = 0.0;
  std::size_t n_requests = 0;
  bool degenerate = false;  // empty trace
};

struct DeliveryOutcome {
  Metrics metrics;
  std::vector<DeliveryRecord> records;  // one per request, trace order
};

// Advances time in 1-second slots. Each slot every station splits its
// wireless capacity equally over its active requests; an uncached request is
// additionally capped by an equal split of the station's backhaul over the
// active uncached requests, and its backhaul bytes equal the bytes delivered.
// A request completes once its cumulative delivered bits reach the content
// size; a request still unfinished at the horizon counts as unsatisfied with
// its partial backhaul bytes kept.
DeliveryOutcome simulate(const RequestTrace& trace, const CachePlan& plan,
                         const LinkBudget& links, const Catalog& catalog, int horizon);

struct OffloadingGain {
  double backhaul_offload = 0.0;    // load of b minus load of a; positive when a offloads more
  double satisfaction_delta = 0.0;  // satisfaction of a minus satisfaction of b
};

OffloadingGain offloading_gain(const Metrics& a, const Metrics& b);

// CSV dump, one row per request:
// request_id,content,station,arrival,completion,satisfied,backhaul_mbit
// (completion is -1 for requests unfinished at the horizon)
void write_delivery_csv(const std::vector<DeliveryRecord>& records, const std::string& path);

}  // namespace edgecache
