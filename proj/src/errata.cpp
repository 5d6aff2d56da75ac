#include "opchain/errata.hpp"

#include <fstream>

namespace opchain {

ErrataLedger& ErrataLedger::global() {
  static ErrataLedger ledger;
  return ledger;
}

void ErrataLedger::record(ErrataEntry e) {
  std::lock_guard<std::mutex> lock(mu_);
  for (auto& existing : entries_) {
    if (existing.id == e.id) {
      existing = std::move(e);
      return;
    }
  }
  entries_.push_back(std::move(e));
}

std::vector<ErrataEntry> ErrataLedger::entries() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_;
}

nlohmann::json ErrataLedger::toJson() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : entries()) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : e.variants)
      vs.push_back({{"name", v.name}, {"metric", v.metric}, {"selected", v.selected}});
    out.push_back({{"id", e.id},
                   {"location", e.location},
                   {"description", e.description},
                   {"variants", vs},
                   {"resolution", e.resolution}});
  }
  return out;
}

void ErrataLedger::writeFile(const std::string& path) const {
  std::ofstream f(path);
  f << toJson().dump(2) << "\n";
}

}  // namespace opchain
