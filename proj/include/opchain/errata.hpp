// Ledger of adjudicated source-text ambiguities: wherever a displayed formula
// is syntactically ambiguous or suspected corrupt, the plausible readings are
// enumerated, selected by a residual oracle, and the finding recorded here.
#pragma once

#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

namespace opchain {

struct ErrataVariant {
  std::string name;
  std::string metric;  // residual or other selection metric, as a string
  bool selected = false;
};

struct ErrataEntry {
  std::string id;           // stable key, e.g. "spg-qn-stray-8"
  std::string location;     // where in the source text
  std::string description;  // what was ambiguous
  std::vector<ErrataVariant> variants;
  std::string resolution;   // what was adopted
};

class ErrataLedger {
 public:
  static ErrataLedger& global();

  // Idempotent by id: re-recording an entry replaces it.
  void record(ErrataEntry e);
  std::vector<ErrataEntry> entries() const;
  nlohmann::json toJson() const;
  void writeFile(const std::string& path) const;

 private:
  mutable std::mutex mu_;
  std::vector<ErrataEntry> entries_;
};

}  // namespace opchain
