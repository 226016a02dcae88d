#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmeasure/algebra.hpp"

namespace qmeasure {

// Randomized property campaigns.  Each instance derives its own seed from
// the master seed and its index, so campaigns are reproducible and instances
// are independent of each other and of the instance count.
enum class CampaignSuite {
  robertson,             // variance products on random observable pairs
  universal_relations,   // the always-valid relations on random models
  unbiasedness_theorem,  // tradeoff certificates and unbiased-witness checks
  box,                   // interval wave packets against the wall-term bound
};

std::string to_string(CampaignSuite suite);
CampaignSuite campaign_suite_from_string(const std::string& name);

struct CampaignRecord {
  int index = 0;
  std::string kind;  // short tag describing the generated instance
  double worst_margin = 0.0;
  bool pass = false;
};

struct CampaignResult {
  CampaignSuite suite = CampaignSuite::robertson;
  std::uint64_t seed = 0;
  int instances = 0;
  int passes = 0;
  int failures = 0;
  double worst_margin = 0.0;  // min over records
  std::vector<CampaignRecord> records;
  Tolerances tol;
};

CampaignResult run_property_campaign(CampaignSuite suite, int instances,
                                     std::uint64_t seed,
                                     const Tolerances& tol = Tolerances());

// One row per instance: instance,kind,worst_margin,pass
std::string campaign_csv(const CampaignResult& result);

nlohmann::json campaign_to_json(const CampaignResult& result);

}  // namespace qmeasure
