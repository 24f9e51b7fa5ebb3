#include "bellmc/event.hpp"

namespace bellmc {

std::string to_string(Category c) {
  switch (c) {
    case Category::kSignal: return "signal";
    case Category::kDssMixing: return "dss_mixing";
    case Category::kBpmBackground: return "bpm_background";
    case Category::kFakeDstar: return "fake_dstar";
    case Category::kUncorrelatedDsl: return "uncorrelated_dsl";
  }
  throw std::invalid_argument("unknown category value");
}

std::string to_string(Sample s) {
  switch (s) {
    case Sample::kSignalRegion: return "signal_region";
    case Sample::kSideband: return "sideband";
    case Sample::kReversedLeptonControl: return "reversed_lepton_control";
  }
  throw std::invalid_argument("unknown sample value");
}

Category category_from_string(const std::string& name) {
  if (name == "signal") return Category::kSignal;
  if (name == "dss_mixing") return Category::kDssMixing;
  if (name == "bpm_background") return Category::kBpmBackground;
  if (name == "fake_dstar") return Category::kFakeDstar;
  if (name == "uncorrelated_dsl") return Category::kUncorrelatedDsl;
  throw std::invalid_argument("unknown category name: " + name);
}

Sample sample_from_string(const std::string& name) {
  if (name == "signal_region") return Sample::kSignalRegion;
  if (name == "sideband") return Sample::kSideband;
  if (name == "reversed_lepton_control") return Sample::kReversedLeptonControl;
  throw std::invalid_argument("unknown sample name: " + name);
}

}  // namespace bellmc
