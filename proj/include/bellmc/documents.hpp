#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "bellmc/ensemble.hpp"
#include "bellmc/io.hpp"
#include "bellmc/lhv_harness.hpp"
#include "bellmc/pipeline.hpp"
#include "bellmc/systematics.hpp"

namespace bellmc {

using json = nlohmann::json;

json make_metadata_json(const RunMetadata& meta);

/// Result document: result block, windowed estimates, per-bin E_R, metadata.
/// Field names are frozen; validate_document checks conformance.
json make_result_document(const AnalysisOutput& out, const RunMetadata& meta);

json make_systematics_document(const SystematicsScan& scan,
                               const RunMetadata& meta);

json make_ensemble_document(const EnsembleSummary& summary,
                            const RunMetadata& meta);

json make_lhv_document(const std::vector<LhvStrategyReport>& reports,
                       const RunMetadata& meta);

/// The published field list for each document kind.
const std::set<std::string>& result_document_fields();
const std::set<std::string>& systematics_document_fields();
const std::set<std::string>& ensemble_document_fields();
const std::set<std::string>& lhv_document_fields();

/// Paths present in doc but absent from the published list.  Paths are
/// dotted, with "[]" marking array elements (bins[].e_r).
std::vector<std::string> undocumented_keys(const json& doc,
                                           const std::set<std::string>& fields);

/// Flat key,value CSV rendering of a result-style document (arrays of
/// objects become repeated groups with an index column).
std::string document_to_csv(const json& doc);

}  // namespace bellmc
