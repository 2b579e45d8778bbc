#pragma once

// File-format layer (schema tag "mixsynth/1"). Writers are hand-rolled so
// the byte stream is deterministic and every double carries 17 significant
// digits; parsers sit on nlohmann/json and throw SchemaError on anything
// malformed.

#include <optional>
#include <string>
#include <vector>

#include "mixsynth/axial.hpp"
#include "mixsynth/channels.hpp"
#include "mixsynth/gateset.hpp"
#include "mixsynth/hull.hpp"
#include "mixsynth/mixing.hpp"

namespace mixsynth {

inline constexpr const char* kSchemaTag = "mixsynth/1";

// "%.17g"; rejects non-finite values.
std::string json_double(double x);

// {"dim": D, "re": [[..]], "im": [[..]]}, row-major.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json_text(const std::string& text);

// Whitespace-separated gate names.
std::string word_to_text(const GateWord& w);
// Parses and revalidates the word against a gate set (product must match the
// names within 1e-10 by construction).
GateWord word_from_text(const GateSet& gs, const std::string& text);

std::string gateset_to_json(const GateSet& gs);
GateSet gateset_from_json_text(const std::string& text);

struct EnsembleFile {
  MixingEnsemble ensemble;
  std::optional<double> q;
  std::optional<double> delta;
};

std::string ensemble_to_json(const MixingEnsemble& e);
std::string ensemble_to_json(const AxialEnsemble& e);
EnsembleFile ensemble_from_json_text(const std::string& text);

// One JSON object per line; records carry every quantity named in the trace.
std::string trace_to_jsonl(const HullTrace& t);
HullTrace trace_from_jsonl_text(const std::string& text);

std::string report_to_json(const LemmaReport& r, std::optional<double> theorem_bound);
LemmaReport report_from_json_text(const std::string& text, std::optional<double>* theorem_bound);

std::string certificate_to_json(const DiamondCertificate& c, std::optional<double> claim,
                                std::optional<bool> falsified);
DiamondCertificate certificate_from_json_text(const std::string& text);

// CSV round-trip for the savings table.
std::vector<SavingsPoint> savings_from_csv_text(const std::string& text);

}  // namespace mixsynth
