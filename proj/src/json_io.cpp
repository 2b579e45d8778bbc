#include "mixsynth/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace mixsynth {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) { raise(ErrorCode::SchemaError, what); }

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) schema_error("malformed JSON");
  return j;
}

double need_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) schema_error(std::string("missing number: ") + key);
  return j[key].get<double>();
}

const json& need(const json& j, const char* key) {
  if (!j.contains(key)) schema_error(std::string("missing field: ") + key);
  return j[key];
}

void need_schema(const json& j) {
  if (!j.contains("schema") || j["schema"] != kSchemaTag)
    schema_error("missing or unsupported schema tag");
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) schema_error("matrix must be an object");
  const int dim = static_cast<int>(need_number(j, "dim"));
  const json& re = need(j, "re");
  const json& im = need(j, "im");
  if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != dim ||
      static_cast<int>(im.size()) != dim)
    schema_error("matrix rows do not match dim");
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) {
    if (!re[i].is_array() || !im[i].is_array() || static_cast<int>(re[i].size()) != dim ||
        static_cast<int>(im[i].size()) != dim)
      schema_error("matrix columns do not match dim");
    for (int k = 0; k < dim; ++k) {
      if (!re[i][k].is_number() || !im[i][k].is_number()) schema_error("matrix entries must be numbers");
      m(i, k) = cplx(re[i][k].get<double>(), im[i][k].get<double>());
    }
  }
  return m;
}

std::vector<std::string> split_names(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> names;
  std::string tok;
  while (in >> tok) names.push_back(tok);
  return names;
}

}  // namespace

std::string json_double(double x) {
  if (!std::isfinite(x)) raise(ErrorCode::SchemaError, "cannot serialize a non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string matrix_to_json(const ComplexMatrix& m) {
  std::string out = "{\"dim\":" + std::to_string(m.dim());
  for (const char* part : {"re", "im"}) {
    out += std::string(",\"") + part + "\":[";
    const bool real = part[0] == 'r';
    for (int i = 0; i < m.dim(); ++i) {
      out += i ? ",[" : "[";
      for (int k = 0; k < m.dim(); ++k) {
        if (k) out += ",";
        out += json_double(real ? m(i, k).real() : m(i, k).imag());
      }
      out += "]";
    }
    out += "]";
  }
  return out + "}";
}

ComplexMatrix matrix_from_json_text(const std::string& text) { return matrix_from_json(parse(text)); }

std::string word_to_text(const GateWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.names.size(); ++i) {
    if (i) out += ' ';
    out += w.names[i];
  }
  return out;
}

GateWord word_from_text(const GateSet& gs, const std::string& text) {
  try {
    return make_word(gs, split_names(text));
  } catch (const MixSynthError& e) {
    schema_error(std::string("bad gate word: ") + e.what());
  }
}

std::string gateset_to_json(const GateSet& gs) {
  std::string out = std::string("{\"schema\":\"") + kSchemaTag + "\",\"name\":\"" + gs.name() +
                    "\",\"gates\":[";
  for (std::size_t i = 0; i < gs.gates().size(); ++i) {
    const Gate& g = gs.gates()[i];
    if (i) out += ",";
    out += "{\"name\":\"" + g.name + "\",\"cost\":" + json_double(g.cost) +
           ",\"matrix\":" + matrix_to_json(g.matrix) + "}";
  }
  return out + "]}";
}

GateSet gateset_from_json_text(const std::string& text) {
  const json j = parse(text);
  need_schema(j);
  if (!need(j, "name").is_string()) schema_error("gate set name must be a string");
  const json& gates = need(j, "gates");
  if (!gates.is_array() || gates.empty()) schema_error("gates must be a nonempty array");
  std::vector<Gate> out;
  for (const json& g : gates) {
    if (!need(g, "name").is_string()) schema_error("gate name must be a string");
    out.push_back({g["name"].get<std::string>(), matrix_from_json(need(g, "matrix")),
                   need_number(g, "cost")});
  }
  try {
    return GateSet(j["name"].get<std::string>(), std::move(out));
  } catch (const MixSynthError& e) {
    schema_error(std::string("invalid gate set: ") + e.what());
  }
}

namespace {

std::string ensemble_to_json_impl(const MixingEnsemble& e, std::optional<double> q,
                                  std::optional<double> delta) {
  std::string out = std::string("{\"schema\":\"") + kSchemaTag + "\",\"construction\":\"" +
                    e.construction + "\",\"eps\":" + json_double(e.eps) +
                    ",\"seed\":" + std::to_string(e.seed);
  if (q) out += ",\"q\":" + json_double(*q);
  if (delta) out += ",\"delta\":" + json_double(*delta);
  out += ",\"a\":" + json_double(e.a) + ",\"b\":" + json_double(e.b) +
         ",\"residual\":" + json_double(e.residual) +
         ",\"target\":" + matrix_to_json(e.target.matrix()) + ",\"members\":[";
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    const EnsembleMember& m = e.members[i];
    if (i) out += ",";
    out += "{\"p\":" + json_double(m.p) + ",\"cost\":" + json_double(m.costed.cost);
    if (m.costed.word) out += ",\"word\":\"" + word_to_text(*m.costed.word) + "\"";
    out += ",\"matrix\":" + matrix_to_json(m.costed.unitary.matrix()) + "}";
  }
  return out + "]}";
}

}  // namespace

std::string ensemble_to_json(const MixingEnsemble& e) {
  return ensemble_to_json_impl(e, std::nullopt, std::nullopt);
}

std::string ensemble_to_json(const AxialEnsemble& e) {
  return ensemble_to_json_impl(e.ensemble, e.q, e.delta);
}

EnsembleFile ensemble_from_json_text(const std::string& text) {
  const json j = parse(text);
  need_schema(j);
  if (!need(j, "construction").is_string()) schema_error("construction must be a string");
  const double eps = need_number(j, "eps");
  std::uint64_t seed = 0;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) schema_error("seed must be a nonnegative integer");
    seed = j["seed"].get<std::uint64_t>();
  }

  UnitaryMatrix target = [&] {
    try {
      return UnitaryMatrix(matrix_from_json(need(j, "target")));
    } catch (const MixSynthError& e) {
      schema_error(std::string("target: ") + e.what());
    }
  }();

  const json& members = need(j, "members");
  if (!members.is_array() || members.empty()) schema_error("members must be a nonempty array");
  std::vector<EnsembleMember> parsed;
  for (const json& m : members) {
    const double p = need_number(m, "p");
    const double cost = need_number(m, "cost");
    UnitaryMatrix u = [&] {
      try {
        return UnitaryMatrix(matrix_from_json(need(m, "matrix")));
      } catch (const MixSynthError& e) {
        schema_error(std::string("member matrix: ") + e.what());
      }
    }();
    std::optional<GateWord> word;
    if (m.contains("word")) {
      if (!m["word"].is_string()) schema_error("word must be a string");
      word = word_from_text(clifford_t_gateset(), m["word"].get<std::string>());
      if (phase_minimized_distance(UnitaryMatrix(word->matrix, 1e-9), u) > 1e-9)
        schema_error("word does not realize the member matrix");
    }
    const double achieved = operator_norm(u.matrix() - target.matrix());
    parsed.push_back({p, CostedUnitary{std::move(u), std::move(word), cost, achieved}});
  }

  EnsembleFile out = [&] {
    try {
      return EnsembleFile{assemble_ensemble(std::move(target), std::move(parsed),
                                            j.contains("residual") ? need_number(j, "residual") : 0.0,
                                            j["construction"].get<std::string>(), eps, seed),
                          std::nullopt, std::nullopt};
    } catch (const MixSynthError& e) {
      schema_error(std::string("invalid ensemble: ") + e.what());
    }
  }();
  if (j.contains("q")) out.q = need_number(j, "q");
  if (j.contains("delta")) out.delta = need_number(j, "delta");
  return out;
}

std::string trace_to_jsonl(const HullTrace& t) {
  std::string out;
  for (const HullIterationRecord& rec : t.records) {
    out += "{\"n\":" + std::to_string(rec.n);
    if (rec.mu) {
      out += ",\"mu_norm\":" + json_double(rec.mu_op_norm);
      out += ",\"mu\":" + matrix_to_json(rec.mu->matrix());
    }
    if (rec.tau) out += ",\"tau\":" + matrix_to_json(rec.tau->matrix());
    if (rec.w) out += ",\"w\":" + matrix_to_json(rec.w->matrix());
    if (rec.u) out += ",\"u\":" + matrix_to_json(rec.u->matrix());
    if (rec.h) {
      out += ",\"h\":" + matrix_to_json(rec.h->matrix());
      out += ",\"h_norm\":" + json_double(rec.h_op_norm);
    }
    if (!std::isnan(rec.delta_op_norm)) out += ",\"delta_norm\":" + json_double(rec.delta_op_norm);
    out += "}\n";
  }
  if (t.terminated) {
    out += "{\"terminated\":true,\"final_mu_norm\":" + json_double(t.final_mu_op_norm) +
           ",\"weights\":[";
    for (std::size_t i = 0; i < t.final_weights.size(); ++i) {
      if (i) out += ",";
      out += json_double(t.final_weights[i]);
    }
    out += "]}\n";
  }
  return out;
}

HullTrace trace_from_jsonl_text(const std::string& text) {
  HullTrace t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = parse(line);
    if (j.contains("terminated")) {
      t.terminated = j["terminated"].get<bool>();
      t.final_mu_op_norm = need_number(j, "final_mu_norm");
      const json& w = need(j, "weights");
      if (!w.is_array()) schema_error("weights must be an array");
      for (const json& x : w) {
        if (!x.is_number()) schema_error("weights must be numbers");
        t.final_weights.push_back(x.get<double>());
      }
      continue;
    }
    HullIterationRecord rec;
    rec.n = static_cast<int>(need_number(j, "n"));
    auto load_h = [&](const char* key) {
      return HermitianMatrix(matrix_from_json(need(j, key)));
    };
    try {
      if (j.contains("mu")) {
        rec.mu = load_h("mu");
        rec.mu_op_norm = need_number(j, "mu_norm");
      }
      if (j.contains("tau")) rec.tau = load_h("tau");
      if (j.contains("w")) rec.w = UnitaryMatrix(matrix_from_json(need(j, "w")));
      if (j.contains("u")) rec.u = UnitaryMatrix(matrix_from_json(need(j, "u")));
      if (j.contains("h")) {
        rec.h = load_h("h");
        rec.h_op_norm = need_number(j, "h_norm");
      }
    } catch (const MixSynthError& e) {
      schema_error(std::string("trace record: ") + e.what());
    }
    if (j.contains("delta_norm")) rec.delta_op_norm = need_number(j, "delta_norm");
    t.records.push_back(std::move(rec));
  }
  if (t.records.empty()) schema_error("empty trace");
  return t;
}

std::string report_to_json(const LemmaReport& r, std::optional<double> theorem_bound) {
  std::string out = std::string("{\"schema\":\"") + kSchemaTag + "\",\"a\":" + json_double(r.a) +
                    ",\"b\":" + json_double(r.b);
  if (!std::isnan(r.c)) out += ",\"c\":" + json_double(r.c);
  out += ",\"bound_diamond_norm\":" + json_double(r.bound_diamond_norm) +
         ",\"bound_diamond_distance\":" + json_double(r.bound_diamond_distance) +
         ",\"residual\":" + json_double(r.residual) + ",\"hypotheses\":{\"simplex_ok\":" +
         (r.hypotheses.simplex_ok ? "true" : "false") +
         ",\"dimensions_ok\":" + (r.hypotheses.dimensions_ok ? "true" : "false") +
         ",\"displacement_bound_ok\":" + (r.hypotheses.displacement_bound_ok ? "true" : "false") +
         "}";
  if (theorem_bound) out += ",\"theorem_bound\":" + json_double(*theorem_bound);
  return out + "}";
}

LemmaReport report_from_json_text(const std::string& text, std::optional<double>* theorem_bound) {
  const json j = parse(text);
  need_schema(j);
  LemmaReport r;
  r.a = need_number(j, "a");
  r.b = need_number(j, "b");
  if (j.contains("c")) r.c = need_number(j, "c");
  r.bound_diamond_norm = need_number(j, "bound_diamond_norm");
  r.bound_diamond_distance = need_number(j, "bound_diamond_distance");
  r.residual = need_number(j, "residual");
  const json& h = need(j, "hypotheses");
  r.hypotheses.simplex_ok = need(h, "simplex_ok").get<bool>();
  r.hypotheses.dimensions_ok = need(h, "dimensions_ok").get<bool>();
  r.hypotheses.displacement_bound_ok = need(h, "displacement_bound_ok").get<bool>();
  if (theorem_bound)
    *theorem_bound = j.contains("theorem_bound") ? std::optional<double>(need_number(j, "theorem_bound"))
                                                 : std::nullopt;
  return r;
}

std::string certificate_to_json(const DiamondCertificate& c, std::optional<double> claim,
                                std::optional<bool> falsified) {
  std::string out = std::string("{\"schema\":\"") + kSchemaTag +
                    "\",\"lower\":" + json_double(c.lower) + ",\"upper\":" + json_double(c.upper) +
                    ",\"tol\":" + json_double(c.tol) + ",\"iterations\":" +
                    std::to_string(c.iterations) + ",\"residual\":" + json_double(c.residual) +
                    ",\"method\":\"" + c.method + "\",\"stalled\":" + (c.stalled ? "true" : "false");
  if (claim) out += ",\"claim\":" + json_double(*claim);
  if (falsified) out += std::string(",\"falsified\":") + (*falsified ? "true" : "false");
  return out + "}";
}

DiamondCertificate certificate_from_json_text(const std::string& text) {
  const json j = parse(text);
  need_schema(j);
  DiamondCertificate c;
  c.lower = need_number(j, "lower");
  c.upper = need_number(j, "upper");
  c.tol = need_number(j, "tol");
  c.iterations = static_cast<long>(need_number(j, "iterations"));
  c.residual = need_number(j, "residual");
  c.method = need(j, "method").get<std::string>();
  c.stalled = need(j, "stalled").get<bool>();
  try {
    return DiamondCertificate::validated(std::move(c));
  } catch (const MixSynthError& e) {
    schema_error(std::string("invalid certificate: ") + e.what());
  }
}

std::vector<SavingsPoint> savings_from_csv_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "eps,alpha,C,baseline_cost,diluted_cost,ratio")
    schema_error("bad CSV header");
  std::vector<SavingsPoint> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SavingsPoint p;
    double* fields[6] = {&p.eps, &p.alpha, &p.c_value, &p.baseline_cost, &p.diluted_cost, &p.ratio};
    std::istringstream row(line);
    std::string cell;
    for (int i = 0; i < 6; ++i) {
      if (!std::getline(row, cell, ',')) schema_error("short CSV row");
      try {
        *fields[i] = std::stod(cell);
      } catch (...) {
        schema_error("non-numeric CSV cell");
      }
    }
    if (std::getline(row, cell, ',')) schema_error("long CSV row");
    out.push_back(p);
  }
  if (out.empty()) schema_error("empty CSV");
  return out;
}

}  // namespace mixsynth
