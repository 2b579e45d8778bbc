#pragma once

// Gate sets, costed gate words, and the two interchangeable synthesis
// oracles: an exhaustive Clifford+T enumerator (desk scale, real words) and a
// deterministic synthetic oracle (small-eps regime, no words). Both satisfy
// the same contract: synth(V, eps) returns U with phase-minimized
// ||U - V|| <= eps and a cost within the oracle's budget model, or fails
// explicitly.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mixsynth/linalg.hpp"
#include "mixsynth/savings.hpp"

namespace mixsynth {

struct Gate {
  std::string name;
  ComplexMatrix matrix;
  double cost;
};

class GateSet {
 public:
  GateSet(std::string name, std::vector<Gate> gates);

  const std::string& name() const { return name_; }
  const std::vector<Gate>& gates() const { return gates_; }
  int dim() const { return gates_.front().matrix.dim(); }
  const Gate& gate(const std::string& name) const;
  // The zero-cost Pauli Z (up to global phase), if the set has one.
  const Gate* free_z() const;

 private:
  std::string name_;
  std::vector<Gate> gates_;
};

// Single-qubit Clifford+T with cost(T) = 1 and cost 0 for the Cliffords.
const GateSet& clifford_t_gateset();

// A sequence of named gates; `matrix` is the ordered product, leftmost name
// first ("H T" realizes H*T), `cost` the exact sum of member costs.
struct GateWord {
  std::vector<std::string> names;
  ComplexMatrix matrix;
  double cost;
};

GateWord make_word(const GateSet& gs, const std::vector<std::string>& names);

// Oracle output. `unitary` may differ from the word's raw matrix by a global
// phase: it is aligned to the synthesis target so that the raw operator-norm
// distance equals the phase-minimized one (channels are phase-blind).
struct CostedUnitary {
  UnitaryMatrix unitary;
  std::optional<GateWord> word;
  double cost;
  double achieved_distance;
};

struct OracleDomain {
  enum class Kind { FullUnitary, Axial };
  Kind kind;
  int dim;
};

class SynthesisOracle {
 public:
  virtual ~SynthesisOracle() = default;
  // Postcondition: result.achieved_distance <= eps, or an explicit error.
  virtual CostedUnitary synth(const UnitaryMatrix& target, double eps) = 0;
  virtual OracleDomain domain() const = 0;
  virtual const GateSet& gate_set() const = 0;
};

// All distinct-up-to-global-phase single-qubit Clifford+T unitaries with
// T-count <= max_tcount (max 8), generated through the normal form with
// leading syllables from {T, HT, SHT} and a trailing Clifford, deduplicated
// by a phase-invariant fingerprint. Sorted by (cost, lexicographic word).
const std::vector<GateWord>& enumerate_clifford_t(int max_tcount);

// Minimum-T-count enumerated word within eps of v, ties broken by
// lexicographic word order. Throws UnreachablePrecision when the budget
// cannot reach eps (a desk-scale limit, not a bug).
CostedUnitary exhaustive_synth(const UnitaryMatrix& v, double eps, int budget);

class ExhaustiveCliffordTOracle final : public SynthesisOracle {
 public:
  explicit ExhaustiveCliffordTOracle(int budget);
  CostedUnitary synth(const UnitaryMatrix& target, double eps) override;
  OracleDomain domain() const override { return {OracleDomain::Kind::FullUnitary, 2}; }
  const GateSet& gate_set() const override { return clifford_t_gateset(); }

 private:
  int budget_;
};

// Deterministic pseudo-random oracle: U = V e^{iH} with H a seeded Hermitian
// direction (traceless for the full domain, proportional to Z for the axial
// domain) of operator norm in [0.2 eps, 0.9 eps]. The reported cost is the
// attached cost model's value f(eps).
CostedUnitary synthetic_synth(const UnitaryMatrix& v, double eps, std::uint64_t seed,
                              std::uint64_t call_index, const OracleDomain& domain,
                              const CostModel& model);

class SyntheticOracle final : public SynthesisOracle {
 public:
  SyntheticOracle(std::uint64_t seed, OracleDomain domain, CostModel model);
  CostedUnitary synth(const UnitaryMatrix& target, double eps) override;
  OracleDomain domain() const override { return domain_; }
  // The premise surface for the axial construction: an abstract set carrying
  // a zero-cost Z.
  const GateSet& gate_set() const override;

 private:
  std::uint64_t seed_;
  std::uint64_t calls_ = 0;
  OracleDomain domain_;
  CostModel model_;
};

// Z w Z with identical cost. Requires a zero-cost Z in the gate set. The
// achieved_distance field is carried over; it keeps its meaning for axial
// targets, which commute with Z.
CostedUnitary conjugate_by_z(const CostedUnitary& w, const GateSet& gs);

}  // namespace mixsynth
