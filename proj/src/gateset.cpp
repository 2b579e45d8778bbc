#include "mixsynth/gateset.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <mutex>

#include "mixsynth/rng.hpp"

namespace mixsynth {

GateSet::GateSet(std::string name, std::vector<Gate> gates)
    : name_(std::move(name)), gates_(std::move(gates)) {
  if (gates_.empty()) raise(ErrorCode::InvalidArgument, "gate set needs at least one gate");
  const int d = gates_.front().matrix.dim();
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    if (gates_[i].matrix.dim() != d)
      raise(ErrorCode::DimensionMismatch, "gate dimensions differ");
    if (gates_[i].cost < 0.0) raise(ErrorCode::InvalidArgument, "gate costs must be nonnegative");
    for (std::size_t j = i + 1; j < gates_.size(); ++j)
      if (gates_[i].name == gates_[j].name)
        raise(ErrorCode::InvalidArgument, "duplicate gate name: " + gates_[i].name);
  }
}

const Gate& GateSet::gate(const std::string& name) const {
  for (const Gate& g : gates_)
    if (g.name == name) return g;
  raise(ErrorCode::InvalidArgument, "unknown gate: " + name);
}

const Gate* GateSet::free_z() const {
  const UnitaryMatrix z(pauli_z());
  for (const Gate& g : gates_) {
    if (g.cost != 0.0 || g.matrix.dim() != 2) continue;
    if (phase_minimized_distance(UnitaryMatrix(g.matrix), z) <= 1e-12) return &g;
  }
  return nullptr;
}

namespace {

ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix{{s, s}, {s, -s}};
}

ComplexMatrix s_gate() { return ComplexMatrix{{1.0, 0.0}, {0.0, cplx(0.0, 1.0)}}; }
ComplexMatrix t_gate() { return ComplexMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, M_PI / 4.0)}}; }

}  // namespace

const GateSet& clifford_t_gateset() {
  static const GateSet set("clifford+t", {
      {"H", hadamard(), 0.0},
      {"S", s_gate(), 0.0},
      {"Sdg", s_gate().adjoint(), 0.0},
      {"X", pauli_x(), 0.0},
      {"Y", pauli_y(), 0.0},
      {"Z", pauli_z(), 0.0},
      {"T", t_gate(), 1.0},
  });
  return set;
}

GateWord make_word(const GateSet& gs, const std::vector<std::string>& names) {
  ComplexMatrix m = ComplexMatrix::identity(gs.dim());
  double cost = 0.0;
  for (const std::string& n : names) {
    const Gate& g = gs.gate(n);
    m = m * g.matrix;
    cost += g.cost;
  }
  return GateWord{names, std::move(m), cost};
}

namespace {

// Phase-invariant fingerprint: canonicalize the global phase, then round
// every component to a 1e-8 grid. Collisions fall back to a matrix compare,
// so the key only has to be stable, not perfect.
std::string fingerprint(const ComplexMatrix& m) {
  const ComplexMatrix c = phase_canonicalize(m);
  std::string key;
  key.reserve(static_cast<std::size_t>(m.dim()) * m.dim() * 16);
  for (const cplx& z : c.data()) {
    for (double comp : {z.real(), z.imag()}) {
      const long long r = std::llround(comp * 1e8);
      key.append(reinterpret_cast<const char*>(&r), sizeof r);
    }
  }
  return key;
}

bool same_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
  return phase_minimized_distance(UnitaryMatrix(a, 1e-9), UnitaryMatrix(b, 1e-9)) <= 1e-9;
}

// Shortest words (BFS over {H, S}, lexicographic among equals by generation
// order) for the 24 single-qubit Cliffords mod phase.
std::vector<GateWord> clifford_group_words() {
  const GateSet& gs = clifford_t_gateset();
  std::vector<GateWord> found;
  std::map<std::string, std::vector<std::size_t>> buckets;
  auto try_insert = [&](const GateWord& w) {
    const std::string key = fingerprint(w.matrix);
    auto& bucket = buckets[key];
    for (std::size_t idx : bucket)
      if (same_up_to_phase(found[idx].matrix, w.matrix)) return false;
    bucket.push_back(found.size());
    found.push_back(w);
    return true;
  };
  std::deque<GateWord> queue;
  GateWord id{{}, ComplexMatrix::identity(2), 0.0};
  try_insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    const GateWord cur = queue.front();
    queue.pop_front();
    for (const char* gname : {"H", "S"}) {
      GateWord next = cur;
      next.names.push_back(gname);
      next.matrix = cur.matrix * gs.gate(gname).matrix;
      if (try_insert(next)) queue.push_back(next);
    }
  }
  return found;
}

struct Enumeration {
  std::vector<GateWord> words;
};

const Enumeration& enumeration_for(int max_tcount) {
  static std::mutex mutex;
  static std::map<int, Enumeration> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(max_tcount);
  if (it != cache.end()) return it->second;

  const GateSet& gs = clifford_t_gateset();
  const std::vector<GateWord> cliffords = clifford_group_words();

  Enumeration enumeration;
  std::map<std::string, std::vector<std::size_t>> buckets;
  auto try_insert = [&](GateWord w) {
    const std::string key = fingerprint(w.matrix);
    auto& bucket = buckets[key];
    for (std::size_t idx : bucket)
      if (same_up_to_phase(enumeration.words[idx].matrix, w.matrix)) return;
    bucket.push_back(enumeration.words.size());
    enumeration.words.push_back(std::move(w));
  };

  for (const GateWord& c : cliffords) try_insert(c);

  // Normal-form spine: first syllable from {T, HT, SHT}, later ones from
  // {HT, SHT}, then a trailing Clifford. One T per syllable.
  const std::vector<std::vector<std::string>> first = {{"T"}, {"H", "T"}, {"S", "H", "T"}};
  const std::vector<std::vector<std::string>> rest = {{"H", "T"}, {"S", "H", "T"}};

  struct Spine {
    std::vector<std::string> names;
    ComplexMatrix matrix;
  };
  std::vector<Spine> level;
  for (const auto& syll : first) {
    GateWord w = make_word(gs, syll);
    level.push_back({w.names, w.matrix});
  }
  for (int m = 1; m <= max_tcount; ++m) {
    for (const Spine& s : level) {
      for (const GateWord& c : cliffords) {
        std::vector<std::string> names = s.names;
        names.insert(names.end(), c.names.begin(), c.names.end());
        try_insert(GateWord{std::move(names), s.matrix * c.matrix, static_cast<double>(m)});
      }
    }
    if (m == max_tcount) break;
    std::vector<Spine> next;
    next.reserve(level.size() * rest.size());
    for (const Spine& s : level) {
      for (const auto& syll : rest) {
        Spine ns = s;
        for (const std::string& g : syll) {
          ns.names.push_back(g);
          ns.matrix = ns.matrix * gs.gate(g).matrix;
        }
        next.push_back(std::move(ns));
      }
    }
    level = std::move(next);
  }

  std::sort(enumeration.words.begin(), enumeration.words.end(),
            [](const GateWord& a, const GateWord& b) {
              if (a.cost != b.cost) return a.cost < b.cost;
              return a.names < b.names;
            });
  return cache.emplace(max_tcount, std::move(enumeration)).first->second;
}

}  // namespace

const std::vector<GateWord>& enumerate_clifford_t(int max_tcount) {
  if (max_tcount < 0 || max_tcount > 8)
    raise(ErrorCode::BudgetTooLarge, "T-count budget must lie in [0, 8]");
  return enumeration_for(max_tcount).words;
}

CostedUnitary exhaustive_synth(const UnitaryMatrix& v, double eps, int budget) {
  if (v.dim() != 2) raise(ErrorCode::InvalidArgument, "exhaustive synthesis is single-qubit");
  if (!(eps > 0.0)) raise(ErrorCode::InvalidArgument, "eps must be positive");
  const std::vector<GateWord>& words = enumerate_clifford_t(budget);
  for (const GateWord& w : words) {
    const UnitaryMatrix raw(w.matrix, 1e-11);
    const double dist = phase_minimized_distance(raw, v);
    if (dist <= eps) {
      UnitaryMatrix aligned = phase_align(raw, v);
      return CostedUnitary{std::move(aligned), w, w.cost, dist};
    }
  }
  raise(ErrorCode::UnreachablePrecision,
        "no word within T-count " + std::to_string(budget) + " reaches the requested eps");
}

ExhaustiveCliffordTOracle::ExhaustiveCliffordTOracle(int budget) : budget_(budget) {
  enumerate_clifford_t(budget);  // validates the budget and warms the table
}

CostedUnitary ExhaustiveCliffordTOracle::synth(const UnitaryMatrix& target, double eps) {
  return exhaustive_synth(target, eps, budget_);
}

CostedUnitary synthetic_synth(const UnitaryMatrix& v, double eps, std::uint64_t seed,
                              std::uint64_t call_index, const OracleDomain& domain,
                              const CostModel& model) {
  if (!(eps > 0.0)) raise(ErrorCode::InvalidArgument, "eps must be positive");
  if (v.dim() != domain.dim) raise(ErrorCode::DimensionMismatch, "target outside oracle domain");

  // Seed from (seed, call_index, fingerprint of V).
  std::uint64_t h = derive_seed("synthetic-oracle", seed);
  std::uint64_t state = h ^ (0x9e3779b97f4a7c15ULL * (call_index + 1));
  const ComplexMatrix canon = phase_canonicalize(v.matrix());
  for (const cplx& z : canon.data()) {
    state ^= static_cast<std::uint64_t>(std::llround(z.real() * 1e9)) * 0x2545f4914f6cdd1dULL;
    (void)splitmix64(state);
    state ^= static_cast<std::uint64_t>(std::llround(z.imag() * 1e9)) * 0x9e3779b97f4a7c15ULL;
    (void)splitmix64(state);
  }
  Rng rng(splitmix64(state));

  const int d = v.dim();
  const double norm = (0.2 + 0.7 * rng.uniform()) * eps;
  ComplexMatrix direction(d);
  if (domain.kind == OracleDomain::Kind::Axial) {
    if (d != 2) raise(ErrorCode::InvalidArgument, "axial domain is single-qubit");
    const double sign = (rng.bits() & 1) ? 1.0 : -1.0;
    direction = sign * pauli_z();
  } else if (d == 2) {
    double n[3] = {rng.normal(), rng.normal(), rng.normal()};
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    direction = (n[0] / len) * pauli_x() + (n[1] / len) * pauli_y() + (n[2] / len) * pauli_z();
  } else {
    ComplexMatrix a(d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = cplx(rng.normal(), rng.normal());
    ComplexMatrix g = 0.5 * (a + a.adjoint());
    const cplx tr = g.trace();
    for (int i = 0; i < d; ++i) g(i, i) -= tr / static_cast<double>(d);
    direction = (1.0 / operator_norm(g)) * g;
  }

  const HermitianMatrix h_step(norm * direction);
  UnitaryMatrix u(v.matrix() * expi(h_step).matrix(), 1e-11);
  const double achieved = operator_norm(u.matrix() - v.matrix());
  if (achieved > eps)
    raise(ErrorCode::InvalidState, "synthetic oracle exceeded its distance contract");
  const double cost = eps < 1.0 ? model.eval(eps) : 0.0;
  return CostedUnitary{std::move(u), std::nullopt, cost, achieved};
}

SyntheticOracle::SyntheticOracle(std::uint64_t seed, OracleDomain domain, CostModel model)
    : seed_(seed), domain_(domain), model_(std::move(model)) {}

CostedUnitary SyntheticOracle::synth(const UnitaryMatrix& target, double eps) {
  return synthetic_synth(target, eps, seed_, calls_++, domain_, model_);
}

const GateSet& SyntheticOracle::gate_set() const {
  static const GateSet abstract("abstract-free-z", {{"Z", pauli_z(), 0.0}});
  return abstract;
}

CostedUnitary conjugate_by_z(const CostedUnitary& w, const GateSet& gs) {
  const Gate* z = gs.free_z();
  if (z == nullptr)
    raise(ErrorCode::ZNotFree, "gate set '" + gs.name() + "' lacks a zero-cost Z");
  // Conjugation by e^{i phi} Z equals conjugation by Z; use the exact Pauli.
  const ComplexMatrix zm = pauli_z();
  CostedUnitary out{UnitaryMatrix(zm * w.unitary.matrix() * zm, 1e-11), std::nullopt, w.cost,
                    w.achieved_distance};
  if (w.word) {
    std::vector<std::string> names;
    names.reserve(w.word->names.size() + 2);
    names.push_back(z->name);
    names.insert(names.end(), w.word->names.begin(), w.word->names.end());
    names.push_back(z->name);
    out.word = GateWord{std::move(names), zm * w.word->matrix * zm, w.word->cost};
  }
  return out;
}

}  // namespace mixsynth
