#include "qclab/flag.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "qclab/gateset.hpp"

namespace qclab {

Distribution build_distribution(int n_qubits, DistributionPattern pattern) {
  if (n_qubits < 1) throw DimensionError("build_distribution: n_qubits must be >= 1");
  if (pattern == DistributionPattern::kExplicit) {
    throw Error("build_distribution: explicit pattern needs explicit_distribution");
  }
  std::set<PauliString> strings;
  // Weight-1 strings on every site.
  for (int site = 0; site < n_qubits; ++site) {
    for (int letter = 1; letter <= 3; ++letter) {
      const std::uint64_t code = static_cast<std::uint64_t>(letter)
                                 << (2 * (n_qubits - 1 - site));
      strings.insert(PauliString(n_qubits, code));
    }
  }
  // Weight-2 strings on interacting pairs.
  if (n_qubits >= 2) {
    const LocalityPattern lp = pattern == DistributionPattern::kAllToAll
                                   ? LocalityPattern::kAllToAll
                                   : LocalityPattern::kRingNearest;
    for (const auto& [a, b] : interaction_pairs(n_qubits, lp)) {
      for (int la = 1; la <= 3; ++la) {
        for (int lb = 1; lb <= 3; ++lb) {
          const std::uint64_t code =
              (static_cast<std::uint64_t>(la) << (2 * (n_qubits - 1 - a))) |
              (static_cast<std::uint64_t>(lb) << (2 * (n_qubits - 1 - b)));
          strings.insert(PauliString(n_qubits, code));
        }
      }
    }
  }
  Distribution d;
  d.n_qubits = n_qubits;
  d.pattern = pattern;
  d.strings.assign(strings.begin(), strings.end());
  return d;
}

Distribution explicit_distribution(int n_qubits, std::vector<PauliString> strings) {
  if (strings.empty()) throw Error("explicit_distribution: empty string set");
  std::set<PauliString> dedup;
  for (const PauliString& p : strings) {
    if (p.n_qubits() != n_qubits) {
      throw DimensionError("explicit_distribution: qubit count mismatch");
    }
    if (p.is_identity()) throw Error("explicit_distribution: identity is not a direction");
    dedup.insert(p);
  }
  Distribution d;
  d.n_qubits = n_qubits;
  d.pattern = DistributionPattern::kExplicit;
  d.strings.assign(dedup.begin(), dedup.end());
  return d;
}

Flag grow_flag(const Distribution& delta) {
  if (delta.strings.empty()) throw Error("grow_flag: empty distribution");
  Flag f;
  f.base = delta;

  std::set<PauliString> current(delta.strings.begin(), delta.strings.end());
  f.levels.push_back(std::vector<PauliString>(current.begin(), current.end()));
  f.level_sizes.push_back(static_cast<long long>(current.size()));
  for (const PauliString& p : current) f.degree[p.code()] = 1;

  const long long full = (1ll << (2 * delta.n_qubits)) - 1;
  int level = 1;
  while (static_cast<long long>(current.size()) < full) {
    std::set<PauliString> next = current;
    for (const PauliString& x : delta.strings) {
      for (const PauliString& y : current) {
        const auto r = pauli_commutator(x, y);
        if (r) next.insert(*r);
      }
    }
    if (next.size() == current.size()) break;  // stabilized short of the full algebra
    ++level;
    for (const PauliString& p : next) {
      if (!f.degree.contains(p.code())) f.degree[p.code()] = level;
    }
    current = std::move(next);
    f.levels.push_back(std::vector<PauliString>(current.begin(), current.end()));
    f.level_sizes.push_back(static_cast<long long>(current.size()));
  }

  f.step = level;
  f.generating = static_cast<long long>(current.size()) == full;
  if (f.generating) {
    long long nh = 0;
    for (const auto& [code, deg] : f.degree) nh += deg;
    f.hausdorff = nh;
  }
  return f;
}

long long box_exponent(const Flag& f) {
  if (!f.generating) {
    throw NotGeneratingError("box_exponent: distribution does not bracket-generate");
  }
  return f.hausdorff;
}

int degree_of_direction(const std::vector<double>& coeffs, const Flag& f, double tol) {
  const auto basis = pauli_basis(f.base.n_qubits);
  if (coeffs.size() != basis.size()) {
    throw DimensionError("degree_of_direction: coefficient count mismatch");
  }
  int deg = 0;
  bool any = false;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (std::abs(coeffs[i]) <= tol) continue;
    any = true;
    const auto it = f.degree.find(basis[i].code());
    if (it == f.degree.end()) {
      throw NotGeneratingError("degree_of_direction: support outside the flag closure");
    }
    deg = std::max(deg, it->second);
  }
  if (!any) throw Error("degree_of_direction: zero coefficient vector");
  return deg;
}

nlohmann::json Flag::summary() const {
  nlohmann::json j;
  j["n_qubits"] = base.n_qubits;
  switch (base.pattern) {
    case DistributionPattern::kAllToAll: j["pattern"] = "all-to-all"; break;
    case DistributionPattern::kRing: j["pattern"] = "ring"; break;
    case DistributionPattern::kExplicit: j["pattern"] = "explicit"; break;
  }
  j["level_sizes"] = level_sizes;
  j["step"] = step;
  j["generating"] = generating;
  if (generating) j["box_exponent"] = hausdorff;
  nlohmann::json hist = nlohmann::json::object();
  std::map<int, long long> counts;
  for (const auto& [code, deg] : degree) counts[deg] += 1;
  for (const auto& [deg, cnt] : counts) hist[std::to_string(deg)] = cnt;
  j["degree_histogram"] = hist;
  return j;
}

}  // namespace qclab
