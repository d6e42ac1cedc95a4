#include <chrono>
#include <cstdio>
#include <functional>

#include "rqft/runner.hpp"

using namespace rqft;

namespace {

const Record& find(const RunReport& r, const std::string& check) {
  for (const auto& rec : r.records)
    if (rec.check == check) return rec;
  throw std::runtime_error("missing record " + check);
}

double metric(const Record& rec, const std::string& key) {
  for (const auto& [k, v] : rec.metrics)
    if (k == key) return v;
  throw std::runtime_error("missing metric " + key + " in " + rec.check);
}

struct Bound {
  std::string check, key;
  enum Kind { le, ge, eq } kind;
  double value;
};

int failures = 0;

void criterion(int id, const std::string& title, const RunReport& r, const std::vector<std::string>& verified,
               const std::vector<Bound>& bounds) {
  std::string detail;
  bool ok = true;
  try {
    for (const auto& c : verified) {
      const Record& rec = find(r, c);
      if (rec.verdict != Verdict::verified) {
        ok = false;
        detail += " " + c + "=" + to_string(rec.verdict) + (rec.note.empty() ? "" : " [" + rec.note + "]");
      }
    }
    for (const auto& b : bounds) {
      const double v = metric(find(r, b.check), b.key);
      const bool hit = b.kind == Bound::le ? v <= b.value : b.kind == Bound::ge ? v >= b.value : v == b.value;
      ok = ok && hit;
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s=%.3g", b.key.c_str(), v);
      detail += buf;
    }
  } catch (const std::exception& e) {
    ok = false;
    detail += std::string(" error: ") + e.what();
  }
  if (!ok) ++failures;
  std::printf("%s %2d %s:%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  const ScenarioConfig cfg = default_config();
  const auto t0 = std::chrono::steady_clock::now();
  const RunReport r = run(cfg);
  const double first = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  using B = Bound;

  criterion(1, "relational covariance", r, {"relational-covariance"},
            {{"relational-covariance", "max_residual", B::le, 1e-10}, {"relational-covariance", "random_frames", B::eq, 5}});
  criterion(2, "field transformation and integral covariance", r, {"field-transformation", "integral-covariance"},
            {{"field-transformation", "max_residual", B::le, 1e-10}, {"integral-covariance", "max_residual", B::le, 1e-10}});
  criterion(3, "disintegration covariance", r, {"disintegration-covariance"},
            {{"disintegration-covariance", "conditional_residual", B::le, 1e-10},
             {"disintegration-covariance", "marginal_residual", B::le, 1e-10}});
  criterion(4, "restriction duality", r, {"restriction-duality", "restriction-product"},
            {{"restriction-duality", "max_residual", B::le, 1e-10},
             {"restriction-duality", "triples", B::ge, 20},
             {"restriction-product", "max_residual", B::le, 1e-12}});
  criterion(5, "channel laws of the relativization map", r, {"channel-laws"},
            {{"channel-laws", "unitality_residual", B::le, 1e-10},
             {"channel-laws", "adjoint_residual", B::le, 1e-10},
             {"channel-laws", "diagonal_invariance_residual", B::le, 1e-10},
             {"channel-laws", "contractivity_excess", B::le, 1e-10},
             {"channel-laws", "kadison_schwarz_gap", B::ge, -1e-9},
             {"channel-laws", "kadison_schwarz_gap_dilated", B::ge, -1e-9}});
  criterion(6, "microcausality implies causality", r, {"microcausal-implies-causal"},
            {{"microcausal-implies-causal", "instances", B::ge, 20},
             {"microcausal-implies-causal", "counterexamples", B::eq, 0},
             {"microcausal-implies-causal", "premise_passing", B::ge, 1},
             {"microcausal-implies-causal", "max_causal_residual", B::le, 1e-10}});
  criterion(7, "intrinsic causality pipeline", r, {"intrinsic-causality-witness"},
            {{"intrinsic-causality-witness", "joint_residual_reevaluated", B::le, 1e-7},
             {"intrinsic-causality-witness", "swap_residual", B::le, 1e-9}});
  criterion(8, "Wightman suite", r,
            {"wightman-hermiticity", "wightman-positivity", "wightman-transformation-law", "wightman-local-commutativity",
             "time-ordered-split"},
            {{"wightman-hermiticity", "vev_residual", B::le, 1e-12},
             {"wightman-hermiticity", "kernel_residual", B::le, 1e-12},
             {"wightman-positivity", "psd_gap", B::ge, -1e-10},
             {"wightman-transformation-law", "vev_residual", B::le, 1e-10},
             {"wightman-transformation-law", "kernel_shift_residual", B::le, 1e-10},
             {"wightman-local-commutativity", "vev_swap_residual", B::le, 1e-10},
             {"wightman-local-commutativity", "kernel_swap_residual", B::le, 1e-10},
             {"time-ordered-split", "split_residual", B::le, 1e-10}});
  criterion(9, "spectral condition", r, {"spectral-condition"},
            {{"spectral-condition", "max_outside", B::le, 1e-9},
             {"spectral-condition", "oracle_residual", B::le, 1e-9},
             {"spectral-condition", "outside_count", B::ge, 1}});
  criterion(10, "vacuum-orthogonality scaling", r, {"vacuum-orthogonality-scaling", "strict-vacuum-orthogonality"},
            {{"vacuum-orthogonality-scaling", "max_residual", B::le, 1e-12},
             {"vacuum-orthogonality-scaling", "monotone", B::eq, 1},
             {"strict-vacuum-orthogonality", "residual", B::le, 1e-12}});
  criterion(11, "vacuum polarization and external frame transforms", r,
            {"vacuum-polarization", "external-frame-transform"},
            {{"vacuum-polarization", "polarization_residual", B::le, 1e-12},
             {"external-frame-transform", "born_residual", B::le, 1e-10}});
  criterion(12, "local algebra net", r, {"aqft-isotony", "aqft-covariance", "aqft-causality", "aqft-time-slice"},
            {{"aqft-isotony", "containment_residual", B::le, 1e-9},
             {"aqft-isotony", "chain_length", B::eq, 5},
             {"aqft-covariance", "equality_residual", B::le, 1e-9},
             {"aqft-causality", "commutator_residual", B::le, 1e-10},
             {"aqft-causality", "premise_passing", B::ge, 1},
             {"aqft-time-slice", "equality_residual", B::le, 1e-9}});
  criterion(13, "irreducibility", r, {"irreducible-instance", "irreducibility-implication"},
            {{"irreducible-instance", "commutant_dim", B::eq, 1},
             {"irreducible-instance", "identity_commutant_dim", B::eq, 16},
             {"irreducibility-implication", "implication_failures", B::eq, 0}});

  {
    const RunReport again = run(cfg);
    const bool same = emit_json(r, false) == emit_json(again, false);
    if (!same) ++failures;
    std::printf("%s 14 determinism: %zu records, structured reports %s\n", same ? "PASS" : "FAIL", r.records.size(),
                same ? "byte-identical" : "differ");
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("# single run %.1f s, total %.1f s\n", first, total);
  return failures == 0 ? 0 : 1;
}
